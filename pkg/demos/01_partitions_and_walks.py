"""
Symmetric partitions counted two ways
=====================================

A set partition of [n] is bilaterally symmetric when the reflection
i -> n+1-i maps it to itself.  Counting the 3-noncrossing ones by brute
force gives the same numbers as counting vacillating lattice walks in the
Weyl chamber that start at (1,0) and end anywhere.
"""

from crosswalks.partitions import SetPartition, arcs_of, count_partitions, has_k_crossing, is_bisymmetric
from crosswalks.walks import EndSet, WalkSpec, count_walks, sequence

# a small partition and its arc diagram
p = SetPartition(6, ((1, 4, 6), (2,), (3, 5)))
print("partition:", p)
print("arcs:", arcs_of(p).arcs)
print("symmetric:", is_bisymmetric(p), " has a 2-crossing:", has_k_crossing(arcs_of(p), 2))

# brute force against walk counts, n = 1..12
by_partitions = [count_partitions(n, 3, bisymmetric=True) for n in range(1, 13)]
by_walks = sequence("vacillating", EndSet.parse("A2"), 13, parity="all")[1:]
print("partitions:", by_partitions)
print("walks:     ", by_walks)
assert by_partitions == by_walks

# the enhanced version uses hesitating walks; odd sizes weight the end points by 2*A2 - A4
even = sequence("hesitating", EndSet.parse("A2"), 7)
odd = sequence("hesitating", EndSet.parse("2*A2 - A4"), 7)
walks = [odd[n // 2] if n % 2 else even[n // 2] for n in range(1, 13)]
enhanced = [count_partitions(n, 3, enhanced=True, bisymmetric=True) for n in range(1, 13)]
print("enhanced:  ", enhanced)
assert enhanced == walks

# where do the walks of length 6 end?
table = count_walks(WalkSpec("vacillating", "W", 2, (1, 0), 6))
for point in sorted(table.counts):
    print(point, table[point])
