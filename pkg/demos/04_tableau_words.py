"""
One-row tableaux and 0-1 words
==============================

Palindromic oscillating and vacillating tableaux of length 2n whose shapes
have a single row are both in bijection with the 0-1 words of length n in
which no prefix has more 0's than 1's.  There are C(n, n//2) of each.
"""

from math import comb

from crosswalks import bijections as bj
from crosswalks.partitions import count_partitions

o = bj.HeightSequence(bj.OSCILLATING, bj.EXAMPLE_OSCILLATING)
w = bj.theta(o)
print("O        =", o.heights)
print("theta(O) =", w)
print("eta_inv  =", bj.eta_inv(w).heights)

printed = bj.HeightSequence(bj.VACILLATING, bj.EXAMPLE_VACILLATING)
print("eta of the printed vacillating tableau:", bj.eta(printed))

for n in range(1, 11):
    words = sum(1 for _ in bj.words_W(n))
    noncrossing = count_partitions(n, 2, bisymmetric=True)
    print(n, words, noncrossing, comb(n, n // 2), bj.check_bijection(bj.VACILLATING, n))

print("Dyck restriction holds for n <= 6:", all(bj.dyck_corollary(n) for n in range(1, 7)))
