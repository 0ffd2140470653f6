"""
Walk counts as constant terms
=============================

The generating function of walks from (1,0) into an end set A is the
constant term in x of an expression built from the kernel root Y(x, t).
Series are truncated in t and carry a finite window of x-exponents.
"""

from crosswalks.series import eval_CA, eval_EA, stable_eval, t_coefficients, verify_identity
from crosswalks.walks import EndSet, sequence

N = 16
for name in ["A1", "A2", "A3", "A4"]:
    A = EndSet.parse(name)
    ct = t_coefficients(stable_eval(eval_CA, A, N))
    dp = sequence("vacillating", A, N)
    print(f"{name}: {[int(c) for c in ct[:8]]} ... agrees with walks: {ct == dp}")

# odd lengths: step back to the previous even length and reweight the end points
odd = t_coefficients(eval_CA("A1 + 2*A2p + 3*A2pp", N))
print("odd A2:", [int(c) for c in odd[:8]])

# hesitating walks to the x-axis give the Baxter numbers
print("hesitating A3:", [int(c) for c in t_coefficients(eval_EA("A3", 10))])

# a few of the constant-term identities behind the closed forms
for name in ["vacillating:P5", "vacillating:P8", "hesitating:P5", "jacobi"]:
    print(name, verify_identity(name, 16))
