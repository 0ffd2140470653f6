"""
Recurrences, differential equations and growth
==============================================

Each counting sequence satisfies a linear recurrence with polynomial
coefficients.  The recurrence can be recovered from 30 terms, used to run
the sequence out to n = 2000, and the tail fitted to kappa * rho^n / n^alpha.
"""

from crosswalks.recurrences import TABLE_ROWS, extend, guess_rec, load_catalog, row_asymptotics, verify_ode
from crosswalks.walks import EndSet, sequence

catalog = load_catalog()
entry = catalog.recurrences["vac-A2-even"]
print(entry.anchor)
print(entry.rec)

terms = sequence("vacillating", EndSet.parse("A2"), 30)
guess = guess_rec(terms, 3, 2)
print("guessed the same recurrence:", guess.equivalent(entry.rec))

long = extend(entry.rec, entry.initial, 2001)
print("a(2000) has", len(str(long[-1])), "digits")

ode = catalog.odes["vac-A2-even-ode"]
print("differential equation:", ode.ode)
print("holds on the constant-term series:", verify_ode(ode.ode, ode.source.series_terms(20)))

for row in TABLE_ROWS:
    _, fit = row_asymptotics(row)
    print(f"{row:12s} {fit}")
