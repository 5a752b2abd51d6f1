"""
Separating ideals
=================

The separating ideal of two points is generated by the polynomials that
change sign between them. It is computed as the threshold ideal at the
least value of a sign changer, and comes with a witness that is positive
at the first point and negative at the second.
"""

from fractions import Fraction

from seplab import BranchPoint, TPoly, changes_sign, cone, is_simple, sep, star_condition, successor
from seplab.scenario import parse_poly as P

t = TPoly([0, 1])
alpha = BranchPoint([t**2, t**4 + 2 * t**5], "alpha")
beta = BranchPoint([t**2, t**4 - t**5], "beta")
gamma = BranchPoint([t**2, t**4 + t**5], "gamma")

S = sep(alpha, beta)
print("sep(alpha, beta):", S.ideal, " value", S.gamma_alpha, " witness", S.witness)
print("  successors:", successor(alpha, S.ideal), successor(beta, S.ideal))
print("  simple:", is_simple(alpha, S.ideal), " one-step quotients:", star_condition(alpha, beta))

# alpha and gamma agree further; only quartic-in-y combinations separate them
T = sep(alpha, gamma)
print("sep(alpha, gamma): value", T.gamma_alpha, " ideal", T.ideal)

# f_lam = (y - x^2)^2 - lam*x^5 changes sign exactly for lam in [1, 4]
for lam in ("1/2", "1", "2", "4", "9/2"):
    f = P("(y - x^2)^2") - Fraction(lam) * P("x^5")
    print(f"  lam = {lam:>3}: changes sign {changes_sign(alpha, gamma, f)}")

C = cone(alpha, gamma)
print("quotient dimension", C.dimension, " extreme rays:", [str(r) for r in C.rays])
