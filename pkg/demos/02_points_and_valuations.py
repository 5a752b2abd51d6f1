"""
Points, orderings and v-ideals
==============================

A branch is a parameterized arc ``t -> (x(t), y(t))`` with ``t`` a positive
infinitesimal. It orders polynomials by the sign of their image and values
them by its order in ``t``. Divisorial points carry a chain of quadratic
transforms plus an ordering of the residue field.
"""

from seplab import (
    BranchPoint,
    ChainStep,
    DivisorialPoint,
    TPoly,
    evaluate,
    sign_at,
    support,
    val,
    value_semigroup,
    videal,
)
from seplab.ring import DegreeBound
from seplab.scenario import parse_poly as P

t = TPoly([0, 1])
alpha = BranchPoint([t**2, t**4 + 2 * t**5], "alpha")
beta = BranchPoint([t**2, t**4 - t**5], "beta")

f = P("y - x^2")
print("f(alpha) =", evaluate(alpha, f), " f(beta) =", evaluate(beta, f))
print("v_alpha(f) =", val(alpha, f), " signs:", sign_at(alpha, f), sign_at(beta, f))

# attained values and the threshold ideals they index
print("values up to 10:", sorted(value_semigroup(alpha, gamma_max=10)))
for g in (2, 4, 5, 6):
    print(f"  v >= {g}:", videal(alpha, g))

# the arc lies on a quintic, found once degree 5 is allowed
print("support at degree 4:", support(alpha, DegreeBound(4)))
print("support at degree 5:", support(alpha, DegreeBound(5)))

# one blow-up at the origin; s = y'/x' sits just above 0 in the residue field
d = DivisorialPoint([ChainStep(0, 0)], "0+", 1, "d")
for text in ("x", "y", "y - x^2", "y - x"):
    g = P(text)
    print(f"  d: v({g}) = {val(d, g)}, sign {sign_at(d, g):+d}")
