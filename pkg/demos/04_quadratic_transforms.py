"""
Quadratic transforms
====================

Blowing up the origin and following a point gives a new local ring with a
lifted point. In two variables the separating ideal of the lifts is the
transform of the separating ideal; in three variables it can be strictly
larger.
"""

from seplab import (
    BranchPoint,
    TPoly,
    chain_along,
    check_lemma32,
    check_thm47,
    sep,
    transform_point,
)
from seplab.errors import NotCenteredError

t = TPoly([0, 1])
alpha = BranchPoint([t**2, t**4 + 2 * t**5], "alpha")
gamma = BranchPoint([t**2, t**4 + t**5], "gamma")

ch = chain_along(alpha, 3)
a, g = alpha, gamma
for step, nxt in zip(ch.steps, ch.points[1:]):
    g = transform_point(g, step)[1]
    a = nxt
    S = sep(a, g)
    print(f"chart {step}: lift {a}")
    print(f"   separating ideal {S.ideal}, value {S.gamma_alpha}")

r = check_thm47(alpha, gamma)
print("transform of sep == sep of lifts:", r.a_holds, " pulled back:", r.b_holds)
print("  ", r.lhs, "==", r.rhs)

# opposite half-branches along one tangent: separated by m, apart after two blow-ups
p = BranchPoint([t, t**2], "p")
q = BranchPoint([-t, -(t**2)], "q")
step, p1 = transform_point(p)
_, q1 = transform_point(q, step)
print("sep(p, q) =", sep(p, q).ideal, " sep(p', q') =", sep(p1, q1).ideal)
try:
    transform_point(q1, transform_point(p1)[0])
except NotCenteredError as exc:
    print("  second blow-up:", exc)

# three variables: containment is proper
g1 = BranchPoint([t**6, t**10 + t**11, t**14 + t**15], "g1")
g3 = BranchPoint([t**6, t**10 + 3 * t**11, t**14 + t**15], "g3")
rep = check_lemma32(g1, g3)
print("3 variables: v(T(I)) =", rep.value_transformed, " v(sep of lifts) =",
      rep.value_lifted_sep, " proper:", rep.proper)
