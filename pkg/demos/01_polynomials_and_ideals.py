"""
Polynomials and ideals at the origin
====================================

Ideals here live in the local ring at the origin, so units like ``1 + x``
may be divided out. Every predicate is decided by exact linear algebra
once the ideal contains a power of the maximal ideal.
"""

from seplab import Ideal, ideal_equal, membership, minimal_generators, mpower_in
from seplab.ring import ideal_ord, ideal_product
from seplab.scenario import parse_poly as P

# canonical form: ascending degree, lowest term normalized to +1
f = P("(y - x)^2")
print("f =", f)

I = Ideal([P("y - x^2"), P("x*y"), P("y^2")], 2)
print("I =", I, " order", ideal_ord(I))

# x^3 = x*y - x*(y - x^2), while x^2 only has value 4 on a curve where I starts at 5
print("x^3 in I:", membership(P("x^3"), I))
print("x^2 in I:", membership(P("x^2"), I))

# the smallest k with m^k inside I certifies all of the above
print("m^k in I for k =", mpower_in(I))

# y^2 = y*(y - x^2) + x*(x*y), so it is redundant
print("minimal generators:", [str(g) for g in minimal_generators(I)])

m = Ideal.maximal(2)
print("m*m =", ideal_product(m, m))
print("(y, x^2)(x, y) == (xy, y^2, x^3, x^2y):",
      ideal_equal(ideal_product(Ideal([P("y"), P("x^2")], 2), m),
                  Ideal([P("x*y"), P("y^2"), P("x^3"), P("x^2*y")], 2)))

# local units: x*(1 + x) and x generate the same ideal near the origin
print("x in (x + x^2, y):", membership(P("x"), Ideal([P("x + x^2"), P("y")], 2)))
