"""Separating ideals and the structure around them.

The threshold value is found by walking the sign stream of one point and,
for each candidate leading functional, asking whether some polynomial with
that leading term can have the opposite (or zero) sign at the other point.
Each question is a small homogeneous sign system handed to
:func:`~seplab.exact.sign_feasible`.  The separating ideal itself is then
the v-ideal of that value, which is legitimate because a separating ideal is
a v-ideal for both points.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DegreeError, HypothesisError, NotVIdealError
from .exact import INF, Echelon, SignSystem, nullspace, sign, sign_feasible
from .point import (
    _stream,
    coordinate_values,
    ideal_value,
    level_ranks,
    mpower_degree,
    next_value,
    same_point,
    sign_at,
    support,
    val,
    value_semigroup,
    videal,
)
from .ring import (
    DEFAULT_BOUND,
    DegreeBound,
    Ideal,
    Poly,
    _local_span,
    ideal_equal,
    ideal_intersection,
    ideal_product,
    mpower_in,
)


@dataclass(frozen=True)
class SepResult:
    gamma_alpha: object
    gamma_beta: object
    witness: Poly
    ideal: Ideal
    is_maximal: bool
    support_case: bool = False
    degree: int = 0
    certified: bool = True

    @property
    def generators(self):
        return list(self.ideal.gens)


@dataclass(frozen=True)
class ConeResult:
    dimension: int
    rays: tuple = ()
    basis: tuple = ()
    extreme: bool = True
    modulus: Ideal = None
    degree: int = 0


def changes_sign(alpha, beta, f):
    a, b = sign_at(alpha, f), sign_at(beta, f)
    return (a >= 0 and b <= 0) or (a <= 0 and b >= 0)


# ---------------------------------------------------------------------------
# threshold search


def _dense(L, size):
    row = [Fraction(0)] * size
    for i, c in L.items():
        row[i] = c
    return tuple(row)


def _proportional(r, base):
    """``c`` with ``r == c*base`` (both reduced sparse vectors), else None."""
    p = min(base)
    c = r.get(p, 0) / base[p]
    if not c or set(r) != set(base):
        return None
    return c if all(r[k] == c * base[k] for k in base) else None


def _one_sided(sa, sb):
    """Least ``sa``-value of a polynomial positive at the first point and
    ``<= 0`` at the second; returns ``(value, coefficient vector)`` or None."""
    size = sa.arity
    eqs = Echelon()
    eq_rows = []
    for Lj, vj, mj in zip(sa.functionals, sa.values, sa.multipliers):
        rj = eqs.reduce(Lj)
        if not rj:
            continue
        lead = (_dense(Lj, size), ">0" if mj > 0 else "<0")
        other = None
        blocked = False
        for Lk, mk in zip(sb.functionals, sb.multipliers):
            r = eqs.reduce(Lk)
            if not r:
                continue
            c = _proportional(r, rj)
            if c is None:
                other = (_dense(Lk, size), "<0" if mk > 0 else ">0")
                break
            if mk * mj * sign(c) > 0:
                blocked = True
            break
        if not blocked:
            cons = (lead,) + ((other,) if other else ())
            x = sign_feasible(SignSystem(size, tuple(eq_rows), cons))
            if x is not None:
                return vj, {i: c for i, c in enumerate(x) if c}
        eqs.add(Lj)
        eq_rows.append(_dense(Lj, size))
    return None


def _primitive(f):
    """Positive rescaling of ``f`` to a primitive integer polynomial."""
    if not f:
        return f
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in f.terms.values():
        num = gcd(num, int(c * den))
    return f * Fraction(den, num)


def _schedule(bound):
    D = 1
    while D <= bound.D:
        yield D
        D += 1
    D = bound.D + 4
    while D <= bound.D_max:
        yield D
        D += 4


def _trivial_point(alpha):
    return all(v == INF for v in coordinate_values(alpha))


@lru_cache(maxsize=256)
def _sep(alpha, beta, bound):
    n = alpha.nvars
    if beta.nvars != n:
        raise ValueError("points live in different rings")
    if same_point(alpha, beta):
        S = support(alpha, bound)
        return SepResult(INF, INF, Poly.const(0, n), S, False, True, bound.D)
    m = Ideal.maximal(n)
    if _trivial_point(alpha) or _trivial_point(beta):
        gens = Poly.gens(n)
        if _trivial_point(beta):
            w = min(gens, key=lambda g: val(alpha, g))
            w = -w if sign_at(alpha, w) < 0 else w
        else:
            w = min(gens, key=lambda g: val(beta, g))
            w = -w if sign_at(beta, w) > 0 else w
        return SepResult(ideal_value(alpha, m), ideal_value(beta, m), w, m, True, False, 1)

    found = None
    skip_to = 0
    for D in _schedule(bound):
        if D < skip_to:
            continue
        sa, sb = _stream(alpha, D), _stream(beta, D)
        ra, rb = _one_sided(sa, sb), _one_sided(sb, sa)
        if ra is None or rb is None:
            continue
        K = max(mpower_degree(alpha, ra[0] + 1), mpower_degree(beta, rb[0] + 1))
        found = (D, ra, rb)
        if K - 1 <= D:
            break
        skip_to = K - 1
    else:
        if found is None:
            raise DegreeError(
                f"no sign-changing polynomial of degree <= {bound.D_max} was found"
            )
    D, (ga, va), (gb, vb) = found
    certified = max(mpower_degree(alpha, ga + 1), mpower_degree(beta, gb + 1)) - 1 <= D
    fa = Poly.from_vector(va, n, D)
    fb = Poly.from_vector(vb, n, D)
    w = _primitive(fa - fb)
    # exact re-verification of the search result
    if not (sign_at(alpha, w) > 0 > sign_at(beta, w) and val(alpha, w) == ga and val(beta, w) == gb):
        raise RuntimeError(f"witness {w} failed exact re-verification")
    work = DegreeBound(max(bound.D, D), bound.certified, max(bound.D_max, D))
    I = videal(alpha, ga, work)
    return SepResult(ga, gb, w, I, I.is_maximal(work), False, D, certified)


def sep(alpha, beta, bound=DEFAULT_BOUND):
    """Separating ideal of two points centered at the origin.

    ``gamma_alpha`` is the least value at ``alpha`` of a polynomial that
    changes sign between the points; the ideal is the v-ideal of that value.
    The witness satisfies ``w(alpha) > 0 > w(beta)`` and realizes both
    threshold values.  ``certified`` is False when the working degree was
    not large enough to rule out lower-valued sign changes of higher degree.
    """
    return _sep(alpha, beta, bound)


# ---------------------------------------------------------------------------
# V(alpha, beta) and its cone


def _level_functionals(alpha, gamma, D):
    s = _stream(alpha, D)
    return [(L, m) for L, v, m in zip(s.functionals, s.values, s.multipliers) if v == gamma]


def _lex_sign(funcs, vec):
    for L, m in funcs:
        s = sum((c * vec.get(i, 0) for i, c in L.items()), Fraction(0))
        if s:
            return m * sign(s)
    return 0


def cone(alpha, beta, bound=DEFAULT_BOUND):
    """Dimension of ``V = I/(I^alpha cap I^beta)`` and the extreme rays of the
    residues changing sign from ``>= 0`` at ``alpha`` to ``<= 0`` at ``beta``."""
    S = sep(alpha, beta, bound)
    n = alpha.nvars
    if S.support_case:
        return ConeResult(0)
    if S.ideal.is_unit():
        raise HypothesisError("the separating ideal is the unit ideal")
    ga, gb = S.gamma_alpha, S.gamma_beta
    Ia = videal(alpha, next_value(alpha, ga, bound), bound)
    Ib = videal(beta, next_value(beta, gb, bound), bound)
    L = ideal_intersection(Ia, Ib, bound)
    K = max(mpower_in(L, bound), 1)
    span = _local_span(L, K, K).copy()
    basis = []
    for v in _local_span(S.ideal, K, K).basis():
        if span.add(v):
            basis.append(v)
    dim = len(basis)
    if dim == 0:
        return ConeResult(0)
    D = K - 1
    fa = _level_functionals(alpha, ga, D)
    fb = _level_functionals(beta, gb, D)

    def combo(coeffs):
        out = {}
        for c, v in zip(coeffs, basis):
            for i, a in v.items():
                out[i] = out.get(i, 0) + c * a
        return {i: a for i, a in out.items() if a}

    def in_cone(coeffs):
        vec = combo(coeffs)
        return _lex_sign(fa, vec) >= 0 and _lex_sign(fb, vec) <= 0

    def restricted(funcs):
        rows = []
        for Lf, _ in funcs:
            row = tuple(sum((c * v.get(i, 0) for i, c in Lf.items()), Fraction(0)) for v in basis)
            if any(row):
                rows.append(row)
        return rows

    cands = []
    if dim == 1:
        cands = [(Fraction(1),), (Fraction(-1),)]
    elif dim == 2:
        for row in restricted(fa) + restricted(fb):
            r = (-row[1], row[0])
            cands += [r, tuple(-c for c in r)]
    else:
        cands = [tuple(Fraction(int(i == j)) for i in range(dim)) for j in range(dim)]
        cands += [tuple(-c for c in r) for r in cands]
    rays = []
    for r in cands:
        if in_cone(r) and not any(_parallel(r, q) for q in rays):
            rays.append(r)
    extreme = dim <= 2
    if dim == 2 and len(rays) > 2:
        rays = [r for r in rays if not _between(r, rays)]
    polys = tuple(_primitive(Poly.from_vector(combo(r), n, D)) for r in rays)
    polys = tuple(sorted(polys, key=lambda p: (p.ord(), str(p))))
    vbasis = tuple(Poly.from_vector(v, n, D) for v in basis)
    return ConeResult(dim, polys, vbasis, extreme, L, K)


def residue_coordinates(C, f):
    """Coordinates of the residue of ``f`` in the basis of ``C.basis``,
    or None when ``f`` is not in the span."""
    if not C.dimension:
        return None
    K = C.degree
    span = _local_span(C.modulus, K, K)
    red = [span.reduce(b.truncate(K).to_vector(K - 1)) for b in C.basis]
    v = span.reduce(f.truncate(K).to_vector(K - 1))
    cols = sorted(set().union(v, *red))
    rows = [[r.get(j, 0) for r in red] + [-v.get(j, 0)] for j in cols]
    if not rows:
        return tuple(Fraction(0) for _ in red)
    for sol in nullspace(rows, len(red) + 1):
        if sol[-1]:
            return tuple(c / sol[-1] for c in sol[:-1])
    return None


def _parallel(r, q):
    """Same ray (positive multiple)."""
    det = r[0] * q[1] - r[1] * q[0] if len(r) == 2 else None
    if det is None:
        return r[0] * q[0] > 0
    if det:
        return False
    return sum(a * b for a, b in zip(r, q)) > 0


def _between(r, rays):
    for p in rays:
        for q in rays:
            if p is r or q is r or p is q:
                continue
            det = p[0] * q[1] - p[1] * q[0]
            if not det:
                continue
            lam = (r[0] * q[1] - r[1] * q[0]) / det
            mu = (p[0] * r[1] - p[1] * r[0]) / det
            if lam > 0 and mu > 0:
                return True
    return False


def star_condition(alpha, beta, bound=DEFAULT_BOUND):
    """Every quotient of consecutive v-ideals strictly containing the
    separating ideal is one-dimensional."""
    S = sep(alpha, beta, bound)
    if S.support_case:
        raise HypothesisError("the points coincide")
    g = S.gamma_alpha
    if g == INF:
        raise HypothesisError("the separating ideal is not m-primary")
    D = max(mpower_degree(alpha, g) - 1, 1)
    return all(r == 1 for v, r in level_ranks(alpha, D).items() if v < g)


def is_simple(alpha, I, bound=DEFAULT_BOUND):
    """True when the v-ideal ``I`` is not a product of two proper v-ideals."""
    g = ideal_value(alpha, I)
    if g == INF or g < 1 or not ideal_equal(I, videal(alpha, g, bound), bound):
        raise NotVIdealError(f"{I} is not an m-primary value-threshold ideal")
    values = sorted(v for v in value_semigroup(alpha, bound, g) if v >= 1)
    for g1 in values:
        g2 = g - g1
        if g2 < g1:
            break
        if g2 not in values:
            continue
        prod = ideal_product(videal(alpha, g1, bound), videal(alpha, g2, bound))
        if ideal_equal(prod, I, bound):
            return False
    return True
