"""Polynomials over the rationals in 2 or 3 variables and m-primary ideals of
the local ring at the origin.

Ideal predicates use bounded-degree linear algebra.  Once an ideal ``I`` is
known to contain ``m**k`` (certified by :func:`mpower_in`), ``I`` is
determined by its image in ``A/m**k`` and every test below is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UncertifiedError, ZeroIdealError
from .exact import INF, Echelon, frac, nullspace

VARNAMES = ("x", "y", "z")


# ---------------------------------------------------------------------------
# monomials


def term_key(exps):
    # graded lexicographic with x > y > z
    return (sum(exps), exps)


@lru_cache(maxsize=None)
def monomials_of_degree(n, d):
    if n == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            out.append((a,) + rest)
    return tuple(sorted(out, key=term_key))


@lru_cache(maxsize=None)
def monomial_basis(n, deg):
    """Monomials of total degree ``<= deg`` in ascending graded-lex order."""
    out = []
    for d in range(deg + 1):
        out.extend(monomials_of_degree(n, d))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n, deg):
    return {m: i for i, m in enumerate(monomial_basis(n, deg))}


def format_terms(items, names=VARNAMES):
    """Render ``(exponents, coefficient)`` pairs in the given order."""
    parts = []
    for exps, c in items:
        if not c:
            continue
        mono = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
        )
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Sparse polynomial ``{exponent tuple: Fraction}`` in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms, nvars):
        self.nvars = nvars
        self.terms = {tuple(e): frac(c) for e, c in dict(terms).items() if c}
        for e in self.terms:
            if len(e) != nvars:
                raise ValueError(f"monomial {e} does not have {nvars} exponents")
        self._hash = None

    @classmethod
    def const(cls, c, nvars):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def gens(cls, nvars):
        return tuple(cls.var(i, nvars) for i in range(nvars))

    @classmethod
    def monomial(cls, exps, c=1):
        return cls({tuple(exps): c}, len(exps))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_terms(self.sorted_terms())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly({e: c * other for e, c in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Poly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def ord(self):
        return min((sum(e) for e in self.terms), default=INF)

    def homogeneous_part(self, d):
        return Poly({e: c for e, c in self.terms.items() if sum(e) == d}, self.nvars)

    def truncate(self, below):
        """Drop all terms of total degree ``>= below``."""
        return Poly({e: c for e, c in self.terms.items() if sum(e) < below}, self.nvars)

    def leading(self):
        """Lowest term in graded-lex order (the local leading term)."""
        return min(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def normalized(self):
        if not self.terms:
            return self
        return self * (1 / self.leading()[1])

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def subs(self, values, one=None):
        """Substitute ``values[i]`` for variable ``i`` (any ring elements)."""
        if one is None:
            one = values[0] ** 0 if values else 1
        cache = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = one if e == 0 else (values[i] if e == 1 else power(i, e - 1) * values[i])
            return cache[key]

        total = one * 0
        for exps, c in self.terms.items():
            term = one * c
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def to_vector(self, n_deg):
        """Sparse coordinate vector on :func:`monomial_basis` (truncating)."""
        idx = monomial_index(self.nvars, n_deg)
        return {idx[e]: c for e, c in self.terms.items() if e in idx}

    @classmethod
    def from_vector(cls, v, nvars, deg):
        basis = monomial_basis(nvars, deg)
        items = v.items() if isinstance(v, dict) else enumerate(v)
        return cls({basis[i]: c for i, c in items if c}, nvars)


def ord_local(f):
    return f.ord()


def _gen_key(p):
    lt = p.leading()[0]
    return (sum(lt), tuple(-e for e in lt), [(term_key(e), c) for e, c in p.sorted_terms()])


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class DegreeBound:
    """Working degree for ideal computations.

    ``certified=True`` asks predicates to raise :class:`UncertifiedError`
    rather than fall back to bounded polynomial-ring semantics.
    """

    D: int = 12
    certified: bool = False
    D_max: int = 32

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("degree bound must be at least 1")

    def escalated(self):
        return DegreeBound(min(self.D + 4, self.D_max), self.certified, self.D_max)


DEFAULT_BOUND = DegreeBound()


class Ideal:
    """Finitely generated ideal; generators are canonical and sorted."""

    __slots__ = ("gens", "nvars", "_hash")

    def __init__(self, gens, nvars=None):
        gens = list(gens)
        if nvars is None:
            if not gens:
                raise ValueError("cannot infer nvars of an empty generator list")
            nvars = gens[0].nvars
        canon = []
        for g in gens:
            if g.nvars != nvars:
                raise ValueError("variable count mismatch")
            if g:
                canon.append(g.normalized())
        if any(g.ord() == 0 for g in canon):
            canon = [Poly.const(1, nvars)]
        self.gens = tuple(sorted(set(canon), key=_gen_key))
        self.nvars = nvars
        self._hash = None

    @classmethod
    def maximal(cls, nvars):
        return cls(Poly.gens(nvars), nvars)

    @classmethod
    def unit(cls, nvars):
        return cls([Poly.const(1, nvars)], nvars)

    def __repr__(self):
        return f"Ideal({self})"

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.gens) + "]"

    def __eq__(self, other):
        return isinstance(other, Ideal) and (self.nvars, self.gens) == (other.nvars, other.gens)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.gens))
        return self._hash

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(g.ord() == 0 for g in self.gens)

    def is_maximal(self, bound=DEFAULT_BOUND):
        return ideal_equal(self, Ideal.maximal(self.nvars), bound)


def ideal_ord(I):
    if I.is_zero():
        raise ZeroIdealError("the zero ideal has no order")
    return min(g.ord() for g in I.gens)


@lru_cache(maxsize=4096)
def _local_span(I, k, reach):
    """Span of ``g*mu`` truncated below degree ``k``, with ``deg mu < reach``."""
    n = I.nvars
    e = Echelon()
    idx = monomial_index(n, k - 1)
    for g in I.gens:
        gt = g.truncate(k)
        for d in range(reach):
            if g.ord() + d >= k:
                break
            for mu in monomials_of_degree(n, d):
                v = {}
                for ex, c in gt.terms.items():
                    ee = tuple(a + b for a, b in zip(ex, mu))
                    if sum(ee) < k:
                        v[idx[ee]] = c
                e.add(v)
    return e


@lru_cache(maxsize=4096)
def _mpower(I, D):
    if I.is_zero():
        return None
    if I.is_unit():
        return 0
    n = I.nvars
    for k in range(1, D + 1):
        span = _local_span(I, k + 1, k + 1)
        idx = monomial_index(n, k)
        if all(span.contains({idx[m]: Fraction(1)}) for m in monomials_of_degree(n, k)):
            return k
    return None


def mpower_in(I, bound=DEFAULT_BOUND):
    """Least ``k <= bound.D`` with ``m**k`` inside ``I``; None if there is none."""
    return _mpower(I, bound.D)


@lru_cache(maxsize=4096)
def _poly_span(I, D):
    n = I.nvars
    e = Echelon()
    for g in I.gens:
        for d in range(D - g.degree() + 1):
            for mu in monomials_of_degree(n, d):
                e.add((g * Poly.monomial(mu)).to_vector(D))
    return e


def membership(f, I, bound=DEFAULT_BOUND):
    """Decide ``f in I`` in the local ring at the origin.

    Exact when ``I`` contains a power of ``m`` within ``bound.D``; otherwise
    falls back to the span of ``g*mu`` of degree ``<= max(deg f, D)`` in the
    polynomial ring (or raises if ``bound.certified``).
    """
    if not f:
        return True
    if I.is_zero():
        return False
    k = mpower_in(I, bound)
    if k is not None:
        if k == 0:
            return True
        span = _local_span(I, k, k)
        return span.contains(f.truncate(k).to_vector(k - 1))
    if bound.certified:
        raise UncertifiedError(f"no power of m inside the ideal up to degree {bound.D}")
    D = max(f.degree(), bound.D)
    return _poly_span(I, D).contains(f.to_vector(D))


def contains(I, J, bound=DEFAULT_BOUND):
    return all(membership(g, I, bound) for g in J.gens)


def ideal_equal(I, J, bound=DEFAULT_BOUND):
    return contains(I, J, bound) and contains(J, I, bound)


def ideal_product(I, J):
    if I.nvars != J.nvars:
        raise ValueError("variable count mismatch")
    return Ideal([g * h for g in I.gens for h in J.gens], I.nvars)


def ideal_sum(I, J):
    if I.nvars != J.nvars:
        raise ValueError("variable count mismatch")
    return Ideal(I.gens + J.gens, I.nvars)


def mpower_ideal(k, nvars):
    return Ideal([Poly.monomial(m) for m in monomials_of_degree(nvars, k)], nvars)


def _require_mpower(I, bound):
    k = mpower_in(I, bound)
    if k is None:
        raise UncertifiedError(f"ideal {I} contains no power of m up to degree {bound.D}")
    return k


def minimal_generators(I, bound=DEFAULT_BOUND):
    """A minimal generating set, chosen greedily from ``I.gens``.

    A generator is kept when it is independent of ``m*I`` plus the
    generators kept before it, computed modulo ``m**(k+1)``.
    """
    if I.is_zero() or I.is_unit():
        return list(I.gens)
    k = _require_mpower(I, bound)
    n = I.nvars
    mI = Ideal([x * g for x in Poly.gens(n) for g in I.gens], n)
    span = _local_span(mI, k + 1, k + 1).copy()
    chosen = []
    for g in I.gens:
        if span.add(g.truncate(k + 1).to_vector(k)):
            chosen.append(g)
    return chosen


def minimalize(I, bound=DEFAULT_BOUND):
    return Ideal(minimal_generators(I, bound), I.nvars)


def subspace_ideal(vectors, nvars, k):
    """Ideal generated by polynomials (as vectors on the degree-``<=k`` basis)
    together with ``m**k``; generators come from the reduced echelon basis."""
    e = Echelon(vectors)
    gens = [Poly.from_vector(v, nvars, k) for v in e.basis()]
    gens += [Poly.monomial(m) for m in monomials_of_degree(nvars, k)]
    return Ideal(gens, nvars)


def _annihilator(I, K):
    n = I.nvars
    size = len(monomial_basis(n, K - 1))
    rows = []
    for v in _local_span(I, K, K).basis():
        row = [Fraction(0)] * size
        for i, c in v.items():
            row[i] = c
        rows.append(row)
    return nullspace(rows, size) if rows else [
        [Fraction(int(i == j)) for i in range(size)] for j in range(size)
    ]


def ideal_intersection(I, J, bound=DEFAULT_BOUND):
    """Intersection of two m-primary ideals, computed modulo a common ``m**K``."""
    K = max(_require_mpower(I, bound), _require_mpower(J, bound), 1)
    n = I.nvars
    size = len(monomial_basis(n, K - 1))
    ann = _annihilator(I, K) + _annihilator(J, K)
    vecs = nullspace(ann, size)
    sparse = [{i: c for i, c in enumerate(v) if c} for v in vecs]
    return minimalize(subspace_ideal(sparse, n, K), bound)


def quotient_dimension(I, J, bound=DEFAULT_BOUND):
    """``dim_k(I/J)`` for m-primary ``J`` contained in ``I``."""
    K = max(_require_mpower(J, bound), 1)
    return _local_span(I, K, K).rank - _local_span(J, K, K).rank


def random_poly(rng, nvars, deg, coeff_range=3, density=0.6, min_ord=0):
    terms = {}
    for d in range(min_ord, deg + 1):
        for m in monomials_of_degree(nvars, d):
            if rng.random() < density:
                terms[m] = rng.randint(-coeff_range, coeff_range)
    return Poly(terms, nvars)

