"""Points of the real spectrum centered at the origin.

Two encodings are supported:

* :class:`BranchPoint` -- a homomorphism into series in a positive
  infinitesimal ``t``, given by one rational function per coordinate.  The
  valuation is the ``t``-order of the image.
* :class:`DivisorialPoint` -- the order valuation of the local ring reached
  by a chain of quadratic transforms, together with an ordering of its
  residue field ``k(s)`` (a cut of the rationals) and the sign ``eps`` of the
  first terminal coordinate, which is a uniformizer.

Everything downstream goes through :func:`sign_stream`: an ordered list of
linear functionals on the coefficient space of polynomials of degree
``<= D`` such that the first functional that does not vanish on ``f``
determines both the value and the sign of ``f``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb
from typing import Union

from .errors import TruncationError, UncertifiedError, NotVIdealError
from .exact import INF, Echelon, TPoly, TRat, frac, nullspace, sign
from .ring import (
    DEFAULT_BOUND,
    Ideal,
    Poly,
    _poly_span,
    ideal_equal,
    minimalize,
    monomial_basis,
    subspace_ideal,
)


# ---------------------------------------------------------------------------
# encodings


@dataclass(frozen=True)
class ChainStep:
    """One quadratic transform: divide by coordinate ``divisor``, then
    translate each other coordinate by ``shifts[i]``.

    In two variables ``ChainStep(0, c)`` is the chart ``x' = x``,
    ``y' = y/x - c``.
    """

    divisor: int
    shifts: tuple = ()

    def __init__(self, divisor, c=0, nvars=2):
        if isinstance(c, (tuple, list)):
            shifts = tuple(frac(v) for v in c)
        else:
            shifts = tuple(Fraction(0) if i == divisor else frac(c) for i in range(nvars))
        if not 0 <= divisor < len(shifts):
            raise ValueError(f"divisor index {divisor} out of range")
        if shifts[divisor] != 0:
            raise ValueError("the divisor coordinate is not translated")
        object.__setattr__(self, "divisor", divisor)
        object.__setattr__(self, "shifts", shifts)

    @property
    def nvars(self):
        return len(self.shifts)

    @property
    def c(self):
        others = [s for i, s in enumerate(self.shifts) if i != self.divisor]
        return others[0] if len(others) == 1 else tuple(others)

    def __str__(self):
        name = "xyz"[self.divisor]
        c = self.c
        cs = ", ".join(str(v) for v in c) if isinstance(c, tuple) else str(c)
        return f"({name}, {cs})"

    def substitution(self):
        """Old coordinates as polynomials in the new ones."""
        n = self.nvars
        new = Poly.gens(n)
        d = new[self.divisor]
        return [d if i == self.divisor else d * (new[i] + self.shifts[i]) for i in range(n)]


@dataclass(frozen=True)
class Cut:
    """Ordering of ``k(s)``: ``s`` sits just above/below ``q``, or at an end.

    ``q=None`` encodes ``+inf`` (side +1) or ``-inf`` (side -1).
    """

    q: object
    side: int

    @classmethod
    def parse(cls, text):
        text = text.strip().replace(" ", "")
        if text in ("+inf", "inf", "+oo", "oo"):
            return cls(None, 1)
        if text in ("-inf", "-oo"):
            return cls(None, -1)
        if not text or text[-1] not in "+-":
            raise ValueError(f"cut {text!r} must end in '+' or '-'")
        return cls(Fraction(text[:-1]), 1 if text[-1] == "+" else -1)

    def __str__(self):
        if self.q is None:
            return "+inf" if self.side > 0 else "-inf"
        return f"{self.q}{'+' if self.side > 0 else '-'}"

    def sign_of(self, phi):
        """Sign of the polynomial ``phi`` (coefficients, lowest first) at the cut."""
        phi = [frac(c) for c in phi]
        while phi and phi[-1] == 0:
            phi.pop()
        if not phi:
            return 0
        if self.q is None:
            return sign(phi[-1]) * (self.side ** (len(phi) - 1))
        for k in range(len(phi)):
            a = sum(comb(i, k) * self.q ** (i - k) * phi[i] for i in range(k, len(phi)))
            if a:
                return sign(a) * self.side ** k
        return 0


@dataclass(frozen=True)
class BranchPoint:
    """Point given by images of the coordinates in the ordered ring of ``t``."""

    images: tuple
    name: str = field(default="", compare=False)

    def __init__(self, images, name=""):
        imgs = tuple(TRat.coerce(v) for v in images)
        for v in imgs:
            if v and v.ord() < 1:
                raise ValueError(f"image {v} is not centered at the origin")
        object.__setattr__(self, "images", imgs)
        object.__setattr__(self, "name", name)

    @property
    def nvars(self):
        return len(self.images)

    def __str__(self):
        names = "xyz"
        body = ", ".join(f'{names[i]} = "{v}"' for i, v in enumerate(self.images))
        return f"branch {{ {body} }}"


@dataclass(frozen=True)
class DivisorialPoint:
    """Order valuation at the end of ``chain`` with a Baer-Krull ordering.

    The terminal coordinates ``(u, w)`` are the coordinates after the last
    step; ``s`` is the residue of ``w/u`` and ``eps`` the sign of ``u``.
    An empty chain is the order valuation of the base ring itself.
    """

    chain: tuple
    cut: Cut
    eps: int = 1
    name: str = field(default="", compare=False)

    def __init__(self, chain, cut, eps=1, name=""):
        chain = tuple(chain)
        for st in chain:
            if st.nvars != 2:
                raise ValueError("divisorial points are implemented in two variables")
            if st.divisor == 1 and st.c != 0:
                raise ValueError("non-canonical chart: a y-divisor step must have c = 0")
        if isinstance(cut, str):
            cut = Cut.parse(cut)
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        object.__setattr__(self, "chain", chain)
        object.__setattr__(self, "cut", cut)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "name", name)

    nvars = 2

    def __str__(self):
        steps = ", ".join(str(s) for s in self.chain)
        eps = "+1" if self.eps > 0 else "-1"
        return f'divisorial {{ chain = [{steps}], cut = "{self.cut}", eps = {eps} }}'


RealPoint = Union[BranchPoint, DivisorialPoint]


@lru_cache(maxsize=1024)
def terminal_map(chain, nvars=2):
    """Original coordinates as polynomials in the terminal coordinates."""
    exprs = list(Poly.gens(nvars))
    for st in chain:
        sub = st.substitution()
        exprs = [e.subs(sub) for e in exprs]
    return tuple(exprs)


# ---------------------------------------------------------------------------
# evaluation, value, sign


def evaluate(alpha, f):
    if alpha.nvars != f.nvars:
        raise ValueError("variable count mismatch")
    return f.subs(list(alpha.images), one=TRat(1))


def _rewrite(alpha, f):
    return f.subs(list(terminal_map(alpha.chain)))


def val(alpha, f):
    """Value of the polynomial ``f`` (``INF`` on the support)."""
    if isinstance(alpha, BranchPoint):
        return evaluate(alpha, f).ord()
    return _rewrite(alpha, f).ord()


def ideal_value(alpha, I):
    return min((val(alpha, g) for g in I.gens), default=INF)


def _divisorial_sign(alpha, F):
    d = F.ord()
    if d == INF:
        return 0
    phi = [F.coeff((d - i, i)) for i in range(d + 1)]
    return alpha.eps ** d * alpha.cut.sign_of(phi)


def sign_at(alpha, f):
    if isinstance(alpha, BranchPoint):
        return evaluate(alpha, f).sign()
    return _divisorial_sign(alpha, _rewrite(alpha, f))


def dim_point(alpha):
    return 1 if isinstance(alpha, DivisorialPoint) else 0


def point_key(alpha):
    if isinstance(alpha, BranchPoint):
        return ("branch", alpha.images)
    return ("divisorial", alpha.chain, alpha.cut, alpha.eps)


def same_point(alpha, beta):
    return point_key(alpha) == point_key(beta)


# ---------------------------------------------------------------------------
# sign streams


@dataclass(frozen=True)
class SignStream:
    """Ordered functionals ``(vector, value, multiplier)`` on degree-``<= D``
    coefficient vectors (indices of :func:`monomial_basis`)."""

    functionals: tuple
    values: tuple
    multipliers: tuple
    D: int
    N: int
    nvars: int

    def __len__(self):
        return len(self.functionals)

    @property
    def arity(self):
        return len(monomial_basis(self.nvars, self.D))

    def read(self, vec):
        """``(value, sign)`` of the coefficient vector ``vec``."""
        for L, v, m in zip(self.functionals, self.values, self.multipliers):
            s = sum((c * vec.get(i, 0) for i, c in L.items()), Fraction(0))
            if s:
                return v, m * sign(s)
        return INF, 0


def _branch_numerators(alpha, D):
    """Images of all monomials of degree ``<= D`` over a common denominator
    with constant term 1 (so orders and signs are unchanged)."""
    n = alpha.nvars
    nums = [im.num for im in alpha.images]
    dens = [im.den for im in alpha.images]
    num_pow = [[TPoly([1])] for _ in range(n)]
    den_pow = [[TPoly([1])] for _ in range(n)]
    for i in range(n):
        for _ in range(D):
            num_pow[i].append(num_pow[i][-1] * nums[i])
            den_pow[i].append(den_pow[i][-1] * dens[i])
    out = []
    for m in monomial_basis(n, D):
        p = TPoly([1])
        for i, e in enumerate(m):
            p = p * num_pow[i][e] * den_pow[i][D - e]
        out.append(p)
    return out


@lru_cache(maxsize=512)
def _stream(alpha, D):
    n = alpha.nvars
    if isinstance(alpha, BranchPoint):
        cols = _branch_numerators(alpha, D)
        top = max((p.degree for p in cols), default=-1)
        fun, vals = [], []
        for j in range(top + 1):
            L = {i: p.coeff(j) for i, p in enumerate(cols) if p.coeff(j)}
            if L:
                fun.append(L)
                vals.append(j)
        return SignStream(tuple(fun), tuple(vals), (1,) * len(fun), D, top, n)

    tmap = terminal_map(alpha.chain)
    cols = [Poly.monomial(m).subs(list(tmap)) for m in monomial_basis(n, D)]
    top = max((p.degree() for p in cols), default=-1)
    fun, vals, mults = [], [], []
    eps, cut = alpha.eps, alpha.cut
    for d in range(top + 1):
        rows = [{} for _ in range(d + 1)]
        for col, p in enumerate(cols):
            for e, c in p.terms.items():
                if sum(e) == d:
                    rows[e[1]][col] = c
        if not any(rows):
            continue
        if cut.q is None:
            order = [(rows[i], eps ** d * cut.side ** i) for i in range(d, -1, -1)]
        else:
            order = []
            for k in range(d + 1):
                L = {}
                for i in range(k, d + 1):
                    w = comb(i, k) * cut.q ** (i - k)
                    if w:
                        for col, c in rows[i].items():
                            L[col] = L.get(col, 0) + w * c
                order.append(({k2: v for k2, v in L.items() if v}, eps ** d * cut.side ** k))
        for L, mult in order:
            if L:
                fun.append(L)
                vals.append(d)
                mults.append(mult)
    return SignStream(tuple(fun), tuple(vals), tuple(mults), D, top, n)


def sign_stream(alpha, D, N=None):
    """Exact sign stream of ``alpha`` on polynomials of degree ``<= D``.

    The stream is built from exact images, so it is never truncated
    internally; passing ``N`` smaller than the largest value level raises
    :class:`TruncationError`.
    """
    s = _stream(alpha, D)
    if N is not None and N < s.N:
        raise TruncationError(f"stream needs {s.N} levels, N = {N}")
    return s


# ---------------------------------------------------------------------------
# v-ideals


def coordinate_values(alpha):
    return tuple(val(alpha, x) for x in Poly.gens(alpha.nvars))


def mpower_degree(alpha, gamma):
    """Least ``k`` with every degree-``k`` monomial of value ``>= gamma``."""
    vmin = min(coordinate_values(alpha))
    if gamma <= 0:
        return 0
    if vmin == INF:
        return 1
    return max(1, ceil(gamma / vmin))


def _kernel_vectors(stream, below):
    rows = [L for L, v in zip(stream.functionals, stream.values) if v < below]
    size = stream.arity
    dense = []
    for L in rows:
        r = [Fraction(0)] * size
        for i, c in L.items():
            r[i] = c
        dense.append(r)
    if not dense:
        return [{i: Fraction(1)} for i in range(size)]
    return [{i: c for i, c in enumerate(v) if c} for v in nullspace(dense, size)]


@lru_cache(maxsize=2048)
def _videal(alpha, gamma, D):
    k = mpower_degree(alpha, gamma)
    if k > D:
        raise UncertifiedError(
            f"value {gamma} needs degree {k} > bound {D} to certify a power of m"
        )
    if k == 0:
        return Ideal.unit(alpha.nvars)
    vecs = _kernel_vectors(_stream(alpha, k), gamma)
    return minimalize(subspace_ideal(vecs, alpha.nvars, k))


def videal(alpha, gamma, bound=DEFAULT_BOUND):
    """Minimal generators of ``{f : val(alpha, f) >= gamma}``."""
    if gamma == INF:
        return support(alpha, bound)
    D = bound.D
    while True:
        try:
            return _videal(alpha, gamma, D)
        except UncertifiedError:
            if D >= bound.D_max:
                raise
            D = min(D + 4, bound.D_max)


def level_ranks(alpha, D):
    """``{value: rank step}`` for the stream at degree ``D``.

    The rank step at ``v`` is the dimension of ``{val >= v}/{val > v}``
    inside polynomials of degree ``<= D``; it is positive exactly at
    attained values.
    """
    s = _stream(alpha, D)
    e = Echelon()
    out = {}
    i = 0
    while i < len(s):
        v = s.values[i]
        added = 0
        while i < len(s) and s.values[i] == v:
            added += e.add(s.functionals[i])
            i += 1
        if added:
            out[v] = added
    return out


def value_semigroup(alpha, bound=DEFAULT_BOUND, gamma_max=20):
    """Values ``<= gamma_max`` attained by ``val(alpha, .)`` on the local ring."""
    k = mpower_degree(alpha, gamma_max + 1)
    D = max(k - 1, 1)
    if D > bound.D_max:
        raise TruncationError(f"certifying values up to {gamma_max} needs degree {D}")
    return {v for v in level_ranks(alpha, D) if v <= gamma_max}


def next_value(alpha, gamma, bound=DEFAULT_BOUND):
    """Smallest attained value strictly above ``gamma`` (INF if none)."""
    span = 8
    while True:
        top = gamma + span
        vals = sorted(v for v in value_semigroup(alpha, bound, top) if v > gamma)
        if vals:
            return vals[0]
        if mpower_degree(alpha, top + 1) > bound.D_max:
            return INF
        span *= 2


def successor(alpha, I, bound=DEFAULT_BOUND):
    g = ideal_value(alpha, I)
    if g == INF or not ideal_equal(I, videal(alpha, g, bound), bound):
        raise NotVIdealError(f"{I} is not a value-threshold ideal of the point")
    return videal(alpha, next_value(alpha, g, bound), bound)


def support(alpha, bound=DEFAULT_BOUND):
    """Generators of degree ``<= bound.D`` of the support."""
    n = alpha.nvars
    if isinstance(alpha, DivisorialPoint):
        return Ideal([], n)
    if all(not im for im in alpha.images):
        return Ideal.maximal(n)
    D = bound.D
    vecs = _kernel_vectors(_stream(alpha, D), INF)
    basis = Echelon(vecs).basis()
    polys = sorted((Poly.from_vector(v, n, D) for v in basis), key=lambda p: (p.degree(), str(p)))
    chosen = []
    for p in polys:
        if chosen and _poly_span(Ideal(chosen, n), D).contains(p.to_vector(D)):
            continue
        chosen.append(p)
    return Ideal(chosen, n)
