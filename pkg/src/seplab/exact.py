"""Exact arithmetic: polynomials and rational functions in the infinitesimal
``t``, row reduction over the rationals, and linear sign feasibility.

Rationals are :class:`fractions.Fraction`.  ``t`` is ordered as a positive
infinitesimal, so the sign of a series is the sign of its lowest nonzero
coefficient.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import zip_longest
import math

INF = math.inf

BigRational = Fraction


def frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def sign(x):
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# polynomials in t


class TPoly:
    """Dense univariate polynomial in ``t`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``; the last stored
    coefficient is nonzero (the zero polynomial stores nothing).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    def __repr__(self):
        return f"TPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        from .ring import format_terms

        return format_terms((((i,), c) for i, c in enumerate(self.coeffs)), ("t",))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TPoly([other])
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def ord(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def lowest(self):
        """Lowest-order nonzero coefficient (0 for the zero polynomial)."""
        for c in self.coeffs:
            if c:
                return c
        return Fraction(0)

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _tp(other)
        return TPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_tp(other))

    def __rsub__(self, other):
        return _tp(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TPoly(c * other for c in self.coeffs)
        other = _tp(other)
        if not self.coeffs or not other.coeffs:
            return TPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return TPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = TPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by ``t**k`` (``k`` may be negative if divisible)."""
        if k >= 0:
            return TPoly([0] * k + list(self.coeffs))
        assert self.ord() >= -k
        return TPoly(self.coeffs[-k:])

    def divmod(self, other):
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dl = other.coeffs[-1]
        dd = other.degree
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] / dl
            if q:
                quot[i - dd] = q
                for j, c in enumerate(other.coeffs):
                    rem[i - dd + j] -= q * c
        return TPoly(quot), TPoly(rem[:dd])

    def monic(self):
        return self * (1 / self.coeffs[-1]) if self.coeffs else self


def _tp(x):
    return x if isinstance(x, TPoly) else TPoly([x])


def tpoly_gcd(a, b):
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def tpoly_ord(p):
    return _tp(p).ord()


# ---------------------------------------------------------------------------
# rational functions in t without a pole at t = 0


class TRat:
    """``num/den`` with ``gcd(num, den) = 1`` and ``den(0) = 1``.

    The normalization makes order and sign readable from the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _tp(num), _tp(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = TPoly(), TPoly([1])
            return
        k = min(num.ord(), den.ord())
        num, den = num.shift(-k), den.shift(-k)
        if den.coeff(0) == 0:
            raise ValueError("rational function has a pole at t = 0")
        g = tpoly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        c0 = den.coeff(0)
        self.num = num * (1 / c0)
        self.den = den * (1 / c0)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, TRat):
            return x
        return cls(x)

    def __repr__(self):
        return f"TRat({self})"

    def __str__(self):
        if self.den == TPoly([1]):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __eq__(self, other):
        if not isinstance(other, TRat):
            try:
                other = TRat.coerce(other)
            except (TypeError, ValueError, OverflowError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return self.den.degree == 0

    def ord(self):
        return self.num.ord()

    def sign(self):
        return sign(self.num.lowest())

    def at_zero(self):
        return self.num.coeff(0)

    def __add__(self, other):
        other = TRat.coerce(other)
        return TRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = TRat.__new__(TRat)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        return self + (-TRat.coerce(other))

    def __rsub__(self, other):
        return TRat.coerce(other) - self

    def __mul__(self, other):
        other = TRat.coerce(other)
        return TRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = TRat.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return TRat(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        out = TRat.__new__(TRat)
        out.num, out.den = self.num ** n, self.den ** n
        return out

    def series(self, n):
        """Coefficients of ``t**0 .. t**n`` of the power series expansion."""
        out = []
        den = self.den.coeffs
        for i in range(n + 1):
            acc = self.num.coeff(i)
            for j in range(1, min(i, len(den) - 1) + 1):
                acc -= den[j] * out[i - j]
            out.append(acc)
        return out


def tsign(p):
    if isinstance(p, TPoly):
        return sign(p.lowest())
    return TRat.coerce(p).sign()


# ---------------------------------------------------------------------------
# row reduction


class Echelon:
    """Incrementally maintained reduced row echelon basis of sparse vectors.

    Vectors are dicts ``{column: Fraction}``.  The pivot of a row is its
    smallest column index; rows are kept fully reduced, so the basis is the
    canonical reduced echelon form of the span.
    """

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    def copy(self):
        out = Echelon()
        out.rows = dict(self.rows)
        return out

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v):
        v = {k: c for k, c in v.items() if c}
        if not self.rows:
            return v
        for p in sorted(k for k in v if k in self.rows):
            c = v.get(p)
            if not c:
                continue
            for k, a in self.rows[p].items():
                nv = v.get(k, 0) - c * a
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def contains(self, v):
        return not self.reduce(v)

    def add(self, v):
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                new = dict(row)
                for k, a in r.items():
                    nv = new.get(k, 0) - c * a
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                self.rows[q] = new
        self.rows[p] = r
        return True

    def pivots(self):
        return sorted(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]


def _to_sparse(row):
    return {i: frac(c) for i, c in enumerate(row) if c}


def _to_dense(v, n):
    out = [Fraction(0)] * n
    for k, c in v.items():
        out[k] = c
    return out


def rref(matrix):
    """Reduced row echelon form of a dense rational matrix.

    Returns ``(rank, pivot_columns, rows)`` with ``rows`` the nonzero
    reduced rows in pivot order.
    """
    ncols = len(matrix[0]) if matrix else 0
    e = Echelon(_to_sparse(r) for r in matrix)
    rows = [_to_dense(v, ncols) for v in e.basis()]
    return e.rank, e.pivots(), rows


def nullspace(matrix, ncols):
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    e = Echelon(_to_sparse(r) for r in matrix)
    pivots = set(e.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for p, row in e.rows.items():
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# sign feasibility

RELATIONS = (">0", ">=0", "<0", "<=0", "=0")


@dataclass(frozen=True)
class SignSystem:
    """Homogeneous linear system: equalities plus sign relations.

    ``constraints`` holds ``(functional, relation)`` pairs with relation in
    ``RELATIONS``.
    """

    nvars: int
    equalities: tuple = ()
    constraints: tuple = ()

    def __post_init__(self):
        for f in self.equalities:
            if len(f) != self.nvars:
                raise ValueError("equality arity mismatch")
        for f, rel in self.constraints:
            if len(f) != self.nvars:
                raise ValueError("constraint arity mismatch")
            if rel not in RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")

    def satisfied_by(self, x):
        def dot(f):
            return sum((frac(a) * b for a, b in zip(f, x)), Fraction(0))

        if any(dot(f) != 0 for f in self.equalities):
            return False
        for f, rel in self.constraints:
            s = sign(dot(f))
            ok = {">0": s > 0, ">=0": s >= 0, "<0": s < 0, "<=0": s <= 0, "=0": s == 0}[rel]
            if not ok:
                return False
        return True


@dataclass
class _Ineq:
    coeffs: list
    strict: bool = field(default=False)


def _normalize(ineq):
    for c in ineq.coeffs:
        if c:
            s = abs(c)
            return _Ineq([a / s for a in ineq.coeffs], ineq.strict)
    return ineq


def _dedupe(ineqs):
    seen = {}
    for q in map(_normalize, ineqs):
        key = tuple(q.coeffs)
        if key in seen:
            seen[key].strict |= q.strict
        else:
            seen[key] = _Ineq(list(q.coeffs), q.strict)
    return list(seen.values())


def _pick(lo, lo_strict, hi, hi_strict):
    """A value in the interval, preferring 0, then small integers."""

    def ok(v):
        if lo is not None and (v < lo or (lo_strict and v == lo)):
            return False
        if hi is not None and (v > hi or (hi_strict and v == hi)):
            return False
        return True

    if ok(Fraction(0)):
        return Fraction(0)
    if lo is not None and hi is not None:
        cand = Fraction(math.floor(lo) + 1) if lo >= 0 else Fraction(math.ceil(hi) - 1)
        if ok(cand):
            return cand
        if lo == hi:
            return lo
        return (lo + hi) / 2
    if lo is not None:
        return Fraction(math.floor(lo) + 1)
    return Fraction(math.ceil(hi) - 1)


def _fourier_motzkin(ineqs, nvars):
    """Decide ``{z : q.z > 0 (strict), q.z >= 0}``; return a point or None."""
    stages = [_dedupe(ineqs)]
    for k in range(nvars - 1, -1, -1):
        cur = stages[-1]
        pos = [q for q in cur if q.coeffs[k] > 0]
        neg = [q for q in cur if q.coeffs[k] < 0]
        nxt = [q for q in cur if q.coeffs[k] == 0]
        for p in pos:
            for n in neg:
                a, b = p.coeffs[k], -n.coeffs[k]
                comb = [b * x + a * y for x, y in zip(p.coeffs, n.coeffs)]
                comb[k] = Fraction(0)
                nxt.append(_Ineq(comb, p.strict or n.strict))
        nxt = _dedupe(nxt)
        for q in nxt:
            if not any(q.coeffs) and q.strict:
                return None
        nxt = [q for q in nxt if any(q.coeffs)]
        stages.append(nxt)
    z = [Fraction(0)] * nvars
    # stages[nvars - k] involves only variables 0..k
    for k in range(nvars):
        lo = hi = None
        lo_s = hi_s = False
        for q in stages[nvars - 1 - k]:
            a = q.coeffs[k]
            if not a:
                continue
            rest = sum((q.coeffs[j] * z[j] for j in range(k)), Fraction(0))
            bound = -rest / a
            if a > 0:
                if lo is None or bound > lo or (bound == lo and q.strict):
                    lo, lo_s = bound, q.strict
            else:
                if hi is None or bound < hi or (bound == hi and q.strict):
                    hi, hi_s = bound, q.strict
        z[k] = _pick(lo, lo_s, hi, hi_s)
    return z


def sign_feasible(system):
    """Exact rational witness for a :class:`SignSystem`, or ``None``.

    Equalities are eliminated by row reduction; the remaining strict and
    non-strict homogeneous inequalities are decided by Fourier-Motzkin
    elimination.  The witness is scaled by a positive factor so that its
    first nonzero coordinate is +1 or -1.
    """
    n = system.nvars
    eqs = [list(map(frac, f)) for f in system.equalities]
    ineqs_raw = []
    for f, rel in system.constraints:
        f = list(map(frac, f))
        if rel == "=0":
            eqs.append(f)
        elif rel in (">0", ">=0"):
            ineqs_raw.append((f, rel == ">0"))
        else:
            ineqs_raw.append(([-a for a in f], rel == "<0"))
    basis = nullspace(eqs, n) if eqs else [
        [Fraction(int(i == j)) for i in range(n)] for j in range(n)
    ]
    r = len(basis)
    ineqs = []
    for f, strict in ineqs_raw:
        coeffs = [sum((a * b for a, b in zip(f, v)), Fraction(0)) for v in basis]
        if not any(coeffs):
            if strict:
                return None
            continue
        ineqs.append(_Ineq(coeffs, strict))
    z = _fourier_motzkin(ineqs, r)
    if z is None:
        return None
    x = [sum((z[j] * basis[j][i] for j in range(r)), Fraction(0)) for i in range(n)]
    for c in x:
        if c:
            s = abs(c)
            x = [a / s for a in x]
            break
    return tuple(x)
