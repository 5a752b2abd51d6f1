"""Quadratic transforms of points and ideals, inverse transforms, and
checkers for the transform theorems."""

from dataclasses import dataclass

from .errors import (
    HypothesisError,
    NoLiftError,
    NotCenteredError,
    TerminalError,
)
from .exact import INF, TPoly, TRat
from .point import (
    BranchPoint,
    ChainStep,
    DivisorialPoint,
    coordinate_values,
    ideal_value,
    same_point,
    terminal_map,
    videal,
)
from .ring import (
    DEFAULT_BOUND,
    Ideal,
    Poly,
    contains,
    ideal_equal,
    ideal_ord,
    minimalize,
    mpower_in,
)
from .sep import sep


# ---------------------------------------------------------------------------
# points


def choose_divisor(alpha):
    vals = coordinate_values(alpha)
    if min(vals) == INF:
        raise HypothesisError("the point is supported at the maximal ideal and has no lift")
    return vals.index(min(vals))


def _lift_branch(alpha, step):
    n = alpha.nvars
    if step is None:
        div = choose_divisor(alpha)
        shifts = None
    else:
        div, shifts = step.divisor, step.shifts
    d = alpha.images[div]
    if not d:
        raise NoLiftError("the divisor vanishes at the point; use the other chart")
    quot = []
    for i, im in enumerate(alpha.images):
        if i == div:
            quot.append(im)
            continue
        q = im / d
        if q and q.ord() < 0:
            raise NoLiftError(f"coordinate {'xyz'[i]}/{'xyz'[div]} has a pole at the point")
        quot.append(q)
    if shifts is None:
        shifts = tuple(0 if i == div else quot[i].at_zero() for i in range(n))
        step = ChainStep(div, shifts)
    new = []
    for i, q in enumerate(quot):
        if i == div:
            new.append(q)
            continue
        if q.at_zero() != shifts[i]:
            raise NotCenteredError(
                f"the lift is centered at {'xyz'[i]}' = {q.at_zero() - shifts[i]}, not at the origin"
            )
        new.append(q - TRat(shifts[i]))
    return step, BranchPoint(new, alpha.name + "'" if alpha.name else "")


def _lift_divisorial(alpha, step):
    if not alpha.chain:
        raise TerminalError("the chain is exhausted: the valuation is the order of this ring")
    first = alpha.chain[0]
    if step is not None and step != first:
        vals = coordinate_values(alpha)
        if vals[step.divisor] > min(vals):
            raise NoLiftError("the divisor does not have minimal value at the point")
        raise NotCenteredError(f"the point is not centered at the origin of chart {step}")
    name = alpha.name + "'" if alpha.name else ""
    return first, DivisorialPoint(alpha.chain[1:], alpha.cut, alpha.eps, name)


def transform_point(alpha, step=None):
    """``(step, lift)``: the lift of ``alpha`` to the quadratic transform.

    Without ``step`` the chart is chosen along ``alpha`` (divisor of least
    value, ties toward ``x``; translation read off the point).  With a
    ``step`` the point is lifted into that chart, raising
    :class:`NotCenteredError` when the lift sits away from its origin.
    """
    if isinstance(alpha, BranchPoint):
        return _lift_branch(alpha, step)
    return _lift_divisorial(alpha, step)


# ---------------------------------------------------------------------------
# ideals


def _divide_by(f, div, r):
    terms = {}
    for e, c in f.terms.items():
        if e[div] < r:
            raise AssertionError("transform is not divisible by the divisor power")
        e = list(e)
        e[div] -= r
        terms[tuple(e)] = c
    return Poly(terms, f.nvars)


def transform_ideal(I, step, bound=DEFAULT_BOUND):
    """Ideal transform: extend, then divide by the ``ord(I)``-th power of
    the divisor."""
    if I.nvars != step.nvars:
        raise ValueError("variable count mismatch")
    r = ideal_ord(I)
    sub = step.substitution()
    J = Ideal([_divide_by(g.subs(sub), step.divisor, r) for g in I.gens], I.nvars)
    if mpower_in(J, bound) is not None:
        J = minimalize(J, bound)
    return J


def inverse_transform(J, step, alpha, bound=DEFAULT_BOUND):
    """``W(J)``: the v-ideal ``K`` of least order ``n`` with ``T(K) = J``.

    ``alpha`` is the point below ``step`` whose valuation is used; its
    lift must be centered in the chart of ``step``.
    """
    if J.is_unit():
        return Ideal.unit(J.nvars)
    _, lifted = transform_point(alpha, step)
    vj = ideal_value(lifted, J)
    if vj == INF:
        raise HypothesisError("J is contained in the support of the lifted point")
    e = coordinate_values(alpha)[step.divisor]
    for n in range(bound.D + 1):
        K = videal(alpha, n * e + vj, bound)
        if ideal_ord(K) != n:
            continue
        if ideal_equal(transform_ideal(K, step, bound), J, bound):
            return K
    raise HypothesisError(f"no v-ideal of order <= {bound.D} transforms onto {J}")


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class TransformChain:
    steps: tuple
    points: tuple
    terminal: bool = False
    note: str = ""


def chain_along(alpha, nsteps):
    steps, points = [], [alpha]
    for _ in range(nsteps):
        try:
            st, nxt = transform_point(points[-1])
        except TerminalError as exc:
            return TransformChain(tuple(steps), tuple(points), True, str(exc))
        steps.append(st)
        points.append(nxt)
    return TransformChain(tuple(steps), tuple(points))


@dataclass(frozen=True)
class SimpleSequence:
    ideals: tuple
    values: tuple


def pull_back(J, chain, bound=DEFAULT_BOUND, upto=None):
    """Apply ``W`` along ``chain`` from level ``upto`` down to the base."""
    top = len(chain.steps) if upto is None else upto
    for lvl in range(top - 1, -1, -1):
        J = inverse_transform(J, chain.steps[lvl], chain.points[lvl], bound)
    return J


def simple_sequence(alpha, bound=DEFAULT_BOUND, kmax=4):
    """``m = I_0 > I_1 > ...`` with ``I_i`` the pull-back of the maximal ideal
    of the ``i``-th transform.  For a divisorial point the sequence is
    complete (one ideal per chain step beyond ``m``); for a branch it stops
    after ``kmax`` transforms."""
    steps = len(alpha.chain) if isinstance(alpha, DivisorialPoint) else kmax
    ch = chain_along(alpha, steps)
    n = alpha.nvars
    ideals = []
    for i in range(len(ch.steps) + 1):
        ideals.append(pull_back(Ideal.maximal(n), ch, bound, i))
    values = tuple(ideal_value(alpha, I) for I in ideals)
    return SimpleSequence(tuple(ideals), values)


# ---------------------------------------------------------------------------
# checkers


def _lift_pair(alpha, beta):
    step, a1 = transform_point(alpha)
    _, b1 = transform_point(beta, step)
    return step, a1, b1


@dataclass(frozen=True)
class Lemma32Report:
    lifted: bool
    containment: bool
    proper: bool
    transformed: Ideal = None
    lifted_sep: Ideal = None
    value_transformed: object = None
    value_lifted_sep: object = None


def check_lemma32(alpha, beta, bound=DEFAULT_BOUND):
    S = sep(alpha, beta, bound)
    if S.support_case or S.is_maximal or S.ideal.is_unit():
        raise HypothesisError("the separating ideal must be properly contained in m")
    try:
        step, a1, b1 = _lift_pair(alpha, beta)
    except (NoLiftError, NotCenteredError):
        return Lemma32Report(False, False, False)
    I1 = transform_ideal(S.ideal, step, bound)
    S1 = sep(a1, b1, bound).ideal
    inside = contains(S1, I1, bound)
    proper = inside and not contains(I1, S1, bound)
    return Lemma32Report(
        True, inside, proper, I1, S1, ideal_value(a1, I1), ideal_value(a1, S1)
    )


@dataclass(frozen=True)
class Thm47Report:
    a_holds: bool
    b_holds: bool
    lhs: Ideal
    rhs: Ideal
    pulled_back: Ideal
    original: Ideal
    step: ChainStep


def check_thm47(alpha, beta, bound=DEFAULT_BOUND):
    if alpha.nvars != 2:
        raise HypothesisError("the transform theorem is stated for two variables")
    S = sep(alpha, beta, bound)
    if S.support_case or S.is_maximal or S.ideal.is_unit():
        raise HypothesisError("the separating ideal must be properly contained in m")
    step, a1, b1 = _lift_pair(alpha, beta)
    lhs = transform_ideal(S.ideal, step, bound)
    rhs = sep(a1, b1, bound).ideal
    W = inverse_transform(rhs, step, alpha, bound)
    return Thm47Report(
        ideal_equal(lhs, rhs, bound), ideal_equal(W, S.ideal, bound), lhs, rhs, W, S.ideal, step
    )


@dataclass(frozen=True)
class Thm44Report:
    contains_smallest_simple: bool
    smallest_simple: Ideal
    separating: Ideal


def check_thm44(alpha, beta, bound=DEFAULT_BOUND):
    if not isinstance(alpha, DivisorialPoint):
        raise HypothesisError("the first point must be divisorial")
    if same_point(alpha, beta):
        raise HypothesisError("the points must be distinct")
    if beta.nvars != 2:
        raise HypothesisError("two variables are required")
    last = simple_sequence(alpha, bound).ideals[-1]
    S = sep(alpha, beta, bound).ideal
    return Thm44Report(contains(S, last, bound), last, S)


def points_for_simple_ideal(chain, bound=DEFAULT_BOUND):
    """Two branches whose separating ideal is the simple ideal of ``chain``.

    The curves ``w = u`` and ``w = -u`` of the terminal chart are pushed
    down through the chain; they meet transversally at the terminal origin,
    so their separating ideal there is the maximal ideal, and it pulls back
    to the simple ideal ``P``.
    """
    chain = tuple(chain)
    if not chain:
        raise HypothesisError("an empty chain describes m itself")
    tmap = terminal_map(chain, 2)
    t = TRat(TPoly([0, 1]))
    pts = []
    for sgn, name in ((1, "alpha"), (-1, "beta")):
        pts.append(BranchPoint([f.subs([t, t * sgn], one=TRat(1)) for f in tmap], name))
    P = simple_sequence(DivisorialPoint(chain, "+inf"), bound).ideals[-1]
    return pts[0], pts[1], P

