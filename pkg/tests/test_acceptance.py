"""Acceptance criteria, one test per criterion.

Every comparison is exact. Each test records a PASS/FAIL line that is
printed in the terminal summary, and then asserts.
"""

import random
import shutil
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE, branch, t
from oracles import grid_min_value, random_branch_pair
from seplab.blowup import (
    chain_along,
    check_lemma32,
    check_thm44,
    check_thm47,
    inverse_transform,
    points_for_simple_ideal,
    transform_ideal,
    transform_point,
)
from seplab.errors import HypothesisError, NotCenteredError
from seplab.point import ChainStep, DivisorialPoint, ideal_value, sign_at, successor, val, videal
from seplab.ring import Ideal, Poly, contains, ideal_equal, ideal_ord, membership, random_poly
from seplab.scenario import parse_poly
from seplab.sep import changes_sign, cone, is_simple, residue_coordinates, sep


def P(text, n=2):
    return parse_poly(text, n)


def I(*texts, n=2):
    return Ideal([P(s, n) for s in texts], n)


def record(key, checks):
    """``checks``: list of (label, bool). Records one line and asserts."""
    failed = [label for label, ok in checks if not ok]
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
    if failed:
        detail += "; failed: " + ", ".join(failed)
    ACCEPTANCE.setdefault(key, []).append((not failed, detail))
    print(f"criterion {key}: {'PASS' if not failed else 'FAIL'} ({detail})")
    assert not failed, failed


def f_lam(lam):
    return P("(y - x^2)^2") - Fraction(lam) * P("x^5")


def test_criterion_1(ex2a):
    alpha, beta, _ = ex2a
    S = sep(alpha, beta)
    sa, sb = successor(alpha, S.ideal), successor(beta, S.ideal)
    record("1", [
        ("gamma*=5", S.gamma_alpha == 5),
        ("generators", ideal_equal(S.ideal, I("y - x^2", "x*y", "y^2"))),
        ("successor", ideal_equal(sa, I("x^3", "x*y", "y^2"))),
        ("dim V=1", cone(alpha, beta).dimension == 1),
        ("successors agree", ideal_equal(sa, sb)),
    ])


def test_criterion_2(ex2b):
    alpha, gamma = ex2b
    S = sep(alpha, gamma)
    C = cone(alpha, gamma)
    rays = [residue_coordinates(C, r) for r in C.rays]

    def on_ray(f):
        q = residue_coordinates(C, f)
        return any(r[0] * q[1] == r[1] * q[0] and r[0] * q[0] + r[1] * q[1] > 0 for r in rays)

    f4 = f_lam(4)
    record("2", [
        ("lambda in [1,4] probes", all(changes_sign(alpha, gamma, f_lam(l)) for l in ("1", "3/2", "2", "3", "4"))),
        ("lambda outside probes", not any(changes_sign(alpha, gamma, f_lam(l)) for l in ("1/2", "9/2", "5"))),
        ("gamma*=10", S.gamma_alpha == 10),
        ("f4 in alpha-successor", membership(f4, successor(alpha, S.ideal))),
        ("f4 not in gamma-successor", not membership(f4, successor(gamma, S.ideal))),
        ("two rays", C.dimension == 2 and len(C.rays) == 2),
        ("rays are f1, f4", on_ray(f_lam(1)) and on_ray(f4)),
    ])


@pytest.fixture
def levels(ex2a):
    """Points of the three transform levels along alpha."""
    alpha, beta, gamma = ex2a
    ch = chain_along(alpha, 3)
    out = [(alpha, beta, gamma)]
    b, g = beta, gamma
    for lvl in range(3):
        step = ch.steps[lvl]
        g = transform_point(g, step)[1]
        b = transform_point(b, step)[1] if lvl < 2 else None
        out.append((ch.points[lvl + 1], b, g))
    return out


def _thm47_or_refused(a, b):
    """Both equalities when the hypothesis holds; a refusal when the
    separating ideal is already maximal."""
    try:
        r = check_thm47(a, b)
    except HypothesisError:
        return sep(a, b).is_maximal
    return r.a_holds and r.b_holds


def test_criterion_3(levels):
    (a0, b0, g0), (a1, b1, g1), (a2, b2, g2), (a3, _, g3) = levels
    m = Ideal.maximal(2)
    s_ab1, s_ag1 = sep(a1, b1), sep(a1, g1)
    s_ag2 = sep(a2, g2)
    record("3", [
        ("<a',b'> = (y-x, x^2)", ideal_equal(s_ab1.ideal, I("y - x", "x^2"))),
        ("value 3", s_ab1.gamma_alpha == 3),
        ("<a',g'> = ((y-x)^2, x^3, x^2y)", ideal_equal(s_ag1.ideal, I("(y - x)^2", "x^3", "x^2*y"))),
        ("value 6", s_ag1.gamma_alpha == 6),
        ("<a'',b''> = m", sep(a2, b2).ideal == m),
        ("<a'',g''> value 2", s_ag2.gamma_alpha == 2),
        ("<a''',g'''> = m", sep(a3, g3).ideal == m),
        ("thm47 at every level", all(
            _thm47_or_refused(a, b) for a, b in ((a0, b0), (a0, g0), (a1, b1), (a1, g1), (a2, g2))
        )),
    ])


@pytest.mark.xfail(strict=True, reason="the stated ideal has value 1 at alpha''; see the decisions ledger")
def test_criterion_3_literal_second_level(levels):
    a2, _, g2 = levels[2]
    S = sep(a2, g2).ideal
    label = f"stated <a'',g''> = (y'', x''^2), computed {[str(g) for g in S.gens]}"
    record("3", [(label, ideal_equal(S, I("y", "x^2")))])


def test_criterion_4(ex3d):
    alpha, beta = ex3d
    m = Ideal.maximal(2)
    step, a1 = transform_point(alpha)
    _, b1 = transform_point(beta, step)
    try:
        check_thm47(alpha, beta)
        refused = False
    except HypothesisError:
        refused = True
    step2, _ = transform_point(a1)
    try:
        transform_point(b1, step2)
        off_center = False
    except NotCenteredError:
        off_center = True
    record("4", [
        ("<a,b> = m", sep(alpha, beta).ideal == m),
        ("<a',b'> = m1", sep(a1, b1).ideal == m),
        ("thm47 refuses", refused),
        ("second lift leaves the center", off_center),
    ])


def test_criterion_5(ex3e):
    g1, g3 = ex3e
    Iex = I("z^2 - x^3*y", "x^5", "x^4*y", "x^3*z", "x^2*y^2", "x*y*z",
            "x*z^2", "y^3", "y^2*z", "y*z^2", "z^3", n=3)
    S = sep(g1, g3)
    step, g1p = transform_point(g1)
    _, g3p = transform_point(g3, step)
    TI = transform_ideal(S.ideal, step)
    lifted = sep(g1p, g3p)
    w = P("2*y*z - x^2 - y^3", 3)
    rep = check_lemma32(g1, g3)
    record("5", [
        ("val 29", val(g1, P("z^2 - x^3*y", 3)) == 29),
        ("sep = listed ideal", ideal_equal(S.ideal, Iex)),
        ("ord 2", ideal_ord(S.ideal) == 2),
        ("chart (x, y/x, z/x)", step.divisor == 0 and all(c == 0 for c in step.shifts)),
        ("v(T(I)) = 17", ideal_value(g1p, TI) == 17),
        ("v(<g1',g3'>) = 13", lifted.gamma_alpha == 13),
        ("witness signs (+,-)", (sign_at(g1p, w), sign_at(g3p, w)) == (1, -1)),
        ("lemma32 proper", rep.containment and rep.proper),
    ])


def test_criterion_6():
    d = DivisorialPoint([ChainStep(0, 0)], "0+", 1)
    checks = []
    for label, other in (("branch (t,t^3)", branch(t, t**3)),
                         ("cut 0-", DivisorialPoint([ChainStep(0, 0)], "0-", 1))):
        r = check_thm44(d, other)
        direct = all(membership(g, r.separating) for g in I("y", "x^2").gens)
        checks.append((label, r.contains_smallest_simple and direct
                       and ideal_equal(r.smallest_simple, I("y", "x^2"))))
    record("6", checks)


def test_criterion_7():
    checks = []
    for chain in ([ChainStep(0, 0)], [ChainStep(0, 0), ChainStep(0, 1)]):
        alpha, beta, Pid = points_for_simple_ideal(chain)
        label = "[" + ", ".join(str(s) for s in chain) + "]"
        checks.append((label + " sep = P", ideal_equal(sep(alpha, beta).ideal, Pid)))
        checks.append((label + " P simple", is_simple(alpha, Pid)))
    record("7", checks)


# --- criterion 8: seeded property suites --------------------------------------

N_INSTANCES = 20
BASE_POINTS = [
    branch(t**2, t**4 + 2 * t**5),
    branch(t, -(t**2) + t**3),
    branch(t**3, t**4 + t**5),
    branch(-t, 2 * t**2 + t**4),
    DivisorialPoint([ChainStep(0, 0), ChainStep(0, 1)], "1/3-", -1),
]


def _abs_le(alpha, h, f):
    """``|h| <= |f|`` at ``alpha``, decided by the sign of ``|f| - |h|``."""
    sf, sh = sign_at(alpha, f), sign_at(alpha, h)
    return sign_at(alpha, sf * f - sh * h) >= 0


def suite_threshold(rng):
    n = 0
    for _ in range(N_INSTANCES):
        alpha = rng.choice(BASE_POINTS)
        gamma = rng.randint(1, 8)
        J = videal(alpha, gamma)
        f = sum((random_poly(rng, 2, 2, density=0.5) * g for g in J.gens), Poly({}, 2))
        h = random_poly(rng, 2, 5, density=0.4)
        # threshold form and convexity form of the same ideal
        if membership(h, J) != (val(alpha, h) >= gamma):
            return False, n
        if f and _abs_le(alpha, h, f) and not membership(h, J):
            return False, n
        n += 1
    return True, n


def suite_sign_agreement(rng):
    n = 0
    for _ in range(N_INSTANCES):
        alpha, beta = random_branch_pair(rng)
        S = sep(alpha, beta)
        for _ in range(3):
            f = random_poly(rng, 2, 4, density=0.4)
            if not membership(f, S.ideal) and sign_at(alpha, f) != sign_at(beta, f):
                return False, n
        n += 1
    return True, n


def _random_level(rng):
    alpha = rng.choice(BASE_POINTS)
    step, a1 = transform_point(alpha)
    return alpha, step, a1


def suite_tw(rng):
    n = 0
    for _ in range(N_INSTANCES):
        alpha, step, a1 = _random_level(rng)
        J = videal(a1, rng.randint(1, 6))
        if not ideal_equal(transform_ideal(inverse_transform(J, step, alpha), step), J):
            return False, n
        K = videal(alpha, rng.randint(2, 9))
        if not ideal_equal(K, Ideal.maximal(2)):
            if not contains(inverse_transform(transform_ideal(K, step), step, alpha), K):
                return False, n
        n += 1
    return True, n


def suite_monotone(rng):
    n = 0
    for _ in range(N_INSTANCES):
        alpha, step, a1 = _random_level(rng)
        J1, J2 = videal(a1, rng.randint(1, 6)), videal(a1, rng.randint(1, 6))
        W1, W2 = inverse_transform(J1, step, alpha), inverse_transform(J2, step, alpha)
        if contains(W2, W1) and not contains(J2, J1):
            return False, n
        n += 1
    return True, n


def suite_thm47(rng):
    n = 0
    for _ in range(N_INSTANCES):
        alpha, beta = random_branch_pair(rng)
        if sep(alpha, beta).is_maximal:
            return False, n
        r = check_thm47(alpha, beta)
        if not (r.a_holds and r.b_holds):
            return False, n
        n += 1
    return True, n


def suite_grid(rng):
    n = 0
    for _ in range(N_INSTANCES):
        alpha, beta = random_branch_pair(rng)
        if grid_min_value(alpha, beta, deg=3) != sep(alpha, beta).gamma_alpha:
            return False, n
        n += 1
    return True, n


SUITES = [
    ("threshold/convexity", suite_threshold),
    ("sign agreement off the separating ideal", suite_sign_agreement),
    ("T.W = id, W.T contains id", suite_tw),
    ("W reflects containment", suite_monotone),
    ("transform equalities on random pairs", suite_thm47),
    ("grid oracle deg <= 3", suite_grid),
]


def test_criterion_8():
    checks = []
    for i, (label, suite) in enumerate(SUITES):
        ok, n = suite(random.Random(8000 + i))
        checks.append((f"{label} ({n})", ok and n >= N_INSTANCES))
    record("8", checks)


def test_criterion_9():
    exe = shutil.which("seplab")
    cmd = [exe, "paper-suite"] if exe else [sys.executable, "-m", "seplab.cli", "paper-suite"]
    start = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    elapsed = time.perf_counter() - start
    record("9", [
        ("exit 0", first.returncode == 0 and second.returncode == 0),
        ("byte-identical", bool(first.stdout) and first.stdout == second.stdout),
        (f"under 60 s ({elapsed:.1f} s for two runs)", elapsed < 60),
    ])
