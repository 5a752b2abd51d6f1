import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seplab.exact import (
    Echelon,
    SignSystem,
    TPoly,
    TRat,
    nullspace,
    rref,
    sign_feasible,
    tsign,
)

t = TPoly([0, 1])

small = st.integers(-4, 4)
tpolys = st.lists(small, min_size=0, max_size=5).map(TPoly)


def test_tpoly_basics():
    p = t**2 + 2 * t**5
    assert p.ord() == 2
    assert p.degree == 5
    assert str(p) == "t^2 + 2*t^5"
    assert str(TPoly([0, -1, 0, 3])) == "-t + 3*t^3"
    assert p(Fraction(1, 2)) == Fraction(1, 4) + Fraction(2, 32)


def test_trat_normal_form():
    r = TRat(t**3 + t**4, t + t**2)
    assert r == TRat(t**2)
    assert r.is_poly()
    q = TRat(t, 2 + 2 * t)
    assert q.den.coeff(0) == 1
    assert q.series(3) == [0, Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2)]


def test_trat_pole_rejected():
    with pytest.raises(ValueError):
        TRat(1, t)
    with pytest.raises(ZeroDivisionError):
        TRat(1, 0)


def test_trat_sign_is_lowest_coefficient():
    assert TRat(-(t**5) + t**6).sign() == -1
    assert tsign(2 * t**3 - 100 * t**4) == 1
    assert TRat(0).sign() == 0


@given(tpolys, tpolys, tpolys)
def test_tpoly_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == TPoly()


@given(tpolys, tpolys.filter(lambda p: p.coeff(0) != 0))
def test_trat_division_roundtrip(a, b):
    r = TRat(a, b)
    assert r * TRat(b) == TRat(a)
    if a:
        assert r.ord() == a.ord()
        assert r.sign() == tsign(a) * tsign(b)


def test_rref_and_nullspace():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    rank, piv, rows = rref(M)
    assert rank == 2 and piv == [0, 1]
    for v in nullspace(M, 3):
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in M)
    assert len(nullspace(M, 3)) == 1


def test_echelon_membership():
    e = Echelon([{0: 1, 1: 1}, {1: 1, 2: 1}])
    assert e.contains({0: 1, 2: -1})
    assert not e.contains({2: 1})
    assert e.add({2: 1}) and e.rank == 3
    assert not e.add({0: 5})


def test_sign_feasible_examples():
    s = SignSystem(2, (), (((1, 0), ">=0"), ((0, 1), "<=0"), ((1, -1), ">0")))
    x = sign_feasible(s)
    assert x is not None and s.satisfied_by(x)
    assert sign_feasible(SignSystem(1, (), (((1,), ">0"), ((1,), "<0")))) is None
    eq = SignSystem(2, ((1, 1),), (((1, 0), ">0"), ((0, 1), ">0")))
    assert sign_feasible(eq) is None


def test_sign_feasible_normalized_witness():
    x = sign_feasible(SignSystem(3, ((0, 1, 0),), (((0, 0, 1), "<0"),)))
    assert x == (0, 0, -1)


relations = st.sampled_from([">0", ">=0", "<0", "<=0", "=0"])
rows3 = st.tuples(small, small, small)


@settings(max_examples=150, deadline=None)
@given(st.lists(rows3, max_size=2), st.lists(st.tuples(rows3, relations), min_size=1, max_size=4))
def test_sign_feasible_against_grid(eqs, cons):
    """Witnesses satisfy the system; infeasibility is never contradicted by
    an integer point in a small box."""
    s = SignSystem(3, tuple(eqs), tuple(cons))
    x = sign_feasible(s)
    if x is not None:
        assert s.satisfied_by(x)
        nz = [c for c in x if c]
        assert not nz or abs(nz[0]) == 1
    else:
        for p in itertools.product(range(-4, 5), repeat=3):
            assert not s.satisfied_by(p)
