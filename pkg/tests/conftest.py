import pytest

from seplab import BranchPoint, ChainStep, DivisorialPoint, Poly, TPoly

t = TPoly([0, 1])


def branch(*images, name=""):
    return BranchPoint(list(images), name)


@pytest.fixture
def xy():
    return Poly.gens(2)


@pytest.fixture
def xyz():
    return Poly.gens(3)


@pytest.fixture
def ex2a():
    """Three branches with a common tangent, pairwise separated at value 5."""
    return (
        branch(t**2, t**4 + 2 * t**5, name="alpha"),
        branch(t**2, t**4 - t**5, name="beta"),
        branch(t**2, t**4 + t**5, name="gamma"),
    )


@pytest.fixture
def ex2b():
    return ex2a_alpha(), branch(t**2, t**4 + t**5, name="gamma")


def ex2a_alpha():
    return branch(t**2, t**4 + 2 * t**5, name="alpha")


@pytest.fixture
def ex3d():
    return branch(t, t**2, name="alpha"), branch(-t, -(t**2), name="beta")


@pytest.fixture
def ex3e():
    return (
        branch(t**6, t**10 + t**11, t**14 + t**15, name="g1"),
        branch(t**6, t**10 + 3 * t**11, t**14 + t**15, name="g3"),
    )


@pytest.fixture
def div_x0():
    return DivisorialPoint([ChainStep(0, 0)], "0+", 1)


# acceptance criterion -> list of (ok, detail); printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[0]), k)):
        parts = ACCEPTANCE[key]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({detail})")
