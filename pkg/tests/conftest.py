import pytest
from hypothesis import strategies as st

from quiverdyn.quiver import Quiver


def naive_mutate(b, n, j):
    """Textbook matrix mutation, written independently of the library.

    b'_ik = -b_ik if j in (i, k), else b_ik + (|b_ij| b_jk + b_ij |b_jk|) / 2,
    with entries between two frozen vertices left at zero.
    """
    size = len(b)
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        for k in range(size):
            if i == j or k == j:
                out[i][k] = -b[i][k]
            elif i >= n and k >= n:
                out[i][k] = 0
            else:
                out[i][k] = b[i][k] + (abs(b[i][j]) * b[j][k] + b[i][j] * abs(b[j][k])) // 2
    return out


@st.composite
def quivers(draw, n_min=1, n_max=4, m_max=2, w=6):
    n = draw(st.integers(n_min, n_max))
    m = draw(st.integers(0, m_max))
    size = n + m
    b = [[0] * size for _ in range(size)]
    for i in range(size):
        for k in range(i + 1, size):
            if i >= n and k >= n:
                continue
            x = draw(st.integers(-w, w))
            b[i][k], b[k][i] = x, -x
    mut = [str(i) for i in range(1, n + 1)]
    fro = ["u", "v", "w"][:m]
    return Quiver(mut, fro, b)


@pytest.fixture
def tmp_fixtures(tmp_path):
    from quiverdyn.cli import dump_fixtures

    dump_fixtures(str(tmp_path))
    return tmp_path


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
