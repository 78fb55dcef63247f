from itertools import combinations, permutations, product

import pytest
from hypothesis import given, settings

from quiverdyn import errors, fixtures
from quiverdyn.quiver import Quiver, build_quiver, mutate, mutate_index, sign_state
from quiverdyn.structure import (
    Colour,
    all_brog_colorings,
    are_complementary,
    brog_coloring,
    check_brog_coloring,
    classify,
    cycle_preserving_index,
    fork_point_of_return,
    fork_points_exhaustive,
    ice_fork_point_of_return,
    is_brog,
    is_cycle_preserving,
    is_cycle_preserving_on_mutable,
    is_u_ascent,
    is_vortex_apex,
    is_vortex_free,
    vortex_apices,
)

from conftest import quivers


# brute-force oracles written straight from the definitions ---------------------

def _has_cycle(b, idx):
    for k in range(2, len(idx) + 1):
        for cyc in permutations(idx, k):
            if all(b[cyc[t]][cyc[(t + 1) % k]] > 0 for t in range(k)):
                return True
    return False


def oracle_fork_points(q):
    b, n, size = q.b, q.n, len(q.b)
    if q.m > 1:
        return []
    pairs = [(i, k) for i, k in combinations(range(size), 2) if i < n or k < n]
    if any(abs(b[i][k]) < 2 for i, k in pairs) or not _has_cycle(b, list(range(size))):
        return []
    out = []
    for r in range(size):
        plus = [i for i in range(size) if b[r][i] > 0]
        minus = [j for j in range(size) if b[j][r] > 0]
        heavy = all(b[i][j] > b[r][i] and b[i][j] > b[j][r] for i in plus for j in minus)
        if heavy and not _has_cycle(b, plus) and not _has_cycle(b, minus):
            out.append(q.vertices[r])
    return out


def oracle_ice_fork(q):
    common = None
    for u in q.frozen:
        sub_idx = list(range(q.n)) + [q.index(u)]
        sub = Quiver(q.mutable, [u], [[q.b[i][k] for k in sub_idx] for i in sub_idx])
        pts = set(oracle_fork_points(sub))
        common = pts if common is None else common & pts
    return sorted(common) if common else []


def oracle_apices(q):
    b, n = q.b, q.n
    out = set()
    for quad in combinations(range(len(b)), 4):
        if sum(x < n for x in quad) < 3:
            continue
        for a in quad:
            rest = [x for x in quad if x != a]
            source = all(b[a][x] > 0 for x in rest)
            sink = all(b[x][a] > 0 for x in rest)
            x, y, z = rest
            cyc = (b[x][y] > 0 and b[y][z] > 0 and b[z][x] > 0) or \
                  (b[x][z] > 0 and b[z][y] > 0 and b[y][x] > 0)
            if (source or sink) and cyc:
                out.add(q.vertices[a])
    return out


def oracle_colourings(q):
    """All colourings satisfying the five conditions, by exhaustion."""
    names = q.mutable
    n = q.n
    states = [sign_state(q, v).value for v in names]
    found = []
    for col in product("rgbo", repeat=n):
        ok = all((c == "r") == (s == "red") and (c == "g") == (s == "green")
                 for c, s in zip(col, states))
        for i, j in permutations(range(n), 2):
            if not ok:
                break
            bij = q.b[i][j]
            if col[i] == "b" and ((col[j] == "r" and bij < 0) or (col[j] == "g" and bij > 0)):
                ok = False
            if col[i] == "o" and ((col[j] == "g" and bij < 0) or (col[j] == "r" and bij > 0)):
                ok = False
            if col[i] == "b" and col[j] == "o" and not are_complementary(q, names[i], names[j]):
                ok = False
        if ok:
            found.append("".join(col))
    return found


def _code(col, names):
    return "".join(col[v].value[0] for v in names)


# forks ----------------------------------------------------------------------

def test_fig2_fixture_forks():
    w = fork_point_of_return(fixtures.fig2b())
    assert w.point_of_return == "3"
    assert fork_points_exhaustive(fixtures.fig2b()) == ["3"]
    assert fork_point_of_return(fixtures.fig2a()) is None
    assert fork_point_of_return(fixtures.markov()) is None


def test_fork_needs_at_most_one_frozen():
    with pytest.raises(errors.TooManyFrozen):
        fork_point_of_return(fixtures.fig1l())


@given(quivers(n_min=3, n_max=4, m_max=1, w=9))
@settings(max_examples=300, deadline=None)
def test_fork_matches_oracle(q):
    w = fork_point_of_return(q)
    assert ([] if w is None else [w.point_of_return]) == oracle_fork_points(q)


def test_fork_children_are_forks():
    f = fixtures.fig2b()
    for j in "124":
        assert fork_point_of_return(mutate(f, j)).point_of_return == j


# ice forks ---------------------------------------------------------------------

@pytest.mark.parametrize("name, por", [("FIG1L", "3"), ("FIG6", "1"), ("FIG7_3", None),
                                       ("FIG7_4", None), ("FIG7_5", None), ("FIG7_6", None)])
def test_ice_fork_fixtures(name, por):
    q = fixtures.get(name)
    assert ice_fork_point_of_return(q) == por
    assert oracle_ice_fork(q) == ([] if por is None else [por])


def test_ice_fork_needs_frozen():
    with pytest.raises(errors.NoFrozen):
        ice_fork_point_of_return(fixtures.markov())


@given(quivers(n_min=3, n_max=3, m_max=2, w=9))
@settings(max_examples=300, deadline=None)
def test_ice_fork_matches_oracle(q):
    if q.m == 0:
        return
    got = ice_fork_point_of_return(q)
    assert ([] if got is None else [got]) == oracle_ice_fork(q)


# vortices ------------------------------------------------------------------------

def test_fig4_fixture_apex():
    for q in (fixtures.fig4a(), fixtures.fig4b()):
        assert {a for a, _ in vortex_apices(q)} == {"4"}
        assert is_vortex_apex(q, "4")
    assert is_vortex_free(fixtures.fig2b())


def test_apex_must_reach_all_three():
    q = build_quiver("1234", "", [("1", "2", 1), ("2", "3", 1), ("3", "1", 1), ("4", "1", 1)])
    assert is_vortex_free(q)


@given(quivers(n_min=3, n_max=4, m_max=1, w=3))
@settings(max_examples=300, deadline=None)
def test_apices_match_oracle(q):
    assert {a for a, _ in vortex_apices(q)} == oracle_apices(q)


# cycle-preserving -------------------------------------------------------------------

def test_cycle_preserving_fixtures():
    assert not is_cycle_preserving(fixtures.fig1l(), "3")
    assert is_cycle_preserving(fixtures.markov(), "1")
    assert is_cycle_preserving(fixtures.fig2a(), "1")
    assert is_cycle_preserving_on_mutable(fixtures.fig1l(), "1")


@given(quivers(n_min=2, n_max=4, m_max=2, w=5))
@settings(max_examples=300, deadline=None)
def test_cycle_preserving_by_mutation(q):
    # every oriented triangle through j must still be an oriented triangle afterwards
    for j in range(q.n):
        p = mutate_index(q, j)
        expected = True
        for i, k in permutations([x for x in range(len(q.b)) if x != j], 2):
            if i >= q.n and k >= q.n:
                continue
            if q.b[i][j] > 0 and q.b[j][k] > 0 and q.b[k][i] > 0:
                if not (p.b[j][i] > 0 and p.b[i][k] > 0 and p.b[k][j] > 0):
                    expected = False
        assert cycle_preserving_index(q, j) == expected


# brog colourings ---------------------------------------------------------------------

def test_fig1l_colouring():
    col = brog_coloring(fixtures.fig1l())
    assert {v: c.value for v, c in col.items()} == {"1": "green", "2": "red", "3": "orange"}


def test_not_brog_example():
    # 1 is mixed; 2 -> 1 with 2 red rules out blue, 3 -> 1 with 3 green rules out orange
    q = build_quiver("123", "uv", [("1", "u", 1), ("v", "1", 1), ("u", "2", 1),
                                   ("3", "u", 1), ("2", "1", 1), ("3", "1", 1)])
    assert brog_coloring(q) is None
    assert oracle_colourings(q) == []


@given(quivers(n_min=2, n_max=4, m_max=2, w=3))
@settings(max_examples=400, deadline=None)
def test_colourings_match_exhaustive_search(q):
    if q.m == 0:
        return
    expected = sorted(oracle_colourings(q))
    got = sorted(_code(c, q.mutable) for c in all_brog_colorings(q))
    assert got == expected
    assert is_brog(q) == bool(expected)
    col = brog_coloring(q)
    if col is not None:
        assert check_brog_coloring(q, col)


def test_brog_is_not_hereditary_under_frozen_deletion():
    # brog with 1 orange; deleting v makes 1 and 2 red and 3 zero with no valid colour
    q = build_quiver("123", "uv", [("1", "3", 1), ("3", "2", 1), ("2", "1", 1), ("u", "1", 1),
                                   ("u", "2", 1), ("1", "v", 1), ("3", "v", 1)])
    assert brog_coloring(q)["1"] is Colour.ORANGE
    from quiverdyn.quiver import subquiver

    assert not is_brog(subquiver(q, ["1", "2", "3", "u"]))
    for keep in combinations("123", 2):
        assert is_brog(subquiver(q, list(keep) + ["u", "v"]))


# u-ascents ---------------------------------------------------------------------------------

def test_u_ascents_on_fig1l_restriction():
    from quiverdyn.quiver import subquiver

    q = subquiver(fixtures.fig1l(), ["1", "2", "3", "u"])
    assert is_u_ascent(q, "1", "u")
    assert not is_u_ascent(q, "3", "u")


def test_u_ascent_rank_guard():
    with pytest.raises(errors.WrongRank):
        is_u_ascent(fixtures.fig7(3), "1", "u")


# summary ---------------------------------------------------------------------------------

def test_classify_fig1l():
    info = classify(fixtures.fig1l())
    assert info["sign_coherent"] is False
    assert info["ice_fork"] == {"por": "3"}
    assert info["brog"] == {"1": "green", "2": "red", "3": "orange"}
    assert info["vortex_free"] is True
