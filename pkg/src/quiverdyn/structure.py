"""Forks, ice forks, vortices, cycle-preserving mutations, brog colourings, u-ascents."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from . import errors
from .numeric import sign
from .quiver import (
    Quiver,
    SignState,
    _is_acyclic,
    mutate_index,
    sign_state_index,
)


# forks ----------------------------------------------------------------------

@dataclass(frozen=True)
class ForkWitness:
    point_of_return: str
    checked: int  # number of strict inequalities verified


def _abundant_on(b, idx) -> bool:
    return all(abs(b[i][k]) >= 2 for i, k in combinations(idx, 2))


def _por_candidate(b, idx, r) -> int | None:
    """Number of inequalities checked if ``r`` satisfies the fork conditions, else None."""
    row = b[r]
    plus = [i for i in idx if row[i] > 0]
    minus = [j for j in idx if row[j] < 0]
    checked = 0
    for i in plus:
        bri = row[i]
        bi = b[i]
        for j in minus:
            bij = bi[j]
            if not (bij > bri and bij > -row[j]):
                return None
            checked += 2
    if not _is_acyclic(b, plus) or not _is_acyclic(b, minus):
        return None
    return checked


def fork_por_index(b, idx: Sequence[int]) -> int | None:
    """Point of return (matrix index) of the subquiver on ``idx``, or None."""
    if not _abundant_on(b, idx) or _is_acyclic(b, idx):
        return None
    for r in idx:
        if _por_candidate(b, idx, r) is not None:
            return r
    return None


def fork_point_of_return(q: Quiver) -> ForkWitness | None:
    if q.m > 1:
        raise errors.TooManyFrozen(f"fork test needs at most one frozen vertex, got {q.m}")
    idx = list(range(len(q.b)))
    if not _abundant_on(q.b, idx) or _is_acyclic(q.b, idx):
        return None
    for r in idx:
        checked = _por_candidate(q.b, idx, r)
        if checked is not None:
            return ForkWitness(q.vertices[r], checked)
    return None


def fork_points_exhaustive(q: Quiver) -> list:
    """Every vertex satisfying the point-of-return conditions (used to test uniqueness)."""
    idx = list(range(len(q.b)))
    if not _abundant_on(q.b, idx) or _is_acyclic(q.b, idx):
        return []
    return [q.vertices[r] for r in idx if _por_candidate(q.b, idx, r) is not None]


def is_fork(q: Quiver) -> bool:
    return fork_point_of_return(q) is not None


def mutable_fork_por(q: Quiver) -> str | None:
    """Point of return of the mutable part, if it is a fork."""
    r = fork_por_index(q.b, range(q.n))
    return None if r is None else q.vertices[r]


def ice_fork_por_index(q: Quiver) -> int | None:
    n, b = q.n, q.b
    mut = list(range(n))
    common = None
    for u in range(n, len(b)):
        r = fork_por_index(b, mut + [u])
        if r is None or (common is not None and r != common):
            return None
        common = r
    return common


def ice_fork_point_of_return(q: Quiver) -> str | None:
    if q.m == 0:
        raise errors.NoFrozen("ice forks need at least one frozen vertex")
    r = ice_fork_por_index(q)
    return None if r is None else q.vertices[r]


def is_ice_fork(q: Quiver) -> bool:
    return q.m > 0 and ice_fork_por_index(q) is not None


# vortices -------------------------------------------------------------------

def _apex_in(b, quad, a) -> bool:
    others = [x for x in quad if x != a]
    if _is_acyclic(b, others):
        return False
    signs = {sign(b[a][x]) for x in others}
    return len(signs) == 1 and 0 not in signs


def vortex_apices(q: Quiver) -> set:
    """``{(apex, frozenset(four vertices))}`` over all vortex subquivers.

    The apex is a source or sink joined to each of the other three vertices,
    so every vortex is a complete quiver.
    """
    out = set()
    n, names = q.n, q.vertices
    for quad in combinations(range(len(q.b)), 4):
        if sum(1 for x in quad if x < n) < 3:
            continue
        for a in quad:
            if _apex_in(q.b, quad, a):
                out.add((names[a], frozenset(names[x] for x in quad)))
    return out


def is_apex_index(q: Quiver, j: int) -> bool:
    n = q.n
    rest = [x for x in range(len(q.b)) if x != j]
    for trio in combinations(rest, 3):
        quad = (j,) + trio
        if sum(1 for x in quad if x < n) < 3:
            continue
        if _apex_in(q.b, quad, j):
            return True
    return False


def is_vortex_apex(q: Quiver, j) -> bool:
    return is_apex_index(q, q.index(j))


def is_vortex_free(q: Quiver) -> bool:
    return not vortex_apices(q)


# cycle-preserving mutations ------------------------------------------------

def cycle_preserving_index(q: Quiver, j: int, within: Sequence[int] | None = None) -> bool:
    """Every oriented cycle i -> j -> k -> i survives mutation at j.

    After mutation the arrow between i and k is ``b_ij*b_jk - b_ki``, so the
    cycle survives exactly when that stays positive.  ``within`` restricts the
    check to a vertex subset (e.g. the mutable part).
    """
    b = q.b
    idx = range(len(b)) if within is None else within
    bj = b[j]
    n = q.n
    for i in idx:
        bij = b[i][j]
        if i == j or bij <= 0:
            continue
        bi = b[i]
        for k in idx:
            if k == j or k == i or (i >= n and k >= n):
                continue
            bjk = bj[k]
            if bjk > 0:
                bki = -bi[k]
                if bki > 0 and not bij * bjk > bki:
                    return False
    return True


def is_cycle_preserving(q: Quiver, j) -> bool:
    return cycle_preserving_index(q, q.mutable_index(j))


def is_cycle_preserving_on_mutable(q: Quiver, j) -> bool:
    return cycle_preserving_index(q, q.mutable_index(j), range(q.n))


# complementary pairs and brog colourings -----------------------------------

class Colour(enum.Enum):
    RED = "red"
    GREEN = "green"
    BLUE = "blue"
    ORANGE = "orange"


def complementary_index(q: Quiver, i: int, j: int) -> bool:
    bi, bj = q.b[i], q.b[j]
    for u in range(q.n, len(q.b)):
        s, t = sign(bi[u]), sign(bj[u])
        if s and t and s == t:
            return False
    return True


def are_complementary(q: Quiver, i, j) -> bool:
    a, c = q.mutable_index(i), q.mutable_index(j)
    if a == c:
        raise errors.BadVertexSet("complementarity needs two distinct vertices")
    return complementary_index(q, a, c)


@dataclass(frozen=True)
class BrogAnalysis:
    """All colour choices compatible with the brog conditions.

    ``options[v]`` is the set of colours vertex ``v`` takes over all valid
    colourings.  Undecided vertices are grouped into components that must be
    coloured alike; components are independent of each other.
    """

    options: dict
    components: tuple


def brog_analysis(q: Quiver) -> BrogAnalysis | None:
    n, b = q.n, q.b
    states = [sign_state_index(q, r) for r in range(n)]
    red = [r for r in range(n) if states[r] is SignState.RED]
    green = [r for r in range(n) if states[r] is SignState.GREEN]
    undecided = [r for r in range(n) if not states[r].coherent]
    feas = {}
    for x in undecided:
        bx = b[x]
        blue = all(bx[r] >= 0 for r in red) and all(bx[g] <= 0 for g in green)
        orange = all(bx[g] >= 0 for g in green) and all(bx[r] <= 0 for r in red)
        feas[x] = {c for c, ok in ((Colour.BLUE, blue), (Colour.ORANGE, orange)) if ok}
    # non-complementary undecided pairs must share a colour
    parent = {x: x for x in undecided}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in combinations(undecided, 2):
        if not complementary_index(q, x, y):
            parent[find(x)] = find(y)
    groups = {}
    for x in undecided:
        groups.setdefault(find(x), []).append(x)
    comps = []
    options = {}
    for members in sorted(groups.values()):
        allowed = set.intersection(*(feas[x] for x in members))
        if not allowed:
            return None
        comps.append(tuple(q.vertices[x] for x in members))
        for x in members:
            options[q.vertices[x]] = frozenset(allowed)
    for r in red:
        options[q.vertices[r]] = frozenset({Colour.RED})
    for g in green:
        options[q.vertices[g]] = frozenset({Colour.GREEN})
    return BrogAnalysis(options, tuple(comps))


def brog_coloring(q: Quiver) -> dict | None:
    """Canonical brog colouring (blue wherever possible), or None if Q is not brog."""
    an = brog_analysis(q)
    if an is None:
        return None
    out = {}
    for v in q.mutable:
        opts = an.options[v]
        out[v] = Colour.BLUE if Colour.BLUE in opts else next(iter(opts))
    return out


def is_brog(q: Quiver) -> bool:
    return brog_analysis(q) is not None


def all_brog_colorings(q: Quiver):
    """Yield every valid colouring (exponential in the number of components)."""
    an = brog_analysis(q)
    if an is None:
        return
    fixed = {v: next(iter(o)) for v, o in an.options.items() if len(o) == 1}
    free = [c for c in an.components if len(an.options[c[0]]) == 2]
    for choice in product((Colour.BLUE, Colour.ORANGE), repeat=len(free)):
        col = dict(fixed)
        for comp, c in zip(free, choice):
            for v in comp:
                col[v] = c
        yield {v: col[v] for v in q.mutable}


def check_brog_coloring(q: Quiver, col: dict) -> bool:
    """Direct check of the five colouring conditions."""
    n, b = q.n, q.b
    names = q.mutable
    for r in range(n):
        st = sign_state_index(q, r)
        c = col[names[r]]
        if (st is SignState.RED) != (c is Colour.RED):
            return False
        if (st is SignState.GREEN) != (c is Colour.GREEN):
            return False
    for i in range(n):
        ci = col[names[i]]
        for j in range(n):
            if i == j:
                continue
            cj = col[names[j]]
            bij = b[i][j]
            if ci is Colour.BLUE:
                if (cj is Colour.RED and bij < 0) or (cj is Colour.GREEN and bij > 0):
                    return False
            if ci is Colour.ORANGE:
                if (cj is Colour.GREEN and bij < 0) or (cj is Colour.RED and bij > 0):
                    return False
            if ci is Colour.BLUE and cj is Colour.ORANGE and not complementary_index(q, i, j):
                return False
    return True


# u-ascents --------------------------------------------------------------------

def is_u_ascent(q: Quiver, i, u) -> bool:
    if q.n != 3:
        raise errors.WrongRank(f"u-ascents are defined at rank 3, got rank {q.n}")
    ii = q.mutable_index(i)
    uu = q.frozen_index(u)
    return u_ascent_index(q, ii, uu)


def u_ascent_index(q: Quiver, i: int, u: int, after: Quiver | None = None) -> bool:
    after = mutate_index(q, i) if after is None else after
    strict = False
    for j in range(q.n):
        old, new = abs(q.b[j][u]), abs(after.b[j][u])
        if new < old:
            return False
        if new > old:
            strict = True
    return strict


def adjacent_index(q: Quiver, i: int, u: int) -> bool:
    return q.b[i][u] != 0


# summary ----------------------------------------------------------------------

def classify(q: Quiver) -> dict:
    """Everything the ``classify`` command reports, as plain JSON data."""
    from .quiver import classify_basic, sign_states

    flags = classify_basic(q).as_dict()
    states = sign_states(q)
    out = {
        **flags,
        "rank": q.n,
        "frozen": q.m,
        "sign_coherent": all(s.coherent for s in states.values()),
        "sign_states": {v: s.value for v, s in states.items()},
    }
    if q.m <= 1:
        w = fork_point_of_return(q)
        out["fork"] = None if w is None else {"por": w.point_of_return}
    else:
        out["fork"] = None
    if q.m >= 1:
        r = ice_fork_point_of_return(q)
        out["ice_fork"] = None if r is None else {"por": r}
    else:
        out["ice_fork"] = None
    mf = mutable_fork_por(q)
    out["mutable_fork"] = None if mf is None else {"por": mf}
    col = brog_coloring(q)
    out["brog"] = None if col is None else {v: c.value for v, c in col.items()}
    apices = vortex_apices(q)
    out["vortex_free"] = not apices
    out["vortex_apices"] = sorted([a, sorted(s)] for a, s in apices)
    out["cycle_preserving"] = {v: cycle_preserving_index(q, r) for r, v in enumerate(q.mutable)}
    return out
