"""Registry of checkable statements about mutation, run over generated quivers.

Each checker receives one generated quiver plus the trial's random stream and
returns an Outcome.  ``vacuous`` means the generated instance did not meet the
hypotheses (nothing to check); ``inconclusive`` is reserved for existential
statements whose witness did not show up within the search horizon, or for
comparisons that enclosed arithmetic could not decide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .. import errors
from ..io import to_dict
from ..numeric import ExactnessLost
from ..parallel import chunked, pmap
from ..quiver import (
    Quiver,
    _is_acyclic,
    _triple_shape_idx,
    is_sign_coherent,
    mutable_part,
    mutate_index,
    oriented_cycle_triples,
    reverse_all,
    sign_state_index,
    subquiver,
)
from ..sequences import sigma, two_frozen
from ..structure import (
    Colour,
    all_brog_colorings,
    brog_analysis,
    complementary_index,
    cycle_preserving_index,
    fork_por_index,
    ice_fork_por_index,
    is_apex_index,
    u_ascent_index,
    vortex_apices,
)
from .generators import GenConfig, generate, trial_rng

PASS, FAIL, INCONCLUSIVE, VACUOUS = "pass", "fail", "inconclusive", "vacuous"


@dataclass
class Outcome:
    status: str
    detail: str = ""
    quiver: Quiver | None = None
    word: list = field(default_factory=list)

    def counterexample(self) -> dict | None:
        if self.status != FAIL:
            return None
        q = self.quiver
        names = q.mutable if q is not None else []
        return {
            "quiver": to_dict(q) if q is not None else None,
            "word": [names[j] for j in self.word] if q is not None else self.word,
            "detail": self.detail,
        }


def _ok() -> Outcome:
    return Outcome(PASS)


def _fail(q: Quiver, detail: str, word=()) -> Outcome:
    return Outcome(FAIL, detail, q, list(word))


# shared helpers ------------------------------------------------------------------

def _random_word(rng, q: Quiver, length: int, avoid: int | None = None,
                 allowed: Callable | None = None) -> tuple:
    """Random reduced word; ``allowed(quiver, letter, position)`` filters letters.

    Stops early when no letter is allowed.  Returns ``(letters, path)``.
    """
    letters, path, last = [], [q], avoid
    for pos in range(length):
        cur = path[-1]
        cands = [j for j in range(q.n) if j != last and (allowed is None or allowed(cur, j, pos))]
        if not cands:
            break
        last = int(rng.choice(cands))
        letters.append(last)
        path.append(mutate_index(cur, last))
    return letters, path


def _coherent(q: Quiver, r: int) -> bool:
    return sign_state_index(q, r).coherent


def _coverage(letters: list, start: int, n: int) -> int | None:
    seen = set()
    for pos in range(start, len(letters)):
        seen.add(letters[pos])
        if len(seen) == n:
            return pos + 1
    return None


def _is_vortex(q: Quiver) -> bool:
    return bool(vortex_apices(q))


def _cp_non_apex(q: Quiver) -> list:
    return [j for j in range(q.n) if cycle_preserving_index(q, j) and not is_apex_index(q, j)]


def _cp_word(rng, q: Quiver, length: int) -> tuple:
    """Reduced cycle-preserving word whose first letter is not a vortex apex."""
    def allowed(cur, j, pos):
        return cycle_preserving_index(cur, j) and (pos > 0 or not is_apex_index(cur, j))
    return _random_word(rng, q, length, allowed=allowed)


def _orange_options(q: Quiver, j: int) -> tuple:
    """``(possibly_orange, forced_orange)`` for mutable vertex ``j``."""
    an = brog_analysis(q)
    if an is None:
        return True, False
    opts = an.options[q.mutable[j]]
    return Colour.ORANGE in opts, opts == frozenset({Colour.ORANGE})


# P1-P2: mutation basics ---------------------------------------------------------

def p1_involution(q, rng):
    for j in range(q.n):
        if mutate_index(mutate_index(q, j), j) != q:
            return _fail(q, f"mutating twice at {q.mutable[j]} is not the identity", [j, j])
    return _ok()


def p2_reversal(q, rng):
    rev = reverse_all(q)
    for j in range(q.n):
        if reverse_all(mutate_index(q, j)) != mutate_index(rev, j):
            return _fail(q, f"reversal does not commute with mutation at {q.mutable[j]}", [j])
    return _ok()


# P3-P10: forks, vortices, cycle-preserving mutations -------------------------------

def _fork_por(q: Quiver):
    return fork_por_index(q.b, range(len(q.b)))


def p3_fork_child(q, rng):
    r = _fork_por(q)
    if r is None:
        return Outcome(VACUOUS, "not a fork")
    for j in range(q.n):
        if j == r:
            continue
        got = _fork_por(mutate_index(q, j))
        if got != j:
            return _fail(q, f"child at {q.mutable[j]} has point of return {got}", [j])
    return _ok()


def p4_fork_vortex_free(q, rng):
    r = _fork_por(q)
    if r is None:
        return Outcome(VACUOUS, "not a fork")
    letters, path = _random_word(rng, q, 3, avoid=r)
    for k, p in enumerate(path):
        if _is_vortex_free_fork(p) is False:
            return _fail(q, "fork with a vortex subquiver", letters[:k])
    return _ok()


def _is_vortex_free_fork(p: Quiver):
    if _fork_por(p) is None:
        return None
    return not vortex_apices(p)


def p5_apex_persists(q, rng):
    apices = [j for j in range(q.n) if is_apex_index(q, j)]
    if not apices:
        return Outcome(VACUOUS, "no mutable apex")
    for j in apices:
        if not is_apex_index(mutate_index(q, j), j):
            return _fail(q, f"{q.mutable[j]} stops being an apex after mutating there", [j])
    return _ok()


def p6_fork_parent_cycle_preserving(f, rng):
    r = _fork_por(f)
    if r is None or r >= f.n:
        return Outcome(VACUOUS, "fork with a frozen point of return")
    q = mutate_index(f, r)  # mutating back at r gives the fork f
    checked = False
    for i in range(q.n):
        if _fork_por(mutate_index(q, i)) == i:
            checked = True
            if not cycle_preserving_index(q, i):
                return _fail(q, f"{q.mutable[i]} returns to a fork but is not cycle-preserving", [i])
    return _ok() if checked else Outcome(VACUOUS, "no fork neighbour")


def p7_cycles_through_j(q, rng):
    good = _cp_non_apex(q)
    if not good:
        return Outcome(VACUOUS, "no cycle-preserving non-apex vertex")
    for j in good:
        p = mutate_index(q, j)
        name = q.mutable[j]
        for tri in oriented_cycle_triples(p):
            if j not in tri:
                labels = [p.vertices[x] for x in tri]
                return _fail(q, f"oriented cycle {labels} avoids {name} after mutating there", [j])
        if vortex_apices(p):
            return _fail(q, f"vortex after mutating at {name}", [j])
    return _ok()


def p8_skip_colored(q, rng):
    if q.m == 0:
        return Outcome(VACUOUS, "no frozen vertex")
    targets = [j for j in range(q.n) if cycle_preserving_index(q, j) and _coherent(q, j)]
    if not targets:
        return Outcome(VACUOUS, "no cycle-preserving sign-coherent vertex")
    size = len(q.b)
    for j in targets:
        p = mutate_index(q, j)
        for k in range(q.n):
            if _coherent(q, k):
                if not _coherent(p, k):
                    return _fail(q, f"{q.mutable[k]} loses its colour at {q.mutable[j]}", [j])
            elif k != j:
                same = all(p.b[k][u] == q.b[k][u] for u in range(q.n, size))
                if not same and not _coherent(p, k):
                    return _fail(q, f"frozen weights of {q.mutable[k]} changed without colouring it", [j])
    return _ok()


def p9_ice_fork_colors_stay(q, rng):
    r = ice_fork_por_index(q)
    if r is None:
        return Outcome(VACUOUS, "not an ice fork")
    for j in range(q.n):
        if j == r:
            continue
        p = mutate_index(q, j)
        for k in range(q.n):
            if k != j and _coherent(q, k) and not _coherent(p, k):
                return _fail(q, f"{q.mutable[k]} loses its colour at {q.mutable[j]}", [j])
    return _ok()


def p10_two_step_colouring(q, rng):
    if q.m < 2:
        return Outcome(VACUOUS, "fewer than two frozen vertices")
    checked = False
    for j in range(q.n):
        if _coherent(q, j) or not cycle_preserving_index(q, j):
            continue
        p = mutate_index(q, j)
        for k in range(q.n):
            if k == j or not cycle_preserving_index(p, k):
                continue
            checked = True
            if not _coherent(mutate_index(p, k), j):
                return _fail(q, f"{q.mutable[j]} still incoherent after {q.mutable[j]},{q.mutable[k]}",
                             [j, k])
    return _ok() if checked else Outcome(VACUOUS, "no admissible pair")


# P11: ice forks and reduced words -------------------------------------------------

P11_LENGTH = 30


def p11_ice_fork_coherence(q, rng):
    r = ice_fork_por_index(q)
    if r is None:
        return Outcome(VACUOUS, "not an ice fork")
    for _ in range(8):
        letters, path = _random_word(rng, q, P11_LENGTH, avoid=r)
        c = _coverage(letters, 0, q.n)
        if c is not None:
            break
    else:
        return Outcome(VACUOUS, "no covering word drawn")
    for k in range(c + 1, len(path)):
        if not is_sign_coherent(path[k]):
            return _fail(q, f"incoherent at index {k} after coverage at {c}", letters)
    return _ok()


# P12-P17, P24: brog quivers -------------------------------------------------------

def p12_ice_fork_brog(q, rng):
    if ice_fork_por_index(q) is None or q.m != 2:
        return Outcome(VACUOUS, "not an ice fork with two frozen vertices")
    return _ok() if brog_analysis(q) is not None else _fail(q, "ice fork is not brog")


def p13_mutation_brog(q, rng):
    good = _cp_non_apex(q)
    if q.m != 2 or not good:
        return Outcome(VACUOUS, "hypotheses not met")
    for j in good:
        if brog_analysis(mutate_index(q, j)) is None:
            return _fail(q, f"not brog after mutating at {q.mutable[j]}", [j])
    return _ok()


def _separating_colouring(q: Quiver) -> bool:
    """Some colouring gives complementary undecided vertices different colours."""
    und = [r for r in range(q.n) if not _coherent(q, r)]
    pairs = [(x, y) for x, y in combinations(und, 2) if complementary_index(q, x, y)]
    names = q.mutable
    for col in all_brog_colorings(q):
        if all(col[names[x]] != col[names[y]] for x, y in pairs):
            return True
    return False


def p13b_complementary_split(q, rng):
    good = _cp_non_apex(q)
    if q.m != 2 or not good:
        return Outcome(VACUOUS, "hypotheses not met")
    for j in good:
        p = mutate_index(q, j)
        if brog_analysis(p) is None or not _separating_colouring(p):
            return Outcome(INCONCLUSIVE, f"no separating colouring after {q.mutable[j]}")
    return _ok()


P14_LENGTH = 12


def p14_brog_forever(q, rng):
    if q.m != 2 or brog_analysis(q) is None:
        return Outcome(VACUOUS, "not brog with two frozen vertices")
    letters, path = _cp_word(rng, q, P14_LENGTH)
    if not letters:
        return Outcome(VACUOUS, "no admissible first letter")
    for k, p in enumerate(path):
        if brog_analysis(p) is None:
            return _fail(q, f"not brog at index {k}", letters)
        if k > 0 and vortex_apices(p):
            return _fail(q, f"vortex at index {k}", letters)
    return _ok()


def p15_orange_away(q, rng):
    if brog_analysis(q) is None:
        return Outcome(VACUOUS, "not brog")
    targets = [j for j in _cp_non_apex(q) if not _coherent(q, j)]
    if not targets:
        return Outcome(VACUOUS, "no incoherent cycle-preserving non-apex vertex")
    for j in targets:
        p = mutate_index(q, j)
        name = q.mutable[j]
        found = any(
            [v for v, c in col.items() if c is Colour.ORANGE] == [name]
            for col in all_brog_colorings(p)
        )
        if not found:
            return _fail(q, f"no colouring with only {name} orange", [j])
    return _ok()


P16_LENGTH = 15


def p16_orange_rare(q, rng):
    if brog_analysis(q) is None:
        return Outcome(VACUOUS, "not brog")
    letters, path = _cp_word(rng, q, P16_LENGTH)
    if not letters:
        return Outcome(VACUOUS, "no admissible first letter")
    forced = [k for k, j in enumerate(letters) if _orange_options(path[k], j)[1]]
    if len(forced) > 2:
        return _fail(q, f"mutations at forced-orange vertices at positions {forced}", letters)
    return _ok()


P17_LENGTH = 30


def p17_brog_coherence(q, rng):
    if q.m < 1:
        return Outcome(VACUOUS, "no frozen vertex")
    letters, path = _cp_word(rng, q, P17_LENGTH)
    if not letters:
        return Outcome(VACUOUS, "no admissible first letter")
    # K = last position (1-based) where the letter could have been orange
    last_orange = 0
    for k, j in enumerate(letters):
        if _orange_options(path[k], j)[0]:
            last_orange = k + 1
    c = _coverage(letters, last_orange, q.n)
    if c is None:
        return Outcome(INCONCLUSIVE, f"no coverage after position {last_orange}")
    for k in range(c + 1, len(path)):
        if not is_sign_coherent(path[k]):
            return _fail(q, f"incoherent at index {k} (orange budget {last_orange}, coverage {c})",
                         letters)
    return _ok()


def p24_brog_hereditary(q, rng):
    if brog_analysis(q) is None:
        return Outcome(VACUOUS, "not brog")
    names = q.mutable
    for size in range(1, q.n):
        for keep in combinations(names, size):
            sub = subquiver(q, list(keep) + list(q.frozen))
            if brog_analysis(sub) is None:
                return _fail(q, f"restriction to {list(keep)} with all frozen vertices is not brog")
    return _ok()


# P18-P22: low rank ------------------------------------------------------------------

def _is_oriented_cycle(q: Quiver) -> bool:
    return _triple_shape_idx(q, (0, 1, 2)).kind == "oriented_cycle"


def _source_or_sink(q: Quiver, a: int) -> bool:
    row = [q.b[a][x] for x in range(len(q.b)) if x != a]
    return all(x >= 0 for x in row) or all(x <= 0 for x in row)


def p18_rank2_ascents(q, rng):
    if q.n != 2 or q.m != 1:
        return Outcome(VACUOUS, "not rank 2 with one frozen vertex")
    u = 2
    checked = False
    for a, c in ((0, 1), (1, 0)):
        if not q.b[a][c] >= 2:
            continue
        checked = True
        q1 = mutate_index(q, a)
        q2 = mutate_index(q1, c)
        old, new = abs(q.b[c][u]), abs(q1.b[c][u])
        lhs, rhs = abs(q.b[u][a] * q.b[a][c]), 2 * abs(q.b[u][c])
        grow_a = abs(q2.b[a][u]) - abs(q1.b[a][u])
        tag = f"with 1={q.mutable[a]}, 2={q.mutable[c]}"
        if new > old:
            if not _is_oriented_cycle(q1):
                return _fail(q, f"ascent but first mutation is not an oriented cycle ({tag})", [a])
            if not lhs > rhs:
                return _fail(q, f"ascent but |b_u1 b_12| = {lhs} <= 2|b_u2| = {rhs} ({tag})", [a])
            if not grow_a > 0:
                return _fail(q, f"ascent not followed by an ascent ({tag})", [a, c])
        elif new == old:
            if not (_source_or_sink(q, a) or (_is_oriented_cycle(q) and lhs == rhs)):
                return _fail(q, f"equal weights without source/sink or equality ({tag})", [a])
            if grow_a < 0:
                return _fail(q, f"second mutation decreases the weight at 1 ({tag})", [a, c])
    return _ok() if checked else Outcome(VACUOUS, "no weight >= 2 in the needed direction")


def p19_ascent_cycle_preserving(q, rng):
    if q.n != 3 or q.m != 1:
        return Outcome(VACUOUS, "not rank 3 with one frozen vertex")
    checked = False
    for i in range(3):
        if u_ascent_index(q, i, 3) and cycle_preserving_index(q, i, range(3)):
            checked = True
            if not cycle_preserving_index(q, i):
                return _fail(q, f"u-ascent {q.mutable[i]} is not cycle-preserving", [i])
    return _ok() if checked else Outcome(VACUOUS, "no u-ascent cycle-preserving on the mutable part")


def p20_ascent_no_vortex(q, rng):
    if q.n != 3 or q.m != 1:
        return Outcome(VACUOUS, "not rank 3 with one frozen vertex")
    checked = False
    for i in range(3):
        if u_ascent_index(q, i, 3) and cycle_preserving_index(q, i):
            checked = True
            if _is_vortex(mutate_index(q, i)):
                return _fail(q, f"vortex after the u-ascent {q.mutable[i]}", [i])
    return _ok() if checked else Outcome(VACUOUS, "no cycle-preserving u-ascent")


RANK3_HORIZON = 24


def _cp_mutable_word(rng, q: Quiver, length: int) -> tuple:
    def allowed(cur, j, pos):
        return cycle_preserving_index(cur, j, range(cur.n))
    return _random_word(rng, q, length, allowed=allowed)


def p21_ascents_sticky(q, rng):
    if q.n != 3 or q.m != 1:
        return Outcome(VACUOUS, "not rank 3 with one frozen vertex")
    letters, path = _cp_mutable_word(rng, q, RANK3_HORIZON)
    first = next((k for k, j in enumerate(letters) if u_ascent_index(path[k], j, 3)), None)
    if first is None:
        return Outcome(INCONCLUSIVE, f"no u-ascent within {len(letters)} steps")
    for k in range(first + 1, len(letters)):
        j, p = letters[k], path[k]
        if p.b[j][3] != 0 and not u_ascent_index(p, j, 3, path[k + 1]):
            return _fail(q, f"letter {k + 1} is adjacent to u but not a u-ascent", letters)
    return _ok()


P22_STEPS = 500


def p22_rank2_acyclic(q, rng):
    if q.n != 2 or q.m != 1 or abs(q.b[0][1]) < 2:
        return Outcome(VACUOUS, "hypotheses not met")
    every = range(len(q.b))
    for start in (0, 1):
        p, count = q, int(_is_acyclic(q.b, every))
        for s in range(P22_STEPS):
            p = mutate_index(p, (start + s) % 2)
            count += _is_acyclic(p.b, every)
        if count > 4:
            word = [(start + s) % 2 for s in range(P22_STEPS)]
            return _fail(q, f"{count} acyclic quivers along the alternating word", word)
    return _ok()


# P23: sign vectors -----------------------------------------------------------------

P23_MAX_WORD = 20


def p23_sigma_equivalence(qmut, rng):
    if qmut.m:
        qmut = mutable_part(qmut)
    n, W = qmut.n, 12
    a = [int(x) for x in rng.integers(1, W + 1, n) * rng.choice([-1, 1], n)]
    b = [int(x) for x in rng.integers(1, W + 1, n) * rng.choice([-1, 1], n)]
    length = int(rng.integers(0, P23_MAX_WORD + 1))
    letters = [int(x) for x in rng.integers(0, n, length)]
    word = [qmut.mutable[j] for j in letters]
    two = two_frozen(qmut, a, b)
    p, checked = two, 0
    for k in range(length + 1):
        if k:
            p = mutate_index(p, letters[k - 1])
        sa, sb = sigma(qmut, word, a, k), sigma(qmut, word, b, k)
        col_a = tuple("+" if p.b[i][n] > 0 else "-" if p.b[i][n] < 0 else "0" for i in range(n))
        if col_a != sa:
            return _fail(qmut, f"attached column disagrees with sigma at step {k}", letters)
        if "0" in sa or "0" in sb:
            continue
        checked += 1
        if is_sign_coherent(p) != (sa == sb):
            return _fail(qmut, f"coherence and sigma equality disagree at step {k}", letters)
    return _ok() if checked else Outcome(VACUOUS, "a zero sign at every step")


# P25: horizon-bounded existence statements ------------------------------------------

def p25_horizon(q, rng):
    if q.n != 3 or q.m != 1:
        return Outcome(VACUOUS, "not rank 3 with one frozen vertex")
    H = RANK3_HORIZON
    letters, path = _cp_mutable_word(rng, q, H)
    if _coverage(letters, 0, 3) is None:
        return Outcome(INCONCLUSIVE, "word does not cover all vertices within the horizon")
    notes = []
    # a u-ascent shows up
    if not any(u_ascent_index(path[k], j, 3, path[k + 1]) for k, j in enumerate(letters)):
        notes.append("no u-ascent")
    # a cycle-preserving tail covering at least half the horizon
    bad = [k for k, j in enumerate(letters) if not cycle_preserving_index(path[k], j)]
    if bad and bad[-1] >= len(letters) // 2:
        notes.append(f"tail not cycle-preserving from position {bad[-1] + 1}")
    # the mutable part: once an acyclic quiver mutates to a cyclic one it never returns
    mut = [mutable_part(p) for p in path]
    cyc = [not _is_acyclic(p.b, range(3)) for p in mut]
    for k in range(1, len(cyc)):
        if cyc[k] and not cyc[k - 1] and not all(cyc[k:]):
            return _fail(q, f"mutable part acyclic again after turning cyclic at index {k}", letters)
    tail = cyc[-(H // 4):]
    if len(set(tail)) != 1:
        notes.append("neither acyclic nor cyclic throughout the last quarter")
    return Outcome(INCONCLUSIVE, "; ".join(notes)) if notes else _ok()


# registry ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Property:
    pid: str
    summary: str
    check: Callable
    default: GenConfig
    horizon_bounded: bool = False


def _g(family, n, m=0):
    return GenConfig(family=family, n=n, m=m)


_N34 = (3, 4)

PROPERTIES = {p.pid: p for p in (
    Property("P1", "mutation is an involution", p1_involution, _g("Complete", (2, 3, 4), 2)),
    Property("P2", "reversal commutes with mutation", p2_reversal, _g("Complete", (2, 3, 4), 2)),
    Property("P3", "children of a fork away from its point of return are forks", p3_fork_child,
             _g("Fork", 4)),
    Property("P4", "forks are vortex-free", p4_fork_vortex_free, _g("Fork", _N34, 1)),
    Property("P5", "a vortex apex stays an apex after mutating there", p5_apex_persists,
             _g("Complete", _N34, 1)),
    Property("P6", "returning to a fork is cycle-preserving", p6_fork_parent_cycle_preserving,
             _g("Fork", _N34)),
    Property("P7", "cycle-preserving non-apex mutation leaves cycles only through j",
             p7_cycles_through_j, _g("Complete", _N34, 1)),
    Property("P8", "cycle-preserving mutation at a coloured vertex keeps colours",
             p8_skip_colored, _g("Complete", _N34, 2)),
    Property("P9", "ice fork mutations away from the point of return keep colours",
             p9_ice_fork_colors_stay, _g("IceFork", _N34, 2)),
    Property("P10", "two cycle-preserving steps colour the first vertex", p10_two_step_colouring,
             _g("CompleteTwoFrozen", _N34, 2)),
    Property("P11", "ice forks turn sign-coherent after coverage", p11_ice_fork_coherence,
             _g("IceFork", _N34, 2)),
    Property("P12", "ice forks with two frozen vertices are brog", p12_ice_fork_brog,
             _g("IceFork", _N34, 2)),
    Property("P13", "cycle-preserving non-apex mutation of a complete quiver is brog",
             p13_mutation_brog, _g("CompleteTwoFrozen", _N34, 2)),
    Property("P13b", "complementary undecided vertices can be coloured apart",
             p13b_complementary_split, _g("CompleteTwoFrozen", _N34, 2), True),
    Property("P14", "brog persists along cycle-preserving words", p14_brog_forever,
             _g("BrogTwoFrozen", _N34, 2)),
    Property("P15", "after mutating an incoherent vertex only it needs to be orange",
             p15_orange_away, _g("BrogTwoFrozen", _N34, 2)),
    Property("P16", "at most two mutations at forced-orange vertices", p16_orange_rare,
             _g("BrogTwoFrozen", _N34, 2)),
    Property("P17", "complete quivers turn sign-coherent on cycle-preserving words",
             p17_brog_coherence, _g("CompleteTwoFrozen", _N34, 2), True),
    Property("P18", "rank-2 ascent dichotomy", p18_rank2_ascents, _g("Rank2", 2, 1)),
    Property("P19", "u-ascents cycle-preserving on the mutable part are cycle-preserving",
             p19_ascent_cycle_preserving, _g("Rank3", 3, 1)),
    Property("P20", "cycle-preserving u-ascents do not create a vortex", p20_ascent_no_vortex,
             _g("Rank3", 3, 1)),
    Property("P21", "after a u-ascent every adjacent letter is a u-ascent", p21_ascents_sticky,
             _g("Rank3Abundant", 3, 1), True),
    Property("P22", "at most four acyclic quivers along the alternating rank-2 word",
             p22_rank2_acyclic, _g("Rank2", 2, 1)),
    Property("P23", "two-frozen coherence matches sign-vector equality", p23_sigma_equivalence,
             _g("Unframed", (2, 3, 4))),
    Property("P24", "brog survives deleting mutable vertices", p24_brog_hereditary,
             _g("BrogTwoFrozen", _N34, 2)),
    Property("P25", "rank-3 eventual behaviour shows up within the horizon", p25_horizon,
             _g("Rank3Abundant", 3, 1), True),
)}


def get_property(pid: str) -> Property:
    key = pid.split("_", 1)[0]
    key = key[0].upper() + key[1:] if key else key
    if key not in PROPERTIES:
        raise errors.UnknownProperty(f"unknown property {pid!r}", known=sorted(PROPERTIES))
    return PROPERTIES[key]


# running ----------------------------------------------------------------------------

@dataclass
class PropertyReport:
    property: str
    config: dict
    attempted: int = 0
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    vacuous: int = 0
    counterexample: dict | None = None
    first_failure_trial: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def as_dict(self) -> dict:
        return {
            "property": self.property, "config": self.config, "attempted": self.attempted,
            "passed": self.passed, "failed": self.failed, "inconclusive": self.inconclusive,
            "vacuous": self.vacuous, "counterexample": self.counterexample,
            "first_failure_trial": self.first_failure_trial, "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def run_trial(prop: Property, cfg: GenConfig, trial: int) -> Outcome:
    rng = trial_rng(cfg.seed, trial)
    q = generate(cfg, rng)
    try:
        return prop.check(q, rng)
    except ExactnessLost as exc:
        return Outcome(INCONCLUSIVE, f"precision: {exc}")


def _chunk_job(args):
    pid, cfg, trials = args
    prop = PROPERTIES[pid]
    out = []
    for t in trials:
        o = run_trial(prop, cfg, t)
        out.append((t, o.status, o.detail, o.counterexample()))
    return out


def check(property_id: str, cfg: GenConfig | None = None, trials: int = 100,
          seed: int | None = None, workers: int = 1) -> PropertyReport:
    """Run ``trials`` generated instances; per-trial streams come from (seed, trial)."""
    prop = get_property(property_id)
    cfg = prop.default if cfg is None else cfg
    if seed is not None:
        cfg = GenConfig(cfg.family, cfg.n, cfg.m, cfg.W, seed)
    if trials < 0:
        raise errors.OutOfRange("trials must be nonnegative")
    idx = list(range(trials))
    jobs = [(prop.pid, cfg, part) for part in chunked(idx, max(1, workers) * 4)] if idx else []
    results = [r for part in pmap(_chunk_job, jobs, workers) for r in part]
    rep = PropertyReport(prop.pid, cfg.as_dict(), attempted=trials)
    details = {}
    for t, status, detail, cex in results:
        if status == PASS:
            rep.passed += 1
        elif status == VACUOUS:
            rep.vacuous += 1
        elif status == INCONCLUSIVE:
            rep.inconclusive += 1
            details[detail.split(" at ")[0]] = details.get(detail.split(" at ")[0], 0) + 1
        else:
            rep.failed += 1
            if rep.counterexample is None:
                rep.counterexample = cex
                rep.first_failure_trial = t
    if details:
        rep.notes["inconclusive_reasons"] = dict(sorted(details.items()))
    return rep
