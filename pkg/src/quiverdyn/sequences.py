"""Mutation words: trajectories, reduction, classification, sign vectors, certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import errors
from .numeric import ExactnessLost, sign
from .quiver import (
    Quiver,
    attach_columns,
    attach_frozen,
    is_sign_coherent,
    mutable_part,
    mutate_index,
)
from .structure import fork_por_index, ice_fork_por_index


def _letters(q: Quiver, word: Iterable) -> list:
    return [q.mutable_index(str(x)) for x in word]


def trajectory(q: Quiver, word: Sequence, upto: int | None = None) -> list:
    """``[Q0, Q1, ..., Q_upto]`` along ``word`` (all of it by default)."""
    word = list(word)
    upto = len(word) if upto is None else upto
    if upto < 0 or upto > len(word):
        raise errors.OutOfRange(f"upto={upto} outside 0..{len(word)}")
    out = [q]
    for j in _letters(q, word[:upto]):
        q = mutate_index(q, j)
        out.append(q)
    return out


def endpoint(q: Quiver, word: Sequence) -> Quiver:
    for j in _letters(q, word):
        q = mutate_index(q, j)
    return q


def is_reduced(word: Sequence) -> bool:
    return all(a != b for a, b in zip(word, word[1:]))


def reduce_word(word: Sequence) -> list:
    """Cancel adjacent equal pairs until none remain (one pass with a stack)."""
    stack = []
    for x in word:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return stack


def is_simple(q: Quiver, word: Sequence) -> bool:
    seen = set()
    for p in trajectory(q, word):
        d = p.digest()
        if d in seen:
            return False
        seen.add(d)
    return True


# monotonicity ---------------------------------------------------------------

def _distances_ok(q0: Quiver, path: list, budget: int) -> bool | None:
    """True iff ``path[k]`` is at distance exactly k from ``q0`` for every k.

    Breadth-first search from ``q0`` out to radius ``len(path) - 2``.  None
    when the node budget runs out before the verdict is known.
    """
    target = {}
    for k, p in enumerate(path):
        target.setdefault(p.digest(), k)
    if any(target[p.digest()] != k for k, p in enumerate(path)):
        return False  # a repeated quiver
    seen = {q0.digest()}
    frontier = [q0]
    for depth in range(1, len(path) - 1):
        nxt = []
        for p in frontier:
            for j in range(p.n):
                c = mutate_index(p, j)
                d = c.digest()
                if d in seen:
                    continue
                k = target.get(d)
                if k is not None and k > depth:
                    return False  # path[k] is reachable in fewer than k steps
                seen.add(d)
                nxt.append(c)
                if len(seen) > budget:
                    return None
        frontier = nxt
    return True


def is_monotone(q: Quiver, word: Sequence, budget: int = 100_000):
    """True / False, or None when the search budget is exhausted first.

    Uses the tree structure around forks when possible: once the mutable part
    becomes a fork whose point of return is the letter just applied, and the
    prefix so far is monotone, the rest is monotone exactly when it is reduced.
    """
    word = [str(x) for x in word]
    if not is_reduced(word):
        return False
    path = trajectory(q, word)
    mut_path = [mutable_part(p) for p in path]
    idx = _letters(q, word)
    for k in range(1, len(word) + 1):
        if fork_por_index(mut_path[k].b, range(q.n)) == idx[k - 1]:
            verdict = _distances_ok(mut_path[0], mut_path[: k + 1], budget)
            if verdict:
                return True
            break
    return _distances_ok(q, path, budget)


# balance ------------------------------------------------------------------------

@dataclass(frozen=True)
class EventuallyPeriodicWord:
    preamble: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise errors.EmptyPeriod("eventually periodic word needs a nonempty period")

    def prefix(self, length: int) -> list:
        out = list(self.preamble[:length])
        while len(out) < length:
            out.extend(self.period[: length - len(out)])
        return out

    def __str__(self):
        return f"{','.join(self.preamble)} | {','.join(self.period)}"


def periodic(preamble: Iterable, period: Iterable) -> EventuallyPeriodicWord:
    return EventuallyPeriodicWord(tuple(str(x) for x in preamble), tuple(str(x) for x in period))


BALANCED = "Balanced"
NOT_WEAKLY_BALANCED = "NotWeaklyBalanced"


def classify_balance(word: EventuallyPeriodicWord, vertices) -> str:
    """Balance verdict for an eventually periodic word.

    ``vertices`` is the mutable vertex list, or a rank n meaning "1".."n".
    Only letters in the period recur, and each of those recurs with positive
    frequency, so the weak and strong notions coincide here.
    """
    if isinstance(vertices, int):
        vertices = [str(i) for i in range(1, vertices + 1)]
    if not word.period:
        raise errors.EmptyPeriod("empty period")
    recurring = set(word.period)
    return BALANCED if all(str(v) in recurring for v in vertices) else NOT_WEAKLY_BALANCED


# sign vectors -------------------------------------------------------------------

def _sgn_char(x) -> str:
    s = sign(x)
    return "+" if s > 0 else "-" if s < 0 else "0"


def sigma(qmut: Quiver, word: Sequence, a: Sequence[int], k: int) -> tuple:
    """Signs of the attached column after the first ``k`` letters."""
    hat = attach_frozen(qmut, a)
    word = list(word)
    if k < 0 or k > len(word):
        raise errors.OutOfRange(f"k={k} outside 0..{len(word)}")
    end = endpoint(hat, word[:k])
    u = end.n
    return tuple(_sgn_char(end.b[i][u]) for i in range(end.n))


def sigma_trace(qmut: Quiver, word: Sequence, a: Sequence[int]) -> list:
    hat = attach_frozen(qmut, a)
    u = hat.n
    return [tuple(_sgn_char(p.b[i][u]) for i in range(p.n)) for p in trajectory(hat, word)]


def sigma_equiv_check(qmut: Quiver, word: Sequence, a, b, k: int) -> bool:
    return sigma(qmut, word, a, k) == sigma(qmut, word, b, k)


def two_frozen(qmut: Quiver, a: Sequence[int], b: Sequence[int]) -> Quiver:
    """Mutable part plus frozen ``ua``, ``ub`` carrying the columns ``a`` and ``b``."""
    if qmut.m:
        raise errors.HasFrozen("two_frozen needs a quiver without frozen vertices")
    return attach_columns(qmut, [a, b], ["ua", "ub"])


# certificates -------------------------------------------------------------------

@dataclass(frozen=True)
class CoherenceCertificate:
    """Ice fork at step ``t`` with point of return ``r``; letters t+1..c cover every vertex.

    ``verified`` records whether every trajectory quiver after ``c`` was
    actually observed to be sign-coherent.
    """

    ice_fork_index: int
    point_of_return: str
    coverage_index: int
    verified: bool = field(default=False, compare=False)

    def as_dict(self) -> dict:
        return {"t": self.ice_fork_index, "por": self.point_of_return,
                "coverage": self.coverage_index, "verified": self.verified}


def _coverage(word: Sequence, start: int, n_vertices: int) -> int | None:
    seen = set()
    for pos in range(start, len(word)):
        seen.add(word[pos])
        if len(seen) == n_vertices:
            return pos + 1
    return None


def coherence_certificate(q: Quiver, word: Sequence, path: list | None = None):
    """Earliest certificate that the trajectory is sign-coherent after some index.

    Scans t = 0, 1, ... for an ice fork whose remaining word is reduced,
    starts away from the point of return and mentions every mutable vertex.
    Indices where an enclosed weight makes the ice-fork test undecidable are
    skipped, so under inexact arithmetic "earliest" means earliest decidable.
    """
    word = [str(x) for x in word]
    if q.m == 0 or not word:
        return None
    path = trajectory(q, word) if path is None else path
    idx = _letters(q, word)
    # the suffix word[t:] is reduced iff t is past the last adjacent repeat
    t0 = 0
    for pos in range(1, len(word)):
        if word[pos] == word[pos - 1]:
            t0 = pos
    for t in range(t0, len(word)):
        c = _coverage(word, t, q.n)
        if c is None:
            return None
        try:
            r = ice_fork_por_index(path[t])
        except ExactnessLost:
            continue
        if r is None or r == idx[t]:
            continue
        try:
            ok = all(is_sign_coherent(p) for p in path[c + 1:])
        except ExactnessLost:
            ok = False
        return CoherenceCertificate(t, q.vertices[r], c, ok)
    return None


def coherence_trace(path: Iterable[Quiver]) -> list:
    return [is_sign_coherent(p) for p in path]
