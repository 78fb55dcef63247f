"""Quivers with frozen vertices, stored as skew-symmetric exchange matrices."""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import errors
from .numeric import Enclosure, ExactnessLost, settle, sign


class Quiver:
    """Immutable labeled quiver.

    ``b[i][k] > 0`` means ``b[i][k]`` arrows i -> k.  Rows and columns follow
    the order ``mutable + frozen``.  Treat instances as values: the matrix is
    never modified after construction.
    """

    __slots__ = ("mutable", "frozen", "b", "_index", "_digest")

    def __init__(self, mutable: Sequence[str], frozen: Sequence[str], b):
        self.mutable = tuple(mutable)
        self.frozen = tuple(frozen)
        self.b = tuple(tuple(row) for row in b)
        self._index = {v: i for i, v in enumerate(self.mutable + self.frozen)}
        self._digest = None

    # basic accessors ----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.mutable)

    @property
    def m(self) -> int:
        return len(self.frozen)

    @property
    def vertices(self) -> tuple:
        return self.mutable + self.frozen

    def index(self, v) -> int:
        try:
            return self._index[str(v)]
        except KeyError:
            raise errors.UnknownVertex(f"unknown vertex {v!r}", vertex=str(v)) from None

    def mutable_index(self, v) -> int:
        i = self.index(v)
        if i >= self.n:
            raise errors.NotMutable(f"vertex {v!r} is frozen", vertex=str(v))
        return i

    def frozen_index(self, v) -> int:
        i = self.index(v)
        if i < self.n:
            raise errors.NotFrozen(f"vertex {v!r} is mutable", vertex=str(v))
        return i

    def weight(self, a, c):
        """Net number of arrows a -> c (negative when they point the other way)."""
        return self.b[self.index(a)][self.index(c)]

    def arrows(self):
        """Yield ``(tail, head, weight)`` with positive weight, in index order."""
        names = self.vertices
        for i, row in enumerate(self.b):
            for k in range(i + 1, len(row)):
                w = row[k]
                if w > 0:
                    yield names[i], names[k], w
                elif w < 0:
                    yield names[k], names[i], -w

    def is_exact(self) -> bool:
        return not any(isinstance(x, Enclosure) for row in self.b for x in row)

    def max_bits(self) -> int:
        return max((abs(x).bit_length() for row in self.b for x in row), default=0)

    # equality and hashing ---------------------------------------------
    def digest(self) -> str:
        """SHA-256 of labels and the decimal matrix; exact quivers only."""
        if self._digest is None:
            if not self.is_exact():
                raise ExactnessLost("cannot digest a quiver with enclosed weights")
            h = hashlib.sha256()
            h.update(("|".join(self.mutable) + ";" + "|".join(self.frozen) + ";").encode())
            for row in self.b:
                h.update((",".join(map(str, row)) + ";").encode())
            self._digest = h.hexdigest()
        return self._digest

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        if self.mutable != other.mutable or self.frozen != other.frozen:
            return False
        if self.is_exact() and other.is_exact():
            return self.b == other.b
        return all(x == y for r, s in zip(self.b, other.b) for x, y in zip(r, s))

    def __hash__(self):
        return hash(self.digest())

    def __repr__(self):
        body = ", ".join(f"{t}->{h}:{_short(w)}" for t, h, w in self.arrows())
        fz = f" frozen={list(self.frozen)}" if self.frozen else ""
        return f"Quiver(mutable={list(self.mutable)}{fz}; {body})"


def _short(w):
    if isinstance(w, Enclosure):
        return f"~2^{w.bit_length()}"
    s = str(w)
    return s if len(s) <= 24 else f"{s[:8]}...({len(s)} digits)"


# construction -------------------------------------------------------------

def build_quiver(mutable: Iterable, frozen: Iterable = (), arrows: Iterable = ()) -> Quiver:
    """Build a quiver from vertex lists and ``(tail, head, weight)`` records."""
    mutable = [str(v) for v in mutable]
    frozen = [str(v) for v in frozen]
    names = mutable + frozen
    if not mutable:
        raise errors.BadVertexSet("a quiver needs at least one mutable vertex")
    if len(set(names)) != len(names):
        raise errors.DuplicateVertex("vertex names must be unique")
    idx = {v: i for i, v in enumerate(names)}
    n = len(mutable)
    size = len(names)
    b = [[0] * size for _ in range(size)]
    seen = set()
    for rec in arrows:
        tail, head, w = rec
        tail, head = str(tail), str(head)
        for v in (tail, head):
            if v not in idx:
                raise errors.UnknownVertex(f"unknown vertex {v!r}", vertex=v)
        if tail == head:
            raise errors.SelfArrow(f"self-arrow at {tail!r}", vertex=tail)
        w = _parse_weight(w)
        if w <= 0:
            raise errors.NonPositiveWeight(f"weight {w} on {tail}->{head}")
        i, k = idx[tail], idx[head]
        if i >= n and k >= n:
            raise errors.FrozenFrozenArrow(f"arrow {tail}->{head} joins frozen vertices")
        pair = frozenset((i, k))
        if pair in seen:
            raise errors.DuplicatePair(f"second arrow record for {{{tail},{head}}}")
        seen.add(pair)
        b[i][k] = w
        b[k][i] = -w
    return Quiver(mutable, frozen, b)


def _parse_weight(w) -> int:
    if isinstance(w, bool):
        raise errors.NonPositiveWeight(f"weight {w!r} is not an integer")
    if isinstance(w, int):
        return w
    if isinstance(w, str) and w.strip().lstrip("+-").isdigit():
        return int(w)
    raise errors.NonPositiveWeight(f"weight {w!r} is not an integer")


def from_matrix(mutable: Sequence[str], frozen: Sequence[str], b) -> Quiver:
    """Wrap an explicit matrix after validating the invariants."""
    mutable, frozen = [str(v) for v in mutable], [str(v) for v in frozen]
    size = len(mutable) + len(frozen)
    if len(b) != size or any(len(r) != size for r in b):
        raise errors.BadFormat("matrix shape does not match vertex count")
    n = len(mutable)
    for i in range(size):
        if b[i][i] != 0:
            raise errors.BadFormat("nonzero diagonal entry")
        for k in range(i + 1, size):
            if b[i][k] != -b[k][i]:
                raise errors.BadFormat("matrix is not skew-symmetric")
            if i >= n and k >= n and b[i][k] != 0:
                raise errors.FrozenFrozenArrow("frozen-frozen entry must be zero")
    if len(set(mutable + frozen)) != size:
        raise errors.DuplicateVertex("vertex names must be unique")
    return Quiver(mutable, frozen, b)


# mutation -----------------------------------------------------------------

def mutate_index(q: Quiver, j: int) -> Quiver:
    """Mutation at the mutable vertex with matrix index ``j``."""
    b = q.b
    size = len(b)
    n = q.n
    new = [list(row) for row in b]
    row_j = b[j]
    into = [i for i in range(size) if b[i][j] > 0]
    out = [k for k in range(size) if row_j[k] > 0]
    for i in into:
        bij = b[i][j]
        ni = new[i]
        for k in out:
            if i >= n and k >= n:
                continue
            t = bij * row_j[k]
            ni[k] = settle(ni[k] + t)
            new[k][i] = -ni[k]
    for k in range(size):
        if k != j:
            new[j][k] = -b[j][k]
            new[k][j] = -b[k][j]
    return Quiver(q.mutable, q.frozen, new)


def mutate(q: Quiver, j) -> Quiver:
    """Mutate at vertex ``j`` (a mutable vertex name)."""
    return mutate_index(q, q.mutable_index(j))


def reverse_all(q: Quiver) -> Quiver:
    return Quiver(q.mutable, q.frozen, [[-x for x in row] for row in q.b])


def subquiver(q: Quiver, keep: Iterable) -> Quiver:
    """Induced subquiver; vertex order follows ``q``."""
    wanted = {str(v) for v in keep}
    for v in wanted:
        q.index(v)
    idx = [i for i, v in enumerate(q.vertices) if v in wanted]
    names = q.vertices
    mut = [names[i] for i in idx if i < q.n]
    if not mut:
        raise errors.BadVertexSet("subquiver must keep a mutable vertex")
    fro = [names[i] for i in idx if i >= q.n]
    return Quiver(mut, fro, [[q.b[i][k] for k in idx] for i in idx])


def mutable_part(q: Quiver) -> Quiver:
    return subquiver(q, q.mutable)


def principal_framing(q: Quiver) -> Quiver:
    """Attach one frozen vertex ``u<i>`` per mutable vertex with a single arrow i -> u<i>."""
    if q.m:
        raise errors.HasFrozen("principal framing needs a quiver without frozen vertices")
    n = q.n
    frozen = [_fresh(f"u{v}", q.mutable) for v in q.mutable]
    b = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for k in range(n):
            b[i][k] = q.b[i][k]
        b[i][n + i] = 1
        b[n + i][i] = -1
    return Quiver(q.mutable, frozen, b)


def attach_frozen(q: Quiver, a: Sequence[int], name: str = "u") -> Quiver:
    """Attach one frozen vertex with ``a[i]`` arrows i -> u (negative: u -> i)."""
    if q.m:
        raise errors.HasFrozen("attach_frozen needs a quiver without frozen vertices")
    return attach_columns(q, [a], [name])


def attach_columns(q: Quiver, columns: Sequence[Sequence[int]], names: Sequence[str]) -> Quiver:
    """Append frozen vertices; column ``c`` gives ``b[i][u]`` for each mutable i."""
    n, size = q.n, len(q.b)
    extra = len(columns)
    for col in columns:
        if len(col) != n:
            raise errors.BadFormat(f"attachment vector has length {len(col)}, expected {n}")
    names = [_fresh(str(nm), q.vertices) for nm in names]
    total = size + extra
    b = [list(row) + [0] * extra for row in q.b] + [[0] * total for _ in range(extra)]
    for c, col in enumerate(columns):
        u = size + c
        for i, x in enumerate(col):
            b[i][u] = int(x)
            b[u][i] = -int(x)
    return Quiver(q.mutable, q.frozen + tuple(names), b)


def _fresh(name: str, taken) -> str:
    taken = set(taken)
    if name not in taken:
        return name
    k = 1
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


# colours ------------------------------------------------------------------

class SignState(enum.Enum):
    RED = "red"
    GREEN = "green"
    ZERO = "zero"
    MIXED = "mixed"

    @property
    def coherent(self) -> bool:
        return self in (SignState.RED, SignState.GREEN)


def c_vector(q: Quiver, i) -> dict:
    """Map frozen vertex -> b[i][u]."""
    r = q.mutable_index(i)
    return {u: q.b[r][q.n + c] for c, u in enumerate(q.frozen)}


def sign_state_index(q: Quiver, r: int) -> SignState:
    pos = neg = False
    row = q.b[r]
    for c in range(q.n, len(row)):
        s = sign(row[c])
        if s > 0:
            pos = True
        elif s < 0:
            neg = True
    if pos and neg:
        return SignState.MIXED
    if pos:
        return SignState.GREEN
    if neg:
        return SignState.RED
    return SignState.ZERO


def sign_state(q: Quiver, i) -> SignState:
    return sign_state_index(q, q.mutable_index(i))


def sign_states(q: Quiver) -> dict:
    return {v: sign_state_index(q, r) for r, v in enumerate(q.mutable)}


def is_sign_coherent(q: Quiver) -> bool:
    return all(sign_state_index(q, r).coherent for r in range(q.n))


# structural predicates ----------------------------------------------------

def _is_acyclic(b, idx: Sequence[int]) -> bool:
    # Kahn's algorithm on the induced digraph
    idx = list(idx)
    indeg = {i: 0 for i in idx}
    for i in idx:
        for k in idx:
            if b[i][k] > 0:
                indeg[k] += 1
    ready = [i for i in idx if indeg[i] == 0]
    seen = 0
    while ready:
        i = ready.pop()
        seen += 1
        for k in idx:
            if b[i][k] > 0:
                indeg[k] -= 1
                if indeg[k] == 0:
                    ready.append(k)
    return seen == len(idx)


def is_acyclic(q: Quiver, vertices: Iterable | None = None) -> bool:
    idx = range(len(q.b)) if vertices is None else [q.index(v) for v in vertices]
    return _is_acyclic(q.b, idx)


def _connected(b, idx: Sequence[int]) -> bool:
    idx = list(idx)
    if not idx:
        return True
    seen = {idx[0]}
    stack = [idx[0]]
    while stack:
        i = stack.pop()
        for k in idx:
            if k not in seen and b[i][k] != 0:
                seen.add(k)
                stack.append(k)
    return len(seen) == len(idx)


@dataclass(frozen=True)
class BasicFlags:
    connected: bool
    complete: bool
    abundant: bool
    acyclic: bool

    def as_dict(self) -> dict:
        return {"connected": self.connected, "complete": self.complete,
                "abundant": self.abundant, "acyclic": self.acyclic}


def _pairs_with_mutable(q: Quiver):
    size = len(q.b)
    for i in range(q.n):
        for k in range(i + 1, size):
            yield i, k


def is_complete(q: Quiver) -> bool:
    return all(q.b[i][k] != 0 for i, k in _pairs_with_mutable(q))


def is_abundant(q: Quiver) -> bool:
    return all(abs(q.b[i][k]) >= 2 for i, k in _pairs_with_mutable(q))


def classify_basic(q: Quiver) -> BasicFlags:
    n, size = q.n, len(q.b)
    connected = _connected(q.b, range(n)) and all(
        any(q.b[u][i] != 0 for i in range(n)) for u in range(n, size))
    return BasicFlags(connected, is_complete(q), is_abundant(q), _is_acyclic(q.b, range(size)))


@dataclass(frozen=True)
class TripleShape:
    kind: str  # "oriented_cycle", "acyclic", "disconnected", "frozen_cycle"
    elbow: str | None = None

    @property
    def is_oriented_cycle(self) -> bool:
        return self.kind == "oriented_cycle"


def _triple_shape_idx(q: Quiver, t: Sequence[int]) -> TripleShape:
    b, n = q.b, q.n
    i, j, k = t
    if not _is_acyclic(b, t):
        if sum(1 for x in t if x >= n) <= 1:
            return TripleShape("oriented_cycle")
        return TripleShape("frozen_cycle")  # unreachable: frozen pairs carry no arrows
    if not _connected(b, t):
        return TripleShape("disconnected")
    for mid in t:
        ends = [x for x in t if x != mid]
        for a, c in (ends, ends[::-1]):
            if b[a][mid] > 0 and b[mid][c] > 0 and (a < n or c < n):
                return TripleShape("acyclic", q.vertices[mid])
    return TripleShape("acyclic")


def triple_shape(q: Quiver, triple: Iterable) -> TripleShape:
    t = [q.index(v) for v in triple]
    if len(t) != 3 or len(set(t)) != 3:
        raise errors.BadVertexSet("triple_shape needs three distinct vertices")
    return _triple_shape_idx(q, sorted(t))


def oriented_cycle_triples(q: Quiver) -> list:
    """All vertex triples (as index tuples) spanning an oriented 3-cycle."""
    out = []
    n = q.n
    for t in combinations(range(len(q.b)), 3):
        if sum(1 for x in t if x >= n) > 1:
            continue
        if not _is_acyclic(q.b, t):
            out.append(t)
    return out


def relabel(q: Quiver, mapping: Mapping[str, str]) -> Quiver:
    return Quiver([mapping.get(v, v) for v in q.mutable],
                  [mapping.get(v, v) for v in q.frozen], q.b)
