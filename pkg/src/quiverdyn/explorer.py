"""Layered breadth-first search of labeled mutation graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from . import errors
from .parallel import chunked, pmap
from .quiver import Quiver, is_sign_coherent, mutate_index
from .structure import fork_por_index, ice_fork_por_index


def flags_of(q: Quiver) -> dict:
    return {
        "ice_fork": q.m > 0 and ice_fork_por_index(q) is not None,
        "sign_coherent": q.m > 0 and is_sign_coherent(q),
        "fork": fork_por_index(q.b, range(q.n)) is not None,
    }


def _expand_batch(batch):
    """Children of each parent, in letter order, with digests and flags."""
    out = []
    for q in batch:
        kids = []
        for j in range(q.n):
            c = mutate_index(q, j)
            kids.append((j, c, c.digest(), flags_of(c)))
        out.append(kids)
    return out


def _expand(frontier: list, workers: int) -> list:
    if workers <= 1:
        return _expand_batch(frontier)
    batches = chunked(frontier, workers * 4)
    return [kids for res in pmap(_expand_batch, batches, workers) for kids in res]


@dataclass
class Layer:
    depth: int
    count: int = 0
    ice_fork_count: int = 0
    sign_coherent_count: int = 0
    fork_count: int = 0

    def add(self, flags: dict) -> None:
        self.count += 1
        self.ice_fork_count += flags["ice_fork"]
        self.sign_coherent_count += flags["sign_coherent"]
        self.fork_count += flags["fork"]


@dataclass
class ExplorationReport:
    seed_digest: str
    depth_limit: int
    budget: int
    layers: list = field(default_factory=list)
    status: str = "complete"  # or "budget_exhausted"
    records: list = field(default_factory=list)

    @property
    def completed_depth(self) -> int:
        """Deepest layer that was explored in full."""
        d = len(self.layers) - 1
        return d if self.status == "complete" else d - 1

    def cumulative(self, depth: int) -> tuple:
        """``(N(Q, depth), F(Q, depth))``."""
        ls = self.layers[: depth + 1]
        return sum(x.count for x in ls), sum(x.ice_fork_count for x in ls)

    def ice_fork_fraction(self, depth: int) -> float:
        n, f = self.cumulative(depth)
        return f / n

    def summary(self) -> dict:
        rows = []
        tot_n = tot_f = 0
        for x in self.layers:
            tot_n += x.count
            tot_f += x.ice_fork_count
            rows.append({
                "depth": x.depth, "count": x.count, "ice_fork_count": x.ice_fork_count,
                "sign_coherent_count": x.sign_coherent_count, "fork_count": x.fork_count,
                "N": tot_n, "F": tot_f,
            })
        return {"seed": self.seed_digest, "depth_limit": self.depth_limit,
                "budget": self.budget, "status": self.status,
                "completed_depth": self.completed_depth, "layers": rows}

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)

    def jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


def bfs_explore(q: Quiver, depth: int, budget: int, workers: int = 1,
                keep_records: bool = True) -> ExplorationReport:
    """Explore every quiver within ``depth`` mutations, deduplicated by matrix.

    Each quiver keeps the lexicographically least shortest word reaching it:
    parents are expanded in witness order and letters in declared order, so
    the first discovery of a quiver carries that word.  Raises
    BudgetExhausted (report attached as ``partial``) once more than
    ``budget`` distinct quivers have been found.
    """
    if depth < 0:
        raise errors.OutOfRange("depth must be nonnegative")
    names = q.mutable
    rep = ExplorationReport(q.digest(), depth, budget)
    root_flags = flags_of(q)
    layer0 = Layer(0)
    layer0.add(root_flags)
    rep.layers.append(layer0)
    if keep_records:
        rep.records.append({"digest": q.digest(), "depth": 0, "flags": root_flags, "witness": []})
    seen = {q.digest()}
    frontier = [(q, ())]
    for d in range(1, depth + 1):
        expanded = _expand([p for p, _ in frontier], workers)
        layer = Layer(d)
        nxt = []
        recs = []
        exhausted = False
        for (_, wit), kids in zip(frontier, expanded):
            for j, c, dig, flags in kids:
                if dig in seen:
                    continue
                seen.add(dig)
                w = wit + (j,)
                nxt.append((c, w))
                layer.add(flags)
                if keep_records:
                    recs.append({"digest": dig, "depth": d, "flags": flags,
                                 "witness": [names[x] for x in w]})
                if len(seen) > budget:
                    exhausted = True
                    break
            if exhausted:
                break
        rep.layers.append(layer)
        rep.records.extend(sorted(recs, key=lambda r: r["digest"]))
        if exhausted:
            rep.status = "budget_exhausted"
            raise errors.BudgetExhausted(
                f"more than {budget} quivers within depth {d}", partial=rep)
        frontier = nxt
    return rep


PREDICATES: dict = {
    "IceFork": lambda q: q.m > 0 and ice_fork_por_index(q) is not None,
    "Fork": lambda q: fork_por_index(q.b, range(q.n)) is not None,
    "SignCoherent": lambda q: q.m > 0 and is_sign_coherent(q),
}


def nearest_matching(q: Quiver, predicate: str | Callable, max_depth: int,
                     budget: int = 100_000):
    """``(distance, witness)`` for the closest quiver satisfying ``predicate``.

    Among quivers at the minimal distance the lexicographically least witness
    wins.  None when nothing matches within ``max_depth``.
    """
    pred = PREDICATES[predicate] if isinstance(predicate, str) else predicate
    if pred(q):
        return 0, []
    seen = {q.digest()}
    frontier = [(q, ())]
    for d in range(1, max_depth + 1):
        nxt = []
        for p, wit in frontier:
            for j in range(p.n):
                c = mutate_index(p, j)
                dig = c.digest()
                if dig in seen:
                    continue
                seen.add(dig)
                w = wit + (j,)
                if pred(c):
                    return d, [q.mutable[x] for x in w]
                if len(seen) > budget:
                    raise errors.BudgetExhausted(f"more than {budget} quivers searched")
                nxt.append((c, w))
        frontier = nxt
        if not frontier:
            break
    return None


def tree_neighborhood_check(f: Quiver, depth: int) -> bool:
    """Reduced words leaving a fork away from its point of return stay in forks.

    Every quiver reached must be a fork whose point of return is the letter
    just applied, and no quiver may be reached twice.
    """
    from .structure import fork_point_of_return

    w = fork_point_of_return(f)
    if w is None:
        raise errors.NotAFork("tree check needs a fork")
    idx = list(range(len(f.b)))
    r = f.index(w.point_of_return)
    seen = {f.digest()}
    stack = [(f, r, 0)]
    while stack:
        p, last, d = stack.pop()
        if d == depth:
            continue
        for j in range(f.n):
            if j == last:
                continue
            c = mutate_index(p, j)
            if fork_por_index(c.b, idx) != j:
                return False
            dig = c.digest()
            if dig in seen:
                return False
            seen.add(dig)
            stack.append((c, j, d + 1))
    return True
