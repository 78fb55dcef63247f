"""Random quivers drawn from named families, each validated after construction."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .. import errors
from ..quiver import Quiver, is_complete, mutate_index, principal_framing
from ..structure import (
    brog_analysis,
    cycle_preserving_index,
    fork_por_index,
    ice_fork_por_index,
    is_apex_index,
)

FAMILIES = (
    "AbundantAcyclic", "Fork", "IceFork", "CompleteTwoFrozen", "Complete", "Rank2",
    "Rank3", "Rank3MutationCyclicSeed", "Rank3Abundant", "BrogTwoFrozen",
    "PrincipalFramed", "Unframed",
)

MAX_RETRIES = 64
MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GenConfig:
    family: str
    n: int | tuple = 3
    m: int = 0
    W: int = 12
    seed: int = 0

    def as_dict(self) -> dict:
        n = list(self.n) if isinstance(self.n, tuple) else self.n
        return {"family": self.family, "n": n, "m": self.m, "W": self.W, "seed": self.seed}


def parse_gen(text: str, **defaults) -> GenConfig:
    """``"family=IceFork,n=3,m=2"``; ``n=3-4`` picks a rank per instance."""
    fields = dict(defaults)
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise errors.BadFormat(f"generator option {part!r} is not key=value")
        k, v = (s.strip() for s in part.split("=", 1))
        if k == "family":
            fields[k] = v
        elif k == "n" and "-" in v:
            lo, hi = (int(x) for x in v.split("-"))
            fields[k] = tuple(range(lo, hi + 1))
        elif k in ("n", "m", "W", "seed"):
            fields[k] = int(v)
        else:
            raise errors.BadFormat(f"unknown generator option {k!r}")
    if "family" not in fields:
        raise errors.BadFormat("generator options need family=...")
    if fields["family"] not in FAMILIES:
        raise errors.BadFormat(f"unknown family {fields['family']!r}")
    return GenConfig(**fields)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (master seed, trial index)."""
    return np.random.Generator(np.random.Philox(key=((seed & MASK64) << 64) | (trial & MASK64)))


def frozen_names(m: int) -> list:
    base = ["u", "v", "w", "x", "y", "z"]
    return base[:m] if m <= len(base) else [f"u{i}" for i in range(1, m + 1)]


def _names(n: int, m: int):
    return [str(i) for i in range(1, n + 1)], frozen_names(m)


def _empty(size: int) -> list:
    return [[0] * size for _ in range(size)]


def _set(b, i, k, w):
    b[i][k] = int(w)
    b[k][i] = -int(w)


def _weight(rng, lo: int, hi: int) -> int:
    return int(rng.integers(lo, hi + 1))


def _signed(rng, lo: int, hi: int) -> int:
    w = _weight(rng, lo, hi)
    return w if rng.integers(2) else -w


def _abundant_acyclic(rng, n: int, m: int, W: int) -> Quiver:
    mut, fro = _names(n, m)
    size = n + m
    order = list(rng.permutation(size))
    b = _empty(size)
    for a in range(size):
        for c in range(a + 1, size):
            i, k = int(order[a]), int(order[c])
            if i >= n and k >= n:
                continue
            _set(b, i, k, _weight(rng, 2, W))
    return Quiver(mut, fro, b)


def _middle_vertices(q: Quiver, idx: Sequence[int]) -> list:
    out = []
    for r in range(q.n):
        has_in = any(q.b[x][r] > 0 for x in idx if x != r)
        has_out = any(q.b[r][x] > 0 for x in idx if x != r)
        if has_in and has_out:
            out.append(r)
    return out


def _tree_walk(rng, q: Quiver, avoid: int, steps: int) -> Quiver:
    """Reduced random walk whose first letter is not ``avoid``."""
    last = avoid
    for _ in range(steps):
        choices = [j for j in range(q.n) if j != last]
        last = int(rng.choice(choices))
        q = mutate_index(q, last)
    return q


def _complete(rng, n: int, m: int, W: int) -> Quiver:
    mut, fro = _names(n, m)
    size = n + m
    b = _empty(size)
    for i in range(n):
        for k in range(i + 1, size):
            _set(b, i, k, _signed(rng, 1, W))
    return Quiver(mut, fro, b)


def _mutation_cyclic_weights(rng, W: int) -> tuple:
    # oriented 3-cycles with all weights >= 2 and a^2+b^2+c^2-abc <= 4 stay cyclic
    for _ in range(1000):
        a, b, c = (_weight(rng, 2, W) for _ in range(3))
        if a * a + b * b + c * c - a * b * c <= 4:
            return a, b, c
    return 2, 2, 2


def _attach_random(rng, q: Quiver, m: int, W: int, connected: bool = True) -> Quiver:
    n = q.n
    size = n + m
    b = _empty(size)
    for i in range(n):
        for k in range(n):
            b[i][k] = q.b[i][k]
    for c in range(m):
        u = n + c
        while True:
            col = [int(rng.integers(-W, W + 1)) for _ in range(n)]
            if not connected or any(col):
                break
        for i, x in enumerate(col):
            _set(b, i, u, x)
    mut, fro = _names(n, m)
    return Quiver(mut, fro, b)


def _rank3_cyclic_seed(rng, m: int, W: int) -> Quiver:
    a, b_, c = _mutation_cyclic_weights(rng, W)
    b = _empty(3)
    _set(b, 0, 1, a)
    _set(b, 1, 2, b_)
    _set(b, 2, 0, c)
    if rng.integers(2):
        b = [[-x for x in row] for row in b]
    return _attach_random(rng, Quiver(["1", "2", "3"], [], b), m, W)


def _build(cfg: GenConfig, n: int, rng) -> Quiver | None:
    fam, m, W = cfg.family, cfg.m, cfg.W
    if fam == "AbundantAcyclic":
        return _abundant_acyclic(rng, n, m, W)
    if fam == "Fork":
        if m > 1:
            raise errors.BadFormat("Fork family allows at most one frozen vertex")
        q = _abundant_acyclic(rng, n, m, W)
        mids = _middle_vertices(q, range(n + m))
        if not mids:
            return None
        r = int(rng.choice(mids))
        q = mutate_index(q, r)
        if fork_por_index(q.b, range(n + m)) != r:
            return None
        return _tree_walk(rng, q, r, int(rng.integers(0, 4)))
    if fam == "IceFork":
        if m < 1:
            raise errors.BadFormat("IceFork family needs m >= 1")
        q = _abundant_acyclic(rng, n, m, W)
        mut = list(range(n))
        mids = set(range(n))
        for u in range(n, n + m):
            mids &= set(_middle_vertices(q, mut + [u]))
        if not mids:
            return None
        r = int(rng.choice(sorted(mids)))
        q = mutate_index(q, r)
        if ice_fork_por_index(q) != r:
            return None
        return _tree_walk(rng, q, r, int(rng.integers(0, 4)))
    if fam in ("CompleteTwoFrozen", "Complete"):
        return _complete(rng, n, 2 if fam == "CompleteTwoFrozen" else m, W)
    if fam == "BrogTwoFrozen":
        q = _complete(rng, n, 2, W)
        good = [j for j in range(n) if cycle_preserving_index(q, j) and not is_apex_index(q, j)]
        if not good:
            return None
        q = mutate_index(q, int(rng.choice(good)))
        return q if is_complete(q) and brog_analysis(q) is not None else None
    if fam == "Rank2":
        b = _empty(2)
        _set(b, 0, 1, _signed(rng, 2, W))
        return _attach_random(rng, Quiver(["1", "2"], [], b), max(m, 1), W)
    if fam == "Rank3":
        b = _empty(3)
        for i in range(3):
            for k in range(i + 1, 3):
                _set(b, i, k, int(rng.integers(-W, W + 1)))
        return _attach_random(rng, Quiver(["1", "2", "3"], [], b), max(m, 1), W)
    if fam == "Rank3MutationCyclicSeed":
        return _rank3_cyclic_seed(rng, m, W)
    if fam == "Rank3Abundant":
        if rng.integers(2):
            return _rank3_cyclic_seed(rng, m, W)
        core = _abundant_acyclic(rng, 3, 0, W)
        return _attach_random(rng, core, m, W)
    if fam == "PrincipalFramed":
        core = _attach_random(rng, _random_unframed(rng, n, W), 0, W)
        return principal_framing(core)
    if fam == "Unframed":
        return _random_unframed(rng, n, W)
    raise errors.BadFormat(f"unknown family {fam!r}")


def _random_unframed(rng, n: int, W: int) -> Quiver:
    b = _empty(n)
    for i in range(n):
        for k in range(i + 1, n):
            _set(b, i, k, int(rng.integers(-W, W + 1)))
    return Quiver([str(i) for i in range(1, n + 1)], [], b)


def _valid(cfg: GenConfig, q: Quiver) -> bool:
    fam = cfg.family
    if fam == "Fork":
        return fork_por_index(q.b, range(len(q.b))) is not None
    if fam == "IceFork":
        return ice_fork_por_index(q) is not None
    if fam in ("CompleteTwoFrozen", "Complete"):
        return is_complete(q)
    if fam == "BrogTwoFrozen":
        return is_complete(q) and brog_analysis(q) is not None
    return True


def generate(cfg: GenConfig, rng: np.random.Generator | None = None) -> Quiver:
    """Draw one quiver of the configured family, retrying up to MAX_RETRIES times."""
    rng = trial_rng(cfg.seed, 0) if rng is None else rng
    if cfg.family not in FAMILIES:
        raise errors.BadFormat(f"unknown family {cfg.family!r}")
    choices = cfg.n if isinstance(cfg.n, tuple) else (cfg.n,)
    if cfg.family in ("Fork", "IceFork") and min(choices) < 3:
        raise errors.BadFormat(f"{cfg.family} family needs n >= 3")
    for _ in range(MAX_RETRIES):
        n = int(rng.choice(choices)) if len(choices) > 1 else choices[0]
        q = _build(cfg, n, rng)
        if q is not None and _valid(cfg, q):
            return q
    raise errors.GenerationExhausted(
        f"no {cfg.family} quiver after {MAX_RETRIES} attempts", family=cfg.family)


def with_seed(cfg: GenConfig, seed: int) -> GenConfig:
    return replace(cfg, seed=seed)
