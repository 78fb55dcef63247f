"""Seeded random mutation walks and their sign-coherence statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import errors
from .parallel import chunked, pmap
from .quiver import Quiver, is_sign_coherent, mutate_index
from .sequences import CoherenceCertificate, EventuallyPeriodicWord, coherence_certificate

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class WalkConfig:
    seed: int
    steps: int
    coherence_window: int = 1
    trials: int = 1

    def __post_init__(self):
        if self.steps < 0 or self.trials < 0:
            raise errors.OutOfRange("steps and trials must be nonnegative")
        if self.steps and not 1 <= self.coherence_window <= self.steps:
            raise errors.OutOfRange("need 1 <= coherence_window <= steps")

    def as_dict(self) -> dict:
        return {"seed": self.seed, "steps": self.steps,
                "coherence_window": self.coherence_window, "trials": self.trials}


def draw_letters(seed: int, trial: int, steps: int, n: int) -> list:
    """Letter indices for steps 1..``steps``.

    Philox is counter based: the draw for step s is the s-th 64-bit output
    under key (seed, trial), so a longer walk extends a shorter one and any
    trial can be generated on its own.  Multiply-shift maps a 64-bit word to
    [0, n) with bias below n / 2**64.
    """
    key = ((seed & MASK64) << 64) | (trial & MASK64)
    raw = np.random.Philox(key=key).random_raw(steps)
    return [(int(x) * n) >> 64 for x in raw]


@dataclass
class WalkOutcome:
    word: list
    sign_coherence_trace: list
    last_incoherent_index: int | None
    certificate: CoherenceCertificate | None
    reduced_word_length: int
    reduced_certificate: CoherenceCertificate | None = None
    trial: int = 0

    def as_dict(self) -> dict:
        return {
            "trial": self.trial,
            "word": self.word,
            "trace": self.sign_coherence_trace,
            "last_incoherent_index": self.last_incoherent_index,
            "reduced_word_length": self.reduced_word_length,
            "certificate": None if self.certificate is None else self.certificate.as_dict(),
            "reduced_certificate": (None if self.reduced_certificate is None
                                    else self.reduced_certificate.as_dict()),
        }


def run_word(q: Quiver, letters: list, trial: int = 0) -> WalkOutcome:
    """Follow ``letters`` (vertex indices) keeping the reduced word on a stack.

    A letter equal to the top of the stack cancels it, and the state returns
    to the stored quiver rather than being recomputed, so no precision is lost
    along cancelling excursions.
    """
    states = [q]
    stack_letters = []
    realized = [q]
    trace = [is_sign_coherent(q)]
    for j in letters:
        if stack_letters and stack_letters[-1] == j:
            stack_letters.pop()
            states.pop()
        else:
            stack_letters.append(j)
            states.append(mutate_index(states[-1], j))
        realized.append(states[-1])
        trace.append(is_sign_coherent(states[-1]))
    names = q.mutable
    word = [names[j] for j in letters]
    last = max((i for i, ok in enumerate(trace) if not ok), default=None)
    cert = coherence_certificate(q, word, realized) if q.m else None
    red_word = [names[j] for j in stack_letters]
    red_cert = coherence_certificate(q, red_word, states) if q.m else None
    return WalkOutcome(word, trace, last, cert, len(stack_letters), red_cert, trial)


def random_walk(q: Quiver, cfg: WalkConfig, trial: int = 0) -> WalkOutcome:
    if q.m == 0:
        raise errors.NoFrozen("random walks need a frozen vertex")
    if q.n < 2:
        raise errors.WrongRank("random walks need at least two mutable vertices")
    return run_word(q, draw_letters(cfg.seed, trial, cfg.steps, q.n), trial)


def periodic_walk(q: Quiver, word: EventuallyPeriodicWord, steps: int) -> WalkOutcome:
    letters = [q.mutable_index(x) for x in word.prefix(steps)]
    return run_word(q, letters)


def _trial_job(args):
    q, cfg, trials, periodic_word = args
    out = []
    for t in trials:
        if periodic_word is None:
            out.append(random_walk(q, cfg, t))
        else:
            o = periodic_walk(q, periodic_word, cfg.steps)
            o.trial = t
            out.append(o)
    return out


@dataclass
class BatchReport:
    quiver_digest: str
    config: WalkConfig
    outcomes: list = field(default_factory=list)
    word: str | None = None

    def aggregate(self) -> dict:
        t = len(self.outcomes)
        w = self.config.coherence_window
        if t == 0:
            return {"fraction_coherent_suffix": None, "hitting_time_histogram": {},
                    "certificate_rate": None, "reduced_certificate_rate": None}
        suffix_ok = sum(all(o.sign_coherence_trace[-w:]) for o in self.outcomes)
        hist = {}
        for o in self.outcomes:
            key = "never" if o.last_incoherent_index is None else str(o.last_incoherent_index)
            hist[key] = hist.get(key, 0) + 1
        certs = sum(o.certificate is not None and o.certificate.verified for o in self.outcomes)
        rcerts = sum(o.reduced_certificate is not None and o.reduced_certificate.verified
                     for o in self.outcomes)
        return {
            "fraction_coherent_suffix": suffix_ok / t,
            "coherent_suffix_count": suffix_ok,
            "hitting_time_histogram": dict(sorted(hist.items(), key=_hist_key)),
            "certificate_rate": certs / t,
            "reduced_certificate_rate": rcerts / t,
            "unsound_certificates": sum(
                o.certificate is not None and not o.certificate.verified for o in self.outcomes),
        }

    def summary(self) -> dict:
        out = {"quiver": self.quiver_digest, "config": self.config.as_dict()}
        if self.word is not None:
            out["word"] = self.word
        out.update(self.aggregate())
        return out

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)

    def jsonl(self) -> str:
        return "".join(json.dumps(o.as_dict(), sort_keys=True) + "\n" for o in self.outcomes)


def _hist_key(item):
    k = item[0]
    return (-1, 0) if k == "never" else (0, int(k))


def batch(q: Quiver, cfg: WalkConfig, workers: int = 1,
          word: EventuallyPeriodicWord | None = None) -> BatchReport:
    """Run ``cfg.trials`` walks (or one fixed eventually periodic word per trial)."""
    if q.m == 0:
        raise errors.NoFrozen("random walks need a frozen vertex")
    if word is None and q.n < 2:
        raise errors.WrongRank("random walks need at least two mutable vertices")
    trials = list(range(cfg.trials))
    jobs = [(q, cfg, part, word) for part in chunked(trials, max(1, workers) * 4)] if trials else []
    results = pmap(_trial_job, jobs, workers)
    outcomes = [o for part in results for o in part]
    return BatchReport(q.digest(), cfg, outcomes, None if word is None else str(word))
