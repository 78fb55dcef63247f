"""Command-line entry point: ``quiverdyn <command> ...``.

Exit codes: 0 success, 1 domain error (JSON on stderr), 2 property failure,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import errors, fixtures
from .explorer import bfs_explore
from .io import load, parse_periodic, parse_word, save, to_dict, to_dot
from .montecarlo import WalkConfig, batch
from .quiver import is_sign_coherent, mutable_part, mutate
from .sequences import endpoint, periodic, sigma, two_frozen
from .structure import classify

EXIT_OK, EXIT_DOMAIN, EXIT_PROPERTY, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read_quiver(path: str):
    """A JSON file, or ``@NAME`` for a built-in fixture."""
    if path.startswith("@"):
        try:
            return fixtures.get(path[1:])
        except KeyError:
            raise errors.BadFormat(f"unknown fixture {path[1:]!r}",
                                   known=sorted(fixtures.FIXTURES)) from None
    try:
        return load(path)
    except OSError as exc:
        raise errors.BadFormat(f"cannot read {path}: {exc.strerror}") from None


def _ints(text: str) -> list:
    try:
        return [int(x) for x in parse_word(text)]
    except ValueError:
        raise errors.BadFormat(f"expected comma separated integers, got {text!r}") from None


# output ---------------------------------------------------------------------------

def _text(data, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(data, dict):
        lines = []
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(data, list):
        if data and all(isinstance(r, dict) for r in data):
            return _table(data, pad)
        return "\n".join(f"{pad}- {_scalar(v)}" for v in data)
    return pad + _scalar(data)


def _flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) for x in items)


def _scalar(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return "-" if v is None else str(v)


def _table(rows: list, pad: str) -> str:
    cols = list(rows[0])
    cells = [[_scalar(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = [pad + "  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    out += [pad + "  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(out)


def _emit(args, data: dict, quiver=None, colors=None) -> None:
    fmt = args.format
    if fmt == "dot":
        if quiver is None:
            raise errors.BadFormat("dot output needs a quiver result")
        sys.stdout.write(to_dot(quiver, colors))
    elif fmt == "text":
        sys.stdout.write(_text(data) + "\n")
    else:
        sys.stdout.write(json.dumps(data, sort_keys=True) + "\n")


# commands -------------------------------------------------------------------------

def cmd_validate(args) -> int:
    q = _read_quiver(args.file)
    _emit(args, {"valid": True, "rank": q.n, "frozen": q.m, "digest": q.digest()}, q)
    return EXIT_OK


def cmd_mutate(args) -> int:
    q = _read_quiver(args.file)
    if args.at is not None:
        out = mutate(q, args.at)
    else:
        out = endpoint(q, parse_word(args.word))
    _emit(args, to_dict(out), out)
    return EXIT_OK


def cmd_classify(args) -> int:
    q = _read_quiver(args.file)
    info = classify(q)
    colors = info.get("brog") or info.get("sign_states")
    _emit(args, info, q, colors)
    return EXIT_OK


def cmd_sigma(args) -> int:
    q = _read_quiver(args.file)
    qmut = mutable_part(q)
    word = parse_word(args.word)
    k = len(word) if args.k is None else args.k
    a = _ints(args.a)
    out = {"word": word, "k": k, "a": a, "sigma_a": "".join(sigma(qmut, word, a, k))}
    if args.b is not None:
        b = _ints(args.b)
        sb = "".join(sigma(qmut, word, b, k))
        hat = endpoint(two_frozen(qmut, a, b), word[:k])
        out.update({"b": b, "sigma_b": sb, "equal": out["sigma_a"] == sb,
                    "two_frozen_sign_coherent": is_sign_coherent(hat)})
    _emit(args, out)
    return EXIT_OK


def cmd_explore(args) -> int:
    q = _read_quiver(args.file)
    try:
        rep = bfs_explore(q, args.depth, args.budget, workers=args.workers,
                          keep_records=args.out is not None)
    except errors.BudgetExhausted as exc:
        if exc.partial is not None:
            _write_records(args.out, exc.partial)
            _emit(args, exc.partial.summary())
        raise
    _write_records(args.out, rep)
    _emit(args, rep.summary())
    return EXIT_OK


def _write_records(path, rep) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(rep.jsonl())


def cmd_walk(args) -> int:
    q = _read_quiver(args.file)
    word = None
    if args.word is not None:
        pre, per = parse_periodic(args.word)
        word = periodic(pre, per)
    window = args.window if args.window is not None else min(args.steps, 100) or 1
    cfg = WalkConfig(seed=args.seed, steps=args.steps, coherence_window=window, trials=args.trials)
    rep = batch(q, cfg, workers=args.workers, word=word)
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            fh.write(rep.jsonl())
    _emit(args, rep.summary())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .propcheck import check, get_property, parse_gen

    prop = get_property(args.property)
    cfg = prop.default if args.gen is None else parse_gen(
        args.gen, n=prop.default.n, m=prop.default.m, W=prop.default.W)
    rep = check(prop.pid, cfg, args.trials, seed=args.seed, workers=args.workers)
    if rep.counterexample is not None and args.counterexample:
        with open(args.counterexample, "w", encoding="utf-8") as fh:
            json.dump(rep.counterexample, fh, sort_keys=True, indent=2)
            fh.write("\n")
    _emit(args, rep.as_dict())
    return EXIT_OK if rep.ok else EXIT_PROPERTY


def dump_fixtures(directory: str) -> list:
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, make in fixtures.FIXTURES.items():
        path = os.path.join(directory, f"{name.lower()}.json")
        save(make(), path)
        written.append(path)
    return written


# parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quiverdyn", description="Quiver mutation and sign-coherence toolkit.")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--workers", type=int, default=1, help="process count for explore/walk/verify")
    p.add_argument("--config", help="JSON file of option defaults")
    p.add_argument("--fixtures", metavar="DIR", help="write the built-in fixtures to DIR and exit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("validate", help="check a quiver file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("mutate", help="mutate at a vertex or along a word")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--at")
    g.add_argument("--word")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("classify", help="structural summary")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("sigma", help="sign vector of an attached column")
    s.add_argument("file")
    s.add_argument("--word", required=True)
    s.add_argument("--a", required=True, help="comma separated column")
    s.add_argument("--b", help="second column for the equivalence check")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_sigma)

    s = sub.add_parser("explore", help="breadth-first search of the mutation graph")
    s.add_argument("file")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--budget", type=int, default=200_000)
    s.add_argument("--out", help="JSONL file for per-quiver records")
    s.set_defaults(func=cmd_explore)

    s = sub.add_parser("walk", help="seeded random (or fixed periodic) mutation walks")
    s.add_argument("file")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--window", type=int)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--word", help='eventually periodic word "pre | period"')
    s.add_argument("--jsonl", help="per-trial JSONL output file")
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("verify", help="check a registered property on generated quivers")
    s.add_argument("--property", required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--gen", help='generator options, e.g. "family=IceFork,n=3,m=2"')
    s.add_argument("--counterexample", help="write the first counterexample here")
    s.set_defaults(func=cmd_verify)
    return p


def _apply_config(parser: argparse.ArgumentParser, path: str) -> None:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise errors.BadFormat(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise errors.BadFormat("config must be a JSON object")
    parser.set_defaults(**{k: v for k, v in cfg.items() if k in ("format", "workers")})
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            sp.set_defaults(**cfg)


def main(argv: list | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        pre, _ = parser.parse_known_args(argv)
        if pre.config:
            _apply_config(parser, pre.config)
        args = parser.parse_args(argv)
        if args.fixtures:
            for path in dump_fixtures(args.fixtures):
                print(path)
            return EXIT_OK
        if args.command is None:
            raise UsageError("quiverdyn: a command is required")
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except errors.QuiverError as exc:
        print(json.dumps(exc.to_json(), sort_keys=True), file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
