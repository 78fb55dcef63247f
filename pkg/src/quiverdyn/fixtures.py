"""Named example quivers used throughout the tests and the CLI."""

from __future__ import annotations

from .quiver import Quiver, build_quiver


def _q(mutable, frozen, text: str) -> Quiver:
    arrows = []
    for item in text.split():
        path, w = item.split(":")
        t, h = path.split(">")
        arrows.append((t, h, int(w)))
    return build_quiver(mutable, frozen, arrows)


def fig1l() -> Quiver:
    return _q("123", "uv", "1>2:10 2>3:3 3>1:2 1>u:2 3>u:2 u>2:9 1>v:7 v>3:2 v>2:2")


def fig1r() -> Quiver:
    return _q("123", "uv", "1>2:4 3>2:3 1>3:2 1>u:2 u>3:2 u>2:3 1>v:3 3>v:2 v>2:2")


def fig2a() -> Quiver:
    return _q("123", "", "1>2:4 2>3:1")


def fig2b() -> Quiver:
    return _q("1234", "", "1>3:2 2>1:9 3>2:4 4>1:12 2>4:13 4>3:7")


def markov() -> Quiver:
    return _q("123", "", "2>1:2 1>3:2 3>2:2")


def fig3q() -> Quiver:
    return _q("123", "", "1>2:2 3>2:4")


def fig6() -> Quiver:
    return _q("123", "uv", "1>2:5 2>3:13 3>1:3 v>3:20 1>v:7 v>2:2 3>u:2 2>u:9 u>1:4")


def fig7(k: int) -> Quiver:
    return _q("12", "uv", f"1>2:2 2>v:{k} v>1:{k + 1} 2>u:{k + 1} u>1:{k}")


def ce4() -> Quiver:
    return _q("1234", "uv", "1>2:2 2>3:1 3>4:1 2>u:2 u>1:2 u>4:1 4>v:1")


CE4_CYCLE = ["4", "3", "4", "3", "4", "2", "1", "3", "4", "3", "4", "3", "1", "2"]


def fig4a() -> Quiver:
    # vertex 3 is frozen in this one
    return _q("124", "3", "1>2:1 2>3:1 3>1:1 1>4:1 2>4:1 3>4:1")


def fig4b() -> Quiver:
    return _q("1234", "", "1>3:1 2>1:1 3>2:1 4>1:1 4>2:1 4>3:1")


FIXTURES = {
    "FIG1L": fig1l,
    "FIG1R": fig1r,
    "FIG2A": fig2a,
    "FIG2B": fig2b,
    "MARKOV": markov,
    "FIG3Q": fig3q,
    "FIG6": fig6,
    "FIG7_3": lambda: fig7(3),
    "FIG7_4": lambda: fig7(4),
    "FIG7_5": lambda: fig7(5),
    "FIG7_6": lambda: fig7(6),
    "CE4": ce4,
    "FIG4A": fig4a,
    "FIG4B": fig4b,
}


def get(name: str) -> Quiver:
    key = name.upper().replace("(", "_").replace(")", "")
    if key.startswith("FIG7_") and key not in FIXTURES:
        return fig7(int(key[5:]))
    return FIXTURES[key]()
