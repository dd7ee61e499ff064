"""Bundled diagrams with the properties each one is claimed to have.

Every entry is rebuilt on request, so callers may not mutate a shared
value.  ``claims`` lists what the test suite re-derives: signs, component
count and adequacy flags; ``regions`` gives the two entwining sites for
the family building blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .diagram import Diagram, braid_closure, parse_pd
from .errors import UnknownName


@dataclass(frozen=True)
class BuiltinEntry:
    name: str
    build: Callable[[], Diagram]
    claims: dict = field(default_factory=dict)
    regions: tuple[int, int] | None = None
    note: str = ""


def _pd(text: str) -> Callable[[], Diagram]:
    return lambda: parse_pd(text)


def _braid(word: list[int]) -> Callable[[], Diagram]:
    return lambda: braid_closure(word)


def _k(n: int) -> Callable[[], Diagram]:
    def build() -> Diagram:
        from .families import standard_family

        return standard_family(n).diagram

    return build


_ENTRIES = [
    BuiltinEntry(
        "unknot0",
        lambda: Diagram(()),
        {"signs": (0, 0), "components": 1, "plus": True, "minus": True},
        note="crossingless unknot",
    ),
    BuiltinEntry(
        "kink",
        _pd("X[1,1,2,2]"),
        {"signs": (1, 0), "components": 1, "plus": True, "minus": False},
        note="unknot with one Reidemeister-1 kink",
    ),
    BuiltinEntry(
        "trefoil_negative",
        _braid([-1, -1, -1]),
        {"signs": (0, 3), "components": 1, "plus": True, "minus": True},
        note="closure of the negative 2-braid s1^-3",
    ),
    BuiltinEntry(
        "trefoil_pd",
        _pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"),
        {"signs": (0, 3), "components": 1, "plus": True, "minus": True},
        note="standard PD trefoil (negative under this convention)",
    ),
    BuiltinEntry(
        "figure8",
        _braid([1, -2, 1, -2]),
        {"signs": (2, 2), "components": 1, "plus": True, "minus": True},
        note="closure of s1 s2^-1 s1 s2^-1",
    ),
    BuiltinEntry(
        "6_3",
        _pd("X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]"),
        {"signs": (3, 3), "components": 1, "plus": True, "minus": True},
        note="alternating 6_3",
    ),
    BuiltinEntry(
        "8_21_plus_adequate",
        _braid([-1, -1, -1, -2, 1, 1, -2, -2]),
        {"signs": (2, 6), "components": 1, "plus": True, "minus": False},
        regions=(1, 9),
        note="base knot for the entwined family",
    ),
    BuiltinEntry(
        "9_42",
        _pd("X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[16,12,17,11] X[14,7,15,8] X[6,15,7,16] X[18,14,1,13] X[12,18,13,17]"),
        {"signs": (5, 4), "components": 1},
        note="table diagram; its Seifert state has a one-loop 1-block",
    ),
    BuiltinEntry(
        "10_152_negative",
        _braid([-1, -1, -1, -2, -2, -1, -1, -2, -2, -2]),
        {"signs": (0, 10), "components": 1, "plus": True, "minus": True, "alternating": False},
        regions=(1, 19),
        note="negative 3-braid closure; block for the entwined family",
    ),
    BuiltinEntry(
        "solomon_mirror",
        _braid([1, 1, 1, 1]),
        {"signs": (4, 0), "components": 2, "plus": True, "minus": True},
        note="positive closure of s1^4; all-1 state graph is a square",
    ),
    BuiltinEntry(
        "even_not_isolated_trivial",
        _braid([-1, 1, -1, 1, 2, -1]),
        {"components": 1},
        note="1-even, not 1-isolated state cycle that is a boundary (smoothing 101001, all v-)",
    ),
    BuiltinEntry(
        "even_not_isolated_nontrivial",
        _braid([-1, 1, 2, 1, 1]),
        {"components": 2},
        note="1-even, not 1-isolated state cycle that is nonzero (smoothing 10000, all v-)",
    ),
    BuiltinEntry(
        "odd_isolated_nontrivial",
        _braid([-2, 1, 1, 2, 2, 1, -2, 1]),
        {"components": 1},
        note="1-isolated state cycle that is not 1-even yet nonzero (all-1, all v+)",
    ),
    BuiltinEntry("K1", _k(1), {"signs": (7, 16), "components": 1}, note="entwined family, one block"),
    BuiltinEntry("K2", _k(2), {"signs": (12, 26), "components": 1}, note="entwined family, two blocks"),
]

BUILTINS: dict[str, BuiltinEntry] = {e.name: e for e in _ENTRIES}

# the three oracle-screened examples for the 1-even / 1-isolated flag combinations
FLAG_EXAMPLES = {
    "even_not_isolated_trivial": ("101001", "111", False),
    "even_not_isolated_nontrivial": ("10000", "111", True),
    "odd_isolated_nontrivial": ("11111111", "00000", True),
}


def builtin(name: str) -> Diagram:
    try:
        entry = BUILTINS[name]
    except KeyError:
        raise UnknownName(f"no builtin diagram named {name!r}; known: {', '.join(sorted(BUILTINS))}") from None
    return entry.build().renamed(name)


def builtin_names() -> list[str]:
    return sorted(BUILTINS)
