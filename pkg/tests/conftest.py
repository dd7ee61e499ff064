import json
import random
from pathlib import Path

import pytest

from statecycle.diagram import braid_closure
from statecycle.tables import BUILTINS, builtin

DATA = Path(__file__).parent / "data"

# small braid closures that add variety beyond the bundled diagrams
EXTRA_WORDS = [
    [1, 1],
    [1, -1],
    [1, 1, -2, 1, -2],
    [1, -2, -2, 1, -2, 1],
    [1, 1, 1, -2, 1, -2],
    [1, 2, -1, 2, 1, -3, 2, -3],
    [1, 1, 1, 1, 1],
    [-1, -1, 2, -1, 2, 2],
]


def corpus(max_crossings: int):
    out = []
    for name in sorted(BUILTINS):
        entry = BUILTINS[name]
        if name.startswith("K"):
            continue
        d = builtin(name)
        if len(d.crossings) <= max_crossings:
            out.append(d)
    for w in EXTRA_WORDS:
        d = braid_closure(w, name=f"braid{w}")
        if len(d.crossings) <= max_crossings:
            out.append(d)
    return out


def random_braid(rng: random.Random, max_crossings: int):
    strands = rng.choice((2, 3, 3, 4, 4, 5))
    length = rng.randint(1, max_crossings)
    word = [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]
    return braid_closure(word, strands, name=f"braid{word}")


@pytest.fixture(scope="session")
def k1_table():
    raw = json.loads((DATA / "k1_homology.json").read_text())["ranks"]
    return {tuple(int(x) for x in k.split(",")): v for k, v in raw.items()}
