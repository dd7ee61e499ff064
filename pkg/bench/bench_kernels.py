"""Compare the compiled kernels with the pure-Python fallback.

    python3 bench/bench_kernels.py [--repeat N]

Times the loop histogram (bracket state sum) and exact / mod-p ranks of
the largest differential matrices of a few bundled diagrams.
"""

from __future__ import annotations

import argparse
import timeit

from statecycle import _purepy
from statecycle.homology import CubeComplex
from statecycle.kernels import MODP
from statecycle.tables import builtin

try:
    from statecycle import _kernels
except ImportError:
    _kernels = None


def _best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def _largest_matrix(name: str):
    c = CubeComplex(builtin(name))
    key = max(c.buckets, key=lambda k: len(c.buckets[k]) * len(c.buckets.get((k[0] + 1, k[1]), ())))
    return c.matrix(*key)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; nothing to compare")
        return
    rows = []
    for name in ("8_21_plus_adequate", "9_42", "10_152_negative"):
        d = builtin(name)
        xs, n = list(d.crossings), d.arc_count
        assert (_kernels.loop_histogram(xs, n) == _purepy.loop_histogram(xs, n)).all()
        rows.append((f"loop_histogram {name}", _best(lambda: _purepy.loop_histogram(xs, n), args.repeat),
                     _best(lambda: _kernels.loop_histogram(xs, n), args.repeat)))
    for name in ("9_42", "10_152_negative"):
        m = _largest_matrix(name)
        assert _kernels.rank_int(*m) == _purepy.rank_int(*m)
        rows.append((f"rank_int {name} ({m[3]} cols)", _best(lambda: _purepy.rank_int(*m), args.repeat),
                     _best(lambda: _kernels.rank_int(*m), args.repeat)))
        rows.append((f"rank_modp {name}", _best(lambda: _purepy.rank_modp(*m, MODP), args.repeat),
                     _best(lambda: _kernels.rank_modp(*m, MODP), args.repeat)))
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel'.ljust(width)}  {'python s':>10}  {'compiled s':>10}  {'speedup':>8}")
    for label, py, cy in rows:
        print(f"{label.ljust(width)}  {py:10.4f}  {cy:10.4f}  {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
