"""
Compare the numba kernels, the numpy fallback and the sparse exact engine
on random pseudo braids.

    python benchmarks/bench_kernels.py --sizes 4:10:4 5:12:4 6:16:6 --words 5
"""

from __future__ import annotations

import argparse
import random
import time

from pseudohomfly import _kernels, dense
from pseudohomfly.braid_words import random_word
from pseudohomfly.hecke import ocneanu_trace
from pseudohomfly.invariant import resolve


def _time(fn, words) -> float:
    start = time.perf_counter()
    for w in words:
        fn(w)
    return (time.perf_counter() - start) / len(words) * 1000.0


def _dense_with(use_numba: bool):
    def run(w):
        saved = _kernels.USE_NUMBA
        _kernels.USE_NUMBA = use_numba
        try:
            return dense.dense_induced_trace(w)
        finally:
            _kernels.USE_NUMBA = saved

    return run


def _exact(w):
    return ocneanu_trace(resolve(w))


def parse_size(text: str) -> tuple[int, int, int]:
    n, length, d = (int(x) for x in text.split(":"))
    return n, length, d


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", nargs="+", type=parse_size, default=[(4, 10, 4), (5, 12, 4), (6, 16, 6)])
    ap.add_argument("--words", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-exact", action="store_true")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    backends = {"numpy": _dense_with(False)}
    if _kernels.numba is not None and _kernels.USE_NUMBA:
        backends = {"numba": _dense_with(True), **backends}
    if not args.skip_exact:
        backends["exact"] = _exact

    for n, _, _ in args.sizes:
        dense.trace_table(n)  # tables are shared by both dense paths
    dense.warm_up()

    header = f"{'n':>3} {'len':>4} {'d':>3}" + "".join(f"{name + ' ms':>12}" for name in backends)
    print(header)
    for n, length, d in args.sizes:
        words = [random_word(n, length, d, rng) for _ in range(args.words)]
        ref = [backends["numpy"](w) for w in words]
        cells = []
        for name, fn in backends.items():
            cells.append(_time(fn, words))
            assert [fn(w) for w in words[:1]] == ref[:1], f"{name} disagrees"
        print(f"{n:>3} {length:>4} {d:>3}" + "".join(f"{c:>12.2f}" for c in cells))


if __name__ == "__main__":
    main()
