"""Benchmark the compiled kernels against the pure-Python ones.

Runs each hot kernel on representative workloads with both backends and
prints wall times and speedups.  Results are asserted equal before timing,
so a reported speedup is always for identical exact output.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import random
import time

from votepower import _kernels_py as pure

try:
    from votepower import _core as compiled
except ImportError:
    compiled = None


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench(name, repeats, fn_name, *args):
    py_fn = getattr(pure, fn_name)
    py_time, py_result = best_of(repeats, py_fn, *args)
    row = {"workload": name, "pure": f"{py_time * 1e3:8.1f} ms"}
    if compiled is not None:
        c_fn = getattr(compiled, fn_name)
        c_time, c_result = best_of(repeats, c_fn, *args)
        normalize = lambda r: [list(x) if isinstance(x, list) else x for x in r]
        assert normalize(list(py_result)) == normalize(list(c_result)) or bytes(
            py_result
        ) == bytes(c_result), f"backend mismatch on {name}"
        row["compiled"] = f"{c_time * 1e3:8.1f} ms"
        row["speedup"] = f"{py_time / c_time:6.1f}x"
    return row


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    repeats = args.repeats

    rng = random.Random(1)
    rows = []

    weights20 = [rng.randint(1, 9) for _ in range(20)]
    quota20 = sum(weights20) // 2
    rows.append(
        bench("winning table, weighted n=20", repeats, "winning_table_weighted",
              20, quota20, weights20)
    )

    win16 = pure.winning_table_weighted(
        16, 30, [rng.randint(1, 7) for _ in range(16)]
    )
    rows.append(bench("PB swing counts, n=16", repeats, "pb_swing_counts", 16, win16))
    rows.append(bench("SS swing counts, n=16", repeats, "ss_swing_counts", 16, win16))

    for n in (8, 10, 12):
        weights = [rng.randint(1, 5) for _ in range(n)]
        win = pure.winning_table_weighted(n, sum(weights) // 2, weights)
        rows.append(bench(f"RM efficacy sweep, n={n}", repeats, "rm_alpha_sums", n, win))

    headers = ["workload", "pure"] + (["compiled", "speedup"] if compiled else [])
    widths = [max(len(h), *(len(r.get(h, "")) for r in rows)) for h in headers]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for r in rows:
        print("  ".join(r.get(h, "-").ljust(w) for h, w in zip(headers, widths)))
    if compiled is None:
        print("\ncompiled backend not built; showing pure-Python times only")


if __name__ == "__main__":
    main()
