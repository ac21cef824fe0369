#!/usr/bin/env python3
"""Wide randomized differential sweep of the engine against the oracle.

A thicker version of `gridreach verify`: sweeps several sides and both
divisor schedules, prints a one-line summary per configuration, and exits
non-zero on the first mismatch.

Usage:
    python scripts/verify_sweep.py [--trials 100] [--seed 1]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gridreach import (
    EngineConfig,
    SplitMix64,
    SubgridView,
    gen_random,
    oracle_reach,
    reach,
)


def run(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--n-list", default="8,12,16,24")
    ap.add_argument("--epsilon-list", default="0.5,1.0")
    args = ap.parse_args(argv)

    rng = SplitMix64(args.seed)
    for n in (int(s) for s in args.n_list.split(",")):
        for eps in (float(s) for s in args.epsilon_list.split(",")):
            t0 = time.perf_counter()
            viol = 0
            for trial in range(args.trials):
                p = (0.3, 0.5, 0.7)[trial % 3]
                g = gen_random(n, p, p, rng.next_u64())
                s = (rng.next_below(n + 1), rng.next_below(n + 1))
                t = (rng.next_below(n + 1), rng.next_below(n + 1))
                expected = oracle_reach(SubgridView.whole(g), s, t)
                a = reach(g, s, t, EngineConfig(epsilon=eps))
                if a.reachable != expected:
                    print(f"MISMATCH n={n} eps={eps} s={s} t={t}")
                    return 1
                viol += (a.metrics.stack_bound_violations
                         + a.metrics.visit_once_violations)
            dt = time.perf_counter() - t0
            print(f"n={n} eps={eps}: {args.trials} trials ok, "
                  f"{viol} invariant violations, {dt:.2f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
