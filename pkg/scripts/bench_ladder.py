#!/usr/bin/env python3
"""Resource ladder: measured vs. predicted calls and tracked words.

Runs corner-to-corner queries on full grids over a doubling ladder and
writes one JSON line per (n, k) to stdout (and optionally a file), the
same shape the `bench` command emits.

Usage:
    python scripts/bench_ladder.py [--epsilon 1.0] [--n-list 16,64,256] [-o bench.jsonl]
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gridreach.cli import main as cli_main


def run(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--epsilon", type=float, default=1.0)
    ap.add_argument("--n-list", default="16,64,256")
    ap.add_argument("--family", default="full")
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args(argv)

    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["bench", "--n-list", args.n_list,
                         "--epsilon", str(args.epsilon),
                         "--family", args.family])
    text = buf.getvalue()
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text)
    rows = [json.loads(line) for line in text.splitlines()]
    if len(rows) >= 2:
        w = rows[-1]["peak_tracked_words"] / rows[0]["peak_tracked_words"]
        c = rows[-1]["recursive_calls"] / rows[0]["recursive_calls"]
        n_hi, n_lo = rows[-1]["n"], rows[0]["n"]
        print(f"# growth {n_lo}->{n_hi}: words x{w:.2f}, calls x{c:.2f}, "
              f"side x{n_hi / n_lo:.0f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(run())
