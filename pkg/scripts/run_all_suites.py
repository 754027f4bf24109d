#!/usr/bin/env python3
"""Run every verification suite at its reference size and summarize.

Writes one JSON report per suite into --out-dir (default ./reports) and
prints a one-line verdict per suite. Exit status is nonzero if any suite
has a failing case. The transfer suite sweeps roughly 500 matrices and
takes a couple of minutes; pass --quick to shrink the bounds.
"""

import argparse
import json
import pathlib
import sys
import time

from affine_schur import cli

REFERENCE = {
    "relations": dict(n=3, D=3, window=6, word_len=4),
    "crystal": dict(n=2, D=3, window=4),
    "canonical": dict(n=2, D=2, window=4, band=2),
    "schur": dict(n=2, D=2, word_len=3),
    "transfer": dict(n=2, D=2, band=2, word_len=4),
}
QUICK = {
    "relations": dict(n=2, D=2, window=4, word_len=3),
    "crystal": dict(n=2, D=2, window=4),
    "canonical": dict(n=2, D=2, window=4, band=1),
    "schur": dict(n=2, D=2, word_len=2),
    "transfer": dict(n=2, D=2, band=1, word_len=3),
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sizes = QUICK if args.quick else REFERENCE

    bad = 0
    for suite in cli.SUITES:
        cfg = cli.RunConfig(suite=suite, **sizes[suite])
        t0 = time.monotonic()
        report = cli.run_suite(cfg)
        dt = time.monotonic() - t0
        path = out_dir / f"{suite}.json"
        path.write_text(cli.report_to_text(report, "json"))
        fails = [c for c in report["cases"] if c["status"] != "pass"]
        bad += len(fails)
        verdict = "ok" if not fails else f"{len(fails)} FAILING"
        print(f"{suite:10s} {len(report['cases']):4d} cases  {verdict}"
              f"  ({dt:.1f}s)  -> {path}")
        for c in fails[:5]:
            print(f"    fail: {c['id']}: {c['detail']}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
