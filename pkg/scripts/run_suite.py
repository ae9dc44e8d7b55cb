#!/usr/bin/env python3
"""Run the acceptance matrix and write reports + summary to a directory."""
import argparse
import json
import sys
import time
from pathlib import Path

from leibniz import harness


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", help="JSON config (default: built-in matrix)")
    ap.add_argument("--only", nargs="*")
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args(argv)

    config = None
    if args.config:
        with open(args.config, encoding="utf-8") as fp:
            config = json.load(fp)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    res = harness.run_suite(config, only=args.only)
    with open(out / "reports.jsonl", "w", encoding="utf-8") as fp:
        harness.dump_reports(res.reports, fp)
    with open(out / "summary.json", "w", encoding="utf-8") as fp:
        json.dump(res.summary, fp, indent=2, sort_keys=True)
    print(harness.summary_table(res.summary))
    print(f"{len(res.reports)} reports in {time.perf_counter() - start:.1f}s -> {out}/")
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
