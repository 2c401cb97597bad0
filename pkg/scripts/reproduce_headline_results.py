#!/usr/bin/env python3
"""Run every headline scenario and save the pass/fail report.

Usage: python scripts/reproduce_headline_results.py [--out-dir results]
"""
import argparse
import pathlib
import sys

from cpa_sim import table1


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--cutoff", type=int, default=30)
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = table1.run_table1(cutoff=args.cutoff)
    report = table1.format_report(rows)
    print(report)
    (out_dir / "table1.txt").write_text(report + "\n", encoding="utf-8")
    print(f"\nwrote {out_dir / 'table1.txt'}")
    return 0 if all(r.passed for r in rows) else 3


if __name__ == "__main__":
    sys.exit(main())
