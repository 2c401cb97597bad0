#!/usr/bin/env python3
"""Generate the inseparability and absorption-coefficient data grids as CSV.

Produces fig6.csv (standing-pair inseparability over both squeezing angles),
fig8.csv (intensity absorption of the entangled pair, four panels),
fig9a.csv and fig9b.csv (coherence absorption).  Plotting is left to external
tools; each file is a plain grid with a header row.

Usage: python scripts/make_figure_grids.py [--out-dir results] [--grid 101]
"""
import argparse
import pathlib
import sys
import time

from cpa_sim import sweeps


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--grid", type=int, default=sweeps.DEFAULT_GRID)
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for preset in sweeps.PRESETS:
        start = time.perf_counter()
        header, rows = sweeps.run_preset(preset, args.grid)
        path = out_dir / f"{preset}.csv"
        sweeps.write_csv(str(path), header, rows)
        print(f"{path}  ({len(rows)} points, {time.perf_counter() - start:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
