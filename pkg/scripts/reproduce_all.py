#!/usr/bin/env python3
"""Regenerate every figure table (and gnuplot script) into an output directory.

Usage: python scripts/reproduce_all.py [outdir]
"""
import os
import sys

from gqi.sweeps import FIGURE_IDS, gnuplot_script, reproduce_figure


def main() -> int:
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "figures"
    for figure_id in FIGURE_IDS:
        paths = reproduce_figure(figure_id, out_dir)
        script_path = os.path.join(out_dir, f"{figure_id}.gp")
        gnuplot_script(paths, script_path)
        for path in paths + [script_path]:
            print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
