#!/usr/bin/env python3
"""Run the named experiment suites and write one CSV per suite.

Usage:
    python scripts/run_suites.py --report-dir reports [--suites NAME ...]
"""

import argparse
import csv
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from symbreak import suites  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--report-dir", required=True)
    parser.add_argument("--suites", nargs="*", default=sorted(suites.ALL_SUITES))
    args = parser.parse_args()

    out_dir = pathlib.Path(args.report_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in args.suites:
        header, rows = suites.run_suite(name)
        path = out_dir / f"{name}.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        print(f"wrote {path} ({len(rows)} rows)")


if __name__ == "__main__":
    main()
