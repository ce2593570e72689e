#!/usr/bin/env python3
"""Regenerate both tables as CSV and diff them against the golden files.

    python scripts/make_tables.py --out build/ [--paper-compat] [--jobs 4]
"""

import argparse
import csv
import sys
from pathlib import Path

from rdbound.engine import make_table

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = {"psu2": ROOT / "tests/golden/table1_psu2.csv", "psu3": ROOT / "tests/golden/table2_psu3.csv"}
COLUMNS = ["q", "dim_V", "bound_thm", "degrees", "mu", "bound_mu", "colour"]


def row_fields(row):
    degrees = " ".join(map(str, row.degrees)) or "None"
    return [str(x) for x in (row.q, row.dim_v, row.bound, degrees, row.mu, row.bound_mu, row.colour)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "build")
    ap.add_argument("--paper-compat", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    differences = 0
    for family, golden in GOLDEN.items():
        with open(golden, newline="") as fh:
            want = {r["q"]: [r[c] for c in COLUMNS] for r in csv.DictReader(fh)}
        rows = make_table(family, [int(q) for q in want], args.paper_compat, jobs=args.jobs)
        path = args.out / f"{family}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(COLUMNS)
            for row in rows:
                if isinstance(row, Exception):
                    print(f"{family}: {type(row).__name__}: {row}", file=sys.stderr)
                    differences += 1
                    continue
                got = row_fields(row)
                w.writerow(got)
                if got != want[got[0]]:
                    differences += 1
                    cols = [c for c, a, b in zip(COLUMNS, got, want[got[0]]) if a != b]
                    print(f"{family} q={got[0]}: differs in {', '.join(cols)}"
                          f"{' (flagged)' if row.flagged else ''}")
        print(f"wrote {path}")
    print(f"{differences} differing rows")
    return 1 if differences else 0


if __name__ == "__main__":
    sys.exit(main())
