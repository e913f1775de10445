#!/usr/bin/env python3
"""Export the affine-coordinate table from both pipelines and diff them.

Writes CSV and JSON exports for the Grassmannian route and the closed-form
route into --outdir, then reports whether the numerical content agrees.

Usage: python scripts/export_affine_tables.py [--size N] [--outdir DIR]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from kdvtau.grassmann import wk_G, z_table_direct
from kdvtau.zhou import zhou_affine_table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=12)
    parser.add_argument("--outdir", default="out")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    K = args.size // 2
    grass = z_table_direct(wk_G(2 * K + 1), K, K).to_affine_table()
    grass_entries = {
        (m, n): v for (m, n), v in grass.entries.items()
        if m <= args.size and n <= args.size
    }
    from kdvtau.grassmann import AffineTable

    grass = AffineTable(args.size, args.size, grass_entries, "grassmann")
    closed = zhou_affine_table(args.size, args.size)

    for name, table in (("grassmann", grass), ("zhou", closed)):
        (outdir / f"affine_{name}.csv").write_text(table.to_csv_text())
        (outdir / f"affine_{name}.json").write_text(
            json.dumps(table.to_json_dict(), separators=(",", ":")) + "\n"
        )

    same = grass.entries == closed.entries
    csv_same = (outdir / "affine_grassmann.csv").read_bytes() == (
        outdir / "affine_zhou.csv"
    ).read_bytes()
    print(f"entries identical: {same}; csv byte-identical: {csv_same}")
    print(f"written to {outdir}/")
    return 0 if same and csv_same else 1


if __name__ == "__main__":
    raise SystemExit(main())
