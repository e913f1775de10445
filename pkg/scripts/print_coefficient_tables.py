#!/usr/bin/env python3
"""Print the c, q and b coefficient sequences side by side.

Usage: python scripts/print_coefficient_tables.py [--max K]
"""

from __future__ import annotations

import argparse

from kdvtau.exactnum import format_rational
from kdvtau.grassmann import wk_c_coeff, wk_q_coeff
from kdvtau.zhou import b_seq


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=8)
    args = parser.parse_args()
    print(f"{'k':>3}  {'c_k':>24}  {'q_k':>24}  {'b_k':>24}")
    for k in range(args.max + 1):
        print(
            f"{k:>3}  {format_rational(wk_c_coeff(k)):>24}  "
            f"{format_rational(wk_q_coeff(k)):>24}  {format_rational(b_seq(k)):>24}"
        )


if __name__ == "__main__":
    main()
