#!/usr/bin/env python3
"""Run every identity-verification suite at the standard depths.

Equivalent to `kdvtau verify all`; kept as a script so the whole
experiment is reproducible with one command and a visible exit code.
"""

from __future__ import annotations

import sys

from kdvtau.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", "all"]))
