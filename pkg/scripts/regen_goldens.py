#!/usr/bin/env python3
"""Rewrite tests/golden from the current enumeration code."""
import sys
from pathlib import Path

from innerideals.cli import main

out = Path(__file__).resolve().parent.parent / "tests" / "golden"
sys.exit(main(["atlas", "--all", "--out", str(out)]))
