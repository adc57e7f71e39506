#!/usr/bin/env python3
"""Run the acceptance suite and print only its PASS/FAIL lines."""
import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parent.parent
proc = subprocess.run(
    [sys.executable, "-m", "pytest", str(root / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"],
    cwd=root, capture_output=True, text=True,
)
out = proc.stdout.split("acceptance criteria", 1)[-1]
print("\n".join(l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))))
sys.exit(proc.returncode)
