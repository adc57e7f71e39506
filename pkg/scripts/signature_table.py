#!/usr/bin/env python3
"""Print Killing signatures and Albert-form Witt indices of the Kantor constructions.

Building the 248-dimensional algebras takes a few seconds each.
"""
import argparse
import time

from innerideals.liealg import killing_signature, signature_value
from innerideals.structurable import (
    albert_form,
    identify_signature,
    jordan_h3,
    kantor,
    tensor_structurable,
    witt_index,
)

PAIRS = [
    ("R", "O"), ("R", "Os"),
    ("O", "C"), ("O", "Cs"), ("Os", "C"), ("Os", "Cs"),
    ("O", "H"), ("O", "Hs"), ("Os", "H"), ("Os", "Hs"),
    ("O", "O"), ("O", "Os"), ("Os", "Os"),
]


def row(a):
    t0 = time.time()
    k = kantor(a)
    sig = signature_value(killing_signature(k.lie))
    w = witt_index(albert_form(a)) if a.factors else "-"
    name = identify_signature(k.lie.dim, sig).name
    return f"{a.name:10} {k.lie.dim:4} {sig:5} {name:12} {w!s:>4} {time.time() - t0:6.1f}s"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-dim", type=int, default=64, help="skip structurable algebras above this dimension")
    args = p.parse_args()
    print(f"{'algebra':10} {'dim':>4} {'sig':>5} {'form':12} {'witt':>4}")
    for c1, c2 in PAIRS:
        a = tensor_structurable(c1, c2)
        if a.dim <= args.max_dim:
            print(row(a))
    for c in ("O", "Os"):
        print(row(jordan_h3(c)))


if __name__ == "__main__":
    main()
