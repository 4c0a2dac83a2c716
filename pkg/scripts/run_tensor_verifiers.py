#!/usr/bin/env python3
"""Run the tensor-ring verifiers on a Nakayama preset and print a summary.

    python3 scripts/run_tensor_verifiers.py --n 3 --h 2 --samples 200 --seed 0
"""

import argparse
import json
import sys

from tensorring import Workspace, Window, preset_nakayama
from tensorring.verify import (
    verify_cor_1_7,
    verify_lemma_1_6,
    verify_theorem_A,
    verify_theorem_B,
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--h", type=int, default=2)
    ap.add_argument("--i", type=int, default=1)
    ap.add_argument("--j", type=int, default=3)
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="dump full reports as JSON")
    args = ap.parse_args(argv)

    defn = preset_nakayama(args.n, args.h, args.i, args.j, args.p)
    if defn["warnings"]:
        for w in defn["warnings"]:
            print("warning:", w, file=sys.stderr)
        return 1
    ring = Workspace(defn).tensor_ring()
    win = Window()
    reports = [
        verify_theorem_A(ring, args.samples, args.seed, win),
        *verify_theorem_B(ring, args.samples, args.seed, win),
        verify_lemma_1_6(ring, max(1, args.samples // 2), args.seed),
        verify_cor_1_7(ring, max(1, args.samples // 2), args.seed),
    ]
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=1, default=str))
    else:
        print(f"T_R(M) for n={args.n} h={args.h} M=Re{args.i}(x)e{args.j}R over F_{args.p}: "
              f"dim {ring.algebra.dim}")
        for r in reports:
            print(("ok   " if r.passed else "FAIL ") + r.line())
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
