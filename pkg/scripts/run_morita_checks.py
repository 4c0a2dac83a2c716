#!/usr/bin/env python3
"""Morita context ring checks: triangular ring over F_p or the zero-product preset.

    python3 scripts/run_morita_checks.py triangular --exhaustive-p 2
    python3 scripts/run_morita_checks.py morita-zero --samples 40
"""

import argparse
import sys

from tensorring import Window, Workspace
from tensorring.definition import preset_morita_zero, preset_triangular
from tensorring.quadruples import verify_cor_4_7, verify_section4


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("preset", choices=("triangular", "morita-zero"))
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--exhaustive-p", type=int, default=None,
                    help="also enumerate every f over this (small) field, triangular only")
    args = ap.parse_args(argv)

    defn = preset_triangular(args.p) if args.preset == "triangular" else preset_morita_zero(p=args.p)
    setup = Workspace(defn).morita()
    rep = verify_section4(setup, args.samples, args.seed, Window())
    ok = rep.passed
    for r in rep.reports:
        print(("ok   " if r.passed else "FAIL ") + r.line())
    if args.exhaustive_p and args.preset == "triangular":
        small = Workspace(preset_triangular(args.exhaustive_p)).morita()
        ex = verify_cor_4_7(small, exhaustive=True)
        print(("ok   " if ex.passed else "FAIL ") + f"[F_{args.exhaustive_p} exhaustive] " + ex.line())
        ok = ok and ex.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
