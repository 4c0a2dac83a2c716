#!/usr/bin/env python3
"""Write a preset definition file, check it through the CLI and print the report."""

import argparse
import sys
import tempfile
from pathlib import Path

from tensorring.cli import main as cli_main


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("preset", nargs="?", default="nakayama",
                    choices=("nakayama", "triangular", "morita-zero"))
    ap.add_argument("--out", type=Path, default=None, help="where to keep the definition file")
    args = ap.parse_args(argv)

    out = args.out or Path(tempfile.mkdtemp()) / f"{args.preset}.json"
    rc = cli_main(["preset", args.preset, "-o", str(out)])
    if rc:
        return rc
    print(f"# definition written to {out}")
    return cli_main(["check", str(out), "--no-timing"])


if __name__ == "__main__":
    sys.exit(main())
