"""Command line entry points: `fixturegen generate` / `fixturegen verify`."""

import argparse
import sys

from . import molecules
from .generate import generate
from .verify import verify_fixture


def main(argv=None):
    parser = argparse.ArgumentParser(prog="fixturegen")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate fixture directories")
    gen.add_argument("--out", required=True, help="parent directory for fixtures")
    gen.add_argument(
        "--molecules",
        default=",".join(molecules.ALL),
        help="comma-separated subset of: " + ", ".join(molecules.ALL),
    )

    ver = sub.add_parser("verify", help="check fixture self-consistency")
    ver.add_argument("dirs", nargs="+", help="fixture directories")

    args = parser.parse_args(argv)
    if args.command == "generate":
        for name in args.molecules.split(","):
            name = name.strip()
            if name not in molecules.ALL:
                parser.error(f"unknown molecule {name!r}")
            spec = molecules.ALL[name]()
            res = generate(spec, f"{args.out}/{name}")
            print(
                f"{name}: e_hf={res['e_hf']:.10f}  e_fci={res['e_fci']:.10f}  "
                f"e_core={res['e_core']:.10f}"
            )
        return 0
    failures = 0
    for d in args.dirs:
        problems = verify_fixture(d)
        if problems:
            failures += 1
            print(f"{d}: FAIL")
            for p in problems:
                print(f"  - {p}")
        else:
            print(f"{d}: ok")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
