#!/usr/bin/env python3
"""Regenerate every standard figure dataset and chart in one go.

Thin wrapper over the `dispersive-qkd reproduce` subcommand; accepts the
same --config/--set overrides and fans them out to all scenarios.
"""

import argparse
import sys

from dispersive_qkd.analysis import SCENARIOS
from dispersive_qkd.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures", help="output directory")
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument(
        "--set", dest="sets", action="append", default=[], metavar="KEY=VALUE"
    )
    parser.add_argument(
        "--only", choices=SCENARIOS, nargs="*", help="subset of figures"
    )
    args = parser.parse_args()

    passthrough = []
    if args.config:
        passthrough += ["--config", args.config]
    for item in args.sets:
        passthrough += ["--set", item]

    for figure in args.only or SCENARIOS:
        code = cli_main(["reproduce", figure, "--out", args.out] + passthrough)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
