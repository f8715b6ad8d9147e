"""verify: run named checks over a parameter grid and emit a JSON report.

Exit codes: 0 all passed, 1 some check failed, 2 invalid invocation.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .checks import (CHECK_NAMES, InvalidParams, UnknownCheck, sweep)
from .kaehler import DEFAULT_TRUNC

log = logging.getLogger("genusone.verify")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _index(text: str):
    t = text.replace(" ", "")
    if t in ("1,1", "11", "(1,1)"):
        return (1, 1)
    try:
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"i must be an integer or 1,1, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="verify", description=__doc__.splitlines()[0])
    ap.add_argument("--check", required=True, help=f"'all' or one of: {', '.join(CHECK_NAMES)}")
    ap.add_argument("--p", type=_int_list, default=None, help="prime(s), comma separated")
    ap.add_argument("--r", type=_int_list, default=None, help="rank(s), comma separated")
    g = ap.add_mutually_exclusive_group()
    g.add_argument("--s", type=int, default=None, help="p-basis length of L")
    g.add_argument("--i", type=_index, default=None, help="dual index 0..r or 1,1")
    ap.add_argument("--n", type=int, default=None, help="number of variables of F")
    ap.add_argument("--trunc", type=int, default=DEFAULT_TRUNC, help="truncation order N")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", dest="json_path", default=None, help="write the report here ('-' for stdout)")
    ap.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-stability)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    single = args.check != "all"
    names = list(CHECK_NAMES) if not single else [args.check]
    try:
        reports = sweep(names, args.p, args.r, args.s, args.i, args.n, args.trunc, args.seed, strict=single)
    except UnknownCheck as e:
        print(f"verify: unknown check {e.args[0]!r}", file=sys.stderr)
        return 2
    except InvalidParams as e:
        print(f"verify: invalid parameters: {e}", file=sys.stderr)
        return 2

    # keep stdout machine-readable when the JSON goes there
    human = sys.stderr if args.json_path == "-" else sys.stdout
    for rep in reports:
        log.info("%s %s %s", rep.check, rep.params, rep.status)
        if rep.status != "skipped":
            print(f"{rep.status.upper():7s} {rep.check} {json.dumps(rep.params, sort_keys=True)}", file=human)
    failed = sum(r.status == "failed" for r in reports)
    ran = sum(r.status != "skipped" for r in reports)
    print(f"{ran - failed}/{ran} passed, {len(reports) - ran} skipped", file=human)

    payload = {"version": __version__, "reports": [r.to_json(args.timing) for r in reports]}
    text = json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"
    if args.json_path == "-":
        sys.stdout.write(text)
    elif args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(text)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
