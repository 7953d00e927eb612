"""``gec`` command line: mesh generation, identity verification, power reports.

Exit codes: 0 all checks pass, 1 some check failed, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .complex import ComplexError
from .meshgen import mesh_gen
from .scenario import ScenarioError, load_scenario
from .serialize import dump_json, mesh_to_json
from .verify import power_report, run_verification

log = logging.getLogger("gec")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _cmd_mesh(args) -> int:
    try:
        mesh = mesh_gen(args.kind, args.dim, args.sub)
    except ComplexError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    text = dump_json(mesh_to_json(mesh), args.out)
    if args.out is None:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        scn = load_scenario(args.scenario)
        if args.seed is not None:
            scn.seed = args.seed
        if args.inject_sign_error:
            scn.inject_sign_error = True
        report = run_verification(scn)
    except ScenarioError as exc:
        log.error("invalid scenario: %s", exc)
        return EXIT_INPUT
    data = report.to_json(timing=args.timing)
    text = dump_json(data, args.out)
    if args.out is None:
        sys.stdout.write(text)
    s = data["summary"]
    log.info("%d/%d checks passed", s["passed"], s["total"])
    for c in data["checks"]:
        if not c["pass"]:
            log.warning("FAILED %s: %s", c["name"], json.dumps(c["values"]))
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_power(args) -> int:
    try:
        scn = load_scenario(args.scenario)
        if args.refine is not None:
            if args.refine < 1:
                raise ScenarioError("--refine needs at least one level")
            scn.refine = tuple(2 ** i for i in range(args.refine))
        data = power_report(scn)
    except ScenarioError as exc:
        log.error("invalid scenario: %s", exc)
        return EXIT_INPUT
    text = dump_json(data, args.out)
    if args.out is None:
        sys.stdout.write(text)
    if "convergence" in data:
        return EXIT_OK if data["convergence"]["gap_decreasing"] else EXIT_FAIL
    return EXIT_OK if data.get("all_equal") else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gec", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mesh", help="write a Kuhn box or a standard simplex mesh")
    m.add_argument("--kind", choices=("box", "simplex"), default="box")
    m.add_argument("--dim", type=int, required=True)
    m.add_argument("--sub", type=int, default=1)
    m.add_argument("--out")
    m.set_defaults(func=_cmd_mesh)

    v = sub.add_parser("verify", help="run identity suites and write a report")
    v.add_argument("--scenario", required=True)
    v.add_argument("--out")
    v.add_argument("--seed", type=int)
    v.add_argument("--timing", action="store_true", help="include per-check timings (non-deterministic)")
    v.add_argument("--inject-sign-error", action="store_true",
                   help="negative control: flip the (-1)^(d-r-1) sign")
    v.set_defaults(func=_cmd_verify)

    w = sub.add_parser("power", help="report every power expression")
    w.add_argument("--scenario", required=True)
    w.add_argument("--refine", type=int, help="number of box refinement levels (1, 2, 4, ...)")
    w.add_argument("--out")
    w.set_defaults(func=_cmd_power)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
