"""Command-line entry point.

Exit codes: 0 when every check passes, 1 on a failed check, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import scenarios as sc
from .errors import BornError, ParseError
from .io import SCHEMA, dec, dumps

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _angle(text: str) -> float:
    """Float, or an expression in pi such as 'pi/4' or '3*pi/4'."""
    t = text.replace(" ", "").lower()
    try:
        return float(t)
    except ValueError:
        pass
    allowed = set("0123456789.+-*/()pi")
    if not t or not set(t) <= allowed:
        raise argparse.ArgumentTypeError(f"bad angle {text!r}")
    try:
        return float(eval(t, {"__builtins__": {}}, {"pi": math.pi}))  # noqa: S307
    except Exception as exc:  # noqa: BLE001
        raise argparse.ArgumentTypeError(f"bad angle {text!r}") from exc


def _add_output(p):
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--csv", metavar="PATH", help="write the checks as CSV here")
    p.add_argument("--bits", action="store_true",
                   help="entropy unit (bits is the only unit; accepted for clarity)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="bornlp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scenario", help="run a named worked example")
    p.add_argument("name", choices=sc.SCENARIOS)
    p.add_argument("--selection", choices=["maxent", "centroid"], default="maxent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--first", choices=["a", "b"], default="a")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--theta", type=_angle, default=None)
    p.add_argument("--theta1", type=_angle, default=0.0)
    p.add_argument("--theta2", type=_angle, default=math.pi / 3)
    p.add_argument("-A", type=int, choices=[0, 1], default=1)
    p.add_argument("-B", type=int, choices=[0, 1], default=1)
    _add_output(p)

    p = sub.add_parser("solve", help="run the full pipeline on a constraint file")
    p.add_argument("file", help="constraint file, or one of: singlet, triplet, prbox")
    p.add_argument("--selection", choices=["maxent", "centroid", "explicit"], default="maxent")
    p.add_argument("--working", help="comma-separated working distribution for --selection explicit")
    p.add_argument("--no-mub", action="store_true", help="skip the MUB cluster analysis")
    _add_output(p)

    p = sub.add_parser("epr-sim", help="sample the EPR communication protocol")
    p.add_argument("--theta1", type=_angle, default=0.0)
    p.add_argument("--theta2", type=_angle, default=math.pi / 3)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--first", choices=["a", "b"], default="a")
    _add_output(p)

    p = sub.add_parser("chsh", help="evaluate CHSH for a state family")
    p.add_argument("--state", choices=["prbox", "epr", "local"], default="prbox")
    p.add_argument("--samples", type=int, default=0, help="also sample the EPR protocol")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--first", choices=["a", "b"], default="a")
    _add_output(p)
    return ap


def _scenario_params(args) -> dict:
    if args.name == "singlet":
        return {"selection": args.selection}
    if args.name == "qubit_mub":
        return {} if args.theta is None else {"theta": args.theta}
    if args.name == "triplet":
        return {} if args.theta is None else {"theta": args.theta}
    if args.name == "epr":
        return {"theta1": args.theta1, "theta2": args.theta2, "samples": args.samples,
                "seed": args.seed, "first": args.first}
    if args.name == "prbox":
        return {"A": args.A, "B": args.B}
    return {}


def _epr_report(args) -> sc.ScenarioReport:
    rep = sc.ScenarioReport("epr-sim", {"theta1": args.theta1, "theta2": args.theta2,
                                        "samples": args.samples, "seed": args.seed,
                                        "prng": sc.PRNG, "first": args.first})
    sim = sc.epr_protocol_sim(args.theta1, args.theta2, args.samples, args.seed, args.first)
    rep.check("sampled joint within 3 sigma of the analytic table", 0.0, sim.max_sigma, 3.0,
              "oracle")
    rep.tables.update({"joint_sampled": [dec(x) for x in sim.joint],
                       "joint_analytic": [dec(x) for x in sim.analytic],
                       "std_error": [dec(x) for x in sim.std_error],
                       "inf_distance": dec(sim.inf_distance)})
    return rep


def _chsh_report(args) -> sc.ScenarioReport:
    rep = sc.ScenarioReport("chsh", {"state": args.state, "samples": args.samples,
                                     "seed": args.seed, "prng": sc.PRNG})
    if args.state == "prbox":
        val = sc.prbox_chsh(0, 0)
        rep.check("|<CHSH>| = 4", 4.0, abs(val), 1e-9, "reference")
    elif args.state == "local":
        val = sc.local_chsh_max()
        rep.check("deterministic local strategies stay within 2", True, val <= 2, 0, "oracle")
    else:
        val = sc.epr_chsh_analytic()
        rep.check("analytic CHSH = 2 sqrt2", 2 * math.sqrt(2), val, 1e-12, "oracle")
        if args.samples > 0:
            s, se = sc.epr_chsh_sim(args.samples, args.seed, args.first)
            rep.tables["sampled"] = dec(s)
            rep.tables["std_error"] = dec(se)
            rep.check("sampled CHSH within 3 sigma", 0.0, abs(s - val) / se, 3.0, "oracle")
    rep.tables["chsh"] = dec(val)
    return rep


def _emit(rep: sc.ScenarioReport, args) -> int:
    data = rep.to_dict()
    assert data["schema"] == SCHEMA
    if args.json:
        Path(args.json).write_text(dumps(data) + "\n")
    if args.csv:
        Path(args.csv).write_text(sc.report_csv(rep))
    print(f"{rep.scenario}: {'PASS' if rep.passed else 'FAIL'}")
    for c in rep.checks:
        print(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}")
    for n in rep.notes:
        print(f"  note: {n}")
    if "seed" in rep.inputs:
        print(f"  seed: {rep.inputs['seed']} ({sc.PRNG})")
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "scenario":
            rep = sc.run_scenario(args.name, **_scenario_params(args))
        elif args.command == "solve":
            explicit = None
            if args.selection == "explicit":
                if not args.working:
                    raise BornError("--selection explicit needs --working")
                explicit = [float(x) for x in args.working.split(",")]
            rep = sc.run_constraint_file(sc.constraint_path(args.file), args.selection,
                                         not args.no_mub, explicit)
        elif args.command == "epr-sim":
            rep = _epr_report(args)
        else:
            rep = _chsh_report(args)
    except (ParseError, BornError, ValueError) as exc:
        print(f"bornlp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _emit(rep, args)


if __name__ == "__main__":
    raise SystemExit(main())
