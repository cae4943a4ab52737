#!/usr/bin/env python3
"""
coxout command line
-------------------
* Python 3.9+ recommended
* Usage:
  - Classify a graph: python -m coxout classify --input graph.txt
  - List separating configurations: python -m coxout sils --input graph.txt
  - Factor image presentation: python -m coxout presentation --stil a,b,c,d --simplify
  - Run a verification suite: python -m coxout verify --suite noncommute --trials 200
* Exit codes: 0 success, 1 input error, 2 verification counterexample
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from colorama import Fore, Style, init

from coxout import __version__
from coxout.config import get_settings, setup_logging
from coxout.exceptions import InputError, VerificationCounterexample
from coxout.models.report import GraphSampler
from coxout.services import classify_service, presentation_service, sil_service
from coxout.services.graph_service import format_graph_text, load_graph
from coxout.services.oracle_service import FAIL, SUITES, VerificationService, sample_graph
from coxout.utils import dump_json

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_COUNTEREXAMPLE = 2


class _Parser(argparse.ArgumentParser):
    """Argument errors are input errors (exit 1)"""

    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


def _status(message: str, color: str = Fore.CYAN) -> None:
    """Status line on stderr, coloured only on a terminal"""
    if sys.stderr.isatty():
        print(f"{color}{message}{Style.RESET_ALL}", file=sys.stderr)
    else:
        print(message, file=sys.stderr)


def _csv(value: str) -> List[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def _labels(value: str) -> List[int]:
    try:
        return [int(item) for item in _csv(value)]
    except ValueError:
        raise InputError(f"--labels expects comma separated integers, got {value!r}")


def _emit(args, data, text: str) -> None:
    if args.json:
        print(dump_json(data))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_classify(args) -> int:
    g = load_graph(args.input)
    result = classify_service.classify(g)
    data = result.to_dict()
    lines = [result.verdict.value]
    if result.witness is not None:
        lines.append(f"witness: {result.witness.describe()}")
    lines.extend(f"- {step}" for step in result.justification)

    if args.structure:
        structure = classify_service.disconnected_structure(g)
        data["structure"] = structure.to_dict()
        lines.append("Out0 defining graph:")
        lines.append(format_graph_text(structure.out0_defining_graph).rstrip() or "(empty)")

    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_witness(args) -> int:
    g = load_graph(args.input)
    witness = sil_service.find_witness(g)
    if witness is None:
        _emit(args, None, "none")
    else:
        _emit(args, witness.to_dict(), witness.describe())
    return EXIT_OK


def cmd_sils(args) -> int:
    g = load_graph(args.input)
    sils = sil_service.enumerate_sils(g)
    stils = sil_service.enumerate_stils(g)
    fsils = sil_service.enumerate_fsils(g)
    data = {
        "sils": [w.to_dict() for w in sils],
        "stils": [w.to_dict() for w in stils],
        "fsils": [w.to_dict() for w in fsils],
    }
    lines = [w.describe() for w in sils + stils + fsils]
    _emit(args, data, "\n".join(lines) if lines else "none")
    return EXIT_OK


def cmd_presentation(args) -> int:
    if args.from_file:
        try:
            text = Path(args.from_file).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot read presentation file {args.from_file}: {e.strerror}")
        p = presentation_service.parse_presentation_text(text)
    else:
        g = load_graph(args.input)
        if args.stil:
            quad = _csv(args.stil)
            if len(quad) != 4:
                raise InputError("--stil expects four vertices x1,x2,x3,z")
            stil = sil_service.is_stil(g, *quad)
            if stil is None:
                raise InputError(f"({quad[0]},{quad[1]},{quad[2]} | {quad[3]}) is not a STIL")
            p = presentation_service.factor_image_presentation(g, stil, args.case)
        else:
            p = presentation_service.muehlherr_out0(g)

    kill = _csv(args.kill) if args.kill else []
    if args.simplify and not args.kill:
        kill = presentation_service.designated_kills(p)
    if kill:
        _status(f"killing {', '.join(kill)}")
        p = presentation_service.quotient_by(p, kill)

    data = {"presentation": p.to_dict()}
    lines = [p.format()]
    invariants = presentation_service.abelian_invariants(p)
    data["abelianization"] = invariants.model_dump()
    lines.append(f"abelianization: {invariants.format()}")
    if args.simplify:
        form = presentation_service.recognize_form(p)
        simplified = presentation_service.tietze_simplify(p)
        data["form"] = form.to_dict()
        data["simplified"] = simplified.to_dict()
        lines.append(f"simplified: {simplified.format()}")
        lines.append(form.display)
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    settings = get_settings()
    service = VerificationService.from_settings()
    if args.replay:
        outcome = service.replay_failure(args.replay)
        data = {"status": outcome.status, "message": outcome.message, "verdicts": outcome.verdicts}
        _emit(args, data, f"{outcome.status}: {outcome.message}" if outcome.message else outcome.status)
        return EXIT_COUNTEREXAMPLE if outcome.status == FAIL else EXIT_OK

    sampler = GraphSampler(
        min_vertices=min(args.min_vertices, args.max_vertices),
        max_vertices=args.max_vertices,
        edge_probability=settings.edge_probability if args.edge_probability is None else args.edge_probability,
        label_choices=_labels(args.labels),
        seed=args.seed,
    )
    report = service.run_suite(args.suite, sampler, args.trials, args.out_bound,
                               exhaustive=args.exhaustive, progress=sys.stderr.isatty())
    if args.report:
        Path(args.report).write_text(dump_json(report.to_dict()) + "\n", encoding="utf-8")
        _status(f"report written to {args.report}")
    _emit(args, report.to_dict(), report.format_table())

    if not report.ok:
        _status(f"{len(report.failures)} counterexample(s) in suite {args.suite}", Fore.RED)
        return EXIT_COUNTEREXAMPLE
    _status(f"suite {args.suite}: no failures", Fore.GREEN)
    return EXIT_OK


def cmd_random_graph(args) -> int:
    settings = get_settings()
    if args.vertices is not None:
        low = high = args.vertices
    else:
        low, high = min(3, args.max_vertices), args.max_vertices
    sampler = GraphSampler(
        min_vertices=low,
        max_vertices=high,
        edge_probability=settings.edge_probability if args.edge_probability is None else args.edge_probability,
        label_choices=_labels(args.labels),
        seed=args.seed,
    )
    g = sample_graph(sampler)
    _emit(args, g.to_dict(), format_graph_text(g).rstrip())
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-parser per command"""
    settings = get_settings()

    common = _Parser(add_help=False)
    common.add_argument("--input", default="-",
                        help="Graph file (text, .json or .yaml); '-' reads stdin")
    common.add_argument("--json", action="store_true", help="Print JSON instead of text")
    common.add_argument("--seed", type=int, default=settings.default_seed,
                        help="Random seed (default: COXOUT_SEED or 0)")
    common.add_argument("--out-bound", type=int, default=settings.out_bound,
                        help="Conjugator length bound for equality in Out")
    common.add_argument("--log-level", default=None,
                        help="Override LOG_LEVEL (DEBUG, INFO, WARNING, ERROR)")

    parser = _Parser(prog="coxout", description="Outer automorphisms of graph products of cyclic groups")
    parser.add_argument("--version", action="version", version=f"coxout {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Finite, virtually abelian or large")
    p.add_argument("--structure", action="store_true",
                   help="Also print the defining graph of Out0 for a two-component graph")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="First largeness witness, or none")
    p.set_defaults(handler=cmd_witness)

    p = sub.add_parser("sils", parents=[common], help="All SILs, STILs and FSILs")
    p.set_defaults(handler=cmd_sils)

    p = sub.add_parser("presentation", parents=[common], help="Partial conjugation presentations")
    p.add_argument("--stil", help="x1,x2,x3,z: present the factor image of this STIL")
    p.add_argument("--case", choices=presentation_service.CASES,
                   help="Template for the factor image instead of detecting it")
    p.add_argument("--simplify", action="store_true",
                   help="Simplify by Tietze moves and name the resulting group")
    p.add_argument("--kill", help="Comma separated generators to kill first")
    p.add_argument("--from", dest="from_file", help="Read a gen/rel presentation file instead")
    p.set_defaults(handler=cmd_presentation)

    p = sub.add_parser("verify", parents=[common], help="Run a verification suite")
    p.add_argument("--suite", choices=list(SUITES), default="noncommute", help="Suite name")
    p.add_argument("--trials", type=int, default=100, help="Admitted graphs to test")
    p.add_argument("--min-vertices", type=int, default=3, help="Smallest graph")
    p.add_argument("--max-vertices", type=int, default=settings.max_sampled_vertices,
                   help="Largest graph")
    p.add_argument("--edge-probability", type=float, default=None, help="Edge probability")
    p.add_argument("--labels", default="2", help="Comma separated vertex orders to draw from")
    p.add_argument("--exhaustive", action="store_true",
                   help="Enumerate every graph in the vertex range instead of sampling")
    p.add_argument("--report", help="Write the JSON report to this path")
    p.add_argument("--replay", help="Re-run a persisted failure file")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("random-graph", parents=[common], help="Sample a labelled graph")
    p.add_argument("--vertices", type=int, default=None, help="Exact vertex count")
    p.add_argument("--max-vertices", type=int, default=settings.max_sampled_vertices,
                   help="Largest vertex count when --vertices is not given")
    p.add_argument("--edge-probability", type=float, default=None, help="Edge probability")
    p.add_argument("--labels", default="2", help="Comma separated vertex orders to draw from")
    p.set_defaults(handler=cmd_random_graph)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    if sys.stderr.isatty():
        init()
    try:
        args = build_parser().parse_args(argv)
        logger = setup_logging("coxout", args.log_level)
        logger.debug(f"Running {args.command}")
        return args.handler(args)
    except VerificationCounterexample as e:
        _status(f"verification counterexample: {e}", Fore.RED)
        print(dump_json(e.payload), file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except InputError as e:
        _status(f"error: {e}", Fore.RED)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
