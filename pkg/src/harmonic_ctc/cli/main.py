"""Command-line entry point: ``harmonic-ctc {check,verify,distortion,render}``.

Exit codes: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 usage, IO or parse error.
Reports go to stdout or ``--out``; logs go to stderr.
"""

import argparse
import logging
import sys
from typing import Callable, List, Optional

from harmonic_ctc import __version__
from harmonic_ctc.classes.constructs import SamplingGrid, check_membership, check_phi_order
from harmonic_ctc.cli.loader import MapDefinition, load_definition
from harmonic_ctc.cli.report import SCHEMA, SKIPPED, CheckResult, RunReport, canonical_json, to_csv
from harmonic_ctc.cli.verify import VerifyContext, run_checks, select_checks
from harmonic_ctc.common.decorators import EXIT_ERROR, exit_code_on_failure
from harmonic_ctc.common.exceptions import BadInputException, DenominatorNearZero, NonDivisible
from harmonic_ctc.common.hash import file_digest
from harmonic_ctc.common.verdict import Verdict
from harmonic_ctc.config.settings import Settings, get_settings, locate_config
from harmonic_ctc.config.verbosity import Verbosity
from harmonic_ctc.date.date import report_timestamp
from harmonic_ctc.geometry.shape import sense_preserving_check
from harmonic_ctc.geometry.svg import render_svg
from harmonic_ctc.theorems.coefficients import necessary_coeff_check, sufficient_coeff_check
from harmonic_ctc.theorems.distortion import distortion_envelope

logger = logging.getLogger(__name__)

NOW = "now"
DEFAULT_DISTORTION_RADII = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
DISTORTION_COLUMNS = (
    "radius", "n_terms",
    "lower_modulus", "upper_modulus", "lower_modulus_closed", "upper_modulus_closed",
    "lower_derivative", "upper_derivative", "lower_derivative_series", "upper_derivative_series",
    "tail_bound",
)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; 2 means INCONCLUSIVE here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    parser.add_argument("-q", "--quiet", action="count", default=0, help="less logging (repeatable)")
    parser.add_argument("--config", help="JSON settings file (default: harmonic_ctc.json if found)")
    parser.add_argument("--workers", type=int, help="threads for grid scans; 0 = one per CPU")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--timestamp", nargs="?", const=NOW, default=None,
                        help="stamp the report; optional ISO value keeps the stamp reproducible")


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid-rmax", type=float, help="outermost grid radius")
    parser.add_argument("--grid-angles", type=int, help="samples per grid circle")
    parser.add_argument("--tol", type=float, help="margin tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="harmonic-ctc",
                             description="Numerical verification toolkit for the harmonic class KH0(k, gamma).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    check = sub.add_parser("check", help="certify one map-definition file")
    check.add_argument("path")
    _add_common(check)
    _add_grid(check)
    check.set_defaults(handler=cmd_check)

    verify = sub.add_parser("verify", help="run the built-in regression suite")
    _add_common(verify)
    _add_grid(verify)
    verify.add_argument("--filter", help="run only checks of this group or name")
    verify.add_argument("--seed", type=int, help="seed for generated maps")
    verify.add_argument("--random-corpus", type=int, default=0,
                        help="add N random sufficient-condition maps to the soundness chain")
    verify.add_argument("--format", choices=("table", "json"), default="table")
    verify.set_defaults(handler=cmd_verify)

    distortion = sub.add_parser("distortion", help="tabulate distortion envelopes")
    _add_common(distortion)
    distortion.add_argument("--gamma", type=float, required=True)
    distortion.add_argument("--radii", type=_float_list, default=_float_list(DEFAULT_DISTORTION_RADII))
    distortion.add_argument("--n-terms", type=int, help="series terms (default: enough for the tail tolerance)")
    distortion.add_argument("--format", choices=("csv", "json"), default="csv")
    distortion.set_defaults(handler=cmd_distortion)

    render = sub.add_parser("render", help="draw images of circles and rays as SVG")
    render.add_argument("path")
    _add_common(render)
    render.add_argument("--radii", type=_float_list, help="ascending radii in (0, 1)")
    render.add_argument("--rays", type=int, help="number of radial segments")
    render.set_defaults(handler=cmd_render)
    return parser


def _configure(args: argparse.Namespace) -> Verbosity:
    verbosity = Verbosity.from_flags(args.verbose, args.quiet)
    logging.basicConfig(level=verbosity.to_logging_level(), stream=sys.stderr, force=True,
                        format="%(levelname)s %(name)s: %(message)s")
    config = args.config or locate_config(verbosity=verbosity)
    if config:
        Settings.from_file(config, verbosity)
    else:
        get_settings()
    return verbosity


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _timestamp(args: argparse.Namespace) -> Optional[str]:
    if args.timestamp is None:
        return None
    return report_timestamp(None if args.timestamp == NOW else args.timestamp)


def _grid(args: argparse.Namespace, definition: Optional[MapDefinition] = None) -> SamplingGrid:
    overrides = dict(definition.grid_overrides) if definition is not None else {}
    for key, value in (("r_max", args.grid_rmax), ("angles", args.grid_angles), ("margin_tol", args.tol)):
        if value is not None:
            overrides[key] = value
    if not overrides and definition is not None:
        return definition.grid
    return SamplingGrid.with_overrides(overrides.get("r_max"), overrides.get("angles"), overrides.get("margin_tol"))


def _margin_row(name: str, run: Callable, **kwargs) -> CheckResult:
    try:
        report = run()
    except DenominatorNearZero as e:
        logger.warning(f"{name}: {e}")
        return CheckResult.error(name, e, e.z, **kwargs)
    except NonDivisible as e:
        logger.warning(f"{name}: {e}")
        return CheckResult.error(name, e, **kwargs)
    detail = report.as_dict()
    detail.pop("verdict")
    return CheckResult.from_verdict(name, report.verdict, slack=report.min_margin, detail=detail, **kwargs)


def _coefficient_row(name: str, report, slack: float, **kwargs) -> CheckResult:
    detail = report.as_dict()
    detail.pop("verdict")
    return CheckResult.from_verdict(name, report.verdict, slack=slack, detail=detail, **kwargs)


@exit_code_on_failure
def cmd_check(args: argparse.Namespace) -> int:
    verbosity = _configure(args)
    definition = load_definition(args.path)
    f, params = definition.f, definition.params
    grid = _grid(args, definition)
    report = RunReport(
        "check",
        input_digest=file_digest(args.path),
        subject=dict(definition.as_dict(), description=params.describe()),
        grid=grid.as_dict(),
        timestamp=_timestamp(args),
    )
    scan = dict(grid=grid, workers=args.workers, verbosity=verbosity)

    phi_row = report.add(_margin_row("phi-order", lambda: check_phi_order(params.phi, params.phi_order, **scan)))
    remaining = ("membership", "necessary-coefficients", "sufficient-coefficients", "sense-preservation")
    if phi_row.status == Verdict.FAIL.value:
        # a generator that is not starlike of order (k-1)/k leaves the class undefined
        for name in remaining:
            report.add(CheckResult(name, SKIPPED, detail={"reason": "phi-order failed"}))
    else:
        report.add(_margin_row("membership", lambda: check_membership(f, params, **scan)))
        necessary = necessary_coeff_check(f, params.gamma)
        report.add(_coefficient_row("necessary-coefficients", necessary,
                                    min((row[3] for row in necessary.per_index), default=0.0)))
        try:
            sufficient = sufficient_coeff_check(f, params)
            report.add(_coefficient_row("sufficient-coefficients", sufficient,
                                        sufficient.aggregate_sufficient[2], counts_toward_verdict=False))
        except NonDivisible as e:
            report.add(CheckResult.error("sufficient-coefficients", e, counts_toward_verdict=False))
        report.add(_margin_row("sense-preservation", lambda: sense_preserving_check(f, **scan)))

    _emit(report.to_json(), args.out)
    code = report.exit_code()
    logger.info(f"check {definition.label or args.path}: exit {code}")
    return code


def _table(rows: List[CheckResult]) -> str:
    width = max([len(row.name) for row in rows] + [4])
    anchor_width = max([len(row.anchor) for row in rows] + [6])
    lines = [f"{'name':<{width}}  {'anchor':<{anchor_width}}  {'status':<12}  slack"]
    for row in rows:
        slack = "-" if row.slack is None else f"{row.slack:.6g}"
        lines.append(f"{row.name:<{width}}  {row.anchor:<{anchor_width}}  {row.status:<12}  {slack}")
    return "\n".join(lines) + "\n"


@exit_code_on_failure
def cmd_verify(args: argparse.Namespace) -> int:
    _configure(args)
    if args.random_corpus < 0:
        raise BadInputException(f"--random-corpus must be non-negative, got {args.random_corpus}")
    if not select_checks(args.filter):
        raise BadInputException(f"no check matches --filter {args.filter!r}")
    seed = get_settings().random_seed if args.seed is None else args.seed
    grid = _grid(args)
    ctx = VerifyContext(grid=grid, seed=seed, random_corpus=args.random_corpus, workers=args.workers)
    report = RunReport("verify", grid=grid.as_dict(), timestamp=_timestamp(args),
                       subject={"filter": args.filter or "", "seed": seed,
                                "random_corpus": args.random_corpus})
    for row in run_checks(ctx, args.filter):
        report.add(row)
    _emit(report.to_json() if args.format == "json" else _table(report.checks), args.out)
    return report.exit_code()


@exit_code_on_failure
def cmd_distortion(args: argparse.Namespace) -> int:
    _configure(args)
    envelopes = [distortion_envelope(args.gamma, r, args.n_terms) for r in args.radii]
    if args.format == "csv":
        rows = [[getattr(env, column) for column in DISTORTION_COLUMNS] for env in envelopes]
        text = to_csv(DISTORTION_COLUMNS, rows)
    else:
        text = canonical_json({
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": "distortion",
            "gamma": float(args.gamma),
            "rows": [{column: getattr(env, column) for column in DISTORTION_COLUMNS} for env in envelopes],
        })
    _emit(text, args.out)
    return 0


@exit_code_on_failure
def cmd_render(args: argparse.Namespace) -> int:
    _configure(args)
    definition = load_definition(args.path)
    _emit(render_svg(definition.f, args.radii, args.rays, title=definition.label), args.out)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
