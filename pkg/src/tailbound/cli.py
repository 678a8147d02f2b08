"""Command-line interface.

Subcommands:

    shock-table   grid of extreme deviations a(n, kappa) next to sqrt(n-1)
    bounds        evaluate one of the moment bounds over an (n, kappa) grid
    tail-factor   once-in-n quantile of a reference model (normal/student-t)
    validate      check a quoted (or published BLR) tail factor
    empirical     check a tail factor against a CSV of observed returns
    appendix      shape-comparison table for the outlier search

Exit codes (stable contract): 0 success or PASS, 1 usage or parse error,
2 validation FAIL, 3 infeasible domain.

Each subcommand accepts --format {csv,json,markdown}, --output FILE and
--precision K (decimal places, default 3).  The JSON layout is described by
docs/output_schema.json.

CSV input for `empirical`: UTF-8; an optional header line (detected by a
non-numeric first field); then one observation per line, either `value` or
`date,value`; plain decimal-point numbers; blank lines are skipped.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import Sequence

from . import appendix_search, chebyshev_bounds, distributions, validator
from .errors import (
    BoundValidityError,
    DegenerateDataError,
    DomainError,
    InfeasibleKurtosisError,
    SearchError,
    TableLookupError,
    TailboundError,
)
from .extreme_point import samuelson_bound, solve_extreme_point, third_moment
from .output import FORMATS, INFEASIBLE_MARKER, OutputDocument

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_INFEASIBLE = 3

SHOCK_TABLE_N = [250, 500, 1000, 10_000, 100_000, 1_000_000, 833_208]
DEFAULT_KAPPAS = [7.0, 10.0, 13.0, 16.0]
EVEN_MOMENT_N = [250, 500, 1000, 10_000, 100_000, 1_000_000]
ZELEN_N = EVEN_MOMENT_N
BHATTACHARYYA_N = [10_000, 100_000, 1_000_000, 10_000_000, 100_000_000]
APPENDIX_M = [500, 1000, 2000, 3000, 4000, 5000, 10_000]


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _precision(text: str) -> int:
    value = int(text)
    if not 0 <= value <= 17:
        raise argparse.ArgumentTypeError(f"precision must be within 0..17, got {value}")
    return value


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="markdown",
                   help="output format (default: markdown)")
    p.add_argument("--output", metavar="FILE", default=None,
                   help="write the document to FILE instead of stdout")
    p.add_argument("--precision", type=_precision, default=3, metavar="K",
                   help="decimal places for rendered numbers, 0..17 (default: 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tailbound",
                     description="Kurtosis-constrained extreme-deviation bounds "
                                 "and shock-model validation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("shock-table", help="extreme-deviation grid a(n, kappa)")
    p.add_argument("--n", type=int, nargs="+", default=SHOCK_TABLE_N,
                   help="history lengths (rows)")
    p.add_argument("--kurtosis", type=float, nargs="+", default=DEFAULT_KAPPAS,
                   help="kurtosis values (columns)")
    _add_output_flags(p)

    p = sub.add_parser("bounds", help="moment-bound grid")
    p.add_argument("--method", required=True,
                   choices=["even-moment", "zelen", "bhattacharyya"])
    p.add_argument("--n", type=int, nargs="+", default=None,
                   help="sample sizes (rows; default depends on method)")
    p.add_argument("--kurtosis", type=float, nargs="+", default=DEFAULT_KAPPAS)
    _add_output_flags(p)

    p = sub.add_parser("tail-factor", help="once-in-n model quantile")
    p.add_argument("--model", required=True, choices=["normal", "student-t"])
    p.add_argument("--dof", type=int, default=None,
                   help="degrees of freedom (student-t only)")
    p.add_argument("--horizon", type=float, required=True, metavar="N",
                   help="exceedance horizon n; quantile level is 1 - 1/n")
    _add_output_flags(p)

    p = sub.add_parser("validate", help="check a tail factor against the bound")
    p.add_argument("--tail-factor", type=float, default=None,
                   help="quoted tail factor in sigmas")
    p.add_argument("--blr", action="store_true",
                   help="look the tail factor up in the published BLR grid")
    p.add_argument("--g-inv", default=None, metavar="LABEL",
                   help="BLR mean-reversion time label, e.g. 6m")
    p.add_argument("--kurtosis", type=float, required=True)
    p.add_argument("--history", type=int, required=True, metavar="N")
    p.add_argument("--days-per-year", type=int, default=250,
                   help="business days per year (reporting only; default 250)")
    _add_output_flags(p)

    p = sub.add_parser("empirical", help="check a tail factor against observed data")
    p.add_argument("file", help="CSV of observations: `value` or `date,value` lines")
    p.add_argument("--tail-factor", type=float, required=True)
    _add_output_flags(p)

    p = sub.add_parser("appendix", help="base-shape comparison table")
    p.add_argument("--n", type=int, nargs="+", default=APPENDIX_M,
                   help="base sizes m (each search uses m + 1 points)")
    p.add_argument("--kappa", type=float, default=16.0,
                   help="target kurtosis (default 16)")
    _add_output_flags(p)

    return parser


# ---------------------------------------------------------------------------
# document builders
# ---------------------------------------------------------------------------


def build_shock_table(n_list: Sequence[int], kappa_list: Sequence[float]) -> OutputDocument:
    rows: list[list] = []
    for n in n_list:
        row: list = [n, samuelson_bound(n)]
        for kappa in kappa_list:
            try:
                row.append(solve_extreme_point(n, kappa).a)
            except DomainError:
                row.append(INFEASIBLE_MARKER)
        rows.append(row)
    return OutputDocument(
        title="extreme deviation by history length and kurtosis",
        columns=["N", "sqrt(N-1)"] + [f"kurtosis={k:g}" for k in kappa_list],
        rows=rows,
        notes=["cells are max standardised deviations a(N, kurtosis); "
               "population moments, divisor N"],
    )


def build_bounds_table(method: str, n_list: Sequence[int] | None,
                       kappa_list: Sequence[float]) -> OutputDocument:
    if n_list is None:
        n_list = {"even-moment": EVEN_MOMENT_N, "zelen": ZELEN_N,
                  "bhattacharyya": BHATTACHARYYA_N}[method]

    def cell(n: int, kappa: float):
        if method == "even-moment":
            return chebyshev_bounds.even_moment_endpoint(n, kappa).threshold_t
        sol = solve_extreme_point(n, kappa)
        t3 = third_moment(sol)
        if method == "zelen":
            return chebyshev_bounds.zelen_bound(sol.a, t3, kappa).one_in_n
        return chebyshev_bounds.bhattacharyya_bound(sol.a, t3, kappa).probability

    rows: list[list] = []
    for n in n_list:
        row: list = [n]
        for kappa in kappa_list:
            try:
                row.append(cell(n, kappa))
            except (DomainError, BoundValidityError):
                row.append(INFEASIBLE_MARKER)
        rows.append(row)

    titles = {
        "even-moment": "fourth-moment bound threshold (kappa*N)^(1/4) at probability 1/N",
        "zelen": "Zelen bound expressed as one-in-N at the extreme-point threshold",
        "bhattacharyya": "Bhattacharyya one-sided bound at the extreme-point threshold",
    }
    return OutputDocument(
        title=titles[method],
        columns=["N"] + [f"kurtosis={k:g}" for k in kappa_list],
        rows=rows,
    )


def build_tail_factor(model: str, dof: int | None, horizon: float) -> OutputDocument:
    if model == "student-t" and dof is None:
        raise _UsageError("--model student-t requires --dof")
    if model == "normal" and dof is not None:
        raise _UsageError("--dof applies to --model student-t only")
    query = distributions.TailFactorQuery(horizon_n=horizon, model=model, dof=dof)
    return OutputDocument(
        title="once-in-horizon tail factor",
        columns=["model", "dof", "horizon_n", "probability", "tail_factor"],
        rows=[[model, dof, horizon, query.probability, query.tail_factor()]],
    )


def _verdict_doc(v: validator.ModelVerdict, extra_notes: Sequence[str] = ()) -> OutputDocument:
    safe = v.max_safe_history
    return OutputDocument(
        title="shock model validation",
        columns=["tail_factor", "history_n", "kurtosis", "required_a",
                 "margin", "max_safe_history", "verdict"],
        rows=[[v.tail_factor, v.history_n, v.kappa, v.required_a, v.margin,
               "unbounded" if safe is None else safe,
               "PASS" if v.passed else "FAIL"]],
        notes=list(extra_notes),
    )


def build_validate(args) -> tuple[OutputDocument, int]:
    if args.blr:
        if args.g_inv is None:
            raise _UsageError("--blr requires --g-inv")
        if args.tail_factor is not None:
            raise _UsageError("--tail-factor conflicts with --blr (it is looked up)")
        verdict = validator.validate_blr(args.g_inv, args.kurtosis, args.history)
        years = args.history / args.days_per_year
        notes = [f"BLR tail factor for 1/g = {args.g_inv}, table {distributions.BLR_TABLE_VERSION}",
                 f"history of {args.history} days is {years:.1f} years at "
                 f"{args.days_per_year} days/year"]
    else:
        if args.tail_factor is None:
            raise _UsageError("provide --tail-factor, or --blr with --g-inv")
        verdict = validator.validate_model(args.tail_factor, args.history, args.kurtosis)
        notes = []
    return _verdict_doc(verdict, notes), EXIT_OK if verdict.passed else EXIT_FAIL


def build_empirical(path: str, tail_factor: float) -> tuple[OutputDocument, int]:
    values = read_return_csv(path)
    result = validator.empirical_validate(values, tail_factor)
    s, v = result.series, result.verdict
    doc = OutputDocument(
        title="empirical tail-factor validation",
        columns=["n", "mean", "sigma", "kurtosis", "max_abs_dev_sigmas",
                 "tail_factor", "required_a", "margin", "historical_breach",
                 "kurtosis_infeasible", "verdict"],
        rows=[[s.n, s.mean, s.sigma, s.kurtosis, s.max_abs_deviation_in_sigmas,
               v.tail_factor, v.required_a, v.margin,
               str(result.historical_breach), str(result.kurtosis_infeasible),
               "PASS" if result.passed else "FAIL"]],
        notes=(["observed kurtosis outside the feasible range; Samuelson "
                "fallback threshold sqrt(n-1) applied"]
               if result.kurtosis_infeasible else []),
    )
    return doc, EXIT_OK if result.passed else EXIT_FAIL


def build_appendix(base_sizes: Sequence[int], kappa: float) -> OutputDocument:
    rows = [
        [r.base_m, r.samuelson, r.bimodal, r.trimodal, r.two_thirds, r.uniform]
        for r in appendix_search.comparison_table(base_sizes, kappa)
    ]
    return OutputDocument(
        title=f"outlier deviation by base shape at kurtosis {kappa:g}",
        columns=["N-1", "sqrt(N-1)", "bimodal", "trimodal", "two_thirds", "uniform"],
        rows=rows,
        notes=["each row grafts one outlier onto an (N-1)-point base; "
               "sqrt(N-1) is the kurtosis-free ceiling for the N-point dataset"],
    )


# ---------------------------------------------------------------------------
# CSV ingestion
# ---------------------------------------------------------------------------


class CsvFormatError(TailboundError, ValueError):
    """Line-numbered CSV parse failure."""


def _parse_number(text: str, lineno: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise CsvFormatError(f"line {lineno}: cannot parse value {text!r}") from None
    if not math.isfinite(value):
        raise CsvFormatError(f"line {lineno}: non-finite value {text!r}")
    return value


def read_return_csv(path: str) -> list[float]:
    """Read observations per the CSV contract in the module docstring.

    Raises:
        CsvFormatError: malformed content, with the offending line number.
        OSError: unreadable file.
    """
    values: list[float] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        first_record_seen = False
        for lineno, fields in enumerate(reader, start=1):
            if not fields or all(not f.strip() for f in fields):
                continue
            fields = [f.strip() for f in fields]
            if len(fields) > 2:
                raise CsvFormatError(
                    f"line {lineno}: expected `value` or `date,value`, "
                    f"got {len(fields)} fields"
                )
            if not first_record_seen:
                first_record_seen = True
                try:
                    float(fields[-1])
                except ValueError:
                    continue  # header line
            values.append(_parse_number(fields[-1], lineno))
    return values


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


class _UsageError(TailboundError, ValueError):
    pass


def _emit(doc: OutputDocument, args) -> None:
    text = doc.render(args.format, args.precision)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "shock-table":
            doc = build_shock_table(args.n, args.kurtosis)
            code = EXIT_INFEASIBLE if doc.has_marker() else EXIT_OK
        elif args.command == "bounds":
            doc = build_bounds_table(args.method, args.n, args.kurtosis)
            code = EXIT_INFEASIBLE if doc.has_marker() else EXIT_OK
        elif args.command == "tail-factor":
            if args.model == "student-t" and args.dof is not None and args.dof <= 2:
                print(f"warning: student-t with dof={args.dof} has infinite "
                      "variance; the raw quantile is still reported",
                      file=sys.stderr)
            doc = build_tail_factor(args.model, args.dof, args.horizon)
            code = EXIT_OK
        elif args.command == "validate":
            doc, code = build_validate(args)
        elif args.command == "empirical":
            doc, code = build_empirical(args.file, args.tail_factor)
        else:  # appendix
            doc = build_appendix(args.n, args.kappa)
            code = EXIT_OK
        _emit(doc, args)
    except (_UsageError, CsvFormatError) as exc:
        print(f"tailbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"tailbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleKurtosisError as exc:
        print(f"tailbound: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DegenerateDataError, TableLookupError, DomainError, SearchError) as exc:
        print(f"tailbound: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE

    return code


if __name__ == "__main__":
    sys.exit(main())
