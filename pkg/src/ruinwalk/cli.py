"""Command-line front end.

Subcommands: finite, ultimate, classify, simulate, conjecture,
verify-paper. Tables render as markdown (default), csv, or tsv; cell
rounding is presentation-only and --raw switches to full-precision
values. Exit codes: 0 success, 1 usage, 2 validation, 3 numerical
failure, 4 verification mismatch.

Identical invocations (flags, seed, environment) produce byte-identical
output: every code path below is deterministic and all iteration orders
are fixed.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from decimal import ROUND_HALF_UP, Decimal

from .conjectures import determinant_trace
from .errors import InvalidModelError, NumericalError, PrecisionError
from .finite import mc_estimate, survival_finite
from .model import CaseKind, ModelSpec, classify, net_profit_margin
from .pmf import parse_pmf_spec
from .reference_tables import ALL_TABLES, verify_table
from .ultimate import survival_ultimate

ENV_PRECISION = "RUINWALK_PRECISION_BITS"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the contract reserves 2
    # for validation errors, so usage problems are rerouted to exit 1
    def error(self, message):
        raise _UsageError(message)


# ---- rendering ----


def _fmt_prob(value: float, digits: int, raw: bool) -> str:
    """Presentation rounding: half away from zero, trailing zeros trimmed
    (so exact 0 and 1 print bare). Raw mode emits repr unclamped."""
    v = float(value)
    if raw:
        return repr(v)
    v = min(1.0, max(0.0, v))
    q = Decimal(repr(v)).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_UP)
    s = format(q, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s if s else "0"


def _emit_table(header: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if fmt == "tsv":
        lines = ["\t".join(header)] + ["\t".join(r) for r in rows]
        return "\n".join(lines)
    widths = [len(h) for h in header]
    for r in rows:
        for i, cell in enumerate(r):
            widths[i] = max(widths[i], len(cell))
    def line(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    out = [line(header), "| " + " | ".join("-" * w for w in widths) + " |"]
    out.extend(line(r) for r in rows)
    return "\n".join(out)


def _note(text: str, fmt: str) -> str:
    return f"# {text}" if fmt in ("csv", "tsv") else text


def _case_str(tag) -> str:
    if tag.kind == CaseKind.NO_NET_PROFIT:
        base = "no-net-profit"
    else:
        base = tag.kind.name
    return f"{base} {tag.scenario}" if tag.scenario else base


# ---- argument plumbing ----


def _parse_span(text: str, flag: str, minimum: int) -> tuple[int, int]:
    t = text.strip()
    if ".." in t:
        a, _, b = t.partition("..")
    else:
        a = b = t
    try:
        lo, hi = int(a), int(b)
    except ValueError:
        raise InvalidModelError(f"{flag} expects 'a..b' or a single integer, got {text!r}") from None
    if lo > hi:
        raise InvalidModelError(f"{flag} span is empty: {text!r}")
    if lo < minimum:
        raise InvalidModelError(f"{flag} values must be >= {minimum}")
    return lo, hi


def _resolve_bits(ns) -> int | None:
    if ns.precision_bits is not None:
        bits = ns.precision_bits
    else:
        raw = os.environ.get(ENV_PRECISION)
        if raw is None:
            return None
        try:
            bits = int(raw)
        except ValueError:
            raise InvalidModelError(f"{ENV_PRECISION} must be an integer, got {raw!r}") from None
    if bits < 64:
        raise InvalidModelError("precision must be at least 64 bits")
    return bits


def _model_from(ns) -> ModelSpec:
    return ModelSpec(
        x=parse_pmf_spec(ns.x, tail_tol=ns.tail_tol),
        y=parse_pmf_spec(ns.y, tail_tol=ns.tail_tol),
    )


def _build_parser() -> _Parser:
    parser = _Parser(prog="ruinwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "tsv", "markdown"), default="markdown")
    common.add_argument("--digits", type=int, default=3, help="presentation rounding (default 3)")
    common.add_argument("--raw", action="store_true", help="emit full-precision values")
    common.add_argument("--tail-tol", type=float, default=1e-12,
                        help="truncation tail mass for dpois specs")
    common.add_argument("--precision-bits", type=int, default=None,
                        help=f"working precision (default 256 or ${ENV_PRECISION})")

    model_args = argparse.ArgumentParser(add_help=False)
    model_args.add_argument("--x", required=True, help="odd-period claim PMF spec")
    model_args.add_argument("--y", required=True, help="even-period claim PMF spec")

    p = sub.add_parser("finite", parents=[common, model_args],
                       help="grid of finite-horizon survival probabilities")
    p.add_argument("--u", required=True, help="initial surplus span a..b")
    p.add_argument("--t", required=True, help="horizon span a..b")
    p.set_defaults(func=_cmd_finite)

    p = sub.add_parser("ultimate", parents=[common, model_args],
                       help="ultimate survival row plus solve diagnostics")
    p.add_argument("--u-max", required=True, type=int)
    p.add_argument("--n-solve", type=int, default=150)
    p.set_defaults(func=_cmd_ultimate)

    p = sub.add_parser("classify", parents=[common, model_args],
                       help="case tag and net profit margin")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("simulate", parents=[common, model_args],
                       help="Monte Carlo estimate of finite-horizon survival")
    p.add_argument("--u", required=True, type=int)
    p.add_argument("--t", required=True, type=int)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("conjecture", parents=[common, model_args],
                       help="determinant trace and chain-violation report")
    p.add_argument("--which", required=True, type=int, choices=(1, 2))
    p.add_argument("--n-max", type=int, default=100)
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("verify-paper", parents=[common],
                       help="recompute the bundled reference tables and compare")
    p.add_argument("--table", choices=("1", "2", "3", "4", "5", "all"), default="all")
    p.set_defaults(func=_cmd_verify)

    return parser


# ---- subcommands ----


def _cmd_finite(ns) -> int:
    u_lo, u_hi = _parse_span(ns.u, "--u", 0)
    t_lo, t_hi = _parse_span(ns.t, "--t", 1)
    model = _model_from(ns)
    grid = survival_finite(model, u_max=u_hi, t_max=t_hi)
    us = list(range(u_lo, u_hi + 1))
    header = ["T\\u"] + [str(u) for u in us]
    rows = [
        [str(t)] + [_fmt_prob(grid.value(u, t), ns.digits, ns.raw) for u in us]
        for t in range(t_lo, t_hi + 1)
    ]
    print(_emit_table(header, rows, ns.format))
    print(_note(f"error_bound: {grid.error_bound:.3e}", ns.format))
    return 0


def _cmd_ultimate(ns) -> int:
    if ns.u_max < 0:
        raise InvalidModelError("--u-max must be >= 0")
    model = _model_from(ns)
    result = survival_ultimate(
        model, u_max=ns.u_max, n_solve=ns.n_solve, precision_bits=_resolve_bits(ns)
    )
    us = list(range(ns.u_max + 1))
    header = ["T\\u"] + [str(u) for u in us]
    rows = [["inf"] + [_fmt_prob(result.phi[u], ns.digits, ns.raw) for u in us]]
    print(_emit_table(header, rows, ns.format))
    det = "none" if result.determinant is None else f"{result.determinant:.6e}"
    bits = "none" if result.precision_bits is None else str(result.precision_bits)
    for text in (
        f"case: {_case_str(result.case)}",
        f"margin: {result.margin:.12g}",
        f"n_solve: {result.n_solve}",
        f"precision_bits: {bits}",
        f"determinant: {det}",
        f"initials_delta: {result.initials_delta:.3e}",
        f"residual_master: {result.residual_master:.3e}",
        f"residual_constraint: {result.residual_constraint:.3e}",
    ):
        print(_note(text, ns.format))
    return 0


def _cmd_classify(ns) -> int:
    model = _model_from(ns)
    tag = classify(model)
    print(f"case: {_case_str(tag)}")
    print(f"scenario: {tag.scenario if tag.scenario else '-'}")
    atom = tag.min_s_atom
    print(f"min_s_atom: {atom if atom is not None else '-'}")
    step = tag.degenerate_step
    print(f"degenerate_step: {step if step is not None else '-'}")
    print(f"mean_s: {model.mean_s:.12g}")
    print(f"margin: {net_profit_margin(model):.12g}")
    return 0


def _cmd_simulate(ns) -> int:
    if ns.u < 0:
        raise InvalidModelError("--u must be >= 0")
    if ns.t < 1:
        raise InvalidModelError("--t must be >= 1")
    if ns.trials < 1:
        raise InvalidModelError("--trials must be >= 1")
    model = _model_from(ns)
    est = mc_estimate(model, u=ns.u, t=ns.t, trials=ns.trials, seed=ns.seed)
    print(f"u: {ns.u}")
    print(f"horizon: {ns.t}")
    print(f"trials: {est.trials}")
    print(f"seed: {est.seed}")
    print(f"estimate: {est.estimate!r}")
    print(f"stderr: {est.stderr!r}")
    return 0


def _cmd_conjecture(ns) -> int:
    model = _model_from(ns)
    trace = determinant_trace(
        model, which=ns.which, n_max=ns.n_max, precision_bits=_resolve_bits(ns)
    )
    header = ["n", "D_n"]
    rows = [
        [str(n), repr(float(v)) if ns.raw else f"{v:.6e}"]
        for n, v in enumerate(trace.values)
    ]
    print(_emit_table(header, rows, ns.format))
    for text in (
        f"min_abs: {trace.min_abs:.6e}",
        f"abs_monotone: {'yes' if trace.abs_monotone else 'no'}",
        f"zero_count: {len(trace.zero_indices)}",
        f"precision_bits: {trace.precision_bits}",
        f"violations: {len(trace.violations)}",
    ):
        print(_note(text, ns.format))
    for n, desc in trace.violations:
        where = f"n={n}" if n >= 0 else "global"
        print(_note(f"violation {where}: {desc}", ns.format))
    return 0


def _cmd_verify(ns) -> int:
    chosen = ALL_TABLES if ns.table == "all" else (ALL_TABLES[int(ns.table) - 1],)
    any_fail = False
    blocks = []
    for table in chosen:
        report = verify_table(table)
        by_cell = {(c.horizon, c.u): c.status for c in report.checks}
        status_text = {"ok": "ok", "flag": "flag", "fail": "FAIL"}
        header = ["T\\u"] + [str(u) for u in table.u_values]
        rows = [
            [str(t)] + [status_text[by_cell[(t, u)]] for u in table.u_values]
            for t in sorted(table.finite_rows)
        ]
        if table.ultimate_row is not None:
            rows.append(["inf"] + [status_text[by_cell[(None, u)]] for u in table.u_values])
        lines = [
            _note(f"{table.name}: x={table.x_spec} y={table.y_spec}", ns.format),
            _emit_table(header, rows, ns.format),
            _note(
                f"{table.name}: {report.n_ok} ok, {report.n_flag} flagged, {report.n_fail} failed",
                ns.format,
            ),
        ]
        blocks.append("\n".join(lines))
        any_fail = any_fail or not report.passed
    print("\n\n".join(blocks))
    print(_note(f"result: {'mismatch' if any_fail else 'ok'}", ns.format))
    return 4 if any_fail else 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return ns.func(ns)
    except (NumericalError, PrecisionError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
