"""Command line front end: series computation, verification, evaluation.

Commands
--------
series      compute one statistic's expansion and print it (text/latex/json)
verify      run the registered reference checks, exit non-zero on hard failure
eval        evaluate a statistic numerically in several regimes and compare
conjecture  run the conjectured-pattern validators and print a report

Exit codes: 0 success, 1 hard verification failure, 2 usage or input error.
Timing goes to stderr so stdout stays byte-for-byte deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .algebra import (
    PoleError,
    RationalFunction,
    TruncatedSeries,
    VAR_GAMMA,
    VAR_INV_GAMMA,
    VAR_INV_M,
)
from .partitions import Partition
from .reference import all_checks
from .stats import (
    RegimeRequest,
    StatisticRequest,
    compute_statistic,
    validate_conjectures,
)

SCHEMA_VERSION = 1

_REGIME_TOKENS = {"inv-m": VAR_INV_M, "gamma": VAR_GAMMA, "inv-gamma": VAR_INV_GAMMA}
_REGIME_NAMES = {v: k for k, v in _REGIME_TOKENS.items()}

_POWER_LABEL = {
    VAR_INV_M: lambda p: f"(1/M)^{p}",
    VAR_GAMMA: lambda p: f"g^{p}",
    VAR_INV_GAMMA: lambda p: f"(1/g)^{p}",
}


class UsageError(Exception):
    pass


def _partition_arg(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}")


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}")


def load_config(path: str | None) -> dict[str, int]:
    """Plain key=value configuration: max-order, jobs."""
    config = {"max-order": 64, "jobs": 1}
    if path is None:
        return config
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in config:
                    raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
                try:
                    config[key] = int(value.strip())
                except ValueError:
                    raise UsageError(f"{path}:{lineno}: {key} needs an integer")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    return config


def _add_statistic_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--schur", type=_partition_arg, metavar="PARTITION",
                       help="Schur moment of the time-delay operator")
    group.add_argument("--trace-powers", type=_partition_arg, metavar="PARTITION",
                       help="moment of the product of traces Tr(Q^part_i)")
    group.add_argument("--wigner-moment", type=int, metavar="N",
                       help="n-th moment of the normalized time delay")
    group.add_argument("--cumulant", type=int, metavar="N",
                       help="n-th cumulant of the normalized time delay")
    group.add_argument("--variance", action="store_true",
                       help="variance of the normalized time delay")


def _statistic_request(args, regime: str, order: int) -> StatisticRequest:
    req = RegimeRequest(regime, order)
    if args.schur is not None:
        if not args.schur:
            raise UsageError("the Schur moment needs a non-empty partition")
        return StatisticRequest("schur_q", req, partition=args.schur)
    if args.trace_powers is not None:
        if not args.trace_powers:
            raise UsageError("trace powers need a non-empty partition")
        return StatisticRequest("power_sum", req, partition=args.trace_powers)
    if args.wigner_moment is not None:
        if args.wigner_moment < 1:
            raise UsageError("the moment index must be at least 1")
        return StatisticRequest("wigner_moment", req, n=args.wigner_moment)
    if args.cumulant is not None:
        if args.cumulant < 1:
            raise UsageError("the cumulant index must be at least 1")
        return StatisticRequest("cumulant", req, n=args.cumulant)
    return StatisticRequest("variance", req)


def _request_label(sreq: StatisticRequest) -> dict:
    kind = {"schur_q": "schur", "power_sum": "trace-powers",
            "wigner_moment": "wigner-moment", "cumulant": "cumulant",
            "variance": "variance"}[sreq.kind]
    return {
        "kind": kind,
        "partition": str(sreq.partition) if sreq.partition is not None else None,
        "n": sreq.n,
        "regime": _REGIME_NAMES[sreq.request.regime],
        "order": sreq.request.order,
    }


def _coeff_payload(coeff: RationalFunction) -> dict:
    num, den = coeff.integer_form()
    return {
        "num": [str(c) for c in num],
        "den": [str(c) for c in den],
        "symbol": coeff.symbol,
        "factored": str(coeff),
    }


def document_for_series(sreq: StatisticRequest, series: TruncatedSeries) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "request": _request_label(sreq),
        "terms": [{"power": p, "coeff": _coeff_payload(c)}
                  for p, c in series.terms()],
        "guarantee_order": series.order,
    }


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def document_from_json(text: str) -> dict:
    """Parse an emitted document back into its canonical dict form."""
    raw = json.loads(text)
    return {
        "schema_version": int(raw["schema_version"]),
        "request": {
            "kind": raw["request"]["kind"],
            "partition": raw["request"]["partition"],
            "n": raw["request"]["n"],
            "regime": raw["request"]["regime"],
            "order": int(raw["request"]["order"]),
        },
        "terms": [{"power": int(t["power"]),
                   "coeff": {"num": [str(c) for c in t["coeff"]["num"]],
                             "den": [str(c) for c in t["coeff"]["den"]],
                             "symbol": t["coeff"]["symbol"],
                             "factored": t["coeff"]["factored"]}}
                  for t in raw["terms"]],
        "guarantee_order": int(raw["guarantee_order"]),
    }


def _statistic_title(sreq: StatisticRequest) -> str:
    if sreq.kind == "schur_q":
        return f"Schur moment, shape {sreq.partition}"
    if sreq.kind == "power_sum":
        return f"trace-power moment, exponents {sreq.partition}"
    if sreq.kind == "wigner_moment":
        return f"Wigner time delay moment, n={sreq.n}"
    if sreq.kind == "cumulant":
        return f"Wigner time delay cumulant, n={sreq.n}"
    return "Wigner time delay variance"


def render_text(sreq: StatisticRequest, series: TruncatedSeries) -> str:
    label = _POWER_LABEL[series.variable]
    lines = [
        f"statistic: {_statistic_title(sreq)}",
        f"regime: {_REGIME_NAMES[series.variable]}   "
        f"guaranteed order: {series.order}   coefficients in: {series.coefficient_symbol}",
    ]
    terms = series.terms()
    if not terms:
        lines.append("  (no non-zero coefficients up to the guaranteed order)")
    for p, c in terms:
        lines.append(f"  {label(p)}: {c}")
    return "\n".join(lines) + "\n"


def _latex_power(variable: str, p: int) -> str:
    if variable == VAR_GAMMA:
        if p == 0:
            return ""
        return r"\gamma" if p == 1 else rf"\gamma^{{{p}}}"
    symbol = "M" if variable == VAR_INV_M else r"\gamma"
    if p == 0:
        return ""
    if p < 0:
        return symbol if p == -1 else rf"{symbol}^{{{-p}}}"
    inner = symbol if p == 1 else rf"{symbol}^{{{p}}}"
    return rf"\frac{{1}}{{{inner}}}"


def render_latex(sreq: StatisticRequest, series: TruncatedSeries) -> str:
    body = ""
    for p, c in series.terms():
        coeff = c.latex()
        negative = coeff.startswith("-")
        if negative:
            coeff = coeff[1:]
        if coeff == "1" and p != 0:
            coeff = ""
        power = _latex_power(series.variable, p)
        piece = coeff if not power else (rf"{coeff}\,{power}" if coeff else power)
        if not body:
            body = ("-" if negative else "") + piece
        else:
            body += (" - " if negative else " + ") + piece
    tail_symbol = {VAR_INV_M: "M^{-%d}" % (series.order + 1),
                   VAR_GAMMA: r"\gamma^{%d}" % (series.order + 1),
                   VAR_INV_GAMMA: r"\gamma^{-%d}" % (series.order + 1)}[series.variable]
    if not body:
        body = "0"
    return f"{body} + O({tail_symbol})\n"


def cmd_series(args) -> int:
    config = load_config(args.config)
    if args.order < 0:
        raise UsageError("order must be non-negative")
    if args.order > config["max-order"]:
        raise UsageError(
            f"order {args.order} exceeds the configured cap {config['max-order']}")
    sreq = _statistic_request(args, _REGIME_TOKENS[args.regime], args.order)
    start = time.perf_counter()
    series = compute_statistic(sreq)
    elapsed = time.perf_counter() - start
    if args.format == "json":
        output = render_json(document_for_series(sreq, series))
    elif args.format == "latex":
        output = render_latex(sreq, series)
    else:
        output = render_text(sreq, series)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    print(f"# computed in {elapsed:.3f}s", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    config = load_config(args.config)
    checks = all_checks(args.scope, conjecture_max_n=args.n_max)
    jobs = max(args.jobs or config["jobs"], 1)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda c: c.execute(), checks))
    else:
        results = [c.execute() for c in checks]
    hard_failures = 0
    soft_failures = 0
    for res in results:
        print(res.line())
        if not res.passed:
            if res.hard:
                hard_failures += 1
            else:
                soft_failures += 1
    print(f"summary: {len(results)} checks, {hard_failures} hard failures, "
          f"{soft_failures} soft findings")
    if args.json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "scope": args.scope,
            "strict": bool(args.strict),
            "results": [{"key": r.key, "scope": r.scope, "hard": r.hard,
                         "passed": r.passed, "detail": r.detail}
                        for r in results],
        }
        sys.stdout.write(render_json(payload))
    if hard_failures or (args.strict and soft_failures):
        return 1
    return 0


def _first_omitted(series_hi: TruncatedSeries, order_lo: int,
                   m_value: Fraction, gamma_value: Fraction) -> Fraction | None:
    """Magnitude of the first non-zero term beyond order_lo, from a series
    computed at a higher order."""
    x = {VAR_INV_M: 1 / m_value, VAR_GAMMA: gamma_value,
         VAR_INV_GAMMA: 1 / gamma_value}[series_hi.variable]
    for p in range(order_lo + 1, series_hi.order + 1):
        c = series_hi.coefficient(p)
        if not c.is_zero:
            return abs(c.evaluate(m_value)) * abs(x) ** p
    return None


def cmd_eval(args) -> int:
    load_config(args.config)
    orders = {VAR_INV_M: args.order_inv_m, VAR_GAMMA: args.order_gamma,
              VAR_INV_GAMMA: args.order_inv_gamma}
    requested = {regime: order for regime, order in orders.items()
                 if order is not None}
    if not requested:
        raise UsageError("give at least one of --order-inv-m / --order-gamma "
                         "/ --order-inv-gamma")
    if args.gamma_value <= 0:
        raise UsageError("the absorption strength must be positive")
    values: dict[str, Fraction] = {}
    omitted: dict[str, Fraction | None] = {}
    for regime, order in requested.items():
        sreq = _statistic_request(args, regime, order)
        probe = _statistic_request(args, regime, order + 2)
        series = compute_statistic(sreq)
        series_hi = compute_statistic(probe)
        values[regime] = series.evaluate(args.m_value, args.gamma_value)
        omitted[regime] = _first_omitted(series_hi, order,
                                         args.m_value, args.gamma_value)
    print(f"point: M = {args.m_value}, absorption strength = {args.gamma_value}")
    for regime in requested:
        v = values[regime]
        est = omitted[regime]
        est_text = f"{float(est):.6e}" if est is not None else "0 (exhausted)"
        print(f"  {_REGIME_NAMES[regime]:9s} order {requested[regime]:3d}: "
              f"{float(v):.12e}  (exact {v};  first omitted term ~ {est_text})")
    regimes = list(requested)
    for i in range(len(regimes)):
        for j in range(i + 1, len(regimes)):
            a, b = regimes[i], regimes[j]
            diff = abs(values[a] - values[b])
            print(f"  |{_REGIME_NAMES[a]} - {_REGIME_NAMES[b]}| = {float(diff):.6e}")
    return 0


def cmd_conjecture(args) -> int:
    report = validate_conjectures(args.n_max, args.order)
    for line in report.lines():
        print(line)
    sys.stdout.write(render_json({"schema_version": SCHEMA_VERSION,
                                  **report.to_dict()}))
    if args.strict and not report.all_passed:
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delaymoments",
        description="Exact asymptotic series for time-delay statistics of "
                    "absorbing chaotic cavities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_series = sub.add_parser("series", help="compute one statistic's expansion")
    _add_statistic_flags(p_series)
    p_series.add_argument("--regime", required=True, choices=sorted(_REGIME_TOKENS))
    p_series.add_argument("--order", required=True, type=int)
    p_series.add_argument("--format", choices=("text", "latex", "json"),
                          default="text")
    p_series.add_argument("--out", metavar="FILE")
    p_series.add_argument("--config", metavar="FILE")
    p_series.set_defaults(func=cmd_series)

    p_verify = sub.add_parser("verify", help="run the reference checks")
    p_verify.add_argument("--scope", default="all",
                          choices=("all", "intro", "section3", "section4",
                                   "section5", "conjectures"))
    p_verify.add_argument("--strict", action="store_true",
                          help="soft findings also fail the run")
    p_verify.add_argument("--n-max", type=int, default=4,
                          help="conjecture checks cover n up to this value")
    p_verify.add_argument("--jobs", type=int, default=None)
    p_verify.add_argument("--json", action="store_true",
                          help="append a machine-readable result block")
    p_verify.add_argument("--config", metavar="FILE")
    p_verify.set_defaults(func=cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate a statistic numerically")
    _add_statistic_flags(p_eval)
    p_eval.add_argument("--m-value", required=True, type=_rational_arg)
    p_eval.add_argument("--gamma-value", required=True, type=_rational_arg)
    p_eval.add_argument("--order-inv-m", type=int)
    p_eval.add_argument("--order-gamma", type=int)
    p_eval.add_argument("--order-inv-gamma", type=int)
    p_eval.add_argument("--config", metavar="FILE")
    p_eval.set_defaults(func=cmd_eval)

    p_conj = sub.add_parser("conjecture", help="validate the conjectured patterns")
    p_conj.add_argument("--n-max", type=int, default=4)
    p_conj.add_argument("--order", type=int, default=0,
                        help="extra guaranteed powers beyond each stated window")
    p_conj.add_argument("--strict", action="store_true")
    p_conj.set_defaults(func=cmd_conjecture)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
