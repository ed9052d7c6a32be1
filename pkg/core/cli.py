#!/usr/bin/env python3
"""
Command line front end: python3 -m core.cli <command> [options]

Commands: h3, h2, verify, sweep, field. Reports go to stdout (JSON by
default, rich tables with --format text); status lines and logs go to
stderr.

Exit codes: 0 success, 1 verification negative, 2 input error,
3 cross-check failure.
"""

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from rich.console import Console

from core import linalg
from core.cocycles import (
    enumerate_I,
    enumerate_I_d,
    enumerate_J2,
    is_admissible,
    parse_spec,
    realize,
)
from core.complex import ComplexCtx, delta, h_dim_by_degree
from core.config import catalog_entry, load_config
from core.errors import CohomologyError
from core.gf import (
    FieldElement,
    FieldSpec,
    all_elements,
    element_order,
    format_element,
    make_field,
    make_omega,
    prime_field,
)
from core.log import get_logger, setup_logging
from core.oracle import cross_check_h2, cross_check_h3
from core.polyring import format_polynomial, in_Cn_q
from core.report import RunReport, field_info, render_text

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_CROSS_CHECK = 3

# options whose values may start with '-'
_VALUE_OPTIONS = ("--modulus", "--omega")


class InputError(Exception):
    """Bad command line input that is not a library error"""


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    """Turn '--modulus -1,1,1' into '--modulus=-1,1,1' so argparse keeps the value"""
    out: List[str] = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _add_field_args(parser: argparse.ArgumentParser, omega: bool = True) -> None:
    group = parser.add_argument_group("field")
    group.add_argument("--p", type=int, help="characteristic")
    group.add_argument("--modulus", help="monic modulus coefficients, constant term first: c0,c1,...")
    group.add_argument("--prime", action="store_true", help="use F_p itself")
    group.add_argument("--q", help="catalog field key (4, 8, 9, 9b, 16, ...)")
    if omega:
        group.add_argument("--omega", help="quandle parameter, e.g. g, g+1, 2 (default g, or -1 for F_p)")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Configuration file path")
    common.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ...)")
    common.add_argument("--format", choices=["json", "text"], help="Report format")
    common.add_argument("--out", help="Write the report to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="qcoh",
        description="Third quandle cohomology of Alexander quandles F_q[T]/(T-w)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    h3 = sub.add_parser("h3", parents=[common], help="basis I(q) of H^3")
    _add_field_args(h3)
    h3.add_argument("--basis", action="store_true", help="list the basis specs")
    h3.add_argument("--expand", action="store_true", help="print each basis polynomial")
    h3.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    h3.add_argument("--by-degree", action="store_true", help="per total degree table")

    h2 = sub.add_parser("h2", parents=[common], help="basis of H^2")
    _add_field_args(h2)
    h2.add_argument("--basis", action="store_true", help="list the basis specs")
    h2.add_argument("--expand", action="store_true", help="print each basis polynomial")
    h2.add_argument("--oracle", action="store_true", help="cross-check against brute force")

    verify = sub.add_parser("verify", parents=[common], help="realize a cochain and test delta = 0")
    _add_field_args(verify)
    verify.add_argument("spec", help="cochain spec, e.g. 'Gamma(1,1,3,3)' or 'Lambda(2)'")

    sweep = sub.add_parser("sweep", parents=[common], help="h2/h3 cross-check over catalog fields and all omega")
    sweep.add_argument("--fields", help="comma separated catalog keys (default from config)")
    sweep.add_argument("--jobs", type=int, help="worker processes")

    field = sub.add_parser("field", parents=[common], help="describe a field and element orders")
    _add_field_args(field)
    return parser


def _parse_modulus(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputError(f"cannot parse modulus {text!r}")


def resolve_field(args: argparse.Namespace, config: Dict[str, Any]) -> FieldSpec:
    """--q catalog key, --p with --prime, or --p with --modulus"""
    if args.q is not None:
        try:
            entry = catalog_entry(config, args.q)
        except KeyError as e:
            raise InputError(str(e.args[0]))
        return make_field(int(entry["p"]), entry["modulus"])
    if args.p is None:
        raise InputError("give --q, or --p with --modulus or --prime")
    if args.prime:
        return prime_field(args.p)
    if args.modulus is None:
        raise InputError("--p needs --modulus or --prime")
    return make_field(args.p, _parse_modulus(args.modulus))


def resolve_context(args: argparse.Namespace, config: Dict[str, Any]) -> ComplexCtx:
    spec = resolve_field(args, config)
    text = args.omega
    if text is None:
        text = "g" if spec.m > 1 else "-1"
    return ComplexCtx(spec, make_omega(spec, text))


def _sweep_cell(p: int, modulus: Tuple[int, ...], omega_code: int, key: str) -> Dict[str, Any]:
    """One (field, omega) row of the sweep; module level so worker processes can run it"""
    spec = make_field(p, modulus)
    ctx = ComplexCtx(spec, make_omega(spec, FieldElement(spec, omega_code)))
    h2 = cross_check_h2(ctx)
    h3 = cross_check_h3(ctx)
    return {
        "q": key,
        "omega": str(ctx.omega),
        "order": ctx.omega.order,
        "h2": h2.basis_size,
        "h2_oracle": h2.oracle_dim,
        "h3": h3.basis_size,
        "h3_oracle": h3.oracle_dim,
        "agree": h2.agree and h3.agree,
    }


class CohomologyCLI:
    """Dispatches parsed arguments to the _cmd_* handlers"""

    def __init__(self, config: Dict[str, Any], status: Console):
        self.config = config
        self.status = status
        self.theme = config.get("theme", {})

    def print_colored(self, text: str, color_key: str = "info") -> None:
        self.status.print(text, style=self.theme.get(color_key))

    def handle(self, args: argparse.Namespace) -> Tuple[RunReport, int]:
        handlers = {
            "h3": self._cmd_h3,
            "h2": self._cmd_h2,
            "verify": self._cmd_verify,
            "sweep": self._cmd_sweep,
            "field": self._cmd_field,
        }
        start = time.perf_counter()
        report, code = handlers[args.command](args)
        report.timing_ms = round(1000 * (time.perf_counter() - start), 3)
        return report, code

    def _cmd_h3(self, args: argparse.Namespace) -> Tuple[RunReport, int]:
        ctx = resolve_context(args, self.config)
        report = RunReport.for_context("h3", ctx)
        specs = enumerate_I(ctx)
        report.result["dim"] = len(specs)
        if args.basis or args.expand:
            report.result["basis"] = [str(s) for s in specs]
        if args.expand:
            report.result["polynomials"] = {str(s): format_polynomial(realize(ctx, s)) for s in specs}
        if args.by_degree:
            rows = []
            for d, dim in sorted(h_dim_by_degree(ctx, 3).items()):
                size = len(enumerate_I_d(ctx, None, d))
                if dim or size:
                    rows.append({"d": d, "basis": size, "h3": dim})
            report.result["by_degree"] = rows
        return self._with_oracle(report, args, lambda: cross_check_h3(ctx))

    def _cmd_h2(self, args: argparse.Namespace) -> Tuple[RunReport, int]:
        ctx = resolve_context(args, self.config)
        report = RunReport.for_context("h2", ctx)
        specs = enumerate_J2(ctx)
        report.result["dim"] = len(specs)
        if args.basis or args.expand:
            report.result["basis"] = [str(s) for s in specs]
        if args.expand:
            report.result["polynomials"] = {str(s): format_polynomial(realize(ctx, s)) for s in specs}
        return self._with_oracle(report, args, lambda: cross_check_h2(ctx))

    def _with_oracle(self, report: RunReport, args: argparse.Namespace, run) -> Tuple[RunReport, int]:
        if not args.oracle:
            return report, EXIT_OK
        check = run()
        report.oracle = check.to_dict()
        report.agree = check.agree
        if not check.agree:
            self.print_colored(f"cross-check failed: {check.to_dict()}", "error")
            return report, EXIT_CROSS_CHECK
        self.print_colored(f"oracle agrees: dim H^{check.degree} = {check.oracle_dim}", "success")
        return report, EXIT_OK

    def _cmd_verify(self, args: argparse.Namespace) -> Tuple[RunReport, int]:
        ctx = resolve_context(args, self.config)
        spec = parse_spec(args.spec)
        poly = realize(ctx, spec)
        image = delta(ctx, poly)
        report = RunReport.for_context("verify", ctx)
        report.result = {
            "spec": str(spec),
            "polynomial": format_polynomial(poly),
            "in_Cn_q": in_Cn_q(poly, ctx.q),
            "admissible": is_admissible(ctx, spec),
            "cocycle": image.is_zero(),
            "delta": format_polynomial(image),
        }
        if image.is_zero():
            self.print_colored(f"{spec} is a cocycle", "success")
            return report, EXIT_OK
        self.print_colored(f"{spec} is not a cocycle", "warning")
        return report, EXIT_NEGATIVE

    def _cmd_sweep(self, args: argparse.Namespace) -> Tuple[RunReport, int]:
        sweep_cfg = self.config.get("sweep", {})
        if args.fields is not None:
            keys = [k for k in args.fields.replace(" ", "").split(",") if k]
        else:
            keys = [str(k) for k in sweep_cfg.get("fields", [])]
        jobs = args.jobs if args.jobs is not None else int(sweep_cfg.get("jobs", 1))

        cells = []
        for key in keys:
            try:
                entry = catalog_entry(self.config, key)
            except KeyError as e:
                raise InputError(str(e.args[0]))
            spec = make_field(int(entry["p"]), entry["modulus"])
            for w in all_elements(spec):
                if w.code not in (0, 1):
                    cells.append((spec.p, spec.modulus, w.code, key))

        logger.info("sweep: %d cells over %s with %d job(s)", len(cells), keys, jobs)
        if jobs > 1 and len(cells) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(_sweep_cell, *zip(*cells)))
        else:
            rows = [_sweep_cell(*cell) for cell in cells]

        report = RunReport("sweep")
        report.result = {"fields": keys, "rows": rows}
        report.agree = all(row["agree"] for row in rows)
        if not report.agree:
            self.print_colored("sweep found disagreements", "error")
            return report, EXIT_CROSS_CHECK
        self.print_colored(f"sweep: {len(rows)} cells agree", "success")
        return report, EXIT_OK

    def _cmd_field(self, args: argparse.Namespace) -> Tuple[RunReport, int]:
        spec = resolve_field(args, self.config)
        report = RunReport("field", field=field_info(spec))
        if args.omega is not None:
            ctx = ComplexCtx(spec, make_omega(spec, args.omega))
            report.omega = {"value": str(ctx.omega), "order": ctx.omega.order}
            elements = [ctx.omega.value]
        else:
            elements = [a for a in all_elements(spec) if a.code]
        report.result = {
            "q": spec.q,
            "modulus": list(spec.modulus),
            "orders": [{"element": format_element(a), "order": element_order(a)} for a in elements],
        }
        return report, EXIT_OK


def emit(report: RunReport, fmt: str, indent: int, out: Optional[str], theme: Dict[str, str]) -> None:
    if fmt == "text":
        if out:
            with open(out, "w") as f:
                render_text(report, Console(file=f, width=120), theme)
        else:
            render_text(report, Console(file=sys.stdout), theme)
        return
    text = report.to_json(indent=indent)
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(_glue_negative_values(argv))

    config = load_config(args.config)
    setup_logging(args.log_level or config["logging"]["level"])
    linalg.set_dense_column_limit(config["linalg"]["dense_column_limit"])
    status = Console(stderr=True)
    cli = CohomologyCLI(config, status)

    try:
        report, code = cli.handle(args)
    except (CohomologyError, InputError) as e:
        cli.print_colored(f"error: {e}", "error")
        logger.debug("input error", exc_info=True)
        return EXIT_INPUT

    output = config.get("output", {})
    emit(report, args.format or output.get("format", "json"), output.get("indent", 2), args.out, cli.theme)
    return code


if __name__ == "__main__":
    sys.exit(main())
