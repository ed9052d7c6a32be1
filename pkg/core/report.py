"""
Run reports: a key-sorted JSON document or a rich table per command.
"""

import json
from dataclasses import asdict, dataclass, field as dc_field
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.table import Table

from core.complex import ComplexCtx
from core.gf import FieldSpec, format_modulus


def field_info(spec: FieldSpec) -> Dict[str, Any]:
    return {
        "p": spec.p,
        "modulus": list(spec.modulus),
        "q": spec.q,
        "text": str(spec),
        "modulus_text": format_modulus(spec.modulus),
    }


def omega_info(ctx: ComplexCtx) -> Dict[str, Any]:
    return {"value": str(ctx.omega), "order": ctx.omega.order}


@dataclass
class RunReport:
    command: str
    field: Optional[Dict[str, Any]] = None
    omega: Optional[Dict[str, Any]] = None
    result: Dict[str, Any] = dc_field(default_factory=dict)
    oracle: Optional[Dict[str, Any]] = None
    agree: Optional[bool] = None
    timing_ms: float = 0.0

    @classmethod
    def for_context(cls, command: str, ctx: ComplexCtx) -> "RunReport":
        return cls(command=command, field=field_info(ctx.spec), omega=omega_info(ctx))

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ", ".join(str(v) for v in value) if value else "-"
    if value is None:
        return "-"
    return str(value)


def render_text(report: RunReport, console: Console, theme: Optional[Dict[str, str]] = None) -> None:
    """Print a report as rich tables"""
    theme = theme or {}
    title = report.command
    if report.field:
        title += f"  {report.field['text']}"
    if report.omega:
        title += f"  omega = {report.omega['value']} (order {report.omega['order']})"

    rows: List[Dict[str, Any]] = report.result.get("rows", []) if report.command == "sweep" else []
    if rows:
        table = Table(title=title)
        for key in rows[0]:
            table.add_column(key)
        for row in rows:
            style = None if row.get("agree", True) else theme.get("error")
            table.add_row(*(_cell(v) for v in row.values()), style=style)
        console.print(table)
    else:
        table = Table(title=title, show_header=False)
        table.add_column("key", style=theme.get("info"))
        table.add_column("value")
        for key, value in sorted(report.result.items()):
            if isinstance(value, dict):
                for sub_key, sub_value in sorted(value.items()):
                    table.add_row(f"{key}.{sub_key}", _cell(sub_value))
            elif isinstance(value, list) and value and isinstance(value[0], dict):
                for item in value:
                    table.add_row(key, ", ".join(f"{k}={_cell(v)}" for k, v in item.items()))
            else:
                table.add_row(key, _cell(value))
        console.print(table)

    if report.oracle is not None:
        oracle = Table(title="oracle", show_header=False)
        oracle.add_column("key", style=theme.get("info"))
        oracle.add_column("value")
        for key, value in sorted(report.oracle.items()):
            oracle.add_row(key, _cell(value))
        console.print(oracle)
    if report.agree is not None:
        style = theme.get("success") if report.agree else theme.get("error")
        console.print(f"agree: {_cell(report.agree)}", style=style)
    console.print(f"{report.timing_ms:.1f} ms", style=theme.get("info"))
