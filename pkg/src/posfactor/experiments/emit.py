"""Deterministic CSV/JSON emission.

Floats are rendered with ``repr`` (shortest decimal that round-trips, at
least 15 significant digits), so identical doubles always serialize to
identical bytes.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

__all__ = ["format_value", "rows_to_csv", "to_json", "write_output"]


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
