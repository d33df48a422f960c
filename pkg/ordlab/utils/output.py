"""
Rendering of command results.

JSON is compact with sorted keys, so identical inputs give byte-identical
output. CSV expects a list of flat rows; text is a readable key/value dump.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel


def to_plain(payload: Any) -> Any:
    """Pydantic models and containers of them as JSON-ready values."""
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json", exclude_none=True)
    if isinstance(payload, dict):
        return {str(key): to_plain(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [to_plain(value) for value in payload]
    return payload


def render_json(payload: Any) -> str:
    return json.dumps(to_plain(payload), separators=(",", ":"), sort_keys=True)


def render_csv(rows: list[dict]) -> str:
    rows = to_plain(rows)
    if isinstance(rows, dict):
        rows = [rows]
    if not rows:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: json.dumps(value) if isinstance(value, (dict, list)) else value for key, value in row.items()})
    return buffer.getvalue().rstrip("\n")


def render_text(payload: Any, indent: int = 0) -> str:
    payload = to_plain(payload)
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(
            render_text(item, indent) if isinstance(item, (dict, list)) else f"{pad}- {item}" for item in payload
        )
    return f"{pad}{payload}"


def render(payload: Any, output_format: str) -> str:
    """Render in json, csv or text."""
    if output_format == "csv":
        return render_csv(payload if isinstance(payload, list) else [payload])
    if output_format == "text":
        return render_text(payload)
    return render_json(payload)


def save_text(path: Path, text: str) -> None:
    """Write text output, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
