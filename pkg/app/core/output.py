"""
Rendering of command results as CSV or JSON.

Numbers are written with a fixed count of significant digits so that golden
outputs stay byte-stable; integers and booleans are written as-is.
"""
import csv
import io
import json
from typing import Any, Literal, Sequence, Union
import click
from pydantic import BaseModel

from app.core.config import settings

OutputFormat = Literal["csv", "json"]
Record = Union[BaseModel, dict]


def _round_float(value: float, precision: int) -> float:
    """Round a float to the requested number of significant digits."""
    return float(f"{value:.{precision}g}")


def _normalize(value: Any, precision: int) -> Any:
    """Recursively round floats inside a JSON-compatible structure."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return _round_float(value, precision)
    if isinstance(value, dict):
        return {key: _normalize(item, precision) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(item, precision) for item in value]
    return value


def _as_dict(record: Record) -> dict:
    if isinstance(record, BaseModel):
        return record.model_dump(mode="json")
    return dict(record)


def _flatten(data: dict, prefix: str = "") -> dict:
    """Flatten nested mappings into dotted column names for CSV."""
    flat = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, prefix=f"{name}."))
        else:
            flat[name] = value
    return flat


def _csv_cell(value: Any, precision: int) -> str:
    if isinstance(value, list):
        return ";".join(_csv_cell(item, precision) for item in value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    return str(value)


def render_json(records: Union[Record, Sequence[Record]], precision: int) -> str:
    """Render a single record as an object or a sequence as an array."""
    if isinstance(records, (BaseModel, dict)):
        payload = _normalize(_as_dict(records), precision)
    else:
        payload = [_normalize(_as_dict(record), precision) for record in records]
    return json.dumps(payload, ensure_ascii=False) + "\n"


def render_csv(records: Union[Record, Sequence[Record]], precision: int) -> str:
    """Render records as CSV with a header row, one row per record."""
    if isinstance(records, (BaseModel, dict)):
        records = [records]
    rows = [_flatten(_as_dict(record)) for record in records]
    
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(row.get(key), precision) for key in header])
    return buffer.getvalue()


def render(records: Union[Record, Sequence[Record]], fmt: OutputFormat, precision: int) -> str:
    """
    Render command output.
    
    Args:
        records: One record or a sequence of records
        fmt: Output format, csv or json
        precision: Significant digits for floating point values
        
    Returns:
        str: Newline-terminated UTF-8 text
    """
    if fmt == "csv":
        return render_csv(records, precision)
    return render_json(records, precision)


def output_options(command):
    """Attach the --format and --precision flags shared by every command."""
    command = click.option(
        "--precision",
        type=click.IntRange(1, 17),
        default=lambda: settings.precision,
        show_default="6",
        help="Significant digits for floating point values",
    )(command)
    command = click.option(
        "--format",
        "fmt",
        type=click.Choice(["csv", "json"]),
        default=lambda: settings.output_format,
        show_default="json",
        help="Output format",
    )(command)
    return command


def emit(records: Union[Record, Sequence[Record]], fmt: OutputFormat, precision: int) -> None:
    """Write rendered records to stdout."""
    click.echo(render(records, fmt, precision), nl=False)
