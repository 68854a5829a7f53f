"""
Report Utils
JSON and text rendering of command reports

JSON output is deterministic: keys sorted, no timestamps, big integers as
decimal strings inside polynomial encodings.
"""

import json
from typing import Any

from services.diagram import LinkingMatrix, SingularLinkDiagram, serialize
from utils.polynomial import IntPolynomial, TruncatedSeries


def to_jsonable(value: Any) -> Any:
    """Convert engine values to plain JSON types."""
    if isinstance(value, (IntPolynomial, TruncatedSeries)):
        return value.to_json()
    if isinstance(value, LinkingMatrix):
        return value.to_list()
    if isinstance(value, SingularLinkDiagram):
        return serialize(value)
    if hasattr(value, "model_dump"):
        return to_jsonable(value.model_dump())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def render_json(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, ensure_ascii=False)


def _text_value(value: Any) -> str:
    if isinstance(value, (IntPolynomial, SingularLinkDiagram)):
        return str(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_text_value(v) for v in value)
    return str(to_jsonable(value))


def render_text(report: dict) -> str:
    """One `key: value` line per entry; lossy."""
    width = max((len(str(k)) for k in report), default=0)
    return "\n".join(f"{str(k).ljust(width)} : {_text_value(v)}" for k, v in sorted(report.items()))


def render(report: dict, fmt: str = "json") -> str:
    return render_text(report) if fmt == "text" else render_json(report)
