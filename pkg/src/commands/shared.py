"""
Shared command helpers: common options, input loading, results
"""

import argparse
from dataclasses import dataclass, field
from typing import Optional

from services.config import RunConfig
from services.corpus import build_spec
from services.diagram import SingularLinkDiagram, parse_pd
from services.errors import EmptyInput, ParamOutOfRange


@dataclass
class CommandResult:
    exit_code: int
    report: dict = field(default_factory=dict)
    text: Optional[str] = None


def common_options() -> argparse.ArgumentParser:
    """Flags every leaf command accepts."""
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_argument_group("input")
    source.add_argument("--input", dest="input_path", help="file holding PD text")
    source.add_argument("--pd", help="inline PD text, e.g. \"X+(1,3,2,4) X+(3,1,4,2)\"")
    source.add_argument("--corpus", help="corpus entry, e.g. hopf:+ or torus:2,5")
    run = parent.add_argument_group("run")
    run.add_argument("--truncation", type=int, help="series order N (default 8)")
    run.add_argument("--seed", type=int, help="RNG seed (default 0)")
    run.add_argument("--trials", type=int, help="random trials (default 100)")
    run.add_argument("--format", dest="output_format", choices=["json", "text"], help="report format")
    run.add_argument("--verbose", action="store_true", default=None, help="INFO logging on stderr")
    return parent


def load_diagram(config: RunConfig) -> SingularLinkDiagram:
    """Diagram from --pd, --input or --corpus."""
    if config.corpus is not None:
        return build_spec(config.corpus)
    text = config.read_source_text()
    if text is None:
        raise EmptyInput("no input: give --pd, --input or --corpus")
    return parse_pd(text)


def parse_ints(text: Optional[str], what: str) -> tuple[int, ...]:
    """'1,2,-3,0' -> (1, 2, -3, 0)."""
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParamOutOfRange(f"{what} must be comma-separated integers, got {text!r}")


def require(value, flag: str):
    if value is None:
        raise ParamOutOfRange(f"{flag} is required for this command")
    return value
