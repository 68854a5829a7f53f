"""
Validate Command
linkinv validate --pd "<PD>" | --input <path> | --corpus <name>
"""

import logging

from commands.shared import CommandResult, common_options, load_diagram
from services.config import RunConfig
from services.diagram import serialize

logger = logging.getLogger(__name__)


def handle(config: RunConfig) -> CommandResult:
    d = load_diagram(config)
    report = {
        "valid": True,
        "m": d.m,
        "crossings": d.n_crossings,
        "double_points": len(d.singular_indices),
        "free_loops": d.free_loops,
        "components": [list(cycle) for cycle in d.partition.cycles],
        "writhe": d.writhe(),
        "pd": serialize(d),
    }
    logger.info(f"valid diagram: m={d.m}, {d.n_crossings} crossings")
    return CommandResult(0, report)


def setup(subparsers):
    parser = subparsers.add_parser(
        "validate", parents=[common_options()], help="parse and validate a diagram"
    )
    parser.set_defaults(handler=handle)
