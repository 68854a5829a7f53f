"""
Invariants Command
Conway polynomial, linking matrix, alpha_0..alpha_3, Sato-Levine and gamma
"""

import logging

from commands.shared import CommandResult, common_options, load_diagram
from services.config import RunConfig
from services.diagram import linking_matrix
from services.errors import SingularInput
from services.reduced import alphas, gamma3, reduced_conway, sato_levine
from services.skein import SkeinCache, c0_closed_form, conway_with_trace

logger = logging.getLogger(__name__)

MAX_ALPHA = 3


def handle(config: RunConfig) -> CommandResult:
    d = load_diagram(config)
    if d.is_singular:
        raise SingularInput("invariants need a diagram without double points")
    m, order = d.m, config.truncation

    # fresh memo so the trace does not depend on earlier work in the process
    poly, trace = conway_with_trace(d, cache=SkeinCache())
    report = {
        "m": m,
        "crossings": d.n_crossings,
        "conway": poly,
        "linking_matrix": linking_matrix(d),
        "skein_trace": trace.to_dict(),
    }
    if order >= m - 1:
        k_max = min(MAX_ALPHA, (order - (m - 1)) // 2)
        report["alphas"] = alphas(d, k_max)
        report["reduced_conway"] = reduced_conway(d, order)
    else:
        logger.warning(f"truncation {order} below m-1 = {m - 1}; alphas skipped")
    if m >= 2:
        report["c0_closed_form"] = c0_closed_form(d)
    if m == 2:
        report["sato_levine"] = sato_levine(d)
    if m == 3:
        report["gamma"] = gamma3(d)
    return CommandResult(0, report)


def setup(subparsers):
    parser = subparsers.add_parser(
        "invariants", parents=[common_options()], help="compute the invariant bundle of a diagram"
    )
    parser.set_defaults(handler=handle)
