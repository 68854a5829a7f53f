"""
Probe Command
linkinv probe colored-type|type --invariant <name> --n <n> [--family <name> --params <p>]
linkinv probe multitype --invariant <name> [--ks k1,k2,...] [--components m]

Exit 1 when the probe finds a nonzero extension (refuted), 0 otherwise.
"""

import logging

from commands.shared import CommandResult, common_options, load_diagram, parse_ints, require
from services.config import RunConfig
from services.corpus import build_spec
from services.finite_type import (
    colored_vanishing_probe,
    multitype_vanishing_probe,
    standard_invariant,
    type_vanishing_probe,
)
from services.sampler import BraidSampler, fixed_sampler

logger = logging.getLogger(__name__)


def _finish(report) -> CommandResult:
    return CommandResult(1 if report.verdict == "refuted" else 0, report.model_dump())


def handle(config: RunConfig) -> CommandResult:
    name = require(config.invariant, "--invariant")
    n = require(config.n, "--n")
    colored = config.subcommand == "colored-type"

    if config.family is not None:
        spec = config.family if not config.params else f"{config.family}:{config.params}"
        d = build_spec(spec)
        sampler, trials, m = fixed_sampler(d), 1, d.m
    elif config.has_source:
        d = load_diagram(config)
        sampler, trials, m = fixed_sampler(d), 1, d.m
    else:
        sampler = BraidSampler(
            seed=config.seed,
            components=config.components,
            double_points=n + 1,
            self_only=colored,
        )
        trials, m = config.trials, config.components

    v = standard_invariant(name, m=m, truncation=config.truncation)
    if colored:
        return _finish(colored_vanishing_probe(v, n, sampler, trials, seed=config.seed))
    return _finish(type_vanishing_probe(v, n, sampler, trials, seed=config.seed))


def handle_multitype(config: RunConfig) -> CommandResult:
    name = require(config.invariant, "--invariant")
    m = config.components
    v = standard_invariant(name, m=m, truncation=config.truncation)
    ks = parse_ints(config.ks, "--ks") or None
    bounds = ks if ks is not None else v.claimed_multitype

    def sampler_for(component: int) -> BraidSampler:
        return BraidSampler(
            seed=config.seed + component,
            components=m,
            double_points=bounds[component] + 1 if bounds is not None else 1,
            on_component=component,
            strands=(max(2, m), max(4, m + 1)),
        )

    return _finish(multitype_vanishing_probe(v, ks, sampler_for, config.trials, seed=config.seed))


def setup(subparsers):
    parser = subparsers.add_parser("probe", help="vanishing probes for finite type claims")
    kinds = parser.add_subparsers(dest="subcommand", required=True)
    for kind, help_text in (
        ("colored-type", "n+1 self double points"),
        ("type", "n+1 arbitrary double points"),
    ):
        probe = kinds.add_parser(kind, parents=[common_options()], help=help_text)
        probe.add_argument("--invariant", required=True, help="lk, c<k>, z<j>, alpha<k>, sato_levine, gamma")
        probe.add_argument("--n", type=int, required=True, help="claimed (colored) type bound")
        probe.add_argument("--family", help="corpus family instead of random diagrams, e.g. ctype2")
        probe.add_argument("--params", help="family parameters, e.g. 1,2,-3,0")
        probe.add_argument("--components", type=int, help="component count of random diagrams")
        probe.set_defaults(handler=handle)

    multi = kinds.add_parser("multitype", parents=[common_options()], help="k_i+1 self double points on component i")
    multi.add_argument("--invariant", required=True, help="lk, c<k>, z<j>, alpha<k>, sato_levine, gamma")
    multi.add_argument("--ks", help="per-component bounds, e.g. 1,1 (default: the claimed bounds)")
    multi.add_argument("--components", type=int, help="component count of random diagrams")
    multi.set_defaults(handler=handle_multitype)
