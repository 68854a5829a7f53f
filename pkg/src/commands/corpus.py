"""
Corpus Command
linkinv corpus emit <name>[:params] [params]
linkinv corpus list
"""

import logging

from commands.shared import CommandResult, common_options
from services import corpus
from services.config import RunConfig
from services.diagram import serialize

logger = logging.getLogger(__name__)


def handle_emit(config: RunConfig) -> CommandResult:
    spec = config.target if not config.params else f"{config.target}:{config.params}"
    d = corpus.build_spec(spec)
    pd = serialize(d)
    report = {"name": spec, "m": d.m, "crossings": d.n_crossings, "pd": pd}
    return CommandResult(0, report, text=pd)


def handle_list(config: RunConfig) -> CommandResult:
    entries = []
    for entry in corpus.list_entries():
        d = entry.diagram()
        entries.append({
            "spec": entry.spec,
            "m": d.m,
            "crossings": d.n_crossings,
            "expected": {k: {"value": v, "source": tag} for k, (v, tag) in entry.expected.items()},
        })
    report = {"names": corpus.names(), "entries": entries}
    text = "\n".join(f"{e['spec']}  m={e['m']}  crossings={e['crossings']}" for e in entries)
    return CommandResult(0, report, text=text)


def setup(subparsers):
    parser = subparsers.add_parser("corpus", help="named diagrams")
    actions = parser.add_subparsers(dest="subcommand", required=True)

    emit = actions.add_parser("emit", parents=[common_options()], help="print the PD code of a corpus entry")
    emit.add_argument("target", help="entry name, optionally name:params")
    emit.add_argument("params", nargs="?", help="comma-separated parameters")
    emit.set_defaults(handler=handle_emit)

    listing = actions.add_parser("list", parents=[common_options()], help="list corpus entries")
    listing.set_defaults(handler=handle_list)
