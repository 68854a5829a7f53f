"""
Link Engine - Core Application Class
"""

import argparse
import importlib
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from services.config import RunConfig, setup_logging
from services.errors import InputError, LinkEngineError
from utils.report_utils import render

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INPUT = 2


class LinkEngineApp:
    def __init__(self):
        self.parser = argparse.ArgumentParser(
            prog="linkinv",
            description="Exact Conway-type invariants of (singular) link diagrams",
        )
        self.subparsers = self.parser.add_subparsers(dest="command", required=True)
        self._load_commands()

    def _load_commands(self):
        """Auto-load every module under commands/ that has setup()"""
        commands_dir = Path(__file__).parent / "commands"

        for command_file in sorted(commands_dir.glob("*.py")):
            if command_file.name.startswith("_"):
                continue

            command_path = f"commands.{command_file.stem}"
            try:
                module = importlib.import_module(command_path)
            except Exception as e:
                logger.error(f"Failed to load {command_path}: {e}")
                continue
            setup = getattr(module, "setup", None)
            if setup is None:
                continue
            setup(self.subparsers)
            logger.debug(f"Loaded command: {command_path}")

    @staticmethod
    def build_config(args: argparse.Namespace) -> RunConfig:
        """Namespace -> RunConfig; unset flags fall back to the env-driven defaults"""
        values = {
            key: value
            for key, value in vars(args).items()
            if key in RunConfig.model_fields and value is not None
        }
        return RunConfig(**values)

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # argparse prints usage itself
            return EXIT_OK if e.code in (0, None) else EXIT_INPUT

        setup_logging(bool(args.verbose))
        try:
            config = self.build_config(args)
        except ValidationError as e:
            first = e.errors()[0]
            print(f"error: InvalidConfig: {first.get('msg', e)}", file=sys.stderr)
            return EXIT_INPUT

        try:
            result = args.handler(config)
        except InputError as e:
            print(f"error: {e.code}: {e}", file=sys.stderr)
            return EXIT_INPUT
        except LinkEngineError as e:
            logger.error(f"{e.code}: {e}")
            print(f"error: internal: {e.code}: {e}", file=sys.stderr)
            return EXIT_INPUT
        except OSError as e:
            print(f"error: InputUnreadable: {e}", file=sys.stderr)
            return EXIT_INPUT
        except Exception as e:
            logger.exception(f"Unhandled error in command: {config.command}")
            print(f"error: internal: {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_INPUT

        if config.output_format == "text" and result.text is not None:
            print(result.text)
        else:
            print(render(result.report, config.output_format))
        return result.exit_code
