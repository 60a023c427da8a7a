"""
Command-line application with command-group dispatch.

Features:
- Subcommands registered by command groups
- One JSON report per invocation on stdout, diagnostics on stderr
- Exit codes per error class
- Elapsed time and resident memory logged per command
"""

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

import psutil

from .. import __description__, __version__
from ..structure.graph import FORMATS, Graph, parse_graph
from .config import Config, get_config
from .exceptions import (
    CapacityError,
    ConfigurationError,
    DomainError,
    GraphParseError,
    UsageError,
    VerificationError,
)
from .logger import get_logger, setup_logging
from .report import Report, digest

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DOMAIN = 2
EXIT_CAPACITY = 3
EXIT_USAGE = 64
EXIT_CONFIG = 78


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser that raises instead of exiting on usage errors."""

    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


@dataclass
class CommandOutcome:
    """
    What a command handler produced.

    Attributes:
        results: Command-specific JSON payload
        raw_input: Bytes of the input graph, digested into the report
        seed: Seed used by randomized commands
        text: Plain-text output printed instead of JSON
        exit_code: EXIT_OK, or EXIT_FAILURE for failed checks
    """
    results: Dict[str, Any]
    raw_input: Optional[bytes] = None
    seed: Optional[int] = None
    text: Optional[str] = None
    exit_code: int = EXIT_OK


class CliqueSparseApp:
    """
    The cliquesparse command-line front door.

    Builds the argument parser from the command groups, runs one command per
    call to run() and maps library errors to exit codes.
    """

    def __init__(self, config: Optional[Config] = None):
        """
        Initialize the application.

        Args:
            config: Configuration object; the process-wide one is used if None
        """
        self._config = config
        self.logger = get_logger(__name__)
        self.command_groups: List[Any] = []
        self.parser = self._build_parser()

    @property
    def config(self) -> Config:
        if self._config is None:
            self._config = get_config()
        return self._config

    def _build_parser(self) -> argparse.ArgumentParser:
        parser = _ArgumentParser(prog='cliquesparse', description=__description__)
        parser.add_argument('--version', action='version', version=f"cliquesparse {__version__}")
        parser.add_argument('--log-level', default=None, help="override CLIQUESPARSE_LOG_LEVEL")
        subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
        subparsers.required = True
        self._load_command_groups(subparsers)
        return parser

    def _load_command_groups(self, subparsers: Any) -> None:
        """Instantiate every command group and let it register its subcommands."""
        from ..commands.graph_commands import GraphCommands
        from ..commands.linkage_commands import LinkageCommands
        from ..commands.verify_commands import VerifyCommands
        from ..commands.width_commands import WidthCommands

        for group_class in (GraphCommands, WidthCommands, LinkageCommands, VerifyCommands):
            group = group_class(self)
            group.register(subparsers)
            self.command_groups.append(group)

    # ------------------------------------------------------------------
    # Shared flags and input handling for command groups
    # ------------------------------------------------------------------

    @staticmethod
    def add_input_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--input', required=True, metavar='PATH', help="graph file, or - for stdin")
        parser.add_argument('--format', default='edgelist', choices=FORMATS)

    @staticmethod
    def add_output_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--json', action='store_true', help="emit the JSON report")
        parser.add_argument('--pretty', action='store_true', help="indent the JSON report")

    def add_seed_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--seed', type=int, default=None)
        parser.add_argument('--trials', type=int, default=None)

    def read_graph(self, args: argparse.Namespace) -> Tuple[Graph, bytes]:
        """
        Read and parse the --input graph.

        Raises:
            DomainError: when the file cannot be read
            GraphParseError: on malformed graph text
        """
        try:
            if args.input == '-':
                raw = sys.stdin.buffer.read()
            else:
                with open(args.input, 'rb') as handle:
                    raw = handle.read()
        except OSError as e:
            raise DomainError(f"cannot read {args.input}: {e.strerror}")
        try:
            text = raw.decode('utf-8')
        except UnicodeDecodeError:
            raise GraphParseError("input is not valid UTF-8")
        graph = parse_graph(text, args.format)
        self.logger.info(f"read {graph} from {args.input}")
        return graph, raw

    @staticmethod
    def parse_vertex_list(G: Graph, text: Optional[str], name: str) -> int:
        """Translate a comma-separated list of input labels into a vertex set."""
        if text is None:
            raise UsageError(f"--{name} is required")
        mask = 0
        for token in text.split(','):
            token = token.strip()
            if token:
                mask |= 1 << G.index_of_label(token)
        return mask

    def resolve_seed(self, args: argparse.Namespace) -> int:
        return args.seed if getattr(args, 'seed', None) is not None else self.config.default_seed

    def resolve_trials(self, args: argparse.Namespace) -> int:
        trials = args.trials if getattr(args, 'trials', None) is not None else self.config.default_trials
        if trials < 1:
            raise UsageError("--trials must be at least 1")
        return trials

    # ------------------------------------------------------------------
    # Running
    # ------------------------------------------------------------------

    def run(self, argv: Optional[Sequence[str]] = None,
            stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
        """
        Run one command.

        Args:
            argv: Arguments without the program name (sys.argv[1:] if None)
            stdout: Stream for results
            stderr: Stream for diagnostics

        Returns:
            The process exit code
        """
        out = stdout if stdout is not None else sys.stdout
        err = stderr if stderr is not None else sys.stderr
        start = time.perf_counter()
        command = None
        try:
            args = self.parser.parse_args(argv)
            command = args.command
            config = self.config
            config.validate()
            setup_logging(args.log_level or config.log_level, config.log_file)
            outcome = args.handler(args)
            self._emit(args, outcome, out)
            return outcome.exit_code
        except SystemExit as e:
            # --help and --version
            return int(e.code or 0)
        except UsageError as e:
            print(f"usage error: {e}", file=err)
            return EXIT_USAGE
        except ConfigurationError as e:
            print(f"configuration error: {e}", file=err)
            return EXIT_CONFIG
        except CapacityError as e:
            print(f"capacity error: {e}", file=err)
            return EXIT_CAPACITY
        except DomainError as e:
            print(f"error: {e}", file=err)
            return EXIT_DOMAIN
        except VerificationError as e:
            self.logger.error(f"internal check failed: {e}", exc_info=True)
            print(f"internal check failed: {e}", file=err)
            return EXIT_FAILURE
        except Exception as e:
            self.logger.error(f"Unexpected error: {e}", exc_info=True)
            print(f"unexpected error: {e}", file=err)
            return EXIT_FAILURE
        finally:
            if command is not None:
                self._log_resources(command, start)

    def _emit(self, args: argparse.Namespace, outcome: CommandOutcome, out: TextIO) -> None:
        if outcome.text is not None and not getattr(args, 'json', False):
            out.write(outcome.text)
            return
        report = Report(
            command=args.command,
            input_digest=digest(outcome.raw_input) if outcome.raw_input is not None else None,
            version=__version__,
            seed=outcome.seed,
            results=outcome.results,
        )
        out.write(report.to_json(pretty=getattr(args, 'pretty', False)) + "\n")

    def _log_resources(self, command: str, start: float) -> None:
        try:
            rss = psutil.Process().memory_info().rss
        except psutil.Error:
            rss = -1
        self.logger.debug(
            f"{command} finished in {time.perf_counter() - start:.3f}s, rss {rss / (1024 * 1024):.1f} MiB"
        )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point used by main.py and python -m cliquesparse."""
    return CliqueSparseApp().run(argv)
