"""
Width commands: mu-treewidth, rankwidth and the vertex-minor reductions.
"""

import argparse
from typing import Any

from ..core.app import EXIT_FAILURE, EXIT_OK, CommandOutcome
from ..core.logger import get_logger
from ..structure.decomposition import (
    Measure,
    exact_mu_treewidth,
    grid_diagnostic,
    standard_convention,
)
from ..structure.generators import Family
from ..structure.rank import REDUCIBLE_FAMILIES, exact_rankwidth, qk_reduction_check


class WidthCommands:
    """Commands computing exact widths with their decompositions."""

    def __init__(self, app):
        """Initialize the command group."""
        self.app = app
        self.logger = get_logger(__name__)

    def register(self, subparsers: Any) -> None:
        tw = subparsers.add_parser('tw', help="exact mu-treewidth with a decomposition")
        self.app.add_input_arguments(tw)
        self.app.add_output_arguments(tw)
        tw.add_argument('--measure', default='card', choices=[m.value for m in Measure])
        tw.add_argument('--standard', action='store_true',
                        help="also report card width in the width-minus-one convention")
        tw.add_argument('--grid', type=int, default=None, metavar='K',
                        help="add the grid-forcing diagnostic for k x k grids")
        tw.set_defaults(handler=self.tw_command)

        rankwidth = subparsers.add_parser('rankwidth', help="exact rankwidth with a rank-decomposition")
        self.app.add_input_arguments(rankwidth)
        self.app.add_output_arguments(rankwidth)
        rankwidth.set_defaults(handler=self.rankwidth_command)

        vm_check = subparsers.add_parser('vm-check', help="vertex-minor reductions of the Q constructions")
        vm_check.add_argument('--family', default=None,
                              help=f"one of {[f.value for f in REDUCIBLE_FAMILIES]}; all if omitted")
        vm_check.add_argument('--n', type=int, default=3, help="chain length and block order m")
        self.app.add_output_arguments(vm_check)
        vm_check.set_defaults(handler=self.vm_check_command)

    def tw_command(self, args: argparse.Namespace) -> CommandOutcome:
        G, raw = self.app.read_graph(args)
        mu = Measure.parse(args.measure)
        width, td = exact_mu_treewidth(G, mu)
        results = {
            'measure': mu.value,
            'width': width,
            'decomposition': td.to_dict(),
        }
        if args.standard and mu == Measure.CARD:
            results['standard_width'] = standard_convention(width)
        if args.grid is not None:
            results['grid'] = grid_diagnostic(G, args.grid)
        return CommandOutcome(results, raw_input=raw)

    def rankwidth_command(self, args: argparse.Namespace) -> CommandOutcome:
        G, raw = self.app.read_graph(args)
        width, rd = exact_rankwidth(G)
        return CommandOutcome({'rankwidth': width, 'decomposition': rd.to_dict()}, raw_input=raw)

    def vm_check_command(self, args: argparse.Namespace) -> CommandOutcome:
        """Run the reduction check for one family or all of them; exit 1 on any failure."""
        families = [Family.parse(args.family)] if args.family is not None else list(REDUCIBLE_FAMILIES)
        reports = [qk_reduction_check(family, args.n) for family in families]
        passed = all(report.passed for report in reports)
        for report in reports:
            if not report.passed:
                self.logger.warning(f"{report.check} failed: {report.failed_clauses()}")
        results = {
            'n': args.n,
            'passed': passed,
            'reports': [report.model_dump(mode='json') for report in reports],
        }
        return CommandOutcome(results, exit_code=EXIT_OK if passed else EXIT_FAILURE)
