"""
The verify command: seeded property suites over every module.
"""

import argparse
from typing import Any

from ..core.app import EXIT_FAILURE, EXIT_OK, CommandOutcome
from ..core.logger import get_logger
from ..verification.suites import SUITES, run_suite


class VerifyCommands:
    """Runs the named property suites and reports every clause."""

    def __init__(self, app):
        """Initialize the command group."""
        self.app = app
        self.logger = get_logger(__name__)

    def register(self, subparsers: Any) -> None:
        verify = subparsers.add_parser('verify', help="run property suites")
        verify.add_argument('--suite', default='all', choices=['all'] + sorted(SUITES))
        self.app.add_seed_arguments(verify)
        self.app.add_output_arguments(verify)
        verify.set_defaults(handler=self.verify_command)

    def verify_command(self, args: argparse.Namespace) -> CommandOutcome:
        """Exit 0 only when every asserted clause of every report passed."""
        seed = self.app.resolve_seed(args)
        trials = self.app.resolve_trials(args)
        reports = run_suite(args.suite, seed, trials)
        passed = all(report.passed for report in reports)
        lines = [
            f"{'PASS' if report.passed else 'FAIL'} {report.check}: "
            f"{sum(c.checked for c in report.clauses)} evaluations"
            + (f", failed {', '.join(report.failed_clauses())}" if not report.passed else "")
            for report in reports
        ]
        for report in reports:
            lines.extend(f"  finding: {finding}" for finding in report.findings)
        lines.append(f"{'all suites passed' if passed else 'verification failed'} (seed {seed}, trials {trials})")
        results = {
            'suite': args.suite,
            'trials': trials,
            'passed': passed,
            'reports': [report.model_dump(mode='json') for report in reports],
        }
        return CommandOutcome(
            results,
            seed=seed,
            text="\n".join(lines) + "\n",
            exit_code=EXIT_OK if passed else EXIT_FAILURE,
        )
