"""
Linkage commands: induced Menger and pattern certificates.
"""

import argparse
from typing import Any

from ..core.app import CommandOutcome
from ..core.exceptions import DomainError
from ..core.logger import get_logger
from ..structure.menger import induced_menger
from ..structure.patterns import FAMILY_SETS, pattern_certificate, pg_parameter, star_certificate


class LinkageCommands:
    """Commands that return a certificate or a separating obstruction."""

    def __init__(self, app):
        """Initialize the command group."""
        self.app = app
        self.logger = get_logger(__name__)

    def register(self, subparsers: Any) -> None:
        menger = subparsers.add_parser('menger', help="induced linkage or small separator")
        self.app.add_input_arguments(menger)
        self.app.add_output_arguments(menger)
        menger.add_argument('--A', dest='a', default=None, metavar='LIST', help="comma-separated labels")
        menger.add_argument('--B', dest='b', default=None, metavar='LIST', help="comma-separated labels")
        menger.add_argument('--k', type=int, default=1)
        menger.set_defaults(handler=self.menger_command)

        certify = subparsers.add_parser('certify', help="pattern certificate of a given order")
        self.app.add_input_arguments(certify)
        self.app.add_output_arguments(certify)
        certify.add_argument('--k', type=int, required=True, help="pattern order t")
        certify.add_argument('--family-set', default=None, choices=sorted(FAMILY_SETS),
                             help="also report the parametric containment for this set")
        certify.set_defaults(handler=self.certify_command)

    def menger_command(self, args: argparse.Namespace) -> CommandOutcome:
        """Vertex ids in the result are compacted ids; labels map them back."""
        G, raw = self.app.read_graph(args)
        A = self.app.parse_vertex_list(G, args.a, 'A')
        B = self.app.parse_vertex_list(G, args.b, 'B')
        result = induced_menger(G, A, B, args.k)
        results = result.to_dict()
        results['labels'] = [G.label_of(v) for v in range(G.n)]
        return CommandOutcome(results, raw_input=raw)

    def certify_command(self, args: argparse.Namespace) -> CommandOutcome:
        G, raw = self.app.read_graph(args)
        if args.k < 1:
            raise DomainError("pattern order must be positive")
        certificate = pattern_certificate(G, args.k)
        star = star_certificate(G)
        results = {
            'k': args.k,
            'found': certificate is not None,
            'certificate': certificate.to_dict() if certificate is not None else None,
            'star': star.to_dict() if star is not None else None,
        }
        if args.family_set is not None:
            results['family_set'] = args.family_set
            results['pg_parameter'] = pg_parameter(G, FAMILY_SETS[args.family_set])
        if certificate is None:
            self.logger.info(f"no order-{args.k} pattern in {G}")
        return CommandOutcome(results, raw_input=raw)
