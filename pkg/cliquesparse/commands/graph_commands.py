"""
Graph commands: parameters, quotient, maximal cliques and family generation.
"""

import argparse
from typing import Any, Dict

from ..core.app import CommandOutcome
from ..core.exceptions import UsageError
from ..core.logger import get_logger
from ..structure.cliques import maximal_cliques, twin_partition
from ..structure.generators import Family, FamilySpec, generate
from ..structure.graph import FORMATS, Graph, serialize_graph, to_list
from ..structure.parameters import parameter_bounds, parameter_profile


def _labelled(G: Graph) -> Dict[str, Any]:
    return {'n': G.n, 'm': G.edge_count, 'labels': [G.label_of(v) for v in range(G.n)]}


class GraphCommands:
    """Commands that describe or build a single graph."""

    def __init__(self, app):
        """Initialize the command group."""
        self.app = app
        self.logger = get_logger(__name__)

    def register(self, subparsers: Any) -> None:
        params = subparsers.add_parser('params', help="clique-sparsity parameters")
        self.app.add_input_arguments(params)
        self.app.add_output_arguments(params)
        params.set_defaults(handler=self.params_command)

        quotient = subparsers.add_parser('quotient', help="twin classes and quotient graph")
        self.app.add_input_arguments(quotient)
        self.app.add_output_arguments(quotient)
        quotient.set_defaults(handler=self.quotient_command)

        cliques = subparsers.add_parser('cliques', help="maximal cliques")
        self.app.add_input_arguments(cliques)
        self.app.add_output_arguments(cliques)
        cliques.set_defaults(handler=self.cliques_command)

        gen = subparsers.add_parser('gen', help="generate a family member")
        gen.add_argument('--family', required=True)
        gen.add_argument('--n', type=int, required=True)
        gen.add_argument('--k', type=int, default=None, help="chain length for Q")
        gen.add_argument('--inner', default=None, help="inner family for Q")
        gen.add_argument('--format', default='edgelist', choices=FORMATS)
        self.app.add_output_arguments(gen)
        gen.set_defaults(handler=self.gen_command)

    def params_command(self, args: argparse.Namespace) -> CommandOutcome:
        """All nine parameters and the bounds implied by the quotient degree."""
        G, raw = self.app.read_graph(args)
        profile = parameter_profile(G)
        results = _labelled(G)
        results['parameters'] = profile.to_dict()
        results['bounds_from_delta_tilde'] = parameter_bounds(profile.delta_tilde)
        return CommandOutcome(results, raw_input=raw)

    def quotient_command(self, args: argparse.Namespace) -> CommandOutcome:
        """Twin classes with their members and the quotient edge list."""
        G, raw = self.app.read_graph(args)
        Q = twin_partition(G)
        results = _labelled(G)
        results['classes'] = [to_list(members) for members in Q.classes]
        results['quotient'] = {
            'n': Q.size,
            'edges': [list(e) for e in Q.quotient.edges()],
            'representatives': to_list(Q.representatives()),
        }
        results['twin_free'] = Q.is_identity()
        return CommandOutcome(results, raw_input=raw)

    def cliques_command(self, args: argparse.Namespace) -> CommandOutcome:
        """Maximal cliques and the per-vertex incidence."""
        G, raw = self.app.read_graph(args)
        K = maximal_cliques(G)
        results = _labelled(G)
        results['cliques'] = K.as_lists()
        results['incidence'] = [list(row) for row in K.incidence]
        return CommandOutcome(results, raw_input=raw)

    def gen_command(self, args: argparse.Namespace) -> CommandOutcome:
        """Print a family member as text, or its JSON description with --json."""
        family = Family.parse(args.family)
        inner = Family.parse(args.inner) if args.inner is not None else None
        if family == Family.Q and (inner is None or args.k is None):
            raise UsageError("gen --family Q needs --inner and --k")
        spec = FamilySpec(family, args.n, inner, args.k if family == Family.Q else None)
        G = generate(spec)
        text = serialize_graph(G, args.format)
        results = _labelled(G)
        results['family'] = spec.describe()
        results['format'] = args.format
        results['graph'] = text
        self.logger.info(f"generated {spec.describe()}")
        return CommandOutcome(results, text=text)
