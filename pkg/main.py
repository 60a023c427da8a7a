#!/usr/bin/env python3
"""
Main entry point for the cliquesparse command-line toolkit.

The toolkit is designed with:
- Exact solvers for clique-sparsity parameters and width measures
- Twin quotients shared by every module
- Capacity caps and search budgets configured from the environment
- One JSON report per invocation on stdout
"""

import sys
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from cliquesparse.core.app import run


def main() -> int:
    """Run one command from sys.argv."""
    try:
        return run(sys.argv[1:])
    except KeyboardInterrupt:
        print("\nInterrupted.", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
