"""Allow python -m cliquesparse."""

import sys

from .core.app import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
