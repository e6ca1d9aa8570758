"""Arabic food-hazard extraction - command-line entry point."""

import sys

from src.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
