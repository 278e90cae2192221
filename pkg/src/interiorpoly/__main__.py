"""Run the command line with ``python -m interiorpoly``."""

import sys

from .cli import main

sys.exit(main())
