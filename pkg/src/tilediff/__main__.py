"""Entry point for ``python -m tilediff``."""

import sys

from .cli import main

sys.exit(main())
