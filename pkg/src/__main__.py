"""Allow running the experiment runner with `python -m src`."""

import sys

from src.main import main

sys.exit(main())
