"""``python -m lpstrip``."""

import sys

from .cli import main

sys.exit(main())
