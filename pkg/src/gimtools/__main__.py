"""Allow ``python -m gimtools`` to behave like the ``gim`` script."""

import sys

from .cli import main

sys.exit(main())
