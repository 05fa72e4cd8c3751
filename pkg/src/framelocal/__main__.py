"""Allow ``python -m framelocal``."""

from .cli import entry_point

entry_point()
