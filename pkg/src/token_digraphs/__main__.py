"""Allow running as ``python -m token_digraphs``."""

from .cli import main

main()
