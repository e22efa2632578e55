"""Entry point for `python -m mirrorphase`."""

from mirrorphase.cli.main import cli

cli()
