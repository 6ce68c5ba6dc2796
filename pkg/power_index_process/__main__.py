"""Run the command-line interface with ``python -m power_index_process``."""

from .cli import cli

cli(prog_name="power-index")
