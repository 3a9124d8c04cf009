"""Command-line interface: expression language, REPL and subcommands."""

from .main import build_parser, run
from .session import Session

__all__ = ["Session", "build_parser", "run"]
