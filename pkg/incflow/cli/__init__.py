"""Command line interface for incflow."""

from .main import IncflowConsole, cli, main

__all__ = ['IncflowConsole', 'cli', 'main']
