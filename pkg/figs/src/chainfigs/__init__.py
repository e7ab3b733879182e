"""Post-processing figures for stirred-chain simulation output."""

from .render import FigureSpec, render, KINDS
from .io import SchemaError, read_csv

__version__ = "0.1.0"
