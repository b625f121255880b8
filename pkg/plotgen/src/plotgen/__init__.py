"""Figure rendering for dcquant sweep CSVs."""

from .cli import main
from .figures import FigureSpec, fitted_slope, render

__all__ = ["FigureSpec", "fitted_slope", "main", "render"]
