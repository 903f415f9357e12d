"""Figure rendering for calmedkse outputs, working directly from the solver's
documented snapshot and CSV formats."""

from .formats import load_snapshot, read_error_csv
from .render import plot_field, plot_rates

__all__ = ["load_snapshot", "plot_field", "plot_rates", "read_error_csv"]
