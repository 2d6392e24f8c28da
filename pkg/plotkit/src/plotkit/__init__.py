"""Static-image rendering for mode-locking scan/trace/prediction CSVs."""

from .io import PlotError, read_csv
from .render import PlotSpec, average_hash, render, render_scan, render_trace

__version__ = "0.1.0"
