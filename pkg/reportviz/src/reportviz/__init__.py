"""reportviz: plots and tables for expanderlab artifact files."""

from .growth import DEFAULT_REFERENCES, GrowthSummary, PlotJob, fit_loglog, render_growth_plot
from .schema import EmptyInputError, SchemaMismatchError, load_reports, load_sweep_csv
from .table import render_ratio_table, reports_to_markdown

__version__ = "0.1.0"
