from .table import PARAMETER_ROWS, STATISTIC_ROWS, ReportColumn, render_report, results_table, rho_square_notes

__all__ = ["PARAMETER_ROWS", "STATISTIC_ROWS", "ReportColumn", "render_report", "results_table", "rho_square_notes"]
