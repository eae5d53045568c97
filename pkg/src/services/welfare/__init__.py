from .calculator import DeprivationCostCalculator
from .costs import dcf_curve, deprivation_cost, deprivation_cost_averaged, mvdt, welfare_spec
from .factory import make_deprivation_cost_calculator
from .io import curve_frame, write_curve_csv
from .polyfit import fit_polynomial
from .quadrature import integrate_adaptive_simpson

__all__ = [
    "DeprivationCostCalculator",
    "curve_frame",
    "dcf_curve",
    "deprivation_cost",
    "deprivation_cost_averaged",
    "fit_polynomial",
    "integrate_adaptive_simpson",
    "make_deprivation_cost_calculator",
    "mvdt",
    "welfare_spec",
    "write_curve_csv",
]
