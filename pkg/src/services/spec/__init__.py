from .catalog import MODEL_CATALOG, PUBLISHED_ESTIMATES, get_spec
from .transforms import transform_shape_derivative, transform_time, transform_time_derivative
from .utility import systematic_utility, utility_difference

__all__ = [
    "MODEL_CATALOG",
    "PUBLISHED_ESTIMATES",
    "get_spec",
    "systematic_utility",
    "transform_shape_derivative",
    "transform_time",
    "transform_time_derivative",
    "utility_difference",
]
