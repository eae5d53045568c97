from typing import List, Tuple


class DatasetException(Exception):
    """Base exception for choice-data ingestion and validation errors."""


class DatasetNotFoundError(DatasetException):
    """Exception raised when the choice data file does not exist."""


class MissingColumnError(DatasetException):
    """Exception raised when a required column is not mapped or not present in the header."""


class DuplicateScenarioError(DatasetException):
    """Exception raised when a respondent answers the same scenario twice or more than four scenarios."""


class DataValidationError(DatasetException):
    """Exception raised when rows fail coercion or violate a dataset invariant.

    :param message: Summary message
    :param row_errors: (row number, reason) pairs; row numbers count the header as row 1
    """

    def __init__(self, message: str, row_errors: List[Tuple[int, str]] | None = None):
        super().__init__(message)
        self.row_errors = row_errors or []


class SpecificationException(Exception):
    """Base exception for utility specification errors."""


class ParameterMismatchError(SpecificationException):
    """Exception raised when a parameter vector does not carry exactly the parameters a spec needs."""


class TimeDomainError(SpecificationException):
    """Exception raised when a time value lies outside the domain of a time transform."""


class EstimationException(Exception):
    """Base exception for likelihood evaluation and model fitting errors."""


class NonFiniteObjectiveError(EstimationException):
    """Exception raised when the log-likelihood is not finite at the evaluated point."""


class DrawConfigError(EstimationException):
    """Exception raised when a simulation draw configuration is invalid."""


class EmptyDatasetError(EstimationException):
    """Exception raised when there are no usable observations to estimate on."""


class WelfareException(Exception):
    """Base exception for welfare (MVDT / deprivation cost) computation errors."""


class UndefinedMarginalUtilityError(WelfareException):
    """Exception raised when the cost coefficient is zero and money-metric welfare is undefined."""


class InvalidIntervalError(WelfareException):
    """Exception raised when an integration interval is inverted or outside the transform domain."""


class DesignException(Exception):
    """Base exception for experimental design errors."""


class SingularDesignError(DesignException):
    """Exception raised when a design's Fisher information cannot identify the prior parameters."""


class EmptyDesignError(DesignException):
    """Exception raised when a design has no scenarios or no blocks."""


class SimulationException(Exception):
    """Base exception for synthetic data generation errors."""


class ConfigurationError(Exception):
    """Exception raised when configuration is invalid."""


class UnknownLexicographicRuleError(ConfigurationError):
    """Exception raised when a lexicographic exclusion rule name is not registered."""
