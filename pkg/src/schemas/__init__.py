from .dataset.models import ChoiceDataset, ChoiceObservation, ColumnSchema, IncomeBracket, Respondent
from .design.models import BalanceReport, Design, DesignSearchResult, DesignSettings, LevelSets, Scenario
from .estimate.models import DrawConfig, DrawGenerator, EstimationResult, OptimizerOptions
from .simgen.models import BillDistribution, BillFamily, PopulationConfig, RecoveryReport
from .spec.models import ModelName, ParameterVector, TimeTransform, TransformKind, UtilitySpec
from .welfare.models import DCFConfig, DCFCurve, DCFUnit, PolyFit

__all__ = [
    "ChoiceDataset",
    "ChoiceObservation",
    "ColumnSchema",
    "IncomeBracket",
    "Respondent",
    "BalanceReport",
    "Design",
    "DesignSearchResult",
    "DesignSettings",
    "LevelSets",
    "Scenario",
    "DrawConfig",
    "DrawGenerator",
    "EstimationResult",
    "OptimizerOptions",
    "BillDistribution",
    "BillFamily",
    "PopulationConfig",
    "RecoveryReport",
    "ModelName",
    "ParameterVector",
    "TimeTransform",
    "TransformKind",
    "UtilitySpec",
    "DCFConfig",
    "DCFCurve",
    "DCFUnit",
    "PolyFit",
]
