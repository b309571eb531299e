"""Unit-safe information measures for discrete distributions and flow networks."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .dist import (
    JointDistribution,
    Marginal,
    TripleJoint,
    from_weights,
    pairwise_joint,
    product_of_marginals,
    sample_joint,
    sample_triple,
)
from .flownet import FlowNetwork, NetworkReport, indices, network_asymmetry, to_joint, vitality_coordinates
from .infometrics import (
    Given,
    MeasureReport,
    asymmetry_report,
    conditional_entropy,
    entropy,
    identity_residuals,
    information_content,
    joint_entropy,
    measure_report,
    mutual_information,
    surprisal_bound_counterexample,
    variation_of_information,
)
from .logunits import (
    BIT,
    BYTE,
    CDROM,
    CENT,
    DECIBEL,
    NAT,
    Dimension,
    DimensionError,
    DimQuantity,
    FlowInfoQuantity,
    InfoQuantity,
    InfoUnit,
    checked_add,
    convert_flow_info,
    convert_info,
    parse_dimension,
    parse_info_unit,
)

__all__ = [
    "__version__",
    "BACKEND",
    "JointDistribution",
    "Marginal",
    "TripleJoint",
    "from_weights",
    "pairwise_joint",
    "product_of_marginals",
    "sample_joint",
    "sample_triple",
    "FlowNetwork",
    "NetworkReport",
    "indices",
    "network_asymmetry",
    "to_joint",
    "vitality_coordinates",
    "Given",
    "MeasureReport",
    "asymmetry_report",
    "conditional_entropy",
    "entropy",
    "identity_residuals",
    "information_content",
    "joint_entropy",
    "measure_report",
    "mutual_information",
    "surprisal_bound_counterexample",
    "variation_of_information",
    "BIT",
    "BYTE",
    "CDROM",
    "CENT",
    "DECIBEL",
    "NAT",
    "Dimension",
    "DimensionError",
    "DimQuantity",
    "FlowInfoQuantity",
    "InfoQuantity",
    "InfoUnit",
    "checked_add",
    "convert_flow_info",
    "convert_info",
    "parse_dimension",
    "parse_info_unit",
]
