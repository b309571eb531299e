"""Flow networks and the flow-scaled indices built on them.

A network's flow matrix T (row = origin Y, column = destination Z) is read
as the joint distribution p_ij = T_ij / T.., the usual convention of
ecological network analysis.  From it:

* capacity   C = T.. * H(Y,Z)
* ascendency A = T.. * I(Y;Z)
* reserve    Phi = T.. * VI(Y,Z)

so A + Phi = C.  The dimensionless H, I and VI are always reported too;
they are intensive and comparable across systems, the flow-scaled products
are not.

Window-of-vitality coordinates use the dimensionless exponents
n = 2**I and c = 2**(VI/2), with I and VI in bits.  Read literally, the
formulas usually quoted put the flow-scaled A and Phi in the exponent,
which is dimensionally meaningless; using I and VI is the conjectured
intended reading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import JointDistribution
from .infometrics import AsymmetryReport, MeasureReport, asymmetry_report, measure_report
from .logunits import (
    BIT,
    DIMENSIONLESS,
    Dimension,
    DimQuantity,
    FlowInfoQuantity,
    InfoUnit,
    parse_dimension,
    parse_info_unit,
)

__all__ = [
    "NetworkError",
    "FlowNetwork",
    "NetworkReport",
    "VITALITY_READING",
    "to_joint",
    "indices",
    "vitality_coordinates",
    "network_asymmetry",
    "prune_isolated",
    "from_matrix",
]

VITALITY_READING = "n = 2^X, c = 2^(Psi/2) with dimensionless X, Psi in bits (conjectured reading of n = 2^A, c = 2^(Phi/2))"
ASYMMETRY_LABELS = ("origin|destination", "destination|origin")


class NetworkError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FlowNetwork:
    node_labels: tuple
    flows: np.ndarray
    flow_dimension: Dimension = DIMENSIONLESS
    flow_scale: int = 0

    def __post_init__(self):
        T = np.array(self.flows, dtype=np.float64, order="C", copy=True)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.size == 0:
            raise NetworkError(f"flow matrix must be square and non-empty, got shape {T.shape}")
        labels = tuple(self.node_labels) if self.node_labels is not None else tuple(str(i) for i in range(T.shape[0]))
        if len(labels) != T.shape[0]:
            raise NetworkError(f"{len(labels)} labels for {T.shape[0]} nodes")
        if len(set(labels)) != len(labels):
            raise NetworkError("node labels must be unique")
        if not np.all(np.isfinite(T)):
            raise NetworkError("flows must be finite")
        if np.any(T < 0):
            i, j = np.argwhere(T < 0)[0]
            raise NetworkError(f"negative flow {labels[i]} -> {labels[j]}")
        T.setflags(write=False)
        object.__setattr__(self, "flows", T)
        object.__setattr__(self, "node_labels", labels)
        object.__setattr__(self, "flow_scale", int(self.flow_scale))

    @property
    def size(self) -> int:
        return len(self.node_labels)

    @property
    def total(self) -> float:
        return math.fsum(self.flows.ravel().tolist())

    def scaled(self, factor: float) -> FlowNetwork:
        return FlowNetwork(self.node_labels, self.flows * factor, self.flow_dimension, self.flow_scale)


def to_joint(N: FlowNetwork) -> JointDistribution:
    total = N.total
    if not total > 0:
        raise NetworkError("network has zero total throughput")
    return JointDistribution(N.flows / total, N.node_labels, N.node_labels)


@dataclass(frozen=True)
class NetworkReport:
    t_total: DimQuantity
    measures: MeasureReport
    ascendency: FlowInfoQuantity
    reserve: FlowInfoQuantity
    capacity: FlowInfoQuantity
    vitality_n: float
    vitality_c: float
    asymmetry: AsymmetryReport = None


def _vitality(measures: MeasureReport) -> tuple[float, float]:
    # exponents always in bits, whatever unit the report uses
    x = measures.bits("mi")
    psi = measures.bits("vi")
    return 2.0**x, 2.0 ** (psi / 2.0)


def indices(N: FlowNetwork, unit: InfoUnit | str = BIT) -> NetworkReport:
    unit = parse_info_unit(unit)
    J = to_joint(N)
    m = measure_report(J, unit)
    t = DimQuantity(N.total, N.flow_scale, N.flow_dimension)
    A = FlowInfoQuantity.product(t, m.mi)
    Phi = FlowInfoQuantity.product(t, m.vi)
    C = FlowInfoQuantity.product(t, m.h_joint)
    n, c = _vitality(m)
    asym = asymmetry_report(J, unit, ASYMMETRY_LABELS)
    return NetworkReport(t, m, A, Phi, C, n, c, asym)


def vitality_coordinates(N: FlowNetwork) -> tuple[float, float]:
    """(n, c) = (2**I, 2**(VI/2)); invariant under T -> lambda T."""
    return _vitality(measure_report(to_joint(N), BIT))


def network_asymmetry(N: FlowNetwork, unit: InfoUnit | str = BIT) -> AsymmetryReport:
    return asymmetry_report(to_joint(N), unit, ASYMMETRY_LABELS)


def prune_isolated(N: FlowNetwork) -> FlowNetwork:
    """Drop nodes with no inflow and no outflow."""
    T = N.flows
    keep = (T.sum(axis=0) > 0) | (T.sum(axis=1) > 0)
    idx = np.flatnonzero(keep)
    labels = [N.node_labels[i] for i in idx]
    return FlowNetwork(labels, T[np.ix_(idx, idx)], N.flow_dimension, N.flow_scale)


def from_matrix(flows, labels: Sequence | None = None, unit: str = "") -> FlowNetwork:
    """Convenience constructor taking a dimension string."""
    dim, scale = parse_dimension(unit)
    T = np.asarray(flows, dtype=np.float64)
    labels = labels if labels is not None else [str(i) for i in range(T.shape[0])]
    return FlowNetwork(tuple(labels), T, dim, scale)
