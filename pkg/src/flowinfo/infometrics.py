"""Information measures on discrete distributions.

Everything is accumulated in bits and converted to the requested unit once
at the end.  Zero-probability cells contribute nothing (0 log 0 = 0).

Public measures return :class:`~flowinfo.logunits.InfoQuantity`; tiny
negative round-off (e.g. a mutual information of -1e-17 bits) is clamped
to zero there.  The ``*_bits`` functions return the raw signed sums and are
what the identity harness inspects.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .dist import JointDistribution, Marginal
from .logunits import BIT, InfoQuantity, InfoUnit, parse_info_unit

__all__ = [
    "DomainError",
    "Given",
    "MeasureReport",
    "Residuals",
    "AsymmetryReport",
    "SurprisalGap",
    "information_content",
    "entropy",
    "joint_entropy",
    "mutual_information",
    "conditional_entropy",
    "variation_of_information",
    "asymmetry_report",
    "surprisal_bound_counterexample",
    "identity_residuals",
    "measure_report",
    "entropy_bits",
    "joint_entropy_bits",
    "mutual_information_bits",
    "conditional_entropy_bits",
    "variation_bits",
]


class DomainError(ValueError):
    pass


class Given(str, enum.Enum):
    """Direction of a conditional entropy."""

    Y_GIVEN_Z = "y_given_z"
    Z_GIVEN_Y = "z_given_y"


def _unit(unit) -> InfoUnit:
    return parse_info_unit(unit) if isinstance(unit, str) else unit


def _quantity(bits: float, unit) -> InfoQuantity:
    unit = _unit(unit)
    return InfoQuantity(max(bits, 0.0) / unit.bits_per_unit, unit)


# raw sums in bits -----------------------------------------------------------


def entropy_bits(m: Marginal) -> float:
    return kernels.entropy_bits(m.probs)


def joint_entropy_bits(J: JointDistribution) -> float:
    return kernels.joint_entropy_bits(J.probs)


def mutual_information_bits(J: JointDistribution) -> float:
    return kernels.mutual_information_bits(J.probs, J.row_probs, J.col_probs)


def conditional_entropy_bits(J: JointDistribution, direction: Given | str) -> float:
    given_z = Given(direction) is Given.Y_GIVEN_Z
    return kernels.conditional_entropy_bits(J.probs, J.row_probs, J.col_probs, given_z)


def variation_bits(J: JointDistribution) -> float:
    return kernels.variation_bits(J.probs, J.row_probs, J.col_probs)


# unit-tagged measures ---------------------------------------------------------


def information_content(p: float, unit: InfoUnit | str = BIT) -> InfoQuantity:
    """Surprisal -log p of an event; an impossible event has infinite surprisal."""
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"probability must lie in [0, 1], got {p!r}")
    unit = _unit(unit)
    if p == 0.0:
        return InfoQuantity(math.inf, unit)
    return _quantity(-math.log2(p), unit)


def entropy(m: Marginal, unit: InfoUnit | str = BIT) -> InfoQuantity:
    """Shannon entropy of a single variable.

    >>> entropy(Marginal([0.5, 0.25, 0.25])).value
    1.5
    """
    return _quantity(entropy_bits(m), unit)


def joint_entropy(J: JointDistribution, unit: InfoUnit | str = BIT) -> InfoQuantity:
    return _quantity(joint_entropy_bits(J), unit)


def mutual_information(J: JointDistribution, unit: InfoUnit | str = BIT) -> InfoQuantity:
    """Sum of p_ij log(p_ij / (p_i. p_.j)) over supported cells.

    Individual terms can be negative; the sum cannot (Gibbs' inequality).
    """
    return _quantity(mutual_information_bits(J), unit)


def conditional_entropy(J: JointDistribution, direction: Given | str, unit: InfoUnit | str = BIT) -> InfoQuantity:
    """H(Y|Z) or H(Z|Y); the direction must be explicit since they differ in general."""
    return _quantity(conditional_entropy_bits(J, direction), unit)


def variation_of_information(J: JointDistribution, unit: InfoUnit | str = BIT) -> InfoQuantity:
    """H(Y|Z) + H(Z|Y), evaluated as one sum of p log(p_i. p_.j / p^2)."""
    return _quantity(variation_bits(J), unit)


# reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class AsymmetryReport:
    """Both conditional entropies and their ratio, smaller side first.

    ``ratio`` is ``(1, larger/smaller)``; when the smaller side is zero the
    pair is reported structurally as ``(0, 1)`` (or ``(0, 0)`` if both are
    zero) and ``degenerate`` is set.
    """

    h_y_given_z: InfoQuantity
    h_z_given_y: InfoQuantity
    ratio: tuple[float, float]
    smaller: Given
    degenerate: bool
    labels: tuple[str, str] = ("Y|Z", "Z|Y")

    def label_of(self, direction: Given) -> str:
        return self.labels[0] if direction is Given.Y_GIVEN_Z else self.labels[1]

    def ratio_text(self, precision: int = 3) -> str:
        a, b = self.ratio
        return f"{a:.{precision}g}:{b:.{precision}g}"


def asymmetry_report(J: JointDistribution, unit: InfoUnit | str = BIT, labels=("Y|Z", "Z|Y")) -> AsymmetryReport:
    yz = conditional_entropy_bits(J, Given.Y_GIVEN_Z)
    zy = conditional_entropy_bits(J, Given.Z_GIVEN_Y)
    yz, zy = max(yz, 0.0), max(zy, 0.0)
    if yz <= zy:
        smaller, lo, hi = Given.Y_GIVEN_Z, yz, zy
    else:
        smaller, lo, hi = Given.Z_GIVEN_Y, zy, yz
    if lo == 0.0:
        ratio, degenerate = ((0.0, 0.0) if hi == 0.0 else (0.0, 1.0)), True
    else:
        ratio, degenerate = (1.0, hi / lo), False
    return AsymmetryReport(_quantity(yz, unit), _quantity(zy, unit), ratio, smaller, degenerate, tuple(labels))


class SurprisalGap(NamedTuple):
    """Smallest p_ij - p_i. p_.j and the first (row-major) cell attaining it."""

    min_gap: float
    cell: tuple[int, int]


def surprisal_bound_counterexample(J: JointDistribution) -> SurprisalGap:
    """Test the claim that joint surprisal is maximal under independence.

    That claim is equivalent to p_ij >= p_i. p_.j in every cell.  A negative
    ``min_gap`` is a cell where it fails, i.e. where s_ij exceeds the
    supposed maximum -log(p_i. p_.j).
    """
    gaps = J.probs - np.outer(J.row_probs, J.col_probs)
    k = int(np.argmin(gaps))  # argmin returns the first occurrence, C order
    i, j = divmod(k, J.shape[1])
    return SurprisalGap(float(gaps[i, j]), (i, j))


@dataclass(frozen=True)
class Residuals:
    """Absolute identity residuals in bits, from independently evaluated sums."""

    chain_y_given_z: float  # |H(Y,Z) - H(Y|Z) - H(Z)|
    chain_z_given_y: float  # |H(Y,Z) - H(Z|Y) - H(Y)|
    decomposition: float  # |H(Y,Z) - I - VI|
    symmetry: float  # |I(Y;Z) - I(Z;Y)| with Z;Y from the transposed matrix

    @property
    def chain_rule(self) -> float:
        return max(self.chain_y_given_z, self.chain_z_given_y)

    def max(self) -> float:
        return max(self.chain_y_given_z, self.chain_z_given_y, self.decomposition, self.symmetry)

    def as_dict(self) -> dict[str, float]:
        return {
            "chain_y_given_z": self.chain_y_given_z,
            "chain_z_given_y": self.chain_z_given_y,
            "decomposition": self.decomposition,
            "symmetry": self.symmetry,
        }


def _residuals_from(J: JointDistribution, raw) -> Residuals:
    h, mi, yz, zy, vi = raw
    hy = kernels.entropy_bits(J.row_probs)
    hz = kernels.entropy_bits(J.col_probs)
    Jt = J.transpose()
    mi_t = kernels.mutual_information_bits(Jt.probs, Jt.row_probs, Jt.col_probs)
    return Residuals(abs(h - yz - hz), abs(h - zy - hy), abs(h - mi - vi), abs(mi - mi_t))


def _raw(J: JointDistribution):
    return (
        joint_entropy_bits(J),
        mutual_information_bits(J),
        conditional_entropy_bits(J, Given.Y_GIVEN_Z),
        conditional_entropy_bits(J, Given.Z_GIVEN_Y),
        variation_bits(J),
    )


def identity_residuals(J: JointDistribution) -> Residuals:
    return _residuals_from(J, _raw(J))


@dataclass(frozen=True)
class MeasureReport:
    unit: InfoUnit
    h_y: InfoQuantity
    h_z: InfoQuantity
    h_joint: InfoQuantity
    mi: InfoQuantity
    h_y_given_z: InfoQuantity
    h_z_given_y: InfoQuantity
    vi: InfoQuantity
    residual_chain_rule: float
    residual_decomposition: float
    residuals: Residuals = None
    raw_bits: dict = None

    def bits(self, name: str) -> float:
        """Value of measure ``name`` in bits, clamped at zero, without unit round-off."""
        return max(self.raw_bits[name], 0.0)


def measure_report(J: JointDistribution, unit: InfoUnit | str = BIT) -> MeasureReport:
    unit = _unit(unit)
    raw = _raw(J)
    h, mi, yz, zy, vi = raw
    res = _residuals_from(J, raw)
    hy = kernels.entropy_bits(J.row_probs)
    hz = kernels.entropy_bits(J.col_probs)
    raw_bits = dict(h_y=hy, h_z=hz, h_joint=h, mi=mi, h_y_given_z=yz, h_z_given_y=zy, vi=vi)
    return MeasureReport(
        unit=unit,
        h_y=_quantity(hy, unit),
        h_z=_quantity(hz, unit),
        h_joint=_quantity(h, unit),
        mi=_quantity(mi, unit),
        h_y_given_z=_quantity(yz, unit),
        h_z_given_y=_quantity(zy, unit),
        vi=_quantity(vi, unit),
        residual_chain_rule=res.chain_rule,
        residual_decomposition=res.decomposition,
        residuals=res,
        raw_bits=raw_bits,
    )
