"""Finite discrete distributions over one, two or three random variables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "DistributionError",
    "ArgumentError",
    "SUM_TOLERANCE",
    "RNG_ALGORITHM",
    "Marginal",
    "JointDistribution",
    "TripleJoint",
    "make_rng",
    "from_weights",
    "product_of_marginals",
    "sample_simplex",
    "sample_joint",
    "sample_triple",
    "pairwise_joint",
    "diagonal_coupling",
]

SUM_TOLERANCE = 1e-9
RNG_ALGORITHM = "numpy.random.PCG64"


class DistributionError(ValueError):
    pass


class ArgumentError(ValueError):
    pass


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64, order="C", copy=True)
    arr.setflags(write=False)
    return arr


def _check_probs(probs: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(probs)):
        raise DistributionError(f"{what}: probabilities must be finite")
    if np.any(probs < 0):
        raise DistributionError(f"{what}: negative probability")
    total = float(probs.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise DistributionError(f"{what}: probabilities sum to {total!r}, not 1")


def _labels(labels, n: int, what: str) -> tuple:
    if labels is None:
        return tuple(str(i) for i in range(n))
    labels = tuple(labels)
    if len(labels) != n:
        raise DistributionError(f"{what}: {len(labels)} labels for {n} outcomes")
    return labels


@dataclass(frozen=True, eq=False)
class Marginal:
    """Distribution of a single random variable."""

    probs: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        p = _frozen(self.probs)
        if p.ndim != 1 or p.size == 0:
            raise DistributionError("marginal needs a non-empty 1-d probability vector")
        _check_probs(p, "marginal")
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "labels", _labels(self.labels, p.size, "marginal"))

    @classmethod
    def uniform(cls, n: int) -> Marginal:
        return cls(np.full(n, 1.0 / n))

    def __len__(self):
        return self.probs.size


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Joint distribution of Y (rows) and Z (columns).

    Rows and columns need not share an outcome set.  Arrays are stored
    read-only and C-contiguous so kernels can take them without copying.
    """

    probs: np.ndarray
    row_labels: tuple = None
    col_labels: tuple = None

    def __post_init__(self):
        p = _frozen(self.probs)
        if p.ndim != 2 or p.size == 0:
            raise DistributionError("joint distribution needs a non-empty 2-d matrix")
        _check_probs(p, "joint distribution")
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "row_labels", _labels(self.row_labels, p.shape[0], "rows"))
        object.__setattr__(self, "col_labels", _labels(self.col_labels, p.shape[1], "columns"))
        rows = p.sum(axis=1)
        cols = p.sum(axis=0)
        rows.setflags(write=False)
        cols.setflags(write=False)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_cols", cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.probs.shape

    @property
    def row_probs(self) -> np.ndarray:
        """p_i. = sum over columns."""
        return self._rows

    @property
    def col_probs(self) -> np.ndarray:
        """p_.j = sum over rows."""
        return self._cols

    def row_marginal(self) -> Marginal:
        return Marginal(self._rows, self.row_labels)

    def col_marginal(self) -> Marginal:
        return Marginal(self._cols, self.col_labels)

    def transpose(self) -> JointDistribution:
        return JointDistribution(self.probs.T, self.col_labels, self.row_labels)

    @property
    def T(self) -> JointDistribution:
        return self.transpose()


@dataclass(frozen=True, eq=False)
class TripleJoint:
    probs: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        p = _frozen(self.probs)
        if p.ndim != 3 or p.size == 0:
            raise DistributionError("triple joint needs a non-empty 3-d array")
        _check_probs(p, "triple joint")
        object.__setattr__(self, "probs", p)
        if self.labels is None:
            labels = tuple(tuple(str(i) for i in range(n)) for n in p.shape)
        else:
            labels = tuple(tuple(ax) for ax in self.labels)
            if len(labels) != 3 or any(len(ax) != n for ax, n in zip(labels, p.shape)):
                raise DistributionError("triple joint: label axes do not match shape")
        object.__setattr__(self, "labels", labels)

    @property
    def shape(self):
        return self.probs.shape


def make_rng(seed) -> np.random.Generator:
    """Seed -> generator; an existing Generator is passed through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def from_weights(w, row_labels: Sequence | None = None, col_labels: Sequence | None = None) -> JointDistribution:
    """Normalize a nonnegative weight matrix into a joint distribution."""
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2:
        raise DistributionError("weights must be a 2-d matrix")
    if not np.all(np.isfinite(w)):
        raise DistributionError("weights must be finite")
    if np.any(w < 0):
        raise DistributionError("negative weight")
    total = w.sum()
    if not total > 0:
        raise DistributionError("weights sum to zero")
    return JointDistribution(w / total, row_labels, col_labels)


def product_of_marginals(J: JointDistribution) -> JointDistribution:
    """The independent joint with the same marginals as ``J``."""
    return JointDistribution(np.outer(J.row_probs, J.col_probs), J.row_labels, J.col_labels)


def sample_simplex(shape, rng) -> np.ndarray:
    """Uniform draw from the probability simplex, reshaped to ``shape``.

    Normalized i.i.d. standard exponentials are Dirichlet(1, ..., 1).
    """
    rng = make_rng(rng)
    e = rng.standard_exponential(size=shape)
    return e / e.sum()


def sample_joint(rows: int, cols: int, rng) -> JointDistribution:
    if rows < 1 or cols < 1:
        raise ArgumentError("rows and cols must be >= 1")
    return JointDistribution(sample_simplex((rows, cols), rng))


def sample_triple(shape: tuple[int, int, int], rng) -> TripleJoint:
    if len(shape) != 3 or min(shape) < 1:
        raise ArgumentError("triple shape needs three positive sizes")
    return TripleJoint(sample_simplex(tuple(shape), rng))


def pairwise_joint(T: TripleJoint, axis_a: int, axis_b: int) -> JointDistribution:
    """Marginalize out the third axis; result rows follow ``axis_a``."""
    if axis_a == axis_b:
        raise ArgumentError("axis_a and axis_b must differ")
    if {axis_a, axis_b} - {0, 1, 2}:
        raise ArgumentError("axes must be 0, 1 or 2")
    (other,) = {0, 1, 2} - {axis_a, axis_b}
    p = T.probs.sum(axis=other)
    # remaining axes keep their relative order after the sum
    if axis_a > axis_b:
        p = p.T
    return JointDistribution(p, T.labels[axis_a], T.labels[axis_b])


def diagonal_coupling(m: Marginal) -> JointDistribution:
    """Joint of a variable with itself: Y = Z with the law of ``m``."""
    return JointDistribution(np.diag(m.probs), m.labels, m.labels)
