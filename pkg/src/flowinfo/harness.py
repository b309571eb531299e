"""Randomized verification of the information identities.

Each check reports its largest residual; a check fails when that residual
exceeds the configured tolerance.  Residuals are one-sided where the
identity is an inequality (e.g. ``max(0, -I)`` for Gibbs nonnegativity).
Runs are deterministic in the seed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import BACKEND, kernels
from .dist import (
    RNG_ALGORITHM,
    JointDistribution,
    Marginal,
    diagonal_coupling,
    make_rng,
    pairwise_joint,
    product_of_marginals,
    sample_joint,
    sample_simplex,
    sample_triple,
)
from .flownet import FlowNetwork, indices

__all__ = ["HarnessConfig", "CheckResult", "HarnessResult", "run_checks", "parse_sizes", "DEFAULT_SIZES"]

DEFAULT_SIZES = ((2, 2), (3, 3), (4, 7), (10, 10))
TRIPLE_SHAPES = ((2, 2, 2), (3, 3, 3))
IDENTITY_TOLERANCE = 1e-12
INTENSIVITY_FACTORS = (0.001, 1e6)
NETWORK_SIZES = (2, 12)


def parse_sizes(text: str) -> tuple[tuple[int, int], ...]:
    """``"2x2,4x7"`` -> ``((2, 2), (4, 7))``."""
    out = []
    for part in text.split(","):
        part = part.strip().lower()
        try:
            r, c = (int(x) for x in part.split("x"))
        except ValueError:
            raise ValueError(f"bad size {part!r}; expected ROWSxCOLS") from None
        if r < 1 or c < 1:
            raise ValueError(f"bad size {part!r}; sizes must be positive")
        out.append((r, c))
    if not out:
        raise ValueError("no sizes given")
    return tuple(out)


@dataclass(frozen=True)
class HarnessConfig:
    seed: int = 0
    trials: int = 10_000
    sizes: tuple = DEFAULT_SIZES
    tolerance_bits: float = 1e-9

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.tolerance_bits > 0:
            raise ValueError("tolerance_bits must be > 0")
        object.__setattr__(self, "sizes", tuple(tuple(s) for s in self.sizes))

    def command_line(self) -> str:
        sizes = ",".join(f"{r}x{c}" for r, c in self.sizes)
        return (
            f"flowinfo check --seed {self.seed} --trials {self.trials} "
            f"--sizes {sizes} --tolerance-bits {self.tolerance_bits!r}"
        )


@dataclass
class CheckResult:
    name: str
    tolerance: float
    trials: int = 0
    max_residual: float = 0.0
    worst: np.ndarray = None  # distribution that produced max_residual
    first_violation: np.ndarray = None
    unit: str = "bit"

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def record(self, residual: float, probs) -> None:
        self.trials += 1
        if math.isnan(residual):
            residual = math.inf
        if self.worst is None or residual > self.max_residual:
            self.max_residual = residual
            self.worst = np.array(probs, copy=True)
        if residual > self.tolerance and self.first_violation is None:
            self.first_violation = np.array(probs, copy=True)


@dataclass
class HarnessResult:
    config: HarnessConfig
    checks: list = field(default_factory=list)
    backend: str = BACKEND
    rng: str = RNG_ALGORITHM

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _joint_suite(J: JointDistribution, checks: dict) -> None:
    P, r, c = J.probs, J.row_probs, J.col_probs
    h, mi, yz, zy, vi = kernels.all_bits(P, r, c)
    hy = kernels.entropy_bits(r)
    hz = kernels.entropy_bits(c)
    Jt = J.transpose()
    mi_t = kernels.mutual_information_bits(Jt.probs, Jt.row_probs, Jt.col_probs)
    Q = product_of_marginals(J)
    h_indep = kernels.joint_entropy_bits(Q.probs)
    checks["gibbs_nonnegativity"].record(max(0.0, -mi), P)
    checks["entropy_nonnegativity"].record(max(0.0, -min(h, hy, hz, yz, zy)), P)
    checks["mi_symmetry"].record(abs(mi - mi_t), P)
    checks["chain_rule_y_given_z"].record(abs(h - yz - hz), P)
    checks["chain_rule_z_given_y"].record(abs(h - zy - hy), P)
    checks["decomposition_h_eq_i_plus_vi"].record(abs(h - mi - vi), P)
    checks["additivity_independent"].record(abs(h_indep - hy - hz), P)


def _vi(J: JointDistribution) -> float:
    return kernels.variation_bits(J.probs, J.row_probs, J.col_probs)


def _triple_suite(T, checks: dict) -> None:
    vi = {}
    for a, b in itertools.permutations(range(3), 2):
        vi[a, b] = _vi(pairwise_joint(T, a, b))
    checks["vi_nonnegativity"].record(max(0.0, -min(vi.values())), T.probs)
    checks["vi_symmetry"].record(max(abs(vi[a, b] - vi[b, a]) for a, b in vi), T.probs)
    slack = min(vi[a, m] + vi[m, b] - vi[a, b] for a, m, b in itertools.permutations(range(3)))
    checks["vi_triangle"].record(max(0.0, -slack), T.probs)


def _random_network(rng: np.random.Generator) -> FlowNetwork:
    k = int(rng.integers(NETWORK_SIZES[0], NETWORK_SIZES[1] + 1))
    T = rng.standard_exponential((k, k)) * 10.0 ** rng.uniform(-3, 3)
    T[rng.random((k, k)) < 0.25] = 0.0
    if not T.any():
        T[0, 0] = 1.0
    return FlowNetwork(None, T)


def _rel(a: float, b: float, scale: float = 0.0) -> float:
    """Relative difference; ``scale`` floors the denominator for near-zero parts."""
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b), scale)


def _network_suite(N: FlowNetwork, checks: dict) -> None:
    rep = indices(N)
    m = rep.measures
    A, Phi, C = rep.ascendency.value, rep.reserve.value, rep.capacity.value
    checks["network_decomposition"].record(_rel(A + Phi, C), N.flows)
    n, c = rep.vitality_n, rep.vitality_c
    checks["vitality_consistency"].record(_rel(n * c * c, 2.0 ** m.bits("h_joint")), N.flows)
    checks["vitality_lower_bound"].record(max(0.0, 1.0 - n, 1.0 - c), N.flows)
    worst_bits = worst_rel = 0.0
    for lam in INTENSIVITY_FACTORS:
        rs = indices(N.scaled(lam))
        ms = rs.measures
        for name in ("mi", "vi", "h_joint"):
            worst_bits = max(worst_bits, abs(ms.bits(name) - m.bits(name)))
        worst_rel = max(
            worst_rel,
            _rel(rs.vitality_n, n),
            _rel(rs.vitality_c, c),
            # A and Phi are parts of C, so C sets their scale
            _rel(rs.ascendency.value, lam * A, lam * C),
            _rel(rs.reserve.value, lam * Phi, lam * C),
            _rel(rs.capacity.value, lam * C),
        )
    checks["intensivity_measures"].record(worst_bits, N.flows)
    checks["extensivity_products"].record(worst_rel, N.flows)


def run_checks(config: HarnessConfig = HarnessConfig()) -> HarnessResult:
    tol = config.tolerance_bits
    rng = make_rng(config.seed)
    result = HarnessResult(config)

    def new(name, tolerance=tol, unit="bit"):
        chk = CheckResult(name, tolerance, unit=unit)
        result.checks.append(chk)
        return chk

    # Shannon's monotonicity axiom on uniform distributions
    mono = new("entropy_monotonicity_uniform_1_64")
    prev = None
    for n in range(1, 65):
        h = kernels.entropy_bits(Marginal.uniform(n).probs)
        # strictness has no tolerance: any non-increase is a violation
        mono.record(0.0 if prev is None or h > prev else math.inf, [n])
        prev = h

    for rows, cols in config.sizes:
        tag = f"[{rows}x{cols}]"
        names = (
            "gibbs_nonnegativity",
            "entropy_nonnegativity",
            "mi_symmetry",
            "chain_rule_y_given_z",
            "chain_rule_z_given_y",
            "decomposition_h_eq_i_plus_vi",
            "additivity_independent",
        )
        checks = {n: new(n + tag) for n in names}
        for _ in range(config.trials):
            _joint_suite(sample_joint(rows, cols, rng), checks)

    for shape in TRIPLE_SHAPES:
        tag = "[" + "x".join(map(str, shape)) + "]"
        checks = {n: new(n + tag) for n in ("vi_nonnegativity", "vi_symmetry", "vi_triangle")}
        ident = new("vi_identity_diagonal" + tag, min(tol, IDENTITY_TOLERANCE))
        for _ in range(config.trials):
            _triple_suite(sample_triple(shape, rng), checks)
            m = Marginal(sample_simplex(shape[0], rng))
            ident.record(abs(_vi(diagonal_coupling(m))), m.probs)

    names = (
        ("network_decomposition", "relative"),
        ("vitality_consistency", "relative"),
        ("vitality_lower_bound", "absolute"),
        ("intensivity_measures", "bit"),
        ("extensivity_products", "relative"),
    )
    checks = {n: new(n, unit=u) for n, u in names}
    for _ in range(config.trials):
        _network_suite(_random_network(rng), checks)
    return result
