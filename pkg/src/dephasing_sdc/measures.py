"""Capacity-based (BCM) and trace-distance-based (BLP) non-Markovianity diagnostics.

Both measures reduce to accumulating the rises of a sampled curve: the
two-qubit capacity for BCM, and the trace distance between a pair of evolving
states for BLP. Neither value is computed exactly here; the BCM side only
needs to know whether the capacity ever grows, and the BLP side is bounded
from below by explicit state pairs plus a numerical search.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .channels import CapacityTrace, DephasingPair, capacity_trace, dephasing_mask
from .numerics import EPS_INC, check_density, hermitian_eigenvalues, increase_runs, positive_increase_sum
from .spectra import DoublePeakSpectrum, TimeGrid, characteristic_fn, magnitude


class Behavior(str, enum.Enum):
    MARKOVIAN = "Markovian"
    NON_MARKOVIAN = "nonMarkovian"

    @classmethod
    def from_rises(cls, total: float, eps: float = EPS_INC) -> "Behavior":
        return cls.NON_MARKOVIAN if total > eps else cls.MARKOVIAN


@dataclass
class MeasureReport:
    bcm_detected: bool = False
    bcm_increase_sum: float = 0.0
    bcm_literal_integral: float = 0.0
    blp_bound_a: float = 0.0
    blp_bound_b: float = 0.0
    blp_detected: bool = False
    increase_intervals: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "bcm_detected": bool(self.bcm_detected),
            "bcm_increase_sum": float(self.bcm_increase_sum),
            "bcm_literal_integral": float(self.bcm_literal_integral),
            "blp_bound_a": float(self.blp_bound_a),
            "blp_bound_b": float(self.blp_bound_b),
            "blp_detected": bool(self.blp_detected),
            "increase_intervals": [[float(a), float(b)] for a, b in self.increase_intervals],
        }


REPORT_KEYS = frozenset(MeasureReport().to_dict())


@dataclass(frozen=True)
class CombinationVerdict:
    local_a: Behavior
    local_b: Behavior
    global_bcm: Behavior
    blp_detected: bool

    def to_dict(self) -> dict:
        return {
            "local_a": self.local_a.value,
            "local_b": self.local_b.value,
            "global_bcm": self.global_bcm.value,
            "blp_detected": bool(self.blp_detected),
        }


def bcm_scan(trace: CapacityTrace, eps: float = EPS_INC) -> MeasureReport:
    """BCM diagnostics of a capacity trace.

    ``bcm_increase_sum`` adds up the capacity rises; ``bcm_literal_integral``
    integrates the capacity itself (trapezoid rule) over the rising intervals.
    Detection keys on the former.
    """
    t = trace.grid.samples
    q = np.asarray(trace.q_ab, dtype=float)
    rises = positive_increase_sum(q, t, eps)
    literal = math.fsum(
        float(np.trapezoid(q[i:j + 1], t[i:j + 1])) for i, j in increase_runs(q, eps)
    )
    return MeasureReport(
        bcm_detected=rises.total > eps,
        bcm_increase_sum=rises.total,
        bcm_literal_integral=literal,
        increase_intervals=rises.intervals,
    )


def blp_product_bound(pair: DephasingPair, grid: TimeGrid, eps: float = EPS_INC) -> tuple[float, float]:
    """Lower bounds on the BLP measure from product probe pairs, one per side.

    Probing with ``|+><+| (x) 1/2`` against ``1/2 (x) 1/2`` makes the trace
    distance equal to half of that side's coherence magnitude, so each bound
    is the accumulated rise of ``magnitude / 2``.
    """
    t = grid.samples
    bound_a = positive_increase_sum(0.5 * magnitude(pair.spec_a, t), t, eps).total
    bound_b = positive_increase_sum(0.5 * magnitude(pair.spec_b, t), t, eps).total
    return bound_a, bound_b


def _distance_series(mask: np.ndarray, delta: np.ndarray) -> np.ndarray:
    evals = hermitian_eigenvalues(mask * delta)
    return np.clip(0.5 * np.sum(np.abs(evals), axis=-1), 0.0, 1.0)


def _kappas(pair: DephasingPair, grid: TimeGrid):
    t = grid.samples
    return characteristic_fn(pair.spec_a, t), characteristic_fn(pair.spec_b, t)


def trace_distance_dynamics(rho1, rho2, pair: DephasingPair, grid: TimeGrid) -> np.ndarray:
    """Trace distance between the two states evolved by the pair's channel at every grid time."""
    r1 = check_density(rho1)
    r2 = check_density(rho2)
    if r1.shape != (4, 4) or r2.shape != (4, 4):
        raise ValueError("trace distance dynamics needs two 4x4 density matrices")
    k1, k2 = _kappas(pair, grid)
    # the map is linear, so evolving the difference is enough
    return _distance_series(dephasing_mask(k1, k2), r1 - r2)


# probe states ---------------------------------------------------------------

_PLUS = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
_MINUS = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
_MIXED = 0.5 * np.eye(2, dtype=complex)


@dataclass(frozen=True)
class ProbePair:
    label: str
    rho1: np.ndarray
    rho2: np.ndarray

    def to_dict(self) -> dict:
        def enc(m):
            return {"re": np.real(m).tolist(), "im": np.imag(m).tolist()}
        return {"label": self.label, "rho1": enc(self.rho1), "rho2": enc(self.rho2)}


def seed_probe_pairs() -> list[ProbePair]:
    """Product pairs that certify local non-Markovianity on either side."""
    return [
        ProbePair("plus_mixed_vs_mixed_mixed (A)", np.kron(_PLUS, _MIXED), np.kron(_MIXED, _MIXED)),
        ProbePair("mixed_plus_vs_mixed_mixed (B)", np.kron(_MIXED, _PLUS), np.kron(_MIXED, _MIXED)),
        ProbePair("plus_plus_vs_minus_plus (A)", np.kron(_PLUS, _PLUS), np.kron(_MINUS, _PLUS)),
        ProbePair("plus_plus_vs_plus_minus (B)", np.kron(_PLUS, _PLUS), np.kron(_PLUS, _MINUS)),
        ProbePair("plus_plus_vs_minus_minus (AB)", np.kron(_PLUS, _PLUS), np.kron(_MINUS, _MINUS)),
    ]


def _orthonormal_pair(theta: np.ndarray):
    """Two orthonormal columns from 16 real parameters (Gram-Schmidt)."""
    v1 = theta[0:4] + 1j * theta[4:8]
    v2 = theta[8:12] + 1j * theta[12:16]
    n1 = np.linalg.norm(v1)
    if n1 < 1e-12:
        return None
    u1 = v1 / n1
    w = v2 - np.vdot(u1, v2) * u1
    n2 = np.linalg.norm(w)
    if n2 < 1e-12:
        return None
    return u1, w / n2


def _pure_pair(theta):
    frame = _orthonormal_pair(theta)
    if frame is None:
        return None
    u1, u2 = frame
    return np.outer(u1, u1.conj()), np.outer(u2, u2.conj())


def blp_search(pair: DephasingPair, grid: TimeGrid, n_restarts: int = 4, seed: int = 0, *,
               max_iter: int = 200, initial_step: float = 0.5, min_step: float = 1e-3,
               eps: float = EPS_INC) -> tuple[float, ProbePair]:
    """Numerical lower bound on the BLP measure.

    The product probe pairs from :func:`seed_probe_pairs` are scored first, so
    the result never falls below :func:`blp_product_bound`. Each restart then
    draws an orthogonal pair of pure states (Gaussian complex vectors,
    Gram-Schmidt, stream key ``(seed, restart)``) and climbs by coordinate
    ascent with step halving, at most ``max_iter`` coordinate moves.

    Returns the best accumulated trace-distance rise and the pair achieving it.
    """
    if n_restarts < 1:
        raise ValueError("n_restarts must be >= 1")
    t = grid.samples
    k1, k2 = _kappas(pair, grid)
    mask = dephasing_mask(k1, k2)

    def score(r1, r2):
        return positive_increase_sum(_distance_series(mask, r1 - r2), t, eps).total

    best_value = -1.0
    best = None
    for probe in seed_probe_pairs():
        v = score(probe.rho1, probe.rho2)
        if v > best_value:
            best_value, best = v, probe

    def objective(theta):
        states = _pure_pair(theta)
        return -1.0 if states is None else score(*states)

    for restart in range(n_restarts):
        theta = rng.box_muller(rng.stream(seed, restart), 16)
        value = objective(theta)
        step = initial_step
        j = 0
        since_gain = 0
        for _ in range(max_iter):
            if step < min_step:
                break
            improved = False
            for direction in (1.0, -1.0):
                trial = theta.copy()
                trial[j] += direction * step
                v = objective(trial)
                if v > value:
                    theta, value, improved = trial, v, True
                    break
            since_gain = 0 if improved else since_gain + 1
            if since_gain >= theta.size:
                step *= 0.5
                since_gain = 0
            j = (j + 1) % theta.size
        if value > best_value:
            r1, r2 = _pure_pair(theta)
            best_value, best = value, ProbePair(f"pure_orthogonal (restart {restart})", r1, r2)
    return best_value, best


def is_monotone(values, times, eps: float = EPS_INC) -> bool:
    return positive_increase_sum(values, times, eps).total <= eps


def classify_combination(pair: DephasingPair, grid: TimeGrid, eps: float = EPS_INC) -> CombinationVerdict:
    """Local and global behaviour of a pair of independent dephasing channels."""
    tr = capacity_trace(pair, grid)
    t = grid.samples
    local_a = Behavior.from_rises(positive_increase_sum(tr.q_a, t, eps).total, eps)
    local_b = Behavior.from_rises(positive_increase_sum(tr.q_b, t, eps).total, eps)
    report = bcm_scan(tr, eps)
    bound_a, bound_b = blp_product_bound(pair, grid, eps)
    return CombinationVerdict(
        local_a=local_a,
        local_b=local_b,
        global_bcm=Behavior.NON_MARKOVIAN if report.bcm_detected else Behavior.MARKOVIAN,
        blp_detected=max(bound_a, bound_b) > eps,
    )


def measure_report(pair: DephasingPair, grid: TimeGrid, eps: float = EPS_INC) -> MeasureReport:
    """BCM scan of the joint capacity plus both product BLP bounds."""
    report = bcm_scan(capacity_trace(pair, grid), eps)
    report.blp_bound_a, report.blp_bound_b = blp_product_bound(pair, grid, eps)
    report.blp_detected = max(report.blp_bound_a, report.blp_bound_b) > eps
    return report


class NoTransitionError(ValueError):
    """The magnitude stays monotone on the grid even at ``amp_ratio = 1``."""


def critical_amplitude(template: DoublePeakSpectrum, grid: TimeGrid, width: float = 1e-4,
                       eps: float = EPS_INC) -> float:
    """Smallest peak ratio at which the coherence magnitude stops decaying monotonically.

    Bisects ``amp_ratio`` on ``[0, 1]`` (``template.amp_ratio`` is ignored)
    until the bracket is narrower than ``width`` and returns its midpoint.
    """
    t = grid.samples

    def oscillates(a):
        return not is_monotone(magnitude(template.with_amp_ratio(a), t), t, eps)

    if not oscillates(1.0):
        raise NoTransitionError("no transition on grid: magnitude is monotone at amp_ratio = 1")
    if oscillates(0.0):
        raise ValueError("magnitude is already non-monotone at amp_ratio = 0")
    lo, hi = 0.0, 1.0
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if oscillates(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)

