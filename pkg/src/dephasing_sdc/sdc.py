"""Superdense coding through two locally dephased photons.

Alice and Bob share ``Phi+``. Alice's photon sees noise for ``t1`` before her
encoding and ``t3`` after it; Bob's photon sees ``t2`` and ``t4``. Each noise
period is a duration fraction times the scan parameter ``t``. After Alice's
encoding the four messages end up as Bell-diagonal states whose only
non-zero coherences have magnitudes ``|k|`` (messages 0, 3) and ``|h|``
(messages 1, 2), and Bob decodes with a Bell measurement.

A polarization flip in the encoding swaps which component picks up Alice's
phase, so the noise before and after a flip partially cancels (an echo).
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from . import rng
from .numerics import DomainError, ValidationError, binary_entropy
from .spectra import DoublePeakSpectrum, TimeGrid, check_time, magnitude, sample_frequencies

SDC_MARKOVIAN_AMP = 0.004
SDC_NON_MARKOVIAN_AMP = 0.390

STOCHASTIC_TOL = 1e-10


@dataclass(frozen=True)
class NoiseSchedule:
    """Noise durations ``t_i = f_i * t`` for Alice-before, Bob, Alice-after, Bob."""

    f1: float
    f2: float
    f3: float
    f4: float
    preset: str = "custom"

    def __post_init__(self):
        for name in ("f1", "f2", "f3", "f4"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{name} must be finite and >= 0")
            object.__setattr__(self, name, v)
        if self.preset not in ("a", "b", "c", "d", "custom"):
            raise ValueError(f"unknown preset tag {self.preset!r}")


PRESETS = {
    "a": NoiseSchedule(0.0, 0.0, 1.0, 0.0, "a"),
    "b": NoiseSchedule(0.5, 0.0, 0.5, 0.0, "b"),
    "c": NoiseSchedule(0.5, 0.5, 0.5, 0.5, "c"),
    "d": NoiseSchedule(0.5, 0.5, 0.5, 0.5, "d"),
}


def schedule(preset) -> NoiseSchedule:
    if isinstance(preset, NoiseSchedule):
        return preset
    try:
        return PRESETS[preset]
    except KeyError:
        raise ValueError(f"unknown preset {preset!r}; expected one of a, b, c, d") from None


@dataclass(frozen=True)
class EncodingOp:
    k: int

    def __post_init__(self):
        if self.k not in (0, 1, 2, 3):
            raise ValueError("encoding index must be 0, 1, 2 or 3")

    @property
    def flips_polarization(self) -> bool:
        return self.k in (1, 2)

    @property
    def coherence_sign(self) -> int:
        return 1 if self.k in (0, 1) else -1

    @property
    def matrix(self) -> np.ndarray:
        """Alice's unitary with trivial phase functions (I, X, Y, Z)."""
        return _ENCODINGS[self.k]


_ENCODINGS = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# Bell patterns in message order Phi+, Psi+, Psi-, Phi- (basis HH, HV, VH, VV)
_BELL_SIGNS = np.array([
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 1, -1, 0],
    [1, 0, 0, -1],
], dtype=complex)
BELL_VECTORS = _BELL_SIGNS / np.sqrt(2.0)


def bell_projectors() -> np.ndarray:
    """The four Bell projectors; entries are exactly 0 or +-1/2."""
    return 0.5 * np.einsum("yi,yj->yij", _BELL_SIGNS, _BELL_SIGNS)


def effective_coherences(spec_a: DoublePeakSpectrum, spec_b: DoublePeakSpectrum,
                         sched: NoiseSchedule, t):
    """Coherence magnitudes ``(|h|, |k|)`` reaching Bob at scan time ``t``.

    Flip messages carry Alice's echo ``|f3 - f1| t``, the others her full
    ``(f1 + f3) t``; Bob's side always contributes ``(f2 + f4) t``.
    """
    t = check_time(t)
    bob = magnitude(spec_b, (sched.f2 + sched.f4) * t)
    h = magnitude(spec_a, abs(sched.f3 - sched.f1) * t) * bob
    k = magnitude(spec_a, (sched.f1 + sched.f3) * t) * bob
    if np.ndim(h) == 0:
        return float(h), float(k)
    return h, k


def _check_unit(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > 1 + 1e-12) or np.any(~np.isfinite(arr)):
        raise DomainError(f"{name} must lie in [0, 1]")
    return float(np.clip(arr, 0.0, 1.0))


def encoded_states(h_mag: float, k_mag: float) -> np.ndarray:
    """The four states Bob receives, shape ``(4, 4, 4)``, in message order 0..3."""
    h = _check_unit(h_mag, "h_mag")
    k = _check_unit(k_mag, "k_mag")
    rho = np.zeros((4, 4, 4), dtype=complex)
    for x, c in ((0, k), (3, -k)):
        rho[x, 0, 0] = rho[x, 3, 3] = 0.5
        rho[x, 0, 3] = rho[x, 3, 0] = 0.5 * c
    for x, c in ((1, h), (2, -h)):
        rho[x, 1, 1] = rho[x, 2, 2] = 0.5
        rho[x, 1, 2] = rho[x, 2, 1] = 0.5 * c
    return rho


def conditional_probabilities(h_mag: float, k_mag: float) -> np.ndarray:
    """``P[x, y] = p(y | x)`` for a Bell measurement on the encoded states."""
    h = _check_unit(h_mag, "h_mag")
    k = _check_unit(k_mag, "k_mag")
    up_k, dn_k = (1 + k) / 2, (1 - k) / 2
    up_h, dn_h = (1 + h) / 2, (1 - h) / 2
    return np.array([
        [up_k, 0.0, 0.0, dn_k],
        [0.0, up_h, dn_h, 0.0],
        [0.0, dn_h, up_h, 0.0],
        [dn_k, 0.0, 0.0, up_k],
    ])


def mutual_information(P) -> float:
    """Mutual information in bits of a 4-message channel with uniform inputs."""
    P = np.asarray(P, dtype=float)
    if P.shape != (4, 4):
        raise ValidationError("expected a 4x4 conditional probability matrix")
    if np.any(P < -STOCHASTIC_TOL) or np.any(np.abs(P.sum(axis=1) - 1.0) > STOCHASTIC_TOL):
        raise ValidationError("P must be row-stochastic")
    P = np.clip(P, 0.0, None)
    p_y = 0.25 * P.sum(axis=0)
    total = 0.0
    for x in range(4):
        for y in range(4):
            if P[x, y] > 0:
                total += 0.25 * P[x, y] * np.log2(P[x, y] / p_y[y])
    return float(total)


def mutual_information_closed_form(h_mag, k_mag):
    """``2 - (H2((1 + |k|) / 2) + H2((1 + |h|) / 2)) / 2``, vectorized."""
    h = np.asarray(h_mag, dtype=float)
    k = np.asarray(k_mag, dtype=float)
    val = 2.0 - 0.5 * (binary_entropy((1 + k) / 2) + binary_entropy((1 + h) / 2))
    if np.ndim(val) == 0:
        return float(val)
    return val


@dataclass(frozen=True)
class SdcCurve:
    grid: TimeGrid
    h_mag: np.ndarray
    k_mag: np.ndarray
    mutual_info: np.ndarray

    def tail_mean(self, fraction: float = 0.05) -> float:
        """Mean mutual information over the last ``fraction`` of the grid samples."""
        n = max(1, int(round(fraction * self.grid.n_points)))
        return float(np.mean(self.mutual_info[-n:]))

    def to_csv(self, fh=None) -> str | None:
        """Write ``t,h_mag,k_mag,mutual_info`` rows with 17 significant digits."""
        out = io.StringIO() if fh is None else fh
        out.write("t,h_mag,k_mag,mutual_info\n")
        for row in zip(self.grid.samples, self.h_mag, self.k_mag, self.mutual_info):
            out.write(",".join(f"{v:.17g}" for v in row) + "\n")
        return out.getvalue() if fh is None else None

    def to_dict(self) -> dict:
        return {
            "t": self.grid.samples.tolist(),
            "h_mag": np.asarray(self.h_mag).tolist(),
            "k_mag": np.asarray(self.k_mag).tolist(),
            "mutual_info": np.asarray(self.mutual_info).tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def simulate_configuration(preset, spec_a: DoublePeakSpectrum, spec_b: DoublePeakSpectrum,
                           grid: TimeGrid) -> SdcCurve:
    sched = schedule(preset)
    if sched.preset == "d" and spec_a.amp_ratio == spec_b.amp_ratio:
        raise ValueError("preset d needs different amp_ratio on the two sides")
    h, k = effective_coherences(spec_a, spec_b, sched, grid.samples)
    return SdcCurve(grid, h, k, mutual_information_closed_form(h, k))


def dilation_oracle(spec_a: DoublePeakSpectrum, spec_b: DoublePeakSpectrum, sched: NoiseSchedule,
                    k: EncodingOp | int, t: float, n_samples: int, seed: int,
                    n_partitions: int = 1) -> np.ndarray:
    """Sample estimate of the state Bob receives for message ``k``.

    Draws photon frequencies, applies the frequency-dependent polarization
    phases and Alice's encoding to ``Phi+`` exactly, and averages the
    resulting projectors. The phase conventions of the encoding are dropped by
    replacing the surviving coherence with ``sign * |coherence|`` at the end.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    enc = k if isinstance(k, EncodingOp) else EncodingOp(int(k))
    t = float(check_time(t))
    t1, t2, t3, t4 = (f * t for f in (sched.f1, sched.f2, sched.f3, sched.f4))
    acc = np.zeros((4, 4), dtype=complex)
    for i, n_i in enumerate(rng.split_counts(n_samples, n_partitions)):
        gen = rng.stream(seed, i)
        w_a = sample_frequencies(spec_a, gen, n_i)
        w_b = sample_frequencies(spec_b, gen, n_i)
        rate_a = spec_a.delta_n * spec_a.time_scale * w_a
        rate_b = spec_b.delta_n * spec_b.time_scale * w_b
        # H picks up exp(i w dn t), V nothing; Phi+ -> U_A(t1) -> R_k -> U_A(t3), Bob U_B(t2 + t4)
        ph_a1 = np.exp(1j * rate_a * t1)
        ph_a3 = np.exp(1j * rate_a * t3)
        ph_b = np.exp(1j * rate_b * (t2 + t4))
        r = enc.matrix
        psi = np.empty((n_i, 4), dtype=complex)
        # unnormalized by 1/sqrt(2) so t = 0 stays exact; the 1/2 is applied below
        psi[:, 0] = r[0, 0] * ph_a1 * ph_a3 * ph_b  # HH
        psi[:, 1] = r[0, 1] * ph_a3                 # HV
        psi[:, 2] = r[1, 0] * ph_a1 * ph_b          # VH
        psi[:, 3] = r[1, 1]                         # VV
        acc += psi.T @ psi.conj()
    rho = 0.5 * (acc / n_samples)
    p, q = (1, 2) if enc.flips_polarization else (0, 3)
    rho[p, q] = rho[q, p] = enc.coherence_sign * abs(rho[p, q])
    return rho
