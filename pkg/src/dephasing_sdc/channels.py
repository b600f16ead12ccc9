"""Local and two-qubit pure-dephasing maps and their quantum capacities.

Basis order for two qubits is HH, HV, VH, VV (Alice's letter first). The map
multiplies each coherence by the decoherence function of every qubit whose
letter differs between the row and column index; populations are untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import DomainError, binary_entropy
from .spectra import DoublePeakSpectrum, TimeGrid, magnitude

KAPPA_SLACK = 1e-12
MAG_SLACK = 1e-12

# bit of (Alice, Bob) letter per basis index: H -> 0, V -> 1
_LETTERS = np.array([[0, 0], [0, 1], [1, 0], [1, 1]])


def _check_kappa(kappa):
    k = np.asarray(kappa, dtype=complex)
    if np.any(np.abs(k) > 1.0 + KAPPA_SLACK):
        raise DomainError("|kappa| > 1: the dephasing map would not be CPTP")
    return k


def _local_factor(kappa, bits_row, bits_col):
    """Factor for one qubit: 1, kappa (H row, V col) or conj(kappa) (V row, H col)."""
    k = kappa[..., None, None]
    diff = bits_col[None, :] - bits_row[:, None]  # +1: row H col V
    return np.where(diff == 1, k, np.where(diff == -1, np.conj(k), 1.0))


def dephasing_mask(kappa1, kappa2):
    """4x4 (or stacked) multiplier matrix of the two-qubit dephasing map."""
    k1 = _check_kappa(kappa1)
    k2 = _check_kappa(kappa2)
    k1, k2 = np.broadcast_arrays(k1, k2)
    a = _local_factor(k1, _LETTERS[:, 0], _LETTERS[:, 0])
    b = _local_factor(k2, _LETTERS[:, 1], _LETTERS[:, 1])
    return a * b


def apply_dephasing(rho, kappa1, kappa2):
    """Two-qubit product dephasing: Alice's coherences scale with ``kappa1``, Bob's with ``kappa2``.

    ``kappa1``/``kappa2`` may be arrays of shape ``(T,)``; the result is then a
    stack of ``T`` states.
    """
    r = np.asarray(rho, dtype=complex)
    if r.shape[-2:] != (4, 4):
        raise ValueError("two-qubit dephasing needs a 4x4 density matrix")
    return dephasing_mask(kappa1, kappa2) * r


def apply_local_dephasing(rho, kappa):
    r = np.asarray(rho, dtype=complex)
    if r.shape[-2:] != (2, 2):
        raise ValueError("single-qubit dephasing needs a 2x2 density matrix")
    k = _check_kappa(kappa)[..., None, None]
    mask = np.where(np.array([[False, True], [False, False]]), k,
                    np.where(np.array([[False, False], [True, False]]), np.conj(k), 1.0))
    return mask * r


def _check_mag(m):
    arr = np.asarray(m, dtype=float)
    if np.any(arr < -MAG_SLACK) or np.any(arr > 1.0 + MAG_SLACK) or np.any(~np.isfinite(arr)):
        raise DomainError("coherence magnitude must lie in [0, 1]")
    return np.clip(arr, 0.0, 1.0)


def capacity_single(mag):
    """Quantum capacity of a qubit dephasing channel, ``1 - H2((1 + |kappa|) / 2)``."""
    m = _check_mag(mag)
    q = 1.0 - binary_entropy((1.0 + m) / 2.0)
    if np.ndim(q) == 0:
        return float(q)
    return q


def capacity_two_qubit(mag1, mag2):
    m1 = _check_mag(mag1)
    m2 = _check_mag(mag2)
    q = 2.0 - binary_entropy((1.0 + m1) / 2.0) - binary_entropy((1.0 + m2) / 2.0)
    if np.ndim(q) == 0:
        return float(q)
    return q


@dataclass(frozen=True)
class DephasingPair:
    spec_a: DoublePeakSpectrum
    spec_b: DoublePeakSpectrum

    def swapped(self) -> "DephasingPair":
        return DephasingPair(self.spec_b, self.spec_a)


@dataclass(frozen=True)
class CapacityTrace:
    grid: TimeGrid
    q_a: np.ndarray
    q_b: np.ndarray
    q_ab: np.ndarray


def capacity_trace(pair: DephasingPair, grid: TimeGrid) -> CapacityTrace:
    t = grid.samples
    m_a = magnitude(pair.spec_a, t)
    m_b = magnitude(pair.spec_b, t)
    # joint formula rather than q_a + q_b so additivity stays a checkable property
    return CapacityTrace(grid, capacity_single(m_a), capacity_single(m_b),
                         capacity_two_qubit(m_a, m_b))
