"""Scalar special functions and small dense Hermitian linear algebra.

Everything here works on plain numpy arrays. Matrix routines accept a single
matrix of shape ``(n, n)`` or a stack of shape ``(..., n, n)`` so that a whole
time series of density matrices can be processed in one call.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

#: Increments of a sampled series at or below this value are treated as noise.
EPS_INC = 1e-9

HERMITIAN_TOL = 1e-12
DENSITY_TRACE_TOL = 1e-10
DENSITY_PSD_TOL = 1e-10
PROB_SLACK = 1e-12

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


class ValidationError(ValueError):
    """Input matrix fails a structural check (Hermiticity, trace, positivity)."""


class DomainError(ValueError):
    """Scalar argument outside the domain of the function."""


def binary_entropy(p):
    """Binary entropy in bits, with ``0 log 0 = 0``.

    Accepts a scalar or an array. Values within ``1e-12`` outside ``[0, 1]``
    are clipped, anything further out raises :class:`DomainError`.
    """
    arr = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < -PROB_SLACK) or np.any(arr > 1 + PROB_SLACK):
        raise DomainError(f"binary entropy needs p in [0, 1], got {p!r}")
    arr = np.clip(arr, 0.0, 1.0)
    q = 1.0 - arr
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(arr > 0, arr * np.log2(arr), 0.0) - np.where(q > 0, q * np.log2(q), 0.0)
    h = np.clip(h, 0.0, 1.0)
    if h.ndim == 0:
        return float(h)
    return h


def _as_square_stack(m, name="matrix"):
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    if a.shape[-1] not in (2, 4):
        raise ValidationError(f"{name} must be 2x2 or 4x4, got {a.shape[-1]}x{a.shape[-1]}")
    return a


def check_hermitian(m, tol=HERMITIAN_TOL):
    a = _as_square_stack(m)
    dev = np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2)))) if a.size else 0.0
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {dev:.3g})")
    return a


def _jacobi_rotate(a, p, q):
    """Apply one complex Jacobi rotation zeroing ``a[:, p, q]`` for a stack ``a``."""
    b = a[:, p, q]
    absb = np.abs(b)
    app = a[:, p, p].real.copy()
    aqq = a[:, q, q].real.copy()
    active = absb > 0.0
    safe = np.where(active, absb, 1.0)
    phase = np.where(active, b / safe, 1.0)
    theta = (aqq - app) / (2.0 * safe)
    sgn = np.where(theta >= 0.0, 1.0, -1.0)
    big = np.abs(theta) > 1e150
    with np.errstate(over="ignore", invalid="ignore"):
        t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                     sgn / (np.abs(theta) + np.sqrt(theta * theta + 1.0)))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) block
    g_pp = c[:, None]
    g_pq = s[:, None]
    g_qp = (-s * np.conj(phase))[:, None]
    g_qq = (c * np.conj(phase))[:, None]

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q]
    a[:, :, p] = col_p * g_pp + col_q * g_qp
    a[:, :, q] = col_p * g_pq + col_q * g_qq
    row_p = a[:, p, :].copy()
    row_q = a[:, q, :]
    a[:, p, :] = np.conj(g_pp) * row_p + np.conj(g_qp) * row_q
    a[:, q, :] = np.conj(g_pq) * row_p + np.conj(g_qq) * row_q
    a[:, p, q] = np.where(active, 0.0, a[:, p, q])
    a[:, q, p] = np.where(active, 0.0, a[:, q, p])
    # pivot diagonal via the tangent update; exact when app == aqq
    a[:, p, p] = np.where(active, app - t * absb, a[:, p, p])
    a[:, q, q] = np.where(active, aqq + t * absb, a[:, q, q])


def hermitian_eigenvalues(m, *, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Eigenvalues of a Hermitian matrix (or stack), sorted in descending order.

    Cyclic Jacobi sweeps over all ``(p, q)`` pairs until the off-diagonal
    Frobenius norm drops below ``tol`` times the matrix norm.

    Raises
    ------
    ValidationError
        If the input is not square, not 2x2/4x4, or not Hermitian to 1e-12.
    """
    a = check_hermitian(m)
    n = a.shape[-1]
    batch_shape = a.shape[:-2]
    work = a.reshape(-1, n, n).copy()
    work = 0.5 * (work + np.conj(np.swapaxes(work, -1, -2)))

    scale = np.sqrt(np.sum(np.abs(work) ** 2, axis=(-1, -2)))
    offmask = ~np.eye(n, dtype=bool)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(work[:, offmask]) ** 2, axis=-1))
        todo = off > tol * scale
        if not todo.any():
            break
        idx = np.nonzero(todo)[0]
        sub = work[idx]
        for p, q in pairs:
            _jacobi_rotate(sub, p, q)
        work[idx] = sub

    evals = np.real(np.diagonal(work, axis1=-2, axis2=-1))
    evals = -np.sort(-evals, axis=-1)
    return evals.reshape(batch_shape + (n,))


def check_density(rho, *, trace_tol=DENSITY_TRACE_TOL, psd_tol=DENSITY_PSD_TOL):
    """Raise :class:`ValidationError` unless ``rho`` is a valid density matrix (or stack)."""
    a = check_hermitian(rho)
    tr = np.trace(a, axis1=-2, axis2=-1)
    if np.any(np.abs(tr - 1.0) > trace_tol):
        raise ValidationError("density matrix must have unit trace")
    lam_min = np.min(hermitian_eigenvalues(a)) if a.size else 0.0
    if lam_min < -psd_tol:
        raise ValidationError(f"density matrix is not positive (min eigenvalue {lam_min:.3g})")
    return a


def trace_distance(rho1, rho2, *, validate=True):
    """Half the trace norm of ``rho1 - rho2``.

    Stacks are handled elementwise; the result is then an array with the
    leading batch shape.
    """
    a = np.asarray(rho1, dtype=complex)
    b = np.asarray(rho2, dtype=complex)
    if a.shape[-2:] != b.shape[-2:]:
        raise ValidationError(f"dimension mismatch: {a.shape[-2:]} vs {b.shape[-2:]}")
    if validate:
        check_density(a)
        check_density(b)
    d = 0.5 * np.sum(np.abs(hermitian_eigenvalues(a - b)), axis=-1)
    d = np.clip(d, 0.0, 1.0)
    if np.ndim(d) == 0:
        return float(d)
    return d


def distinguish_probability(rho1, rho2, *, validate=True):
    """Optimal probability of telling ``rho1`` from ``rho2`` in one shot."""
    return 0.5 * (1.0 + trace_distance(rho1, rho2, validate=validate))


class IncreaseSum(NamedTuple):
    total: float
    intervals: list


def increase_runs(values, eps=EPS_INC):
    """Index pairs ``(i, j)`` of maximal runs where every step ``k -> k+1``, i <= k < j, rises by more than ``eps``."""
    f = np.asarray(values, dtype=float)
    if f.ndim != 1 or f.size < 2:
        raise ValueError("need a 1-d series with at least 2 samples")
    up = np.diff(f) > eps
    if not up.any():
        return []
    edges = np.diff(np.concatenate(([0], up.astype(np.int8), [0])))
    starts = np.nonzero(edges == 1)[0]
    stops = np.nonzero(edges == -1)[0]
    return [(int(i), int(j)) for i, j in zip(starts, stops)]


def positive_increase_sum(values, times, eps=EPS_INC):
    """Accumulated rises of a sampled series.

    Sums ``max(0, f[i+1] - f[i])`` over steps that exceed ``eps`` and returns
    the maximal time intervals on which the series keeps rising.

    Examples
    --------
    >>> positive_increase_sum([1.0, 0.5, 0.8, 0.2], [0, 1, 2, 3]).intervals
    [(1.0, 2.0)]
    """
    f = np.asarray(values, dtype=float)
    t = np.asarray(times, dtype=float)
    if f.ndim != 1 or f.size < 2:
        raise ValueError("need a 1-d series with at least 2 samples")
    if t.shape != f.shape:
        raise ValueError("times and values must have the same length")
    if np.any(np.diff(t) <= 0):
        raise ValueError("time grid must be strictly increasing")
    d = np.diff(f)
    total = math.fsum(d[d > eps].tolist())
    intervals = [(float(t[i]), float(t[j])) for i, j in increase_runs(f, eps)]
    return IncreaseSum(total, intervals)
