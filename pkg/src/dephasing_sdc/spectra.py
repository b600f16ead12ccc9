"""Double-peaked Gaussian frequency environments and their decoherence functions.

A photon's polarization couples to its frequency through a birefringent
element, so the decoherence function of one local channel is the
characteristic function of the photon's frequency intensity distribution.
Here that distribution is a two-component Gaussian mixture with a common
width; the relative weight of the second peak (``amp_ratio``) is the knob that
switches the local channel between monotone and oscillating decay.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import rng
from .numerics import DomainError


@dataclass(frozen=True)
class DoublePeakSpectrum:
    """One local environment.

    Frequencies are in rad/s, ``delta_n`` is the dimensionless birefringence
    contrast and ``time_scale`` multiplies every time argument (0.5 halves the
    effective birefringence on that side).

    The peaks are stored with ``omega2 >= omega1``; a reversed pair is swapped
    and ``amp_ratio`` inverted, which describes the same distribution.
    """

    omega1: float
    omega2: float
    sigma: float
    amp_ratio: float
    delta_n: float = 1.0
    time_scale: float = 1.0

    def __post_init__(self):
        for name in ("omega1", "omega2", "sigma", "amp_ratio", "delta_n", "time_scale"):
            v = float(getattr(self, name))
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.amp_ratio < 0:
            raise ValueError("amp_ratio must be >= 0")
        if self.delta_n <= 0:
            raise ValueError("delta_n must be > 0")
        if self.time_scale <= 0:
            raise ValueError("time_scale must be > 0")
        if self.omega2 < self.omega1:
            w1, w2 = self.omega1, self.omega2
            if self.amp_ratio > 0:
                object.__setattr__(self, "omega1", w2)
                object.__setattr__(self, "omega2", w1)
                inverted = 1.0 / self.amp_ratio
                if not np.isfinite(inverted):
                    raise ValueError("amp_ratio too small to invert when swapping the peaks")
                object.__setattr__(self, "amp_ratio", inverted)
            else:
                # second peak carries no weight; park it on the first
                object.__setattr__(self, "omega2", w1)

    @property
    def weights(self) -> tuple[float, float]:
        """Intensity weights of the two peaks."""
        return 1.0 / (1.0 + self.amp_ratio), self.amp_ratio / (1.0 + self.amp_ratio)

    @property
    def delta_omega(self) -> float:
        return self.omega2 - self.omega1

    def with_amp_ratio(self, amp_ratio: float) -> "DoublePeakSpectrum":
        return DoublePeakSpectrum(self.omega1, self.omega2, self.sigma, amp_ratio,
                                  self.delta_n, self.time_scale)

    def to_dict(self) -> dict:
        return {
            "omega1": self.omega1,
            "omega2": self.omega2,
            "sigma": self.sigma,
            "amp_ratio": self.amp_ratio,
            "delta_n": self.delta_n,
            "time_scale": self.time_scale,
        }


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid ``t_i = i * t_max / (n_points - 1)`` in seconds."""

    t_max: float
    n_points: int

    def __post_init__(self):
        if not (np.isfinite(self.t_max) and self.t_max > 0):
            raise ValueError("t_max must be > 0")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError("n_points must be an integer >= 2")
        object.__setattr__(self, "t_max", float(self.t_max))
        object.__setattr__(self, "n_points", int(self.n_points))

    @cached_property
    def samples(self) -> np.ndarray:
        t = np.linspace(0.0, self.t_max, self.n_points)
        t.flags.writeable = False
        return t

    @property
    def step(self) -> float:
        return self.t_max / (self.n_points - 1)

    def refined(self, factor: int) -> "TimeGrid":
        """Same span with ``factor`` times as many intervals."""
        return TimeGrid(self.t_max, (self.n_points - 1) * factor + 1)

    def decimated(self, n_points: int) -> "TimeGrid":
        return TimeGrid(self.t_max, n_points)


def default_grid(*specs: DoublePeakSpectrum, t_max_factor: float = 6.0,
                 n_points: int = 2**17) -> TimeGrid:
    """Grid long enough for the widest Gaussian envelope to fall to ``e^{-factor^2/2}``."""
    if not specs:
        raise ValueError("need at least one spectrum")
    rate = max(s.sigma * s.time_scale * s.delta_n for s in specs)
    if rate <= 0:
        raise ValueError("default grid needs sigma > 0 on at least one side")
    return TimeGrid(t_max_factor / rate, n_points)


def check_time(tau):
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0) or np.any(~np.isfinite(tau)):
        raise DomainError("time argument must be finite and >= 0")
    return tau


def characteristic_fn(spec: DoublePeakSpectrum, tau):
    """Complex decoherence function of one side at time(s) ``tau``.

    ``exp(-(sigma dn s tau)^2 / 2) (exp(i dn w1 s tau) + A exp(i dn w2 s tau)) / (1 + A)``
    """
    tau = check_time(tau)
    x = spec.delta_n * spec.time_scale * tau
    env = np.exp(-0.5 * (spec.sigma * x) ** 2)
    val = env * (np.exp(1j * spec.omega1 * x) + spec.amp_ratio * np.exp(1j * spec.omega2 * x))
    val = val / (1.0 + spec.amp_ratio)
    if val.ndim == 0:
        return complex(val)
    return val


def magnitude(spec: DoublePeakSpectrum, tau):
    """``|characteristic_fn(spec, tau)|`` from the closed-form modulus.

    Only the peak separation enters; no complex arithmetic is needed.
    """
    tau = check_time(tau)
    x = spec.delta_n * spec.time_scale * tau
    a = spec.amp_ratio
    env = np.exp(-0.5 * (spec.sigma * x) ** 2)
    # 1 + A^2 + 2A cos(th) = (1 + A)^2 - 4A sin^2(th / 2); exact 1 at th = 0
    w = 4.0 * (a / (1.0 + a)) / (1.0 + a)
    inner = 1.0 - w * np.sin(0.5 * spec.delta_omega * x) ** 2
    val = env * np.sqrt(np.maximum(inner, 0.0))
    if val.ndim == 0:
        return float(val)
    return val


def sample_frequencies(spec: DoublePeakSpectrum, gen: np.random.Generator, n: int) -> np.ndarray:
    """Draw ``n`` frequencies from the spectrum's intensity mixture."""
    w2 = spec.weights[1]
    second = gen.random(n) < w2
    z = rng.box_muller(gen, n)
    return np.where(second, spec.omega2, spec.omega1) + spec.sigma * z


def monte_carlo_characteristic(spec: DoublePeakSpectrum, tau, n_samples: int, seed: int,
                               n_partitions: int = 1):
    """Sample estimate of :func:`characteristic_fn`.

    Frequencies are drawn once per partition (stream key ``(seed, i)``) and
    reused for every entry of ``tau``; partial means are combined weighted by
    partition size.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    tau = check_time(tau)
    flat = np.atleast_1d(tau).ravel()
    acc = np.zeros(flat.shape, dtype=complex)
    for i, n_i in enumerate(rng.split_counts(n_samples, n_partitions)):
        omega = sample_frequencies(spec, rng.stream(seed, i), n_i)
        for j, tj in enumerate(flat):
            phase = spec.delta_n * spec.time_scale * tj * omega
            acc[j] += n_i * complex(np.mean(np.cos(phase)), np.mean(np.sin(phase)))
    est = acc / n_samples
    if tau.ndim == 0:
        return complex(est[0])
    return est.reshape(tau.shape)
