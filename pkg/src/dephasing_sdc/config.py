"""Built-in parameter sets, the five reference channel combinations, and run configuration.

Two parameter sets ship by default:

``literal``
    sigma = 1.8e12, peak separation 1.6e16, delta_n = 1, read as rad/s. With
    this separation the Gaussian envelope barely moves over one oscillation
    period, so every non-zero ``amp_ratio`` gives revivals.
``calibrated``
    sigma = 1.8e12 rad/s and separation sigma / 0.125. This ratio puts the
    monotone/oscillating boundary of a single side between 0.026 and 0.091 and
    reproduces every local and global class of the reference combinations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .channels import DephasingPair
from .measures import Behavior, CombinationVerdict, classify_combination, critical_amplitude
from .spectra import DoublePeakSpectrum, TimeGrid, default_grid

M = Behavior.MARKOVIAN
NM = Behavior.NON_MARKOVIAN

SIGMA = 1.8e12
CALIBRATED_RATIO = 0.125
LITERAL_SEPARATION = 1.6e16

PARAMETER_SETS = {
    "literal": {"omega1": 0.0, "omega2": LITERAL_SEPARATION, "sigma": SIGMA, "delta_n": 1.0, "time_scale": 1.0},
    "calibrated": {"omega1": 0.0, "omega2": SIGMA / CALIBRATED_RATIO, "sigma": SIGMA, "delta_n": 1.0,
                   "time_scale": 1.0},
}
SPECTRUM_KEYS = ("omega1", "omega2", "sigma", "amp_ratio", "delta_n", "time_scale")
DEFAULT_AMPS = {"a": 0.390, "b": 0.004}


@dataclass(frozen=True)
class Table1Row:
    combination: int
    a_amp: float
    b_amp: float
    b_time_scale: float
    expected: CombinationVerdict


TABLE1 = (
    Table1Row(1, 0.004, 0.026, 1.0, CombinationVerdict(M, M, M, False)),
    Table1Row(2, 0.377, 0.004, 1.0, CombinationVerdict(NM, M, NM, True)),
    Table1Row(3, 0.091, 0.004, 1.0, CombinationVerdict(NM, M, M, True)),
    Table1Row(4, 0.377, 0.145, 1.0, CombinationVerdict(NM, NM, NM, True)),
    Table1Row(5, 0.091, 0.091, 0.5, CombinationVerdict(NM, NM, M, True)),
)


class ConfigError(ValueError):
    pass


_TOP_KEYS = {"parameter_set", "spectra", "grid", "seeds", "output"}
_GRID_KEYS = {"t_max_factor", "n_points"}
_SEED_KEYS = {"mc", "blp"}
_OUTPUT_KEYS = {"format", "path"}


def _reject_unknown(section: dict, allowed: set, where: str):
    if not isinstance(section, dict):
        raise ConfigError(f"{where} must be a JSON object")
    extra = set(section) - allowed
    if extra:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(extra))}")


@dataclass
class RunConfig:
    parameter_set: str = "calibrated"
    spectra: dict = field(default_factory=lambda: {"a": {}, "b": {}})
    t_max_factor: float = 6.0
    n_points: int = 2**17
    mc_seed: int = 0
    blp_seed: int = 0
    output_format: str = "csv"
    output_path: str = "."

    def __post_init__(self):
        if self.parameter_set not in ("literal", "calibrated", "custom"):
            raise ConfigError("parameter_set must be literal, calibrated or custom")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ConfigError("grid.n_points must be an integer >= 2")
        if not self.t_max_factor > 0:
            raise ConfigError("grid.t_max_factor must be > 0")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("output.format must be csv or json")
        for side, over in self.spectra.items():
            if side not in ("a", "b"):
                raise ConfigError(f"unknown side {side!r} in spectra")
            _reject_unknown(over, set(SPECTRUM_KEYS), f"spectra.{side}")

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        _reject_unknown(doc, _TOP_KEYS, "config")
        grid = doc.get("grid", {})
        seeds = doc.get("seeds", {})
        output = doc.get("output", {})
        _reject_unknown(grid, _GRID_KEYS, "grid")
        _reject_unknown(seeds, _SEED_KEYS, "seeds")
        _reject_unknown(output, _OUTPUT_KEYS, "output")
        spectra = doc.get("spectra", {})
        _reject_unknown(spectra, {"a", "b"}, "spectra")
        return cls(
            parameter_set=doc.get("parameter_set", "calibrated"),
            spectra={"a": dict(spectra.get("a", {})), "b": dict(spectra.get("b", {}))},
            t_max_factor=float(grid.get("t_max_factor", 6.0)),
            n_points=grid.get("n_points", 2**17),
            mc_seed=int(seeds.get("mc", 0)),
            blp_seed=int(seeds.get("blp", 0)),
            output_format=output.get("format", "csv"),
            output_path=output.get("path", "."),
        )

    @classmethod
    def load(cls, path) -> "RunConfig":
        with open(Path(path), encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def base_fields(self) -> dict:
        # custom starts from the calibrated numbers and is overridden field-wise
        key = "calibrated" if self.parameter_set == "custom" else self.parameter_set
        return dict(PARAMETER_SETS[key])

    def spectrum(self, side: str, amp_ratio: float | None = None,
                 time_scale: float = 1.0) -> DoublePeakSpectrum:
        """Spectrum for one side; ``amp_ratio`` and ``time_scale`` override or multiply the configured values."""
        fields = self.base_fields()
        fields["amp_ratio"] = DEFAULT_AMPS[side]
        fields.update(self.spectra.get(side, {}))
        if amp_ratio is not None:
            fields["amp_ratio"] = amp_ratio
        fields["time_scale"] = fields.get("time_scale", 1.0) * time_scale
        return DoublePeakSpectrum(**fields)

    def pair(self) -> DephasingPair:
        return DephasingPair(self.spectrum("a"), self.spectrum("b"))

    def table1_pair(self, row: Table1Row) -> DephasingPair:
        return DephasingPair(self.spectrum("a", row.a_amp),
                             self.spectrum("b", row.b_amp, row.b_time_scale))

    def grid_for(self, *specs: DoublePeakSpectrum) -> TimeGrid:
        return default_grid(*specs, t_max_factor=self.t_max_factor, n_points=self.n_points)


def table1_pair(row: Table1Row, ratio: float = CALIBRATED_RATIO, sigma: float = SIGMA) -> DephasingPair:
    a = DoublePeakSpectrum(0.0, sigma / ratio, sigma, row.a_amp)
    b = DoublePeakSpectrum(0.0, sigma / ratio, sigma, row.b_amp, time_scale=row.b_time_scale)
    return DephasingPair(a, b)


@dataclass(frozen=True)
class CalibrationCheck:
    ratio: float
    a_crit: float
    verdicts: tuple
    rows_ok: tuple

    @property
    def ok(self) -> bool:
        return 0.026 < self.a_crit < 0.091 and all(self.rows_ok)


def check_calibration(ratio: float = CALIBRATED_RATIO, n_points: int = 2**17,
                      t_max_factor: float = 6.0) -> CalibrationCheck:
    """Boundary amplitude and reference-combination verdicts at a given width/separation ratio."""
    template = DoublePeakSpectrum(0.0, SIGMA / ratio, SIGMA, 0.0)
    grid = default_grid(template, t_max_factor=t_max_factor, n_points=n_points)
    a_crit = critical_amplitude(template, grid)
    verdicts = []
    for row in TABLE1:
        pair = table1_pair(row, ratio)
        verdicts.append(classify_combination(pair, default_grid(pair.spec_a, pair.spec_b,
                                                                t_max_factor=t_max_factor,
                                                                n_points=n_points)))
    rows_ok = tuple(v == row.expected for v, row in zip(verdicts, TABLE1))
    return CalibrationCheck(ratio, a_crit, tuple(verdicts), rows_ok)


def passing_ratios(ratios, n_points: int = 2**17) -> list[float]:
    """Subset of ``ratios`` at which :func:`check_calibration` succeeds."""
    return [r for r in ratios if check_calibration(r, n_points).ok]
