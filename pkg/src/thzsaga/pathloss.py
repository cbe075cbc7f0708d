"""Per-mechanism propagation loss along a path: cross section x column density.

The collisional loss of one particle population is
10*log10(e) * (sigma_A + sigma_S) * integral(n ds); free-space path loss
adds 20*log10(4 pi r / lambda). Results are bucketed per mechanism the way
budget tables report them: condensed particles land in the Mie or Rayleigh
bucket depending on the dispatch regime actually used, gases in the
molecular bucket, free electrons in the plasma bucket.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .atmosphere import AtmosphereModel
from .constants import CONST
from .errors import EvanescentRegimeError, OutOfDomainError
from .geometry import PathGeometry
from .xsection import (
    PlasmaState,
    auto_cross_sections,
    coulomb_absorption_xs,
    is_rayleigh_regime,
    molecular_absorption_xs,
    molecular_scattering_xs,
    thomson_scattering_xs,
)
from . import atmosphere as atm

DB_PER_NEPER = 10.0 * math.log10(math.e)


@dataclass(frozen=True)
class LossBreakdown:
    """Loss split by mechanism (dB). Totals are derived, never stored."""

    fspl_db: float = 0.0
    mie_db: float = 0.0
    rayleigh_db: float = 0.0
    molecular_db: float = 0.0
    plasma_db: float = 0.0
    method: str = "center"

    def __post_init__(self):
        for name in ("mie_db", "rayleigh_db", "molecular_db", "plasma_db"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise OutOfDomainError(f"{name} must be finite and >= 0, got {v!r}")
        if not math.isfinite(self.fspl_db):
            raise OutOfDomainError(f"fspl_db must be finite, got {self.fspl_db!r}")

    @property
    def collisional_db(self) -> float:
        return self.mie_db + self.rayleigh_db + self.molecular_db + self.plasma_db

    @property
    def total_db(self) -> float:
        return self.fspl_db + self.collisional_db


def fspl(length_m: float, f_hz: float) -> float:
    """Free-space path loss 20*log10(4 pi r / lambda) in dB."""
    if length_m <= 0.0 or f_hz <= 0.0:
        raise OutOfDomainError("path length and frequency must be positive")
    return 20.0 * math.log10(4.0 * math.pi * length_m * f_hz / CONST.c)


def collisional_loss(model: AtmosphereModel, path: PathGeometry, f_hz: float) -> LossBreakdown:
    """Collisional loss of every population the path crosses (fspl_db = 0)."""
    if f_hz <= 0.0:
        raise OutOfDomainError("frequency must be positive")
    wavelength = CONST.c / f_hz

    molecular = 0.0
    for gas in model.gases:
        column = atm.column_density(model, gas.species.name, path)
        if column == 0.0:
            continue
        sigma = molecular_absorption_xs(gas.species, f_hz) + molecular_scattering_xs(
            wavelength, gas.species.polarizability_m3
        )
        molecular += DB_PER_NEPER * sigma * column

    mie = 0.0
    rayleigh = 0.0
    for layer in model.hydrometeors:
        crossing = path.crossing_length(layer.h_lo_m, layer.h_hi_m)
        if crossing == 0.0:
            continue
        for diameter, density in layer.bins:
            if density == 0.0:
                continue
            xs = auto_cross_sections(diameter, wavelength, layer.refractive)
            term = DB_PER_NEPER * xs.extinction_m2 * density * crossing
            if is_rayleigh_regime(diameter, wavelength):
                rayleigh += term
            else:
                mie += term

    plasma = 0.0
    for layer in model.plasmas:
        crossing = path.crossing_length(layer.h_lo_m, layer.h_hi_m)
        if crossing == 0.0 or layer.state.electron_density_m3 == 0.0:
            continue
        try:
            sigma_a = coulomb_absorption_xs(f_hz, layer.state)
        except EvanescentRegimeError as exc:
            raise EvanescentRegimeError(f"plasma layer {layer.label!r}: {exc}") from exc
        sigma = sigma_a + thomson_scattering_xs()
        plasma += DB_PER_NEPER * sigma * layer.state.electron_density_m3 * crossing

    return LossBreakdown(0.0, mie, rayleigh, molecular, plasma)


def total_loss(model: AtmosphereModel, path: PathGeometry, f_hz: float) -> LossBreakdown:
    """Free-space plus collisional loss at a single frequency."""
    breakdown = collisional_loss(model, path, f_hz)
    return replace(breakdown, fspl_db=fspl(path.length_m, f_hz))


def band_average_loss(
    model: AtmosphereModel,
    path: PathGeometry,
    band_hz: tuple[float, float],
    n_points: int = 1,
) -> LossBreakdown:
    """Loss of a band: center-frequency by default, trapezoid-averaged on request.

    With n_points > 1 each mechanism field is averaged in linear power
    (transmittance) over an n_points grid; totals stay the sum of the
    averaged fields. The method is recorded on the result.
    """
    f_lo, f_hi = band_hz
    if not 0.0 < f_lo < f_hi:
        raise OutOfDomainError(f"band must satisfy 0 < f_lo < f_hi, got {band_hz!r}")
    if n_points < 1:
        raise OutOfDomainError("n_points must be >= 1")
    if n_points == 1:
        center = 0.5 * (f_lo + f_hi)
        return replace(total_loss(model, path, center), method="center")

    grid = np.linspace(f_lo, f_hi, n_points)
    parts = [total_loss(model, path, f) for f in grid]
    span = f_hi - f_lo

    def average_db(values_db: list[float]) -> float:
        transmittance = np.array([10.0 ** (-v / 10.0) for v in values_db])
        mean = float(np.trapezoid(transmittance, grid)) / span
        return -10.0 * math.log10(mean)

    return LossBreakdown(
        fspl_db=average_db([p.fspl_db for p in parts]),
        mie_db=average_db([p.mie_db for p in parts]),
        rayleigh_db=average_db([p.rayleigh_db for p in parts]),
        molecular_db=average_db([p.molecular_db for p in parts]),
        plasma_db=average_db([p.plasma_db for p in parts]),
        method=f"trapezoid-{n_points}",
    )
