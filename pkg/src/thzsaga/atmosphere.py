"""Particle number densities from sea level to outer space.

The default layering: linear temperature lapse to 10 km, isothermal to
50 km, then a hot upper region; gases follow the closed-form hydrostatic
profile re-anchored at each temperature seam; water vapor follows either
the saturated (vapor-pressure) profile or an exponential unsaturated
profile, vanishing above 15 km; hydrometeors occupy constant-density
layers in the troposphere; free electrons occupy plasma layers.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .constants import CONST
from .errors import ConvergenceError, ModelDomainError, OutOfDomainError
from .geometry import PathGeometry
from .xsection import FixedIndex, GasSpecies, PlasmaState, WaterIndex

WATER_VAPOR_CEILING_M = 15_000.0

# Column-integration tolerance (relative).
_QUAD_RTOL = 1e-8


@dataclass(frozen=True)
class TemperatureProfile:
    """Piecewise atmospheric temperature: lapse, isothermal, hot upper region."""

    surface_k: float = 298.15
    lapse_k_per_m: float = 0.006
    troposphere_top_m: float = 1.0e4
    isothermal_top_m: float = 5.0e4
    upper_k: float = 2000.0

    def __post_init__(self):
        if self.surface_k <= 0.0 or self.upper_k <= 0.0:
            raise OutOfDomainError("temperatures must be positive")
        if not 0.0 < self.troposphere_top_m < self.isothermal_top_m:
            raise OutOfDomainError("layer boundaries must satisfy 0 < tropopause < upper seam")
        if self.surface_k - self.lapse_k_per_m * self.troposphere_top_m <= 0.0:
            raise OutOfDomainError("lapse rate drives temperature non-positive inside troposphere")

    @property
    def tropopause_k(self) -> float:
        return self.surface_k - self.lapse_k_per_m * self.troposphere_top_m


def temperature(profile: TemperatureProfile, h_m: float) -> float:
    """Temperature at altitude h (m)."""
    if h_m < 0.0:
        raise OutOfDomainError(f"altitude must be >= 0, got {h_m!r}")
    if h_m <= profile.troposphere_top_m:
        return profile.surface_k - profile.lapse_k_per_m * h_m
    if h_m <= profile.isothermal_top_m:
        return profile.tropopause_k
    return profile.upper_k


def hydrostatic_density(
    species: GasSpecies, n0_m3: float, profile: TemperatureProfile, h_m: float
) -> float:
    """Hydrostatic number density of a non-condensing gas at altitude h.

    Inside the lapse layer the closed form
        n(h) = n(0) exp{-(m0 g - kB Gamma) h / (kB [T(0) - Gamma h])}
    applies; above each temperature seam the isothermal form continues,
    re-anchored at the seam density so the profile stays continuous.
    """
    if h_m < 0.0:
        raise OutOfDomainError(f"altitude must be >= 0, got {h_m!r}")
    if n0_m3 < 0.0:
        raise OutOfDomainError("surface density must be >= 0")
    m0g = species.molecular_mass_kg * CONST.g
    gamma = profile.lapse_k_per_m

    def lapse_factor(h):
        t_h = profile.surface_k - gamma * h
        if t_h <= 0.0:
            raise ModelDomainError(f"temperature non-positive at h={h:g} m")
        return math.exp(-(m0g - CONST.k_b * gamma) * h / (CONST.k_b * t_h))

    h_seam1 = profile.troposphere_top_m
    h_seam2 = profile.isothermal_top_m
    if h_m <= h_seam1:
        return n0_m3 * lapse_factor(h_m)
    n_seam1 = n0_m3 * lapse_factor(h_seam1)
    t_iso = profile.tropopause_k
    if h_m <= h_seam2:
        return n_seam1 * math.exp(-m0g * (h_m - h_seam1) / (CONST.k_b * t_iso))
    n_seam2 = n_seam1 * math.exp(-m0g * (h_seam2 - h_seam1) / (CONST.k_b * t_iso))
    return n_seam2 * math.exp(-m0g * (h_m - h_seam2) / (CONST.k_b * profile.upper_k))


def saturated_water_density(
    profile: TemperatureProfile, h_m: float, humidity_scale: float = 1.0
) -> float:
    """Number density of water vapor under the saturated condition.

    Combines the ideal-gas law with a Buck-form vapor-pressure fit:
        n(h) = (550.09 / kB T) * exp[(19.843 - T/234.5) (T - 273.15)/(T - 16.01)]
    evaluated at T(h). Vapor vanishes above 15 km. ``humidity_scale``
    multiplies the result (1.0 reproduces the base profile).
    """
    if h_m < 0.0:
        raise OutOfDomainError(f"altitude must be >= 0, got {h_m!r}")
    if h_m > WATER_VAPOR_CEILING_M:
        return 0.0
    t = temperature(profile, h_m)
    if t <= 16.01:
        raise ModelDomainError(f"vapor-pressure fit undefined at T={t:g} K")
    exponent = (19.843 - t / 234.5) * (t - 273.15) / (t - 16.01)
    return humidity_scale * 550.09 / (CONST.k_b * t) * math.exp(exponent)


def unsaturated_water_density(n0_m3: float, h_m: float, scale_height_m: float = 2000.0) -> float:
    """Number density of water vapor under the unsaturated condition.

    Exponential decay with a 2000 m scale height, zero above 15 km.
    """
    if h_m < 0.0:
        raise OutOfDomainError(f"altitude must be >= 0, got {h_m!r}")
    if h_m > WATER_VAPOR_CEILING_M:
        return 0.0
    return n0_m3 * math.exp(-h_m / scale_height_m)


# ---------------------------------------------------------------------------
# Layered model


PROFILE_KINDS = ("hydrostatic", "saturated-water", "unsaturated-water")


@dataclass(frozen=True)
class GasProfile:
    """One gas species with its vertical density profile and ceiling."""

    species: GasSpecies
    kind: str
    surface_density_m3: float | None
    ceiling_m: float
    humidity_scale: float = 1.0

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise OutOfDomainError(f"unknown profile kind {self.kind!r}")
        if self.kind != "saturated-water" and (
            self.surface_density_m3 is None or self.surface_density_m3 < 0.0
        ):
            raise OutOfDomainError(f"{self.kind} profile needs a non-negative surface density")
        if self.ceiling_m <= 0.0:
            raise OutOfDomainError("ceiling must be positive")

    def density(self, profile: TemperatureProfile, h_m: float) -> float:
        if h_m > self.ceiling_m:
            return 0.0
        if self.kind == "hydrostatic":
            return hydrostatic_density(self.species, self.surface_density_m3, profile, h_m)
        if self.kind == "saturated-water":
            return saturated_water_density(profile, h_m, self.humidity_scale)
        return unsaturated_water_density(self.surface_density_m3, h_m)

    def seam_altitudes(self, profile: TemperatureProfile) -> list[float]:
        seams = [self.ceiling_m]
        if self.kind == "hydrostatic":
            seams += [profile.troposphere_top_m, profile.isothermal_top_m]
        else:
            seams += [WATER_VAPOR_CEILING_M, profile.troposphere_top_m]
        return seams


@dataclass(frozen=True)
class HydrometeorLayer:
    """Constant-density layer of condensed drops (rain, fog, cloud)."""

    h_lo_m: float
    h_hi_m: float
    bins: tuple[tuple[float, float], ...]  # (diameter m, number density 1/m^3)
    refractive: "FixedIndex | WaterIndex"
    label: str = "hydrometeor"

    def __post_init__(self):
        if not 0.0 <= self.h_lo_m < self.h_hi_m:
            raise OutOfDomainError("layer needs 0 <= h_lo < h_hi")
        if self.h_hi_m > WATER_VAPOR_CEILING_M:
            raise OutOfDomainError("condensed layers are confined below 15 km")
        diameters = [d for d, _ in self.bins]
        if not diameters:
            raise OutOfDomainError("layer needs at least one size bin")
        if any(d <= 0.0 for d in diameters) or sorted(set(diameters)) != diameters:
            raise OutOfDomainError("bin diameters must be positive and strictly increasing")
        if any(n < 0.0 for _, n in self.bins):
            raise OutOfDomainError("bin densities must be >= 0")

    def contains(self, h_m: float) -> bool:
        return self.h_lo_m <= h_m <= self.h_hi_m


@dataclass(frozen=True)
class PlasmaLayer:
    """Altitude band of free electrons with a uniform plasma state."""

    h_lo_m: float
    h_hi_m: float
    state: PlasmaState
    label: str = "plasma"

    def __post_init__(self):
        if not 0.0 <= self.h_lo_m < self.h_hi_m:
            raise OutOfDomainError("layer needs 0 <= h_lo < h_hi")

    def contains(self, h_m: float) -> bool:
        return self.h_lo_m <= h_m <= self.h_hi_m


@dataclass(frozen=True)
class CondensedBin:
    """One (diameter, medium) size class of a hydrometeor layer."""

    diameter_m: float
    refractive: "FixedIndex | WaterIndex"
    label: str


@dataclass(frozen=True)
class FreeElectrons:
    """Free-electron species marker carrying the local plasma temperature."""

    temperature_k: float
    label: str


@dataclass(frozen=True)
class AtmosphereModel:
    """Immutable layered description of every particle population."""

    temperature_profile: TemperatureProfile = field(default_factory=TemperatureProfile)
    gases: tuple[GasProfile, ...] = ()
    hydrometeors: tuple[HydrometeorLayer, ...] = ()
    plasmas: tuple[PlasmaLayer, ...] = ()
    humidity_mode: str = "saturated"

    def __post_init__(self):
        if self.humidity_mode not in ("saturated", "unsaturated"):
            raise OutOfDomainError(f"unknown humidity mode {self.humidity_mode!r}")
        names = [g.species.name for g in self.gases]
        if len(names) != len(set(names)):
            raise OutOfDomainError("one profile per gas species")
        labels = [layer.label for layer in self.hydrometeors]
        if len(labels) != len(set(labels)):
            raise OutOfDomainError("hydrometeor layer labels must be unique")
        plasma_sorted = sorted(self.plasmas, key=lambda p: p.h_lo_m)
        for low, high in zip(plasma_sorted, plasma_sorted[1:]):
            if high.h_lo_m < low.h_hi_m:
                raise OutOfDomainError(
                    f"plasma layers {low.label!r} and {high.label!r} overlap"
                )

    def gas(self, name: str) -> GasProfile:
        for g in self.gases:
            if g.species.name == name:
                return g
        raise KeyError(name)


def species_at(model: AtmosphereModel, h_m: float) -> list[tuple[object, float]]:
    """All particle populations present at altitude h with their densities.

    Gas entries use the GasSpecies object; hydrometeor entries expand to
    one CondensedBin per size class; plasma entries use FreeElectrons.
    """
    if h_m < 0.0:
        raise OutOfDomainError(f"altitude must be >= 0, got {h_m!r}")
    out: list[tuple[object, float]] = []
    for gas in model.gases:
        n = gas.density(model.temperature_profile, h_m)
        if n > 0.0:
            out.append((gas.species, n))
    for layer in model.hydrometeors:
        if layer.contains(h_m):
            for diameter, density in layer.bins:
                if density > 0.0:
                    out.append((CondensedBin(diameter, layer.refractive, layer.label), density))
    for layer in model.plasmas:
        if layer.contains(h_m) and layer.state.electron_density_m3 > 0.0:
            out.append(
                (
                    FreeElectrons(layer.state.temperature_k, layer.label),
                    layer.state.electron_density_m3,
                )
            )
    return out


def _integrate_along_path(density_of_h, path: PathGeometry, seams_m) -> float:
    """Integrate a density profile along a path (adaptive quadrature).

    The integration interval is split at every layer seam the path crosses.
    """
    if path.is_horizontal:
        return density_of_h(path.h0_m) * path.length_m

    lo, hi = path.altitude_span()
    points = sorted(
        {path.arclength_of_altitude(h) for h in seams_m if lo < h < hi}
    )
    value, abserr, info, *rest = quad(
        lambda s: density_of_h(path.altitude_at(s)),
        0.0,
        path.length_m,
        points=points or None,
        epsabs=0.0,
        epsrel=_QUAD_RTOL,
        limit=200,
        full_output=True,
    )
    if rest:
        raise ConvergenceError(
            f"column quadrature failed: {rest[0]} (value={value:g}, abserr={abserr:g}, "
            f"intervals={info['last']})"
        )
    if value != 0.0 and abserr > 100.0 * _QUAD_RTOL * abs(value):
        raise ConvergenceError(
            f"column quadrature error {abserr:g} too large for value {value:g}"
        )
    return float(value)


def column_density(model: AtmosphereModel, selector, path: PathGeometry) -> float:
    """Integral of a species' number density along a path (1/m^2).

    ``selector`` picks the population: a GasSpecies (or its name), a
    hydrometeor layer label, a (label, diameter) pair for one size bin,
    or a plasma layer label.
    """
    profile = model.temperature_profile

    if isinstance(selector, GasSpecies):
        selector = selector.name
    if isinstance(selector, str):
        for gas in model.gases:
            if gas.species.name == selector:
                return _integrate_along_path(
                    lambda h: gas.density(profile, h), path, gas.seam_altitudes(profile)
                )
        for layer in model.hydrometeors:
            if layer.label == selector:
                total = sum(n for _, n in layer.bins)
                return total * path.crossing_length(layer.h_lo_m, layer.h_hi_m)
        for layer in model.plasmas:
            if layer.label == selector:
                return layer.state.electron_density_m3 * path.crossing_length(
                    layer.h_lo_m, layer.h_hi_m
                )
        raise KeyError(f"no species, layer, or plasma named {selector!r}")

    if isinstance(selector, tuple) and len(selector) == 2:
        label, diameter = selector
        for layer in model.hydrometeors:
            if layer.label == label:
                for d, n in layer.bins:
                    if d == diameter:
                        return n * path.crossing_length(layer.h_lo_m, layer.h_hi_m)
        raise KeyError(f"no hydrometeor bin {selector!r}")

    raise OutOfDomainError(f"unsupported selector {selector!r}")
