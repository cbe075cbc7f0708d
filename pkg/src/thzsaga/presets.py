"""Bundled default species, atmospheres, and weather presets.

Default scenario constants: raindrops d = 2 mm at 1e3 1/m^3 for the 98
mm/hr reference rate (number density scaled linearly with rain rate at
fixed drop size), fog/cloud droplets d = 0.02 mm at 1e8 1/m^3, ionosphere
electrons 1e11 1/m^3 at 2000 K between 50 and 1000 km, solar-wind
electrons 1e7 1/m^3 at 1e5 K above 1000 km.
"""

from dataclasses import replace
from functools import lru_cache

from .atmosphere import (
    AtmosphereModel,
    GasProfile,
    HydrometeorLayer,
    PlasmaLayer,
    TemperatureProfile,
)
from .constants import ATOMIC_MASS_KG, CONST
from .datafiles import bundled_path
from .errors import OutOfDomainError
from .xsection import GasSpecies, PlasmaState, WaterIndex

SEA_LEVEL_PRESSURE_PA = 101325.0

DRY_AIR_CEILING_M = 50_000.0
WATER_CEILING_M = 15_000.0

RAIN_DROP_DIAMETER_M = 2.0e-3
RAIN_REFERENCE_RATE_MMHR = 98.0
RAIN_REFERENCE_DENSITY_M3 = 1.0e3
FOG_DROP_DIAMETER_M = 2.0e-5
FOG_DROP_DENSITY_M3 = 1.0e8

IONOSPHERE_LO_M = 50_000.0
IONOSPHERE_HI_M = 1_000_000.0
IONOSPHERE_NE_M3 = 1.0e11
IONOSPHERE_T_K = 2000.0
SOLAR_WIND_HI_M = 1.0e9
SOLAR_WIND_NE_M3 = 1.0e7
SOLAR_WIND_T_K = 1.0e5

# Unsaturated surface vapor presets, mol/m^3 (scaled by Avogadro's number).
UNSATURATED_N0_MOL_M3 = 0.5

# Molecular masses (atomic mass units) and polarizability volumes (m^3).
_SPECIES_DATA = {
    "dry_air": (28.9647, 1.7062e-30, "dry_air.csv"),
    "water_vapor": (18.01528, 1.501e-30, "h2o.csv"),
    "nitrogen": (28.0134, 1.7403e-30, "n2.csv"),
    "oxygen": (31.9988, 1.5812e-30, "o2.csv"),
    "argon": (39.948, 1.6411e-30, "ar.csv"),
    "carbon_dioxide": (44.0095, 2.911e-30, "co2.csv"),
}

DRY_AIR_MOLE_FRACTIONS = {
    "nitrogen": 0.78084,
    "oxygen": 0.20948,
    "argon": 0.00935,
    "carbon_dioxide": 0.00033,
}


@lru_cache(maxsize=1)
def default_species_registry() -> dict[str, GasSpecies]:
    """Bundled gas species with their absorption tables attached."""
    from .data_io import load_absorption_table

    registry = {}
    for name, (mass_u, alpha, table_file) in _SPECIES_DATA.items():
        table = load_absorption_table(bundled_path("absorption", table_file))
        registry[name] = GasSpecies(
            name=name,
            molecular_mass_kg=mass_u * ATOMIC_MASS_KG,
            polarizability_m3=alpha,
            absorption=table,
        )
    return registry


def sea_level_air_density(surface_k: float) -> float:
    """Ideal-gas number density of air at standard sea-level pressure."""
    return SEA_LEVEL_PRESSURE_PA / (CONST.k_b * surface_k)


def water_vapor_profile(
    humidity_mode: str,
    unsaturated_n0_mol_m3: float = UNSATURATED_N0_MOL_M3,
    humidity_scale: float = 1.0,
) -> GasProfile:
    species = default_species_registry()["water_vapor"]
    if humidity_mode == "saturated":
        return GasProfile(
            species=species,
            kind="saturated-water",
            surface_density_m3=None,
            ceiling_m=WATER_CEILING_M,
            humidity_scale=humidity_scale,
        )
    if humidity_mode == "unsaturated":
        return GasProfile(
            species=species,
            kind="unsaturated-water",
            surface_density_m3=unsaturated_n0_mol_m3 * CONST.n_a,
            ceiling_m=WATER_CEILING_M,
        )
    raise OutOfDomainError(f"unknown humidity mode {humidity_mode!r}")


def rain_layer(
    rate_mmhr: float,
    top_m: float = 5000.0,
    temperature_profile: TemperatureProfile | None = None,
) -> HydrometeorLayer:
    """Monodisperse rain preset: 2 mm drops, density linear in rain rate."""
    if rate_mmhr <= 0.0:
        raise OutOfDomainError("rain rate must be positive")
    profile = temperature_profile or TemperatureProfile()
    mid_k = profile.surface_k - profile.lapse_k_per_m * min(top_m, profile.troposphere_top_m) / 2.0
    density = RAIN_REFERENCE_DENSITY_M3 * rate_mmhr / RAIN_REFERENCE_RATE_MMHR
    return HydrometeorLayer(
        h_lo_m=0.0,
        h_hi_m=top_m,
        bins=((RAIN_DROP_DIAMETER_M, density),),
        refractive=WaterIndex(temperature_k=mid_k),
        label="rain",
    )


def cloud_layer(
    top_m: float = 5000.0, temperature_profile: TemperatureProfile | None = None
) -> HydrometeorLayer:
    """Heavy fog / cumulonimbus droplet preset: 0.02 mm drops at 1e8 1/m^3."""
    profile = temperature_profile or TemperatureProfile()
    mid_k = profile.surface_k - profile.lapse_k_per_m * min(top_m, profile.troposphere_top_m) / 2.0
    return HydrometeorLayer(
        h_lo_m=0.0,
        h_hi_m=top_m,
        bins=((FOG_DROP_DIAMETER_M, FOG_DROP_DENSITY_M3),),
        refractive=WaterIndex(temperature_k=mid_k),
        label="cloud",
    )


def ionosphere_layer() -> PlasmaLayer:
    return PlasmaLayer(
        h_lo_m=IONOSPHERE_LO_M,
        h_hi_m=IONOSPHERE_HI_M,
        state=PlasmaState(IONOSPHERE_NE_M3, IONOSPHERE_T_K),
        label="ionosphere",
    )


def solar_wind_layer() -> PlasmaLayer:
    return PlasmaLayer(
        h_lo_m=IONOSPHERE_HI_M,
        h_hi_m=SOLAR_WIND_HI_M,
        state=PlasmaState(SOLAR_WIND_NE_M3, SOLAR_WIND_T_K),
        label="solar_wind",
    )


def default_atmosphere(
    humidity_mode: str = "saturated",
    surface_k: float = 298.15,
    unsaturated_n0_mol_m3: float = UNSATURATED_N0_MOL_M3,
    include_ionosphere: bool = True,
    include_solar_wind: bool = False,
) -> AtmosphereModel:
    """Clear-sky layered atmosphere: dry air to 50 km, vapor to 15 km, plasma above."""
    profile = TemperatureProfile(surface_k=surface_k)
    registry = default_species_registry()
    gases = (
        GasProfile(
            species=registry["dry_air"],
            kind="hydrostatic",
            surface_density_m3=sea_level_air_density(surface_k),
            ceiling_m=DRY_AIR_CEILING_M,
        ),
        water_vapor_profile(humidity_mode, unsaturated_n0_mol_m3),
    )
    plasmas = []
    if include_ionosphere:
        plasmas.append(ionosphere_layer())
    if include_solar_wind:
        plasmas.append(solar_wind_layer())
    return AtmosphereModel(
        temperature_profile=profile,
        gases=gases,
        hydrometeors=(),
        plasmas=tuple(plasmas),
        humidity_mode=humidity_mode,
    )


def compose_weather(
    base: AtmosphereModel,
    rain_rate_mmhr: float = 0.0,
    rain_top_m: float = 5000.0,
    cloud: bool = False,
    cloud_top_m: float = 5000.0,
    humidity_mode: str | None = None,
) -> AtmosphereModel:
    """Overlay weather on a base atmosphere: rain/cloud layers, humidity swap."""
    model = base
    if humidity_mode is not None and humidity_mode != base.humidity_mode:
        gases = tuple(
            water_vapor_profile(humidity_mode) if g.kind.endswith("-water") else g
            for g in base.gases
        )
        model = replace(model, gases=gases, humidity_mode=humidity_mode)
    layers = [layer for layer in model.hydrometeors if layer.label not in ("rain", "cloud")]
    if rain_rate_mmhr > 0.0:
        layers.append(rain_layer(rain_rate_mmhr, rain_top_m, model.temperature_profile))
    if cloud:
        layers.append(cloud_layer(cloud_top_m, model.temperature_profile))
    return replace(model, hydrometeors=tuple(layers))


@lru_cache(maxsize=1)
def band_allocation_table():
    from .data_io import load_band_table

    return load_band_table(bundled_path("band_allocations.csv"))


def scenario_path(name: str):
    """Path of a bundled scenario config by stem name."""
    return bundled_path("scenarios", f"{name}.cfg")
