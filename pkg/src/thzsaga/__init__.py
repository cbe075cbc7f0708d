"""THz space-air-ground propagation: cross sections, column densities,
per-mechanism loss, and link budgets."""

from .atmosphere import (
    AtmosphereModel,
    GasProfile,
    HydrometeorLayer,
    PlasmaLayer,
    TemperatureProfile,
    column_density,
    hydrostatic_density,
    saturated_water_density,
    species_at,
    temperature,
    unsaturated_water_density,
)
from .constants import CONST, PhysicalConstants
from .geometry import PathGeometry
from .linkbudget import (
    BandAllocationTable,
    BudgetRow,
    HopBudget,
    LinkSpec,
    RelayChain,
    Scenario,
    bands_for_service,
    capacity,
    equal_capacity_split,
    evaluate_scenario,
    noise_power,
    received_power,
)
from .pathloss import LossBreakdown, band_average_loss, collisional_loss, fspl, total_loss
from .xsection import (
    CrossSections,
    FixedIndex,
    GasSpecies,
    MieInput,
    PlasmaState,
    WaterIndex,
    auto_cross_sections,
    coulomb_absorption_xs,
    gaunt_log,
    mie_cross_sections,
    molecular_absorption_xs,
    molecular_scattering_xs,
    plasma_frequency,
    rayleigh_cross_sections,
    thomson_scattering_xs,
    water_permittivity,
    water_refractive_index,
)

__version__ = "0.1.0"
