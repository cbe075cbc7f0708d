"""Vertical profiles, layered model queries, and column integrals."""

import math

import numpy as np
import pytest

from thzsaga.atmosphere import (
    AtmosphereModel,
    CondensedBin,
    FreeElectrons,
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
from thzsaga.constants import CONST
from thzsaga.errors import OutOfDomainError
from thzsaga.geometry import PathGeometry
from thzsaga.presets import (
    cloud_layer,
    default_atmosphere,
    default_species_registry,
    ionosphere_layer,
    rain_layer,
    sea_level_air_density,
)
from thzsaga.xsection import GasSpecies, PlasmaState


PROFILE = TemperatureProfile()  # 298.15 K surface, paper defaults


class TestTemperature:
    def test_surface(self):
        assert temperature(PROFILE, 0.0) == pytest.approx(298.15)

    def test_tropopause_with_standard_lapse(self):
        assert temperature(PROFILE, 10_000.0) == pytest.approx(298.15 - 60.0)

    def test_isothermal_region(self):
        assert temperature(PROFILE, 30_000.0) == pytest.approx(238.15)

    def test_hot_upper_region(self):
        assert temperature(PROFILE, 60_000.0) == 2000.0

    def test_negative_altitude_rejected(self):
        with pytest.raises(OutOfDomainError):
            temperature(PROFILE, -1.0)

    def test_profile_validation(self):
        with pytest.raises(OutOfDomainError):
            TemperatureProfile(surface_k=50.0, lapse_k_per_m=0.006)


@pytest.fixture(scope="module")
def air():
    return default_species_registry()["dry_air"]


class TestHydrostaticDensity:
    def test_surface_anchor(self, air):
        n0 = sea_level_air_density(298.15)
        assert hydrostatic_density(air, n0, PROFILE, 0.0) == n0

    def test_isothermal_reduction(self, air):
        # with zero lapse the closed form reduces to a plain exponential
        iso = TemperatureProfile(surface_k=288.0, lapse_k_per_m=0.0, upper_k=288.0)
        n0 = 2.5e25
        for h in (0.0, 3000.0, 9000.0):
            want = n0 * math.exp(-air.molecular_mass_kg * CONST.g * h / (CONST.k_b * 288.0))
            assert hydrostatic_density(air, n0, iso, h) == pytest.approx(want, rel=1e-12)

    def test_against_ode_integration_oracle(self, air):
        # dn/dh = -(m0 g - kB Gamma(h)) n / (kB T(h)), RK4 with 1 m steps
        n0 = sea_level_air_density(298.15)
        m0g = air.molecular_mass_kg * CONST.g

        def rhs(h, n):
            gamma = PROFILE.lapse_k_per_m if h <= PROFILE.troposphere_top_m else 0.0
            return -(m0g - CONST.k_b * gamma) * n / (CONST.k_b * temperature(PROFILE, h))

        h, n = 0.0, n0
        step = 1.0
        checkpoints = {8000.0: None, 10_000.0: None, 30_000.0: None, 50_000.0: None}
        while h < 50_000.0:
            k1 = rhs(h, n)
            k2 = rhs(h + step / 2, n + step / 2 * k1)
            k3 = rhs(h + step / 2, n + step / 2 * k2)
            k4 = rhs(h + step, n + step * k3)
            n += step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            h += step
            if h in checkpoints:
                checkpoints[h] = n
        for h_check, n_oracle in checkpoints.items():
            got = hydrostatic_density(air, n0, PROFILE, h_check)
            assert got == pytest.approx(n_oracle, rel=5e-3)

    def test_continuity_at_seams(self, air):
        n0 = 2.5e25
        for seam in (PROFILE.troposphere_top_m, PROFILE.isothermal_top_m):
            below = hydrostatic_density(air, n0, PROFILE, seam)
            above = hydrostatic_density(air, n0, PROFILE, seam + 1e-9)
            assert above == pytest.approx(below, rel=1e-12)

    def test_monotone_nonincreasing(self, air):
        n0 = 2.5e25
        grid = np.linspace(0.0, 80_000.0, 200)
        values = [hydrostatic_density(air, n0, PROFILE, h) for h in grid]
        assert all(a >= b for a, b in zip(values, values[1:]))


class TestWaterVapor:
    def test_saturated_zero_above_ceiling(self):
        assert saturated_water_density(PROFILE, 15_000.1) == 0.0
        assert saturated_water_density(PROFILE, 20_000.0) == 0.0

    def test_saturated_at_freezing_point_surface(self):
        # the exponent vanishes at T = 273.15 K
        cold = TemperatureProfile(surface_k=273.15)
        want = 550.09 / (CONST.k_b * 273.15)
        assert saturated_water_density(cold, 0.0) == pytest.approx(want, rel=1e-12)

    def test_saturated_surface_direct_arithmetic(self):
        t = 298.15
        exponent = (19.843 - t / 234.5) * (t - 273.15) / (t - 16.01)
        want = 550.09 / (CONST.k_b * t) * math.exp(exponent)
        assert saturated_water_density(PROFILE, 0.0) == pytest.approx(want, rel=1e-12)

    def test_humidity_scale(self):
        base = saturated_water_density(PROFILE, 1000.0)
        assert saturated_water_density(PROFILE, 1000.0, humidity_scale=0.5) == pytest.approx(
            0.5 * base, rel=1e-12
        )

    def test_unsaturated_profile(self):
        n0 = 3e23
        assert unsaturated_water_density(n0, 0.0) == n0
        assert unsaturated_water_density(n0, 2000.0) == pytest.approx(n0 / math.e, rel=1e-12)
        assert unsaturated_water_density(n0, 20_000.0) == 0.0

    def test_unsaturated_monotone(self):
        grid = np.linspace(0.0, 15_000.0, 100)
        values = [unsaturated_water_density(1e23, h) for h in grid]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_saturated_exceeds_unsaturated_presets_at_surface(self):
        n_sat = saturated_water_density(PROFILE, 0.0)
        for mol_per_m3 in (0.5, 0.1):
            assert n_sat > mol_per_m3 * CONST.n_a


class TestSpeciesAt:
    @pytest.fixture()
    def rainy_model(self):
        base = default_atmosphere("saturated")
        return AtmosphereModel(
            temperature_profile=base.temperature_profile,
            gases=base.gases,
            hydrometeors=(rain_layer(98.0, 5000.0), cloud_layer(5000.0)),
            plasmas=base.plasmas,
            humidity_mode="saturated",
        )

    def test_troposphere_has_all_condensed_and_molecular(self, rainy_model):
        found = species_at(rainy_model, 4000.0)
        names = set()
        for species, density in found:
            assert density > 0.0
            if isinstance(species, GasSpecies):
                names.add(species.name)
            elif isinstance(species, CondensedBin):
                names.add(species.label)
        assert names == {"dry_air", "water_vapor", "rain", "cloud"}

    def test_stratosphere_is_dry_air_only(self, rainy_model):
        found = species_at(rainy_model, 30_000.0)
        assert len(found) == 1
        species, density = found[0]
        assert isinstance(species, GasSpecies) and species.name == "dry_air"
        assert density > 0.0

    def test_ionosphere_is_free_electrons_only(self, rainy_model):
        found = species_at(rainy_model, 500_000.0)
        assert len(found) == 1
        species, density = found[0]
        assert isinstance(species, FreeElectrons)
        assert density == 1e11


class TestColumnDensity:
    def test_uniform_layer_is_density_times_length(self):
        model = AtmosphereModel(
            temperature_profile=PROFILE,
            hydrometeors=(rain_layer(98.0, 10_000.0),),
        )
        path = PathGeometry.vertical(0.0, 10_000.0)
        assert column_density(model, "rain", path) == pytest.approx(1e3 * 1e4, rel=1e-12)

    def test_isothermal_vertical_column_analytic(self, air):
        iso = TemperatureProfile(surface_k=288.0, lapse_k_per_m=0.0, upper_k=288.0)
        n0 = sea_level_air_density(288.0)
        model = AtmosphereModel(
            temperature_profile=iso,
            gases=(GasProfile(air, "hydrostatic", n0, ceiling_m=3.0e6),),
        )
        path = PathGeometry.vertical(0.0, 2.0e6)
        got = column_density(model, "dry_air", path)
        want = n0 * CONST.k_b * 288.0 / (air.molecular_mass_kg * CONST.g)
        assert got == pytest.approx(want, rel=1e-3)

    def test_slant_slab_is_sqrt_two_of_vertical(self):
        model = AtmosphereModel(
            temperature_profile=PROFILE,
            hydrometeors=(rain_layer(98.0, 5000.0),),
        )
        vertical = column_density(model, "rain", PathGeometry.vertical(0.0, 10_000.0))
        slant = column_density(model, "rain", PathGeometry.slant(0.0, 10_000.0, math.pi / 4))
        assert slant == pytest.approx(math.sqrt(2.0) * vertical, rel=1e-12)

    def test_additive_over_concatenation(self):
        model = default_atmosphere("saturated")
        a = column_density(model, "water_vapor", PathGeometry.vertical(0.0, 4000.0))
        b = column_density(model, "water_vapor", PathGeometry.vertical(4000.0, 12_000.0))
        whole = column_density(model, "water_vapor", PathGeometry.vertical(0.0, 12_000.0))
        assert a + b == pytest.approx(whole, rel=1e-10)

    def test_horizontal_path(self):
        model = default_atmosphere("saturated")
        path = PathGeometry.horizontal(0.0, 10_000.0)
        want = saturated_water_density(model.temperature_profile, 0.0) * 10_000.0
        assert column_density(model, "water_vapor", path) == pytest.approx(want, rel=1e-12)

    def test_plasma_selector(self):
        model = default_atmosphere("saturated")
        path = PathGeometry.vertical(50_000.0, 1_000_000.0)
        got = column_density(model, "ionosphere", path)
        assert got == pytest.approx(1e11 * 950_000.0, rel=1e-12)

    def test_bin_selector(self):
        model = AtmosphereModel(
            temperature_profile=PROFILE,
            hydrometeors=(rain_layer(98.0, 5000.0),),
        )
        path = PathGeometry.vertical(0.0, 5000.0)
        got = column_density(model, ("rain", 2e-3), path)
        assert got == pytest.approx(1e3 * 5000.0, rel=1e-12)

    def test_unknown_selector(self):
        model = default_atmosphere("saturated")
        with pytest.raises(KeyError):
            column_density(model, "krypton", PathGeometry.vertical(0.0, 1000.0))


class TestModelValidation:
    def test_duplicate_gas_rejected(self, air):
        profile = GasProfile(air, "hydrostatic", 1e25, ceiling_m=5e4)
        with pytest.raises(OutOfDomainError):
            AtmosphereModel(temperature_profile=PROFILE, gases=(profile, profile))

    def test_overlapping_plasma_rejected(self):
        a = PlasmaLayer(5e4, 1e6, PlasmaState(1e11, 2000.0), label="a")
        b = PlasmaLayer(9e5, 2e6, PlasmaState(1e7, 1e5), label="b")
        with pytest.raises(OutOfDomainError):
            AtmosphereModel(temperature_profile=PROFILE, plasmas=(a, b))

    def test_hydrometeor_ceiling_enforced(self):
        with pytest.raises(OutOfDomainError):
            HydrometeorLayer(0.0, 16_000.0, ((2e-3, 1e3),), rain_layer(98.0).refractive)

    def test_ionosphere_preset_bounds(self):
        layer = ionosphere_layer()
        assert (layer.h_lo_m, layer.h_hi_m) == (50_000.0, 1_000_000.0)
        assert layer.state == PlasmaState(1e11, 2000.0)
