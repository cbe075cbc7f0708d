"""Cross-section tests: partial-wave series, small-sphere limit, gases, plasma."""

import math

import mpmath as mp
import numpy as np
import pytest

from thzsaga.constants import CONST
from thzsaga.data_io import AbsorptionTable
from thzsaga.errors import (
    DegeneratePlasmaError,
    EvanescentRegimeError,
    OutOfDomainError,
    SingularityError,
)
from thzsaga.presets import DRY_AIR_MOLE_FRACTIONS, default_species_registry
from thzsaga.xsection import (
    CrossSections,
    FixedIndex,
    GasSpecies,
    MieInput,
    PlasmaState,
    WaterIndex,
    auto_cross_sections,
    coulomb_absorption_xs,
    gaunt_log,
    interp_log_sigma,
    mie_cross_sections,
    minimum_series_order,
    molecular_absorption_xs,
    molecular_scattering_xs,
    plasma_frequency,
    rayleigh_cross_sections,
    thomson_scattering_xs,
    water_permittivity,
    water_refractive_index,
)

mp.mp.dps = 50


# ---------------------------------------------------------------------------
# Independent partial-wave oracle (mpmath Bessel, doubled truncation)


def _mp_sph_j(m, z):
    return mp.sqrt(mp.pi / (2 * z)) * mp.besselj(m + mp.mpf(1) / 2, z)


def _mp_sph_h1(m, x):
    return mp.sqrt(mp.pi / (2 * x)) * (
        mp.besselj(m + mp.mpf(1) / 2, x) + 1j * mp.bessely(m + mp.mpf(1) / 2, x)
    )


def mie_oracle(diameter_m, wavelength_m, q, mu1=1.0):
    """Direct series summation with doubled truncation and mpmath Bessels."""
    xi = mp.pi * diameter_m / wavelength_m
    q = mp.mpc(q)
    mmax = 2 * minimum_series_order(float(xi))

    def psi_pair(m, z, hankel=False):
        f = _mp_sph_h1(m, z) if hankel else _mp_sph_j(m, z)
        if m == 0:
            fm1 = mp.exp(1j * z) / z if hankel else mp.cos(z) / z
        else:
            fm1 = _mp_sph_h1(m - 1, z) if hankel else _mp_sph_j(m - 1, z)
        return f, z * fm1 - m * f

    sca = mp.mpf(0)
    ext = mp.mpf(0)
    for m in range(1, mmax + 1):
        jq, djq = psi_pair(m, q * xi)
        jx, djx = psi_pair(m, xi)
        hx, dhx = psi_pair(m, xi, hankel=True)
        a = (q**2 * jq * djx - mu1 * jx * djq) / (q**2 * jq * dhx - mu1 * hx * djq)
        b = (mu1 * jq * djx - jx * djq) / (mu1 * jq * dhx - hx * djq)
        weight = 2 * m + 1
        sca += weight * (abs(a) ** 2 + abs(b) ** 2)
        ext += weight * mp.re(a + b)
    prefactor = mp.pi * diameter_m**2 / (2 * xi**2)
    return float(prefactor * (ext - sca)), float(prefactor * sca)


class TestMie:
    def test_raindrop_cross_sections_order_of_magnitude(self):
        # 2 mm water drop between 0.1 and 1 THz: both cross sections are
        # of order 1e-6 m^2 and scattering exceeds absorption
        for f_hz in (0.1e12, 0.4e12, 1.0e12):
            xs = mie_cross_sections(MieInput(2e-3, CONST.c / f_hz, WaterIndex(298.15)))
            assert 1e-6 < xs.absorption_m2 < 1e-5
            assert 1e-6 < xs.scattering_m2 < 1e-5
            assert xs.scattering_m2 > xs.absorption_m2

    def test_index_matched_sphere_is_invisible(self):
        xs = mie_cross_sections(MieInput(1e-3, 2e-3, FixedIndex(1.0 + 0.0j)))
        assert xs.absorption_m2 == 0.0
        assert xs.scattering_m2 == 0.0

    def test_against_independent_oracle_small_drop(self):
        f_hz = 0.3e12
        wavelength = CONST.c / f_hz
        q = water_refractive_index(f_hz, 298.15)
        got = mie_cross_sections(MieInput(1e-4, wavelength, WaterIndex(298.15)))
        want_abs, want_sca = mie_oracle(1e-4, wavelength, q)
        assert got.absorption_m2 == pytest.approx(want_abs, rel=1e-8)
        assert got.scattering_m2 == pytest.approx(want_sca, rel=1e-8)

    def test_against_independent_oracle_large_drop(self):
        f_hz = 0.5e12
        wavelength = CONST.c / f_hz
        q = 1.8 + 0.5j
        got = mie_cross_sections(MieInput(3e-3, wavelength, FixedIndex(q)))
        want_abs, want_sca = mie_oracle(3e-3, wavelength, q)
        assert got.absorption_m2 == pytest.approx(want_abs, rel=1e-8)
        assert got.scattering_m2 == pytest.approx(want_sca, rel=1e-8)

    @pytest.mark.parametrize("xi", [0.5, 5.0, 50.0])
    def test_truncation_stability(self, xi):
        wavelength = 1e-3
        d = xi * wavelength / math.pi
        base = minimum_series_order(xi)
        lo = mie_cross_sections(MieInput(d, wavelength, FixedIndex(1.5 + 0.3j), m_max=base))
        hi = mie_cross_sections(
            MieInput(d, wavelength, FixedIndex(1.5 + 0.3j), m_max=int(base * 1.5) + 1)
        )
        assert hi.scattering_m2 == pytest.approx(lo.scattering_m2, rel=1e-9)
        assert hi.absorption_m2 == pytest.approx(lo.absorption_m2, abs=1e-9 * lo.extinction_m2)

    def test_m_max_below_required_order_rejected(self):
        with pytest.raises(OutOfDomainError):
            MieInput(2e-3, 1e-3, FixedIndex(1.5 + 0.1j), m_max=3)

    def test_nonnegative_even_for_lossless_sphere(self):
        xs = mie_cross_sections(MieInput(2e-3, 1e-3, FixedIndex(1.33 + 0.0j)))
        assert xs.absorption_m2 >= 0.0
        assert xs.absorption_m2 <= 1e-9 * xs.scattering_m2


class TestRayleigh:
    def test_lossless_sphere_has_zero_absorption(self):
        xs = rayleigh_cross_sections(1e-5, 1e-3, 1.5 + 0.0j)
        assert xs.absorption_m2 == 0.0
        assert xs.scattering_m2 > 0.0

    def test_fog_droplet_scattering_much_smaller_than_absorption(self):
        for f_hz in (0.1e12, 0.5e12, 1.0e12):
            q = water_refractive_index(f_hz, 298.15)
            xs = rayleigh_cross_sections(2e-5, CONST.c / f_hz, q)
            assert xs.scattering_m2 < 0.05 * xs.absorption_m2

    def test_against_independent_arithmetic(self):
        # manual real/imag evaluation of the small-sphere formulas
        f_hz = 0.5e12
        d = 2e-5
        lam = CONST.c / f_hz
        q = water_refractive_index(f_hz, 298.15)
        qr, qi = q.real, q.imag
        # q^2 and K = (q^2-1)/(q^2+2) componentwise
        q2r, q2i = qr * qr - qi * qi, 2 * qr * qi
        den = (q2r + 2.0) ** 2 + q2i**2
        kr = ((q2r - 1.0) * (q2r + 2.0) + q2i * q2i) / den
        ki = (q2i * (q2r + 2.0) - (q2r - 1.0) * q2i) / den
        want_abs = math.pi**2 * d**3 / lam * ki
        want_sca = (2.0 * math.pi**5 / 3.0) * d**6 / lam**4 * (kr * kr + ki * ki)
        xs = rayleigh_cross_sections(d, lam, q)
        assert xs.absorption_m2 == pytest.approx(want_abs, rel=1e-12)
        assert xs.scattering_m2 == pytest.approx(want_sca, rel=1e-12)

    def test_resonant_denominator_raises(self):
        q = complex(0.0, math.sqrt(2.0))  # q^2 = -2
        with pytest.raises(SingularityError):
            rayleigh_cross_sections(1e-5, 1e-3, q)


class TestMieRayleighLimit:
    @pytest.mark.parametrize("f_hz", [0.1e12, 0.5e12, 1.0e12])
    def test_water_agreement(self, f_hz):
        lam = CONST.c / f_hz
        q = water_refractive_index(f_hz, 298.15)
        prev_abs_err = None
        for xi in (0.01, 0.005, 0.001):
            d = xi * lam / math.pi
            mie = mie_cross_sections(MieInput(d, lam, WaterIndex(298.15)))
            ray = rayleigh_cross_sections(d, lam, q)
            abs_err = abs(mie.absorption_m2 - ray.absorption_m2) / ray.absorption_m2
            sca_err = abs(mie.scattering_m2 - ray.scattering_m2) / ray.scattering_m2
            assert abs_err < 0.01
            assert sca_err < 0.05
            if prev_abs_err is not None:
                assert abs_err < prev_abs_err
            prev_abs_err = abs_err

    def test_large_index_agreement(self):
        lam = 1e-3
        q = 7.0 + 7.0j  # |q| just under 10
        for xi in (0.01, 0.001):
            d = xi * lam / math.pi
            mie = mie_cross_sections(MieInput(d, lam, FixedIndex(q)))
            ray = rayleigh_cross_sections(d, lam, q)
            assert mie.absorption_m2 == pytest.approx(ray.absorption_m2, rel=0.01)
            assert mie.scattering_m2 == pytest.approx(ray.scattering_m2, rel=0.05)


class TestAutoDispatch:
    def test_small_sphere_takes_rayleigh_branch(self):
        f_hz = 0.3e12
        lam = CONST.c / f_hz
        d = lam / 20.0
        q = water_refractive_index(f_hz, 298.15)
        auto = auto_cross_sections(d, lam, WaterIndex(298.15))
        ray = rayleigh_cross_sections(d, lam, q)
        assert auto == ray

    def test_wavelength_sized_sphere_takes_series_branch(self):
        lam = 1e-3
        model = FixedIndex(1.8 + 0.2j)
        auto = auto_cross_sections(lam, lam, model)
        mie = mie_cross_sections(MieInput(lam, lam, model))
        assert auto == mie

    def test_seam_gap_for_water_at_100ghz(self):
        # the branches disagree by O(xi^2) at the d = lambda/10 seam:
        # under 10% on scattering, about a third on absorption
        f_hz = 0.1e12
        lam = CONST.c / f_hz
        d = lam / 10.0
        q = water_refractive_index(f_hz, 298.15)
        mie = mie_cross_sections(MieInput(d, lam, WaterIndex(298.15)))
        ray = rayleigh_cross_sections(d, lam, q)
        assert abs(mie.scattering_m2 - ray.scattering_m2) / mie.scattering_m2 < 0.10
        assert abs(mie.absorption_m2 - ray.absorption_m2) / mie.absorption_m2 < 0.35

    def test_threshold_override(self):
        lam = 1e-3
        d = lam / 15.0
        model = FixedIndex(1.8 + 0.2j)
        ray = auto_cross_sections(d, lam, model)  # default threshold: Rayleigh
        mie = auto_cross_sections(d, lam, model, rayleigh_fraction=0.01)
        assert ray == rayleigh_cross_sections(d, lam, 1.8 + 0.2j)
        assert mie == mie_cross_sections(MieInput(d, lam, model))


class TestMolecular:
    def test_zero_polarizability(self):
        assert molecular_scattering_xs(1e-3, 0.0) == 0.0

    def test_direct_formula_value(self):
        lam = CONST.c / 1e12
        want = (8 * math.pi / 3) * (2 * math.pi / lam) ** 4 * 1e-60
        assert molecular_scattering_xs(lam, 1e-30) == pytest.approx(want, rel=1e-12)

    def test_quadratic_scaling(self):
        lam = 1e-3
        assert molecular_scattering_xs(lam, 2e-30) == pytest.approx(
            4.0 * molecular_scattering_xs(lam, 1e-30), rel=1e-12
        )

    def test_table_node_identity(self):
        registry = default_species_registry()
        h2o = registry["water_vapor"]
        table = h2o.absorption
        idx = len(table.frequency_hz) // 2
        f = float(table.frequency_hz[idx])
        assert molecular_absorption_xs(h2o, f) == pytest.approx(
            float(table.sigma_m2[idx]), rel=1e-12
        )

    def test_dry_air_composite_is_mole_fraction_sum(self):
        registry = default_species_registry()
        dry = registry["dry_air"]
        parts = {name: registry[name] for name in DRY_AIR_MOLE_FRACTIONS}
        for f in (60e9, 119e9, 217.5e9, 368.5e9, 800e9):
            want = sum(
                frac * molecular_absorption_xs(parts[name], f)
                for name, frac in DRY_AIR_MOLE_FRACTIONS.items()
            )
            assert molecular_absorption_xs(dry, f) == pytest.approx(want, rel=1e-9)

    def test_octave_midpoint_is_geometric_mean(self):
        freqs = np.array([1.0e11, 2.0e11])
        sigmas = np.array([1.0e-26, 2.0e-26])
        got = interp_log_sigma(freqs, sigmas, 1.5e11)
        assert got == pytest.approx(math.sqrt(2.0) * 1.0e-26, rel=1e-12)

    def test_out_of_range_rejected(self):
        registry = default_species_registry()
        h2o = registry["water_vapor"]
        with pytest.raises(OutOfDomainError):
            molecular_absorption_xs(h2o, 1.0e9)
        with pytest.raises(OutOfDomainError):
            molecular_absorption_xs(h2o, 5.0e12)

    def test_species_without_table_rejected(self):
        bare = GasSpecies("bare", 1e-26, 1e-30, absorption=None)
        with pytest.raises(OutOfDomainError):
            molecular_absorption_xs(bare, 1e11)


class TestPlasma:
    def test_plasma_frequency_values(self):
        assert plasma_frequency(0.0) == 0.0
        assert plasma_frequency(1e11) == pytest.approx(2.84e6, rel=2e-3)
        assert plasma_frequency(4e11) == pytest.approx(2.0 * plasma_frequency(1e11), rel=1e-12)

    def test_gaunt_values(self):
        assert gaunt_log(2000.0, 1e12) == pytest.approx(
            38.3 + 1.5 * math.log(2000.0) - math.log(1e12), rel=1e-12
        )
        assert gaunt_log(2000.0, 1e12) == pytest.approx(22.07, abs=0.01)
        assert gaunt_log(1e6, 1e12) == pytest.approx(31.48, abs=0.01)

    def test_gaunt_branch_seam_gap(self):
        t = 9.1e5
        lower = 38.3 + 1.5 * math.log(t) - math.log(1e12)
        upper = 45.3 + math.log(t) - math.log(1e12)
        assert abs(lower - upper) < 0.3
        # lower branch inclusive at the seam
        assert gaunt_log(t, 1e12) == pytest.approx(lower, rel=1e-12)

    def test_gaunt_degenerate(self):
        with pytest.raises(DegeneratePlasmaError):
            gaunt_log(1.0, 1e30)

    def test_coulomb_direct_values(self):
        iono = PlasmaState(1e11, 2000.0)
        # frozen from direct evaluation of the formula with CODATA constants
        assert coulomb_absorption_xs(1.0e12, iono) == pytest.approx(2.822e-29, rel=1e-3)
        assert coulomb_absorption_xs(0.1e12, iono) == pytest.approx(3.117e-27, rel=1e-3)

    def test_coulomb_zero_density_limit(self):
        assert coulomb_absorption_xs(1e12, PlasmaState(0.0, 2000.0)) == 0.0

    def test_coulomb_monotone_decreasing_in_frequency(self):
        iono = PlasmaState(1e11, 2000.0)
        values = [coulomb_absorption_xs(f, iono) for f in np.linspace(0.1e12, 1e12, 16)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_coulomb_density_scaling(self):
        # sigma(2 n_e)/sigma(n_e) -> 2 for f >> f_pe
        f = 1e12
        ratio = coulomb_absorption_xs(f, PlasmaState(2e11, 2000.0)) / coulomb_absorption_xs(
            f, PlasmaState(1e11, 2000.0)
        )
        assert ratio == pytest.approx(2.0, rel=1e-6)

    def test_evanescent_regime(self):
        with pytest.raises(EvanescentRegimeError):
            coulomb_absorption_xs(1e6, PlasmaState(1e11, 2000.0))

    def test_thomson_constant(self):
        sigma = thomson_scattering_xs()
        assert abs(sigma - 6.6524e-29) < 1e-32
        r_e = CONST.q_e**2 / (4 * math.pi * CONST.eps0 * CONST.m_e * CONST.c**2)
        assert sigma == pytest.approx((8 * math.pi / 3) * r_e**2, rel=1e-15)


class TestWaterDielectric:
    def test_positive_loss_over_domain(self):
        for f in np.linspace(0.1e12, 1.0e12, 7):
            for t in (274.0, 298.15, 330.0, 372.0):
                q = water_refractive_index(f, t)
                assert q.imag > 0.0

    def test_magnitude_decreases_with_frequency(self):
        values = [abs(water_refractive_index(f, 298.15)) for f in np.linspace(0.1e12, 1e12, 10)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_golden_value_from_bundled_parameters(self):
        # frozen once from the bundled, versioned coefficient file
        q = water_refractive_index(0.3e12, 298.15)
        assert q.real == pytest.approx(2.531571014, rel=1e-9)
        assert q.imag == pytest.approx(1.040645146, rel=1e-9)

    def test_permittivity_form(self):
        eps = water_permittivity(0.3e12, 298.15)
        q = water_refractive_index(0.3e12, 298.15)
        assert q * q == pytest.approx(eps, rel=1e-12)

    def test_domain_guards(self):
        with pytest.raises(OutOfDomainError):
            water_refractive_index(0.05e12, 298.15)
        with pytest.raises(OutOfDomainError):
            water_refractive_index(1.5e12, 298.15)
        with pytest.raises(OutOfDomainError):
            water_refractive_index(0.3e12, 273.0)
        with pytest.raises(OutOfDomainError):
            water_refractive_index(0.3e12, 373.0)


class TestCrossSectionsType:
    def test_rejects_negative_and_nonfinite(self):
        with pytest.raises(OutOfDomainError):
            CrossSections(-1e-20, 0.0)
        with pytest.raises(OutOfDomainError):
            CrossSections(float("nan"), 0.0)

    def test_extinction_is_sum(self):
        xs = CrossSections(1.0e-7, 2.0e-7)
        assert xs.extinction_m2 == pytest.approx(3.0e-7, rel=1e-15)
