"""Absorption and scattering cross sections for every particle class.

Covers condensed spheres (partial-wave series and its small-sphere limit),
gas molecules (tabulated absorption plus molecular Rayleigh scattering),
and free electrons (Coulomb absorption, Thomson scattering).

All cross sections are in m^2. Sign conventions follow the exp(-i*omega*t)
time factor: absorbing media have Im(q) > 0.
"""

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import CONST
from .errors import (
    ConvergenceError,
    DegeneratePlasmaError,
    EvanescentRegimeError,
    OutOfDomainError,
    SingularityError,
)
from .specfun import riccati_pairs_all

# Condensed particles smaller than this fraction of the wavelength are
# dispatched to the small-sphere (Rayleigh) formulas.
RAYLEIGH_DIAMETER_FRACTION = 0.1

# Extra series terms used to verify truncation convergence.
_CONVERGENCE_MARGIN = 10
_CONVERGENCE_RTOL = 1e-9

# Numerical floor for slightly negative absorption sums (rounding in the
# lossless case); anything below this is treated as a series failure.
_NEGATIVE_FLOOR = -1e-30

_GAUNT_BRANCH_K = 9.1e5


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class CrossSections:
    """Paired absorption/scattering cross sections (m^2)."""

    absorption_m2: float
    scattering_m2: float

    def __post_init__(self):
        for name in ("absorption_m2", "scattering_m2"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise OutOfDomainError(f"{name} must be finite and >= 0, got {v!r}")

    @property
    def extinction_m2(self) -> float:
        return self.absorption_m2 + self.scattering_m2


@dataclass(frozen=True)
class FixedIndex:
    """Refractive model with a frequency-independent complex ratio q."""

    q: complex
    mu1: float = 1.0

    def __post_init__(self):
        if complex(self.q).imag < 0.0:
            raise OutOfDomainError("Im(q) must be >= 0 under the exp(-i*omega*t) convention")
        if self.mu1 <= 0.0:
            raise OutOfDomainError("permeability ratio mu1 must be positive")

    def index_at(self, f_hz: float) -> complex:
        return complex(self.q)


@dataclass(frozen=True)
class WaterIndex:
    """Liquid-water refractive model (double-Debye), parameterized by temperature."""

    temperature_k: float = 298.15
    mu1: float = 1.0

    def __post_init__(self):
        if not 273.0 < self.temperature_k < 373.0:
            raise OutOfDomainError(
                f"water dielectric model valid for 273 K < T < 373 K, got {self.temperature_k}"
            )
        if self.mu1 <= 0.0:
            raise OutOfDomainError("permeability ratio mu1 must be positive")

    def index_at(self, f_hz: float) -> complex:
        return water_refractive_index(f_hz, self.temperature_k)


@dataclass(frozen=True)
class GasSpecies:
    """A gas molecule: mass, polarizability, and tabulated absorption."""

    name: str
    molecular_mass_kg: float
    polarizability_m3: float
    absorption: "object | None" = None  # data_io.AbsorptionTable

    def __post_init__(self):
        if self.molecular_mass_kg <= 0.0:
            raise OutOfDomainError("molecular mass must be positive")
        if self.polarizability_m3 < 0.0:
            raise OutOfDomainError("polarizability must be >= 0")


@dataclass(frozen=True)
class PlasmaState:
    """Free-electron population: number density (1/m^3) and temperature (K)."""

    electron_density_m3: float
    temperature_k: float

    def __post_init__(self):
        if self.electron_density_m3 < 0.0:
            raise OutOfDomainError("electron density must be >= 0")
        if self.temperature_k <= 0.0:
            raise OutOfDomainError("temperature must be positive")


@dataclass(frozen=True)
class MieInput:
    """Inputs of the partial-wave series for one sphere at one wavelength."""

    diameter_m: float
    wavelength_m: float
    refractive: "FixedIndex | WaterIndex"
    m_max: int | None = None

    def __post_init__(self):
        if self.diameter_m <= 0.0:
            raise OutOfDomainError("diameter must be positive")
        if self.wavelength_m <= 0.0:
            raise OutOfDomainError("wavelength must be positive")
        if self.m_max is not None and self.m_max < minimum_series_order(self.size_parameter):
            raise OutOfDomainError(
                f"m_max={self.m_max} below the required truncation order "
                f"{minimum_series_order(self.size_parameter)}"
            )

    @property
    def size_parameter(self) -> float:
        return math.pi * self.diameter_m / self.wavelength_m

    @property
    def frequency_hz(self) -> float:
        return CONST.c / self.wavelength_m


def minimum_series_order(size_parameter: float) -> int:
    """Truncation order that keeps the partial-wave series accurate."""
    return int(math.ceil(size_parameter + 4.0 * size_parameter ** (1.0 / 3.0) + 2.0))


# ---------------------------------------------------------------------------
# Condensed particles


def mie_cross_sections(inp: MieInput) -> CrossSections:
    """Absorption and scattering cross sections of a homogeneous sphere.

    Sums the partial-wave series

        sigma_S = (pi d^2 / 2 xi^2) * sum (2m+1) (|a_m|^2 + |b_m|^2)
        sigma_A = (pi d^2 / 2 xi^2) * sum (2m+1) [Re(a_m + b_m) - |a_m|^2 - |b_m|^2]

    with coefficients a_m, b_m built from Riccati-Bessel pairs at xi and
    q*xi. The series is truncated at ``m_max`` (default: the smallest safe
    order) and verified by extending it ten more terms; a relative change
    above 1e-9 raises ConvergenceError.
    """
    xi = inp.size_parameter
    q = inp.refractive.index_at(inp.frequency_hz)
    mu1 = inp.refractive.mu1
    mmax = inp.m_max if inp.m_max is not None else minimum_series_order(xi)
    mtot = mmax + _CONVERGENCE_MARGIN

    jq, djq = riccati_pairs_all(mtot, q * xi, "bessel-j")
    jx, djx = riccati_pairs_all(mtot, xi, "bessel-j")
    hx, dhx = riccati_pairs_all(mtot, xi, "hankel-1")

    q2 = q * q
    num_a = q2 * jq * djx - mu1 * jx * djq
    den_a = q2 * jq * dhx - mu1 * hx * djq
    num_b = mu1 * jq * djx - jx * djq
    den_b = mu1 * jq * dhx - hx * djq
    with np.errstate(invalid="ignore", divide="ignore"):
        a = np.where(num_a == 0, 0.0, num_a / den_a)
        b = np.where(num_b == 0, 0.0, num_b / den_b)

    orders = np.arange(mtot + 1)
    weight = 2.0 * orders + 1.0
    mag2 = np.abs(a) ** 2 + np.abs(b) ** 2
    sca_terms = weight * mag2
    abs_terms = weight * ((a + b).real - mag2)
    # order m = 0 carries no partial wave
    sca_terms[0] = 0.0
    abs_terms[0] = 0.0

    prefactor = math.pi * inp.diameter_m**2 / (2.0 * xi * xi)
    sca_lo = prefactor * float(np.sum(sca_terms[: mmax + 1]))
    abs_lo = prefactor * float(np.sum(abs_terms[: mmax + 1]))
    sca_hi = prefactor * float(np.sum(sca_terms))
    abs_hi = prefactor * float(np.sum(abs_terms))

    scale = max(abs(sca_hi), abs(abs_hi), 1e-300)
    for lo, hi in ((sca_lo, sca_hi), (abs_lo, abs_hi)):
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ConvergenceError(f"partial-wave series produced non-finite sums at xi={xi:g}")
        if abs(hi - lo) > _CONVERGENCE_RTOL * scale:
            raise ConvergenceError(
                f"partial-wave series not converged at m_max={mmax} (xi={xi:g}): "
                f"extending by {_CONVERGENCE_MARGIN} terms moved the result by "
                f"{abs(hi - lo) / scale:.2e} relative"
            )

    if abs_lo < _NEGATIVE_FLOOR:
        raise ConvergenceError(
            f"absorption sum {abs_lo:.3e} m^2 below the numerical floor {_NEGATIVE_FLOOR:g}"
        )
    return CrossSections(max(abs_lo, 0.0), max(sca_lo, 0.0))


def rayleigh_cross_sections(diameter_m: float, wavelength_m: float, q: complex) -> CrossSections:
    """Small-sphere (d << lambda) limit of the partial-wave cross sections.

    Keeping the lowest surviving order of the series in the size parameter
    gives, with K = (q^2 - 1)/(q^2 + 2),

        sigma_A = (pi^2 d^3 / lambda) * Im(K)
        sigma_S = (2 pi^5 / 3) * (d^6 / lambda^4) * |K|^2

    Im(K) >= 0 for passive media under the exp(-i*omega*t) convention;
    tiny negative rounding is clamped to zero.
    """
    if diameter_m <= 0.0 or wavelength_m <= 0.0:
        raise OutOfDomainError("diameter and wavelength must be positive")
    q = complex(q)
    q2 = q * q
    den = q2 + 2.0
    if abs(den) < 1e-12 * (abs(q2) + 2.0):
        raise SingularityError(f"resonant denominator: q^2 = {q2!r} is too close to -2")
    k = (q2 - 1.0) / den
    absorption = math.pi**2 * diameter_m**3 / wavelength_m * k.imag
    scattering = (2.0 * math.pi**5 / 3.0) * diameter_m**6 / wavelength_m**4 * abs(k) ** 2
    return CrossSections(max(absorption, 0.0), max(scattering, 0.0))


def auto_cross_sections(
    diameter_m: float,
    wavelength_m: float,
    model: "FixedIndex | WaterIndex",
    rayleigh_fraction: float = RAYLEIGH_DIAMETER_FRACTION,
) -> CrossSections:
    """Dispatch a condensed sphere to the small-sphere or full-series path.

    Diameters below ``rayleigh_fraction * wavelength`` take the small-sphere
    branch; everything else runs the full partial-wave series.
    """
    if diameter_m <= 0.0 or wavelength_m <= 0.0:
        raise OutOfDomainError("diameter and wavelength must be positive")
    if diameter_m < rayleigh_fraction * wavelength_m:
        q = model.index_at(CONST.c / wavelength_m)
        return rayleigh_cross_sections(diameter_m, wavelength_m, q)
    return mie_cross_sections(MieInput(diameter_m, wavelength_m, model))


def is_rayleigh_regime(
    diameter_m: float,
    wavelength_m: float,
    rayleigh_fraction: float = RAYLEIGH_DIAMETER_FRACTION,
) -> bool:
    """True when auto_cross_sections would take the small-sphere branch."""
    return diameter_m < rayleigh_fraction * wavelength_m


# ---------------------------------------------------------------------------
# Gas molecules


def molecular_scattering_xs(wavelength_m: float, polarizability_m3: float) -> float:
    """Rayleigh scattering cross section of a single molecule.

    sigma = (8 pi / 3) * (2 pi / lambda)^4 * alpha^2, with alpha the
    polarizability volume in m^3.
    """
    if wavelength_m <= 0.0:
        raise OutOfDomainError("wavelength must be positive")
    if polarizability_m3 < 0.0:
        raise OutOfDomainError("polarizability must be >= 0")
    return (8.0 * math.pi / 3.0) * (2.0 * math.pi / wavelength_m) ** 4 * polarizability_m3**2


def interp_log_sigma(freqs_hz: np.ndarray, sigmas_m2: np.ndarray, f_hz: float) -> float:
    """Interpolate a cross-section table linearly in log(sigma) vs f.

    Absorption spans many decades, so interpolation is geometric between
    bracketing rows. No extrapolation: out-of-range frequencies raise.
    A zero endpoint falls back to linear interpolation on that interval.
    """
    if not (freqs_hz[0] <= f_hz <= freqs_hz[-1]):
        raise OutOfDomainError(
            f"frequency {f_hz:g} Hz outside table range "
            f"[{freqs_hz[0]:g}, {freqs_hz[-1]:g}] Hz (no extrapolation)"
        )
    idx = int(np.searchsorted(freqs_hz, f_hz))
    if idx < len(freqs_hz) and freqs_hz[idx] == f_hz:
        return float(sigmas_m2[idx])
    lo, hi = idx - 1, idx
    f0, f1 = float(freqs_hz[lo]), float(freqs_hz[hi])
    s0, s1 = float(sigmas_m2[lo]), float(sigmas_m2[hi])
    t = (f_hz - f0) / (f1 - f0)
    if s0 > 0.0 and s1 > 0.0:
        return math.exp((1.0 - t) * math.log(s0) + t * math.log(s1))
    return (1.0 - t) * s0 + t * s1


def molecular_absorption_xs(species: GasSpecies, f_hz: float) -> float:
    """Tabulated absorption cross section of a gas molecule at f (Hz)."""
    table = species.absorption
    if table is None:
        raise OutOfDomainError(f"species {species.name!r} has no absorption table attached")
    return interp_log_sigma(table.frequency_hz, table.sigma_m2, f_hz)


# ---------------------------------------------------------------------------
# Free electrons


def plasma_frequency(electron_density_m3: float) -> float:
    """Plasma (cutoff) frequency in Hz for a given electron density."""
    if electron_density_m3 < 0.0:
        raise OutOfDomainError("electron density must be >= 0")
    return (CONST.q_e / (2.0 * math.pi)) * math.sqrt(
        electron_density_m3 / (CONST.eps0 * CONST.m_e)
    )


def gaunt_log(temperature_k: float, f_hz: float) -> float:
    """Logarithmic Gaunt factor of free-free absorption, ln(Lambda_t).

    Piecewise in temperature with the branch seam at 9.1e5 K (lower branch
    inclusive). A non-positive result means the classical formula has left
    its validity range.
    """
    if temperature_k <= 0.0 or f_hz <= 0.0:
        raise OutOfDomainError("temperature and frequency must be positive")
    if temperature_k <= _GAUNT_BRANCH_K:
        value = 38.3 + 1.5 * math.log(temperature_k) - math.log(f_hz)
    else:
        value = 45.3 + math.log(temperature_k) - math.log(f_hz)
    if value <= 0.0:
        raise DegeneratePlasmaError(
            f"Gaunt factor ln(Lambda) = {value:.3f} <= 0 at T={temperature_k:g} K, f={f_hz:g} Hz"
        )
    return value


def coulomb_absorption_xs(f_hz: float, plasma: PlasmaState) -> float:
    """Free-free (Coulomb) absorption cross section per electron, m^2.

    sigma = (kappa0 / n_e) * (f_pe^4 / f^2) / sqrt(1 - f_pe^2 / f^2), with
    kappa0 = 1.76e-16 * ln(Lambda_t) / T^(3/2)  [1/(m Hz^2)].

    Frequencies at or below the plasma frequency are evanescent and raise.
    """
    if f_hz <= 0.0:
        raise OutOfDomainError("frequency must be positive")
    ne = plasma.electron_density_m3
    if ne == 0.0:
        return 0.0
    fpe = plasma_frequency(ne)
    if f_hz <= fpe:
        raise EvanescentRegimeError(
            f"f = {f_hz:g} Hz does not propagate: plasma frequency is {fpe:g} Hz"
        )
    kappa0 = 1.76e-16 * gaunt_log(plasma.temperature_k, f_hz) / plasma.temperature_k**1.5
    ratio = fpe / f_hz
    return (kappa0 / ne) * (fpe**4 / f_hz**2) / math.sqrt(1.0 - ratio * ratio)


@lru_cache(maxsize=1)
def thomson_scattering_xs() -> float:
    """Thomson scattering cross section of a free electron (constant, m^2)."""
    r_e = CONST.q_e**2 / (4.0 * math.pi * CONST.eps0 * CONST.m_e * CONST.c**2)
    return (8.0 * math.pi / 3.0) * r_e**2


def electron_cross_sections(f_hz: float, plasma: PlasmaState) -> CrossSections:
    """Combined absorption (Coulomb) and scattering (Thomson) per electron."""
    return CrossSections(coulomb_absorption_xs(f_hz, plasma), thomson_scattering_xs())


# ---------------------------------------------------------------------------
# Liquid-water dielectric model


@dataclass(frozen=True)
class DebyeParameters:
    """Double-Debye coefficient polynomials in (T - 273.15 K).

    Each field holds ascending polynomial coefficients; relaxation
    frequencies are in Hz.
    """

    eps_s: tuple
    eps_1: tuple
    eps_inf: tuple
    fd1_hz: tuple
    fd2_hz: tuple
    version: str = "unversioned"

    def evaluate(self, temperature_k: float) -> tuple[float, float, float, float, float]:
        tc = temperature_k - 273.15
        return (
            _polyval(self.eps_s, tc),
            _polyval(self.eps_1, tc),
            _polyval(self.eps_inf, tc),
            _polyval(self.fd1_hz, tc),
            _polyval(self.fd2_hz, tc),
        )


def _polyval(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


_DEFAULT_DEBYE: DebyeParameters | None = None


def default_debye_parameters() -> DebyeParameters:
    """The bundled, versioned water parameter set."""
    global _DEFAULT_DEBYE
    if _DEFAULT_DEBYE is None:
        from . import data_io
        from .datafiles import bundled_path

        _DEFAULT_DEBYE = data_io.load_debye_parameters(bundled_path("double_debye_water.txt"))
    return _DEFAULT_DEBYE


def water_permittivity(
    f_hz: float, temperature_k: float, params: DebyeParameters | None = None
) -> complex:
    """Complex relative permittivity of liquid water (double-Debye).

    eps = eps_inf + (eps_s - eps_1)/(1 - i f/fD1) + (eps_1 - eps_inf)/(1 - i f/fD2)

    Valid for 0.1 THz <= f <= 1 THz and 273 K < T < 373 K.
    """
    if not 0.1e12 <= f_hz <= 1.0e12:
        raise OutOfDomainError(f"water dielectric model valid for 0.1-1 THz, got {f_hz:g} Hz")
    if not 273.0 < temperature_k < 373.0:
        raise OutOfDomainError(
            f"water dielectric model valid for 273 K < T < 373 K, got {temperature_k:g} K"
        )
    p = params if params is not None else default_debye_parameters()
    eps_s, eps_1, eps_inf, fd1, fd2 = p.evaluate(temperature_k)
    return (
        eps_inf
        + (eps_s - eps_1) / (1.0 - 1j * f_hz / fd1)
        + (eps_1 - eps_inf) / (1.0 - 1j * f_hz / fd2)
    )


def water_refractive_index(
    f_hz: float, temperature_k: float, params: DebyeParameters | None = None
) -> complex:
    """Complex refractive-index ratio q = sqrt(eps) of liquid water.

    The branch with Im(q) >= 0 is returned (lossy medium under the
    exp(-i*omega*t) convention).
    """
    q = cmath.sqrt(water_permittivity(f_hz, temperature_k, params))
    if q.imag < 0.0:
        q = -q
    return q
