"""Physical constants shared by all modules (SI units, CODATA 2018)."""

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """Immutable bundle of the physical constants used by the engine.

    Attributes
    ----------
    q_e : electron charge, C
    m_e : electron mass, kg
    eps0 : vacuum permittivity, F/m
    k_b : Boltzmann constant, J/K
    c : speed of light in vacuum, m/s
    g : standard gravitational acceleration, m/s^2
    n_a : Avogadro constant, 1/mol
    noise_psd_dbm_hz : thermal noise power spectral density, dBm/Hz
    """

    q_e: float = 1.602176634e-19
    m_e: float = 9.1093837015e-31
    eps0: float = 8.8541878128e-12
    k_b: float = 1.380649e-23
    c: float = 299792458.0
    g: float = 9.80665
    n_a: float = 6.02214076e23
    noise_psd_dbm_hz: float = -174.0


CONST = PhysicalConstants()

# Atomic mass unit (kg); used to express molecular masses.
ATOMIC_MASS_KG = 1.66053906660e-27
