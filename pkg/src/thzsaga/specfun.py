"""Spherical Bessel and Hankel functions for the partial-wave series.

Supports complex arguments for j_m (needed inside absorbing spheres) and
real positive arguments for y_m / h_m^(1).

Convention: the time factor is exp(-i*omega*t), so the outgoing spherical
wave is h_m^(1) = j_m + i*y_m and absorbing media carry a refractive index
with positive imaginary part.
"""

import cmath
import math

import numpy as np

from .errors import ConvergenceError, OutOfDomainError

ORDER_CAP = 10_000
ARGUMENT_CAP = 1.0e4

# |z| below which power series replace the closed forms (cancellation guard).
_SERIES_CUTOFF = 0.5


def _check_order(m) -> int:
    if not isinstance(m, (int, np.integer)):
        raise OutOfDomainError(f"order must be an integer, got {m!r}")
    if m < 0 or m > ORDER_CAP:
        raise OutOfDomainError(f"order {m} outside [0, {ORDER_CAP}]")
    return int(m)


def _check_argument(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise OutOfDomainError(f"argument must be finite, got {z!r}")
    if abs(z) >= ARGUMENT_CAP:
        raise OutOfDomainError(f"|z| = {abs(z):.3e} outside domain guard < {ARGUMENT_CAP:.0e}")
    return z


def _j0(z: complex) -> complex:
    if abs(z) < _SERIES_CUTOFF:
        # j0 = sum (-1)^k z^(2k) / (2k+1)!
        z2 = z * z
        return 1.0 + z2 * (-1.0 / 6 + z2 * (1.0 / 120 + z2 * (-1.0 / 5040 + z2 * (1.0 / 362880 + z2 * (-1.0 / 39916800)))))
    return cmath.sin(z) / z


def _j1(z: complex) -> complex:
    if abs(z) < _SERIES_CUTOFF:
        # j1 = sum (-1)^k z^(2k+1) / (2^k k! (2k+3)!!); cancellation-free
        z2 = z * z
        return z * (1.0 / 3 + z2 * (-1.0 / 30 + z2 * (1.0 / 840 + z2 * (-1.0 / 45360 + z2 * (1.0 / 3991680 + z2 * (-1.0 / 518918400 + z2 / 93405312000))))))
    return cmath.sin(z) / (z * z) - cmath.cos(z) / z


def sph_jn_all(mmax: int, z) -> np.ndarray:
    """All spherical Bessel functions j_0(z)..j_mmax(z) in one pass.

    Upward recurrence where it is stable (|z| > mmax), otherwise downward
    Miller recurrence normalized against the closed-form j_0 or j_1
    (whichever is larger in magnitude, to avoid zeros of sin).

    Parameters
    ----------
    mmax : highest order wanted (>= 0)
    z : complex or real argument

    Returns
    -------
    complex ndarray of shape (mmax + 1,)
    """
    mmax = _check_order(mmax)
    z = _check_argument(z)

    out = np.zeros(mmax + 1, dtype=complex)
    az = abs(z)
    if az < 1e-12:
        # series limit at the origin: j_0 -> 1, higher orders -> 0
        out[0] = 1.0
        if mmax >= 1 and az > 0.0:
            out[1] = z / 3.0
        return out

    if mmax == 0:
        out[0] = _j0(z)
        return out

    if az > mmax + 1:
        # upward recurrence is stable when the order stays below |z|
        out[0] = _j0(z)
        out[1] = _j1(z)
        for m in range(1, mmax):
            out[m + 1] = (2 * m + 1) / z * out[m] - out[m - 1]
        return out

    # Downward Miller recurrence from a start order safely above both
    # mmax and |z|; the minimal solution j_m is recovered after
    # normalization regardless of the arbitrary seed.
    base = max(mmax, int(az))
    nstart = base + 16 + int(1.5 * math.sqrt(base + 1))
    fnext = 0.0 + 0.0j
    fcur = 1e-280 + 0.0j
    for n in range(nstart, 0, -1):
        fprev = (2 * n + 1) / z * fcur - fnext
        fnext = fcur
        fcur = fprev
        if n - 1 <= mmax:
            out[n - 1] = fcur
        if abs(fcur) > 1e250:
            fcur *= 1e-250
            fnext *= 1e-250
            out *= 1e-250

    j0, j1v = _j0(z), _j1(z)
    # out[0] / out[1] hold the unnormalized j_0 / j_1
    if abs(j0) >= abs(j1v):
        scale = j0 / out[0]
    else:
        scale = j1v / out[1]
    out *= scale
    if not np.all(np.isfinite(out.view(float))):
        raise ConvergenceError(f"spherical Bessel recurrence failed for mmax={mmax}, z={z!r}")
    return out


def sph_yn_all(mmax: int, x: float) -> np.ndarray:
    """All spherical Neumann functions y_0(x)..y_mmax(x) for real x > 0.

    Upward recurrence; stable because y_m is the dominant solution.
    """
    mmax = _check_order(mmax)
    x = _check_argument(x)
    if x.imag != 0.0 or x.real <= 0.0:
        raise OutOfDomainError(f"y_m requires real positive argument, got {x!r}")
    x = x.real

    out = np.zeros(mmax + 1, dtype=float)
    out[0] = -math.cos(x) / x
    if mmax >= 1:
        out[1] = -math.cos(x) / (x * x) - math.sin(x) / x
    for m in range(1, mmax):
        out[m + 1] = (2 * m + 1) / x * out[m] - out[m - 1]
    if not np.all(np.isfinite(out)):
        raise ConvergenceError(f"spherical Neumann recurrence overflowed for mmax={mmax}, x={x}")
    return out


def sph_bessel_j(m: int, z) -> complex:
    """Spherical Bessel function of the first kind, j_m(z), complex z."""
    m = _check_order(m)
    return complex(sph_jn_all(m, z)[m])


def sph_bessel_y(m: int, x: float) -> float:
    """Spherical Bessel function of the second kind, y_m(x), real x > 0."""
    m = _check_order(m)
    return float(sph_yn_all(m, x)[m])


def sph_hankel1(m: int, x: float) -> complex:
    """Spherical Hankel function of the first kind, h_m(x) = j_m(x) + i*y_m(x).

    Defined here for real positive x (the ambient medium is lossless);
    diverges at x = 0.
    """
    m = _check_order(m)
    x = _check_argument(x)
    if x.imag != 0.0 or x.real <= 0.0:
        raise OutOfDomainError(f"h_m^(1) requires real positive argument, got {x!r}")
    x = x.real
    return complex(sph_bessel_j(m, x)) + 1j * sph_bessel_y(m, x)


def _fm_minus1(m: int, z: complex, kind: str) -> complex:
    """f_(m-1)(z), extending to order -1 via the closed forms."""
    if m >= 1:
        if kind == "bessel-j":
            return sph_bessel_j(m - 1, z)
        return sph_hankel1(m - 1, z)
    # j_(-1) = cos(z)/z, y_(-1) = sin(z)/z, hence h_(-1) = e^(iz)/z
    if kind == "bessel-j":
        return cmath.cos(z) / z
    return cmath.exp(1j * z) / z


def riccati_pair(m: int, z, kind: str = "bessel-j") -> tuple[complex, complex]:
    """Return (f_m(z), d/dz[z*f_m(z)]) for f = j or h^(1).

    The derivative uses the stable identity
    d/dz[z f_m(z)] = z f_(m-1)(z) - m f_m(z),
    valid for every solution of the spherical Bessel equation.

    kind : "bessel-j" | "hankel-1"
    """
    m = _check_order(m)
    if kind not in ("bessel-j", "hankel-1"):
        raise OutOfDomainError(f"unknown kind {kind!r}")
    z = _check_argument(z)
    if kind == "bessel-j":
        if abs(z) < 1e-12:
            # leading order: z f_m ~ z^(m+1)/(2m+1)!!
            if m == 0:
                return (1.0 + 0j, 1.0 + 0j)
            return (0.0 + 0j, 0.0 + 0j)
        fm = sph_bessel_j(m, z)
    else:
        fm = sph_hankel1(m, z)
        z = complex(z.real)
    deriv = z * _fm_minus1(m, z, kind) - m * fm
    return (complex(fm), complex(deriv))


def riccati_pairs_all(mmax: int, z, kind: str = "bessel-j") -> tuple[np.ndarray, np.ndarray]:
    """Vector form of riccati_pair for orders 0..mmax (one recurrence pass)."""
    mmax = _check_order(mmax)
    if kind not in ("bessel-j", "hankel-1"):
        raise OutOfDomainError(f"unknown kind {kind!r}")
    z = _check_argument(z)
    if kind == "bessel-j":
        f = sph_jn_all(mmax, z)
        if abs(z) < 1e-12:
            d = np.zeros(mmax + 1, dtype=complex)
            d[0] = 1.0
            return f, d
        fm1 = np.empty(mmax + 1, dtype=complex)
        fm1[0] = cmath.cos(z) / z
        fm1[1:] = f[:-1]
    else:
        if z.imag != 0.0 or z.real <= 0.0:
            raise OutOfDomainError(f"h_m^(1) requires real positive argument, got {z!r}")
        x = z.real
        f = sph_jn_all(mmax, x) + 1j * sph_yn_all(mmax, x)
        fm1 = np.empty(mmax + 1, dtype=complex)
        fm1[0] = cmath.exp(1j * x) / x
        fm1[1:] = f[:-1]
    orders = np.arange(mmax + 1)
    deriv = z * fm1 - orders * f
    return f, deriv
