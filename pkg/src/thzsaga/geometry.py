"""Propagation-path geometry through a layered atmosphere.

Slant paths use flat-earth geometry: a path between altitudes h0 and h1 at
elevation angle theta has length |h1 - h0| / sin(theta). Horizontal paths
stay at a fixed altitude with an explicit length.
"""

import math
from dataclasses import dataclass

from .errors import OutOfDomainError


@dataclass(frozen=True)
class PathGeometry:
    """A straight path, either slant (elevation in (0, pi/2]) or horizontal."""

    h0_m: float
    h1_m: float
    elevation_rad: float | None
    length_m: float

    def __post_init__(self):
        if self.length_m <= 0.0 or not math.isfinite(self.length_m):
            raise OutOfDomainError(f"path length must be positive and finite, got {self.length_m!r}")
        if self.h0_m < 0.0 or self.h1_m < 0.0:
            raise OutOfDomainError("altitudes must be >= 0")
        if self.elevation_rad is not None:
            if not 0.0 < self.elevation_rad <= math.pi / 2.0:
                raise OutOfDomainError(
                    f"elevation angle must lie in (0, pi/2], got {self.elevation_rad!r}"
                )
            expected = abs(self.h1_m - self.h0_m) / math.sin(self.elevation_rad)
            if not math.isclose(expected, self.length_m, rel_tol=1e-9):
                raise OutOfDomainError(
                    f"length {self.length_m!r} inconsistent with slant geometry ({expected!r})"
                )
        elif self.h1_m != self.h0_m:
            raise OutOfDomainError("horizontal paths must keep a single altitude")

    @classmethod
    def slant(cls, h0_m: float, h1_m: float, elevation_rad: float) -> "PathGeometry":
        if h1_m == h0_m:
            raise OutOfDomainError("slant path needs distinct endpoint altitudes")
        # accept values like 1.5708 that overshoot pi/2 only by rounding
        if math.pi / 2.0 < elevation_rad <= math.pi / 2.0 + 1e-3:
            elevation_rad = math.pi / 2.0
        if not 0.0 < elevation_rad <= math.pi / 2.0:
            raise OutOfDomainError(f"elevation angle must lie in (0, pi/2], got {elevation_rad!r}")
        length = abs(h1_m - h0_m) / math.sin(elevation_rad)
        return cls(h0_m, h1_m, elevation_rad, length)

    @classmethod
    def vertical(cls, h0_m: float, h1_m: float) -> "PathGeometry":
        return cls.slant(h0_m, h1_m, math.pi / 2.0)

    @classmethod
    def horizontal(cls, altitude_m: float, length_m: float) -> "PathGeometry":
        return cls(altitude_m, altitude_m, None, length_m)

    @property
    def is_horizontal(self) -> bool:
        return self.elevation_rad is None

    def altitude_at(self, s_m: float) -> float:
        """Altitude after arclength s from the h0 end."""
        if self.is_horizontal:
            return self.h0_m
        direction = 1.0 if self.h1_m >= self.h0_m else -1.0
        return self.h0_m + direction * s_m * math.sin(self.elevation_rad)

    def arclength_of_altitude(self, h_m: float) -> float:
        """Inverse of altitude_at for slant paths."""
        if self.is_horizontal:
            raise OutOfDomainError("horizontal path has no altitude parameterization")
        return abs(h_m - self.h0_m) / math.sin(self.elevation_rad)

    def altitude_span(self) -> tuple[float, float]:
        return (min(self.h0_m, self.h1_m), max(self.h0_m, self.h1_m))

    def crossing_length(self, h_lo_m: float, h_hi_m: float) -> float:
        """Arclength of this path inside the altitude band [h_lo, h_hi]."""
        if self.is_horizontal:
            return self.length_m if h_lo_m <= self.h0_m <= h_hi_m else 0.0
        lo, hi = self.altitude_span()
        overlap = min(hi, h_hi_m) - max(lo, h_lo_m)
        if overlap <= 0.0:
            return 0.0
        return overlap / math.sin(self.elevation_rad)
