"""Link budgets: received power, noise, Shannon capacity, relay power split.

Powers are tracked in dBm, capacities in bit/s. The capacity formula uses
the ratio of linear powers, C = B log2(1 + 10^((P_R - P_N)/10)).
"""

import math
from dataclasses import dataclass, field

from .atmosphere import AtmosphereModel
from .constants import CONST
from .errors import NoSolutionError, OutOfDomainError
from .geometry import PathGeometry
from .pathloss import LossBreakdown, band_average_loss

DEFAULT_GAIN_DB = 110.0  # 55 dBi per transceiver, transmit + receive

_SPLIT_RTOL = 1e-9
_SPLIT_MAX_ITER = 400


def noise_power(bandwidth_hz: float) -> float:
    """Thermal noise power in dBm over a bandwidth: N0 + 10 log10(B)."""
    if bandwidth_hz <= 0.0:
        raise OutOfDomainError("bandwidth must be positive")
    return CONST.noise_psd_dbm_hz + 10.0 * math.log10(bandwidth_hz)


def received_power(p_t_w: float, gain_db: float, l_tot_db: float) -> float:
    """Received power in dBm: transmit power minus loss plus gain."""
    if p_t_w <= 0.0:
        raise OutOfDomainError("transmit power must be positive")
    return 10.0 * math.log10(p_t_w * 1000.0) - l_tot_db + gain_db


def capacity(bandwidth_hz: float, p_r_dbm: float, p_n_dbm: float) -> float:
    """Shannon capacity in bit/s from received and noise powers in dBm."""
    if bandwidth_hz <= 0.0:
        raise OutOfDomainError("bandwidth must be positive")
    snr_linear = 10.0 ** ((p_r_dbm - p_n_dbm) / 10.0)
    return bandwidth_hz * math.log1p(snr_linear) / math.log(2.0)


# ---------------------------------------------------------------------------
# Link specifications and budget rows


@dataclass(frozen=True)
class LinkSpec:
    """One hop: band, geometry, antenna gains, and the medium it crosses."""

    band_hz: tuple[float, float]
    geometry: PathGeometry
    atmosphere: AtmosphereModel
    gain_db: float = DEFAULT_GAIN_DB
    label: str = ""

    def __post_init__(self):
        f_lo, f_hi = self.band_hz
        if not 0.0 < f_lo < f_hi:
            raise OutOfDomainError(f"band must satisfy 0 < f_lo < f_hi, got {self.band_hz!r}")

    @property
    def bandwidth_hz(self) -> float:
        return self.band_hz[1] - self.band_hz[0]

    def evaluate_loss(self, n_points: int = 1) -> LossBreakdown:
        return band_average_loss(self.atmosphere, self.geometry, self.band_hz, n_points)


@dataclass(frozen=True)
class BudgetRow:
    """One evaluated link: loss breakdown, powers, capacity, efficiency."""

    label: str
    band_hz: tuple[float, float]
    p_t_w: float
    losses: LossBreakdown
    p_r_dbm: float
    p_n_dbm: float
    capacity_bps: float
    spectral_efficiency: float

    @property
    def bandwidth_hz(self) -> float:
        return self.band_hz[1] - self.band_hz[0]


def budget_row(spec: LinkSpec, p_t_w: float, losses: LossBreakdown | None = None,
               capacity_bps: float | None = None) -> BudgetRow:
    """Assemble a BudgetRow for a hop at a given transmit power.

    ``capacity_bps`` overrides the single-hop Shannon capacity (used for
    relayed links, where the row reports the common end-to-end capacity
    while the efficiency column stays the hop's own C/B).
    """
    if losses is None:
        losses = spec.evaluate_loss()
    p_r = received_power(p_t_w, spec.gain_db, losses.total_db)
    p_n = noise_power(spec.bandwidth_hz)
    own_capacity = capacity(spec.bandwidth_hz, p_r, p_n)
    return BudgetRow(
        label=spec.label,
        band_hz=spec.band_hz,
        p_t_w=p_t_w,
        losses=losses,
        p_r_dbm=p_r,
        p_n_dbm=p_n,
        capacity_bps=own_capacity if capacity_bps is None else capacity_bps,
        spectral_efficiency=own_capacity / spec.bandwidth_hz,
    )


# ---------------------------------------------------------------------------
# Relay power allocation


@dataclass(frozen=True)
class HopBudget:
    """The per-hop quantities the power-split solver needs."""

    l_tot_db: float
    bandwidth_hz: float
    gain_db: float = DEFAULT_GAIN_DB
    label: str = ""

    def capacity_at(self, p_t_w: float) -> float:
        p_r = received_power(p_t_w, self.gain_db, self.l_tot_db)
        return capacity(self.bandwidth_hz, p_r, noise_power(self.bandwidth_hz))


@dataclass(frozen=True)
class RelayChain:
    """Two hops sharing one power budget under an allocation policy."""

    hops: tuple[HopBudget, HopBudget]
    p_total_w: float
    policy: str = "equal-capacity"

    def __post_init__(self):
        if len(self.hops) != 2:
            raise OutOfDomainError("relay chains with exactly two hops are supported")
        if self.p_total_w <= 0.0:
            raise OutOfDomainError("total power must be positive")
        if self.policy != "equal-capacity":
            raise OutOfDomainError(f"unknown allocation policy {self.policy!r}")


def equal_capacity_split(chain: RelayChain) -> tuple[float, float, float]:
    """Split the power budget so both hop capacities match.

    C_a is strictly increasing and C_b strictly decreasing in the split
    fraction rho, so the crossing is unique. The bisection runs on the log
    power ratio x = ln(P_a/P_b) (rho = 1/(1+e^-x)), which stays well
    conditioned when the balanced split is extremely lopsided. Returns
    (P_a, P_b, common capacity).
    """
    hop_a, hop_b = chain.hops
    p = chain.p_total_w
    if hop_a.capacity_at(p) <= 0.0 or hop_b.capacity_at(p) <= 0.0:
        raise NoSolutionError("a hop has zero capacity even at full power")

    def split_at(x: float) -> tuple[float, float]:
        # numerically stable logistic on both sides; p_a + p_b == p
        return p / (1.0 + math.exp(-x)), p / (1.0 + math.exp(x))

    lo, hi = -360.0, 360.0
    c_a = c_b = 0.0
    for _ in range(_SPLIT_MAX_ITER):
        x = 0.5 * (lo + hi)
        p_a, p_b = split_at(x)
        c_a = hop_a.capacity_at(p_a)
        c_b = hop_b.capacity_at(p_b)
        gap = abs(c_a - c_b) / max(c_a, c_b)
        if gap < _SPLIT_RTOL:
            return (p_a, p_b, 0.5 * (c_a + c_b))
        if c_a < c_b:
            lo = x
        else:
            hi = x
    raise NoSolutionError(f"equal-capacity split did not converge (last gap {gap:.3e})")


# ---------------------------------------------------------------------------
# Band allocation table


SERVICE_FLAGS = (
    "fixed_mobile",
    "aeronautical_mobile",
    "fixed_satellite_up",
    "fixed_satellite_down",
    "mobile_satellite_up",
    "mobile_satellite_down",
)


@dataclass(frozen=True)
class BandAllocation:
    """One allocated band with its permitted-service flags."""

    f_lo_ghz: float
    f_hi_ghz: float
    fixed_mobile: bool = False
    aeronautical_mobile: bool = False
    fixed_satellite_up: bool = False
    fixed_satellite_down: bool = False
    mobile_satellite_up: bool = False
    mobile_satellite_down: bool = False

    def __post_init__(self):
        if not 0.0 < self.f_lo_ghz < self.f_hi_ghz:
            raise OutOfDomainError(f"band bounds invalid: {self.f_lo_ghz}-{self.f_hi_ghz} GHz")

    def allows(self, service: str) -> bool:
        if service not in SERVICE_FLAGS:
            raise OutOfDomainError(f"unknown service {service!r}; choose from {SERVICE_FLAGS}")
        return bool(getattr(self, service))


@dataclass(frozen=True)
class BandAllocationTable:
    rows: tuple[BandAllocation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        ordered = sorted(self.rows, key=lambda r: r.f_lo_ghz)
        for a, b in zip(ordered, ordered[1:]):
            if b.f_lo_ghz < a.f_hi_ghz:
                raise OutOfDomainError(
                    f"overlapping bands {a.f_lo_ghz}-{a.f_hi_ghz} and {b.f_lo_ghz}-{b.f_hi_ghz} GHz"
                )


def bands_for_service(table: BandAllocationTable, service: str) -> list[tuple[float, float]]:
    """All (f_lo, f_hi) GHz bands whose flag for the given service is set."""
    return [(r.f_lo_ghz, r.f_hi_ghz) for r in table.rows if r.allows(service)]


# ---------------------------------------------------------------------------
# Scenario evaluation


@dataclass(frozen=True)
class Scenario:
    """A direct or one-relay link with its power budget."""

    name: str
    hops: tuple[LinkSpec, ...]
    p_total_w: float

    def __post_init__(self):
        if len(self.hops) not in (1, 2):
            raise OutOfDomainError("scenarios support one direct hop or two relayed hops")
        if self.p_total_w <= 0.0:
            raise OutOfDomainError("total power must be positive")


def evaluate_scenario(scenario: Scenario, n_points: int = 1) -> list[BudgetRow]:
    """Budget rows for a scenario.

    Direct links yield one row at full power. Relayed links allocate power
    for equal hop capacities and report that common capacity on both rows.
    """
    if len(scenario.hops) == 1:
        return [budget_row(scenario.hops[0], scenario.p_total_w)]

    losses = [hop.evaluate_loss(n_points) for hop in scenario.hops]
    chain = RelayChain(
        hops=tuple(
            HopBudget(l.total_db, hop.bandwidth_hz, hop.gain_db, hop.label)
            for hop, l in zip(scenario.hops, losses)
        ),
        p_total_w=scenario.p_total_w,
    )
    p_a, p_b, common = equal_capacity_split(chain)
    return [
        budget_row(scenario.hops[0], p_a, losses[0], capacity_bps=common),
        budget_row(scenario.hops[1], p_b, losses[1], capacity_bps=common),
    ]


# ---------------------------------------------------------------------------
# Reference-row consistency checking


def consistency_check(
    entries: list[dict],
    efficiency_tol: float = 0.02,
    capacity_rel_tol: float = 0.005,
) -> list[dict]:
    """Recompute C and C/B from each entry's (bandwidth, P_R, P_N).

    Each entry needs keys label, bandwidth_hz, p_r_dbm, p_n_dbm and may
    carry reference values capacity_bps / spectral_efficiency. Returns one
    record per entry with computed values, deviations, and a ``consistent``
    verdict; inconsistent reference rows are how published-table errata
    get surfaced.
    """
    out = []
    for e in entries:
        c = capacity(e["bandwidth_hz"], e["p_r_dbm"], e["p_n_dbm"])
        eff = c / e["bandwidth_hz"]
        record = dict(e)
        record["computed_capacity_bps"] = c
        record["computed_spectral_efficiency"] = eff
        ok = True
        if "spectral_efficiency" in e:
            record["efficiency_error"] = eff - e["spectral_efficiency"]
            ok = ok and abs(record["efficiency_error"]) <= efficiency_tol
        if "capacity_bps" in e:
            record["capacity_rel_error"] = (c - e["capacity_bps"]) / e["capacity_bps"]
            ok = ok and abs(record["capacity_rel_error"]) <= capacity_rel_tol
        record["consistent"] = ok
        out.append(record)
    return out
