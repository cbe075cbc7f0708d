"""Loaders and writers for tables, configs, and result reports.

File formats are plain text. Dataset files (absorption tables, drop
spectra, dielectric parameters, band allocations) are comment-headed CSV
or key-value text; scenario and atmosphere configs are INI-style blocks.
Bundled dataset files carry a sha256 of their data rows which is verified
on load. Loaders are strict: unknown keys are rejected and every rejection
names the offending location.
"""

import configparser
import hashlib
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .atmosphere import (
    AtmosphereModel,
    GasProfile,
    HydrometeorLayer,
    PlasmaLayer,
    TemperatureProfile,
    temperature,
)
from .errors import DataFormatError, OutOfDomainError
from .geometry import PathGeometry
from .linkbudget import BandAllocation, BandAllocationTable, BudgetRow, LinkSpec, Scenario
from .pathloss import LossBreakdown
from .xsection import DebyeParameters, FixedIndex, PlasmaState, WaterIndex


# ---------------------------------------------------------------------------
# Dataset types


@dataclass(frozen=True, eq=False)
class AbsorptionTable:
    """Tabulated absorption cross section of one species vs frequency."""

    species: str
    frequency_hz: np.ndarray
    sigma_m2: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        f = np.asarray(self.frequency_hz, dtype=float)
        s = np.asarray(self.sigma_m2, dtype=float)
        object.__setattr__(self, "frequency_hz", f)
        object.__setattr__(self, "sigma_m2", s)
        if f.ndim != 1 or f.shape != s.shape or len(f) < 2:
            raise DataFormatError("absorption table needs >= 2 (frequency, sigma) rows")
        if not np.all(np.diff(f) > 0.0):
            raise DataFormatError("absorption table frequencies must be strictly increasing")
        if not np.all(np.isfinite(f)) or not np.all(np.isfinite(s)) or np.any(s < 0.0):
            raise DataFormatError("absorption table values must be finite with sigma >= 0")

    @property
    def f_min_hz(self) -> float:
        return float(self.frequency_hz[0])

    @property
    def f_max_hz(self) -> float:
        return float(self.frequency_hz[-1])


@dataclass(frozen=True)
class DropSpectrum:
    """Drop-size distribution: (diameter m, number density 1/m^3) bins."""

    bins: tuple[tuple[float, float], ...]
    rain_rate_mmhr: float | None = None

    def __post_init__(self):
        diameters = [d for d, _ in self.bins]
        if not diameters:
            raise DataFormatError("drop spectrum needs at least one bin")
        if any(d <= 0.0 for d in diameters) or sorted(set(diameters)) != diameters:
            raise DataFormatError("drop diameters must be positive and strictly increasing")
        if any(n < 0.0 for _, n in self.bins):
            raise DataFormatError("drop densities must be >= 0")


# ---------------------------------------------------------------------------
# Low-level helpers


def _read_text(source) -> tuple[str, str | None]:
    """Return (text, path-or-None) from a path, bytes, or file object."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        return path.read_text(encoding="utf-8"), str(path)
    if isinstance(source, bytes):
        return source.decode("utf-8"), None
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data, getattr(source, "name", None)


def rows_digest(data_rows: list[str]) -> str:
    """sha256 over the stripped data rows, newline-joined."""
    joined = "\n".join(r.strip() for r in data_rows)
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()


def _split_table_text(text: str, path: str | None):
    """Split into (header key-values, [(lineno, row)] data rows); verify checksum."""
    header: dict[str, str] = {}
    rows: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key = body.split("=", 1)[0].strip()
                if key == "species":
                    # one-line header: species=<name> provenance=<text>
                    rest = body[len("species=") :]
                    if " provenance=" in rest:
                        name, prov = rest.split(" provenance=", 1)
                        header["species"] = name.strip()
                        header["provenance"] = prov.strip()
                    else:
                        header["species"] = rest.strip()
                else:
                    header[key] = body.split("=", 1)[1].strip()
            continue
        rows.append((lineno, line))
    expected = header.get("sha256")
    if expected is not None:
        actual = rows_digest([r for _, r in rows])
        if actual != expected:
            raise DataFormatError(
                f"checksum mismatch: file says sha256={expected}, rows hash to {actual}",
                path=path,
            )
    return header, rows


def _parse_float(token: str, lineno: int, path: str | None, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataFormatError(f"malformed {what}: {token!r}", line=lineno, path=path) from None
    if not math.isfinite(value):
        raise DataFormatError(f"non-finite {what}: {token!r}", line=lineno, path=path)
    return value


# ---------------------------------------------------------------------------
# Absorption tables


def load_absorption_table(source) -> AbsorptionTable:
    """Parse `# species=<name> provenance=<text>` header plus f,sigma rows."""
    text, path = _read_text(source)
    header, rows = _split_table_text(text, path)
    freqs, sigmas = [], []
    for lineno, line in rows:
        parts = line.split(",")
        if len(parts) != 2:
            raise DataFormatError(
                f"expected 'frequency_hz,sigma_m2', got {line!r}", line=lineno, path=path
            )
        f = _parse_float(parts[0], lineno, path, "frequency")
        s = _parse_float(parts[1], lineno, path, "cross section")
        if freqs and f == freqs[-1]:
            raise DataFormatError(f"duplicate frequency {f:g} Hz", line=lineno, path=path)
        if freqs and f < freqs[-1]:
            raise DataFormatError(
                f"frequencies must increase, got {f:g} after {freqs[-1]:g}",
                line=lineno,
                path=path,
            )
        if s < 0.0:
            raise DataFormatError(f"negative cross section {s:g}", line=lineno, path=path)
        freqs.append(f)
        sigmas.append(s)
    if len(freqs) < 2:
        raise DataFormatError("absorption table needs >= 2 rows", path=path)
    return AbsorptionTable(
        species=header.get("species", "unknown"),
        frequency_hz=np.array(freqs),
        sigma_m2=np.array(sigmas),
        provenance=header.get("provenance", ""),
    )


def save_absorption_table(table: AbsorptionTable, destination) -> None:
    rows = [f"{f:.10e},{s:.10e}" for f, s in zip(table.frequency_hz, table.sigma_m2)]
    lines = [
        f"# species={table.species} provenance={table.provenance}",
        f"# sha256={rows_digest(rows)}",
        *rows,
        "",
    ]
    _write_text("\n".join(lines), destination)


# ---------------------------------------------------------------------------
# Drop spectra


def load_drop_spectrum(source) -> DropSpectrum:
    """Parse diameter_m,density_m3 rows with an optional rain-rate header."""
    text, path = _read_text(source)
    header, rows = _split_table_text(text, path)
    bins = []
    for lineno, line in rows:
        parts = line.split(",")
        if len(parts) != 2:
            raise DataFormatError(
                f"expected 'diameter_m,density_m3', got {line!r}", line=lineno, path=path
            )
        d = _parse_float(parts[0], lineno, path, "diameter")
        n = _parse_float(parts[1], lineno, path, "density")
        bins.append((d, n))
    rate = None
    if "rain_rate_mmhr" in header:
        rate = _parse_float(header["rain_rate_mmhr"], 0, path, "rain rate")
    try:
        return DropSpectrum(bins=tuple(bins), rain_rate_mmhr=rate)
    except DataFormatError as exc:
        raise DataFormatError(exc.reason, path=path) from None


def save_drop_spectrum(spectrum: DropSpectrum, destination) -> None:
    lines = []
    if spectrum.rain_rate_mmhr is not None:
        lines.append(f"# rain_rate_mmhr={spectrum.rain_rate_mmhr:.10g}")
    lines += [f"{d:.10g},{n:.10g}" for d, n in spectrum.bins]
    lines.append("")
    _write_text("\n".join(lines), destination)


# ---------------------------------------------------------------------------
# Double-Debye parameters


_DEBYE_KEYS = ("eps_s", "eps_1", "eps_inf", "fd1_hz", "fd2_hz")


def load_debye_parameters(source) -> DebyeParameters:
    """Key-value text: each key holds polynomial coefficients in (T - 273.15)."""
    text, path = _read_text(source)
    header, rows = _split_table_text(text, path)
    found: dict[str, tuple] = {}
    version = "unversioned"
    for lineno, line in rows:
        if "=" not in line:
            raise DataFormatError(f"expected 'key = values', got {line!r}", line=lineno, path=path)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key == "version":
            version = value.strip()
            continue
        if key not in _DEBYE_KEYS:
            raise DataFormatError(f"unknown key {key!r}", line=lineno, path=path)
        coeffs = tuple(
            _parse_float(tok, lineno, path, f"{key} coefficient") for tok in value.split()
        )
        if not coeffs:
            raise DataFormatError(f"key {key!r} has no coefficients", line=lineno, path=path)
        found[key] = coeffs
    missing = [k for k in _DEBYE_KEYS if k not in found]
    if missing:
        raise DataFormatError(f"missing required keys: {', '.join(missing)}", path=path)
    return DebyeParameters(
        eps_s=found["eps_s"],
        eps_1=found["eps_1"],
        eps_inf=found["eps_inf"],
        fd1_hz=found["fd1_hz"],
        fd2_hz=found["fd2_hz"],
        version=version,
    )


# ---------------------------------------------------------------------------
# Band allocations


_BAND_COLUMNS = (
    "f_lo_ghz",
    "f_hi_ghz",
    "fixed_mobile",
    "aeronautical_mobile",
    "fixed_satellite_up",
    "fixed_satellite_down",
    "mobile_satellite_up",
    "mobile_satellite_down",
)


def load_band_table(source) -> BandAllocationTable:
    """CSV with one row per allocated band and 0/1 service flags."""
    text, path = _read_text(source)
    header, rows = _split_table_text(text, path)
    if not rows:
        raise DataFormatError("band table is empty", path=path)
    first_lineno, first = rows[0]
    if first.replace(" ", "") != ",".join(_BAND_COLUMNS):
        raise DataFormatError(
            f"band table header must be {','.join(_BAND_COLUMNS)}", line=first_lineno, path=path
        )
    allocations = []
    for lineno, line in rows[1:]:
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != len(_BAND_COLUMNS):
            raise DataFormatError(
                f"expected {len(_BAND_COLUMNS)} columns, got {len(parts)}", line=lineno, path=path
            )
        lo = _parse_float(parts[0], lineno, path, "band edge")
        hi = _parse_float(parts[1], lineno, path, "band edge")
        flags = []
        for token in parts[2:]:
            if token not in ("0", "1"):
                raise DataFormatError(f"flags must be 0 or 1, got {token!r}", line=lineno, path=path)
            flags.append(token == "1")
        allocations.append(BandAllocation(lo, hi, *flags))
    try:
        return BandAllocationTable(rows=tuple(allocations))
    except OutOfDomainError as exc:
        raise DataFormatError(str(exc), path=path) from None


# ---------------------------------------------------------------------------
# INI-style configs


def _read_config(source) -> tuple[configparser.ConfigParser, str | None]:
    text, path = _read_text(source)
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=path or "<config>")
    except configparser.Error as exc:
        raise DataFormatError(f"config syntax error: {exc}", path=path) from None
    return parser, path


def _require(section, key: str, path: str | None, sec_name: str) -> str:
    if key not in section:
        raise DataFormatError(f"section [{sec_name}] missing required key {key!r}", path=path)
    return section[key]


def _reject_unknown(keys, allowed: set[str], path: str | None, sec_name: str) -> None:
    unknown = set(keys) - allowed
    if unknown:
        raise DataFormatError(
            f"section [{sec_name}] has unknown keys: {', '.join(sorted(unknown))}", path=path
        )


def _parse_medium(token: str, layer_mid_k: float, path: str | None, sec_name: str):
    parts = token.split()
    if parts and parts[0] == "water":
        if len(parts) == 1:
            return WaterIndex(temperature_k=layer_mid_k)
        if len(parts) == 2:
            return WaterIndex(temperature_k=float(parts[1]))
    elif parts and parts[0] == "fixed" and len(parts) == 3:
        return FixedIndex(q=complex(float(parts[1]), float(parts[2])))
    raise DataFormatError(
        f"section [{sec_name}]: medium must be 'water', 'water <T>' or 'fixed <re> <im>', "
        f"got {token!r}",
        path=path,
    )


def load_atmosphere(source, species_registry: dict | None = None) -> AtmosphereModel:
    """Build an AtmosphereModel from an INI config.

    Blocks: [atmosphere] plus any number of [gas:<name>], [hydrometeor:<label>],
    [plasma:<label>] sections. Gas names resolve against the species
    registry (bundled registry by default).
    """
    if species_registry is None:
        from .presets import default_species_registry

        species_registry = default_species_registry()
    parser, path = _read_config(source)

    if "atmosphere" not in parser:
        raise DataFormatError("missing [atmosphere] section", path=path)
    top = parser["atmosphere"]
    _reject_unknown(
        set(top),
        {
            "surface_temperature_k",
            "humidity_mode",
            "lapse_k_per_m",
            "troposphere_top_m",
            "isothermal_top_m",
            "upper_k",
        },
        path,
        "atmosphere",
    )
    profile = TemperatureProfile(
        surface_k=float(_require(top, "surface_temperature_k", path, "atmosphere")),
        lapse_k_per_m=float(top.get("lapse_k_per_m", "0.006")),
        troposphere_top_m=float(top.get("troposphere_top_m", "1e4")),
        isothermal_top_m=float(top.get("isothermal_top_m", "5e4")),
        upper_k=float(top.get("upper_k", "2000")),
    )
    humidity_mode = top.get("humidity_mode", "saturated")

    gases, hydrometeors, plasmas = [], [], []
    for sec_name in parser.sections():
        if sec_name == "atmosphere":
            continue
        section = parser[sec_name]
        if sec_name.startswith("gas:"):
            name = sec_name[len("gas:") :]
            if name not in species_registry:
                raise DataFormatError(f"unknown gas species {name!r}", path=path)
            _reject_unknown(
                set(section),
                {"profile", "surface_density_m3", "ceiling_m", "humidity_scale"},
                path,
                sec_name,
            )
            kind = _require(section, "profile", path, sec_name)
            density = section.get("surface_density_m3")
            if kind != "saturated-water" and density is None:
                raise DataFormatError(
                    f"section [{sec_name}] missing required key 'surface_density_m3'", path=path
                )
            gases.append(
                GasProfile(
                    species=species_registry[name],
                    kind=kind,
                    surface_density_m3=None if density is None else float(density),
                    ceiling_m=float(_require(section, "ceiling_m", path, sec_name)),
                    humidity_scale=float(section.get("humidity_scale", "1.0")),
                )
            )
        elif sec_name.startswith("hydrometeor:"):
            label = sec_name[len("hydrometeor:") :]
            _reject_unknown(set(section), {"h_lo_m", "h_hi_m", "bins", "medium"}, path, sec_name)
            h_lo = float(_require(section, "h_lo_m", path, sec_name))
            h_hi = float(_require(section, "h_hi_m", path, sec_name))
            bins = []
            for token in _require(section, "bins", path, sec_name).split(","):
                if ":" not in token:
                    raise DataFormatError(
                        f"section [{sec_name}]: bins must be 'd_m:n_m3' pairs, got {token!r}",
                        path=path,
                    )
                d, n = token.split(":", 1)
                bins.append((float(d), float(n)))
            mid_k = temperature(profile, 0.5 * (h_lo + h_hi))
            medium = _parse_medium(
                section.get("medium", "water"), mid_k, path, sec_name
            )
            hydrometeors.append(
                HydrometeorLayer(h_lo, h_hi, tuple(bins), medium, label=label)
            )
        elif sec_name.startswith("plasma:"):
            label = sec_name[len("plasma:") :]
            _reject_unknown(set(section), {"h_lo_m", "h_hi_m", "ne_m3", "t_k"}, path, sec_name)
            plasmas.append(
                PlasmaLayer(
                    h_lo_m=float(_require(section, "h_lo_m", path, sec_name)),
                    h_hi_m=float(_require(section, "h_hi_m", path, sec_name)),
                    state=PlasmaState(
                        electron_density_m3=float(_require(section, "ne_m3", path, sec_name)),
                        temperature_k=float(_require(section, "t_k", path, sec_name)),
                    ),
                    label=label,
                )
            )
        else:
            raise DataFormatError(f"unknown section [{sec_name}]", path=path)

    try:
        return AtmosphereModel(
            temperature_profile=profile,
            gases=tuple(gases),
            hydrometeors=tuple(hydrometeors),
            plasmas=tuple(plasmas),
            humidity_mode=humidity_mode,
        )
    except OutOfDomainError as exc:
        raise DataFormatError(str(exc), path=path) from None


def save_atmosphere(model: AtmosphereModel, destination) -> None:
    """Write an AtmosphereModel back to the INI layout load_atmosphere reads."""
    p = model.temperature_profile
    lines = [
        "[atmosphere]",
        f"surface_temperature_k = {p.surface_k:.10g}",
        f"humidity_mode = {model.humidity_mode}",
        f"lapse_k_per_m = {p.lapse_k_per_m:.10g}",
        f"troposphere_top_m = {p.troposphere_top_m:.10g}",
        f"isothermal_top_m = {p.isothermal_top_m:.10g}",
        f"upper_k = {p.upper_k:.10g}",
    ]
    for gas in model.gases:
        lines += ["", f"[gas:{gas.species.name}]", f"profile = {gas.kind}"]
        if gas.surface_density_m3 is not None:
            lines.append(f"surface_density_m3 = {gas.surface_density_m3:.10g}")
        lines.append(f"ceiling_m = {gas.ceiling_m:.10g}")
        if gas.kind == "saturated-water":
            lines.append(f"humidity_scale = {gas.humidity_scale:.10g}")
    for layer in model.hydrometeors:
        bins = ",".join(f"{d:.10g}:{n:.10g}" for d, n in layer.bins)
        medium = (
            f"water {layer.refractive.temperature_k:.10g}"
            if isinstance(layer.refractive, WaterIndex)
            else f"fixed {layer.refractive.q.real:.10g} {layer.refractive.q.imag:.10g}"
        )
        lines += [
            "",
            f"[hydrometeor:{layer.label}]",
            f"h_lo_m = {layer.h_lo_m:.10g}",
            f"h_hi_m = {layer.h_hi_m:.10g}",
            f"bins = {bins}",
            f"medium = {medium}",
        ]
    for layer in model.plasmas:
        lines += [
            "",
            f"[plasma:{layer.label}]",
            f"h_lo_m = {layer.h_lo_m:.10g}",
            f"h_hi_m = {layer.h_hi_m:.10g}",
            f"ne_m3 = {layer.state.electron_density_m3:.10g}",
            f"t_k = {layer.state.temperature_k:.10g}",
        ]
    lines.append("")
    _write_text("\n".join(lines), destination)


def load_scenario(source, species_registry: dict | None = None) -> Scenario:
    """Build a Scenario (hops + weather-composed atmospheres) from an INI config."""
    from .presets import compose_weather, default_atmosphere

    parser, path = _read_config(source)
    if "scenario" not in parser:
        raise DataFormatError("missing [scenario] section", path=path)
    top = parser["scenario"]
    _reject_unknown(
        set(top), {"name", "p_total_w", "gain_db", "atmosphere"}, path, "scenario"
    )
    name = _require(top, "name", path, "scenario")
    p_total = float(_require(top, "p_total_w", path, "scenario"))
    gain_db = float(top.get("gain_db", "110"))

    weather = {
        "rain_rate_mmhr": 0.0,
        "rain_top_m": 5000.0,
        "cloud": False,
        "cloud_top_m": 5000.0,
        "humidity_mode": None,
    }
    if "weather" in parser:
        wsec = parser["weather"]
        _reject_unknown(
            set(wsec),
            {"rain_rate_mmhr", "rain_top_m", "cloud", "cloud_top_m", "humidity_mode"},
            path,
            "weather",
        )
        weather["rain_rate_mmhr"] = float(wsec.get("rain_rate_mmhr", "0"))
        weather["rain_top_m"] = float(wsec.get("rain_top_m", "5000"))
        weather["cloud"] = wsec.get("cloud", "false").lower() in ("1", "true", "yes")
        weather["cloud_top_m"] = float(wsec.get("cloud_top_m", "5000"))
        weather["humidity_mode"] = wsec.get("humidity_mode")

    if "atmosphere" in top:
        base_ref = Path(top["atmosphere"])
        if not base_ref.is_absolute() and path is not None:
            base_ref = Path(path).parent / base_ref
        base = load_atmosphere(base_ref, species_registry)
    else:
        base = default_atmosphere(humidity_mode=weather["humidity_mode"] or "saturated")

    hops = []
    for sec_name in parser.sections():
        if sec_name in ("scenario", "weather"):
            continue
        if not sec_name.startswith("hop:"):
            raise DataFormatError(f"unknown section [{sec_name}]", path=path)
        section = parser[sec_name]
        _reject_unknown(
            set(section),
            {
                "band_ghz",
                "h0_m",
                "h1_m",
                "elevation_rad",
                "horizontal_km",
                "altitude_m",
                "include_rain",
                "include_cloud",
                "gain_db",
            },
            path,
            sec_name,
        )
        band_tokens = _require(section, "band_ghz", path, sec_name).replace("-", ",").split(",")
        if len(band_tokens) != 2:
            raise DataFormatError(
                f"section [{sec_name}]: band_ghz must be 'lo, hi'", path=path
            )
        band_hz = (float(band_tokens[0]) * 1e9, float(band_tokens[1]) * 1e9)
        if "horizontal_km" in section:
            geometry = PathGeometry.horizontal(
                float(section.get("altitude_m", "0")), float(section["horizontal_km"]) * 1e3
            )
        else:
            geometry = PathGeometry.slant(
                float(_require(section, "h0_m", path, sec_name)),
                float(_require(section, "h1_m", path, sec_name)),
                float(_require(section, "elevation_rad", path, sec_name)),
            )
        include_rain = section.get("include_rain", "true").lower() in ("1", "true", "yes")
        include_cloud = section.get("include_cloud", "true").lower() in ("1", "true", "yes")
        hop_atmosphere = compose_weather(
            base,
            rain_rate_mmhr=weather["rain_rate_mmhr"] if include_rain else 0.0,
            rain_top_m=weather["rain_top_m"],
            cloud=weather["cloud"] and include_cloud,
            cloud_top_m=weather["cloud_top_m"],
            humidity_mode=weather["humidity_mode"],
        )
        hops.append(
            LinkSpec(
                band_hz=band_hz,
                geometry=geometry,
                atmosphere=hop_atmosphere,
                gain_db=float(section.get("gain_db", str(gain_db))),
                label=sec_name[len("hop:") :],
            )
        )
    if not hops:
        raise DataFormatError("scenario needs at least one [hop:*] section", path=path)
    try:
        return Scenario(name=name, hops=tuple(hops), p_total_w=p_total)
    except OutOfDomainError as exc:
        raise DataFormatError(str(exc), path=path) from None


# ---------------------------------------------------------------------------
# Report emission


_BUDGET_HEADER = (
    "link,f_ghz,p_t_w,fspl_db,mie_db,rayleigh_db,molecular_db,total_db,"
    "p_r_dbm,p_n_dbm,capacity_gbps,spectral_efficiency_bpshz"
)
_LOSS_HEADER = "f_hz,fspl_db,mie_db,rayleigh_db,molecular_db,plasma_db,total_db"


def _write_text(text: str, destination) -> None:
    if isinstance(destination, (str, Path)):
        Path(destination).write_text(text, encoding="utf-8")
    else:
        destination.write(text)


def format_budget_row(row: BudgetRow) -> str:
    band = f"{row.band_hz[0] / 1e9:g}-{row.band_hz[1] / 1e9:g}"
    return ",".join(
        [
            row.label or "link",
            band,
            f"{row.p_t_w:.2f}",
            f"{row.losses.fspl_db:.2f}",
            f"{row.losses.mie_db:.2f}",
            f"{row.losses.rayleigh_db:.2f}",
            f"{row.losses.molecular_db:.2f}",
            f"{row.losses.total_db:.2f}",
            f"{row.p_r_dbm:.2f}",
            f"{row.p_n_dbm:.2f}",
            f"{row.capacity_bps / 1e9:.2f}",
            f"{row.spectral_efficiency:.2f}",
        ]
    )


def format_loss_row(f_hz: float, loss: LossBreakdown) -> str:
    return ",".join(
        [
            f"{f_hz:.10g}",
            f"{loss.fspl_db:.6e}",
            f"{loss.mie_db:.6e}",
            f"{loss.rayleigh_db:.6e}",
            f"{loss.molecular_db:.6e}",
            f"{loss.plasma_db:.6e}",
            f"{loss.total_db:.6e}",
        ]
    )


def emit_report(rows, destination, kind: str = "auto") -> None:
    """Write budget or loss rows as CSV with a header, deterministically.

    ``rows`` is either a list of BudgetRow (budget report, fixed 2-decimal
    formatting) or a list of (f_hz, LossBreakdown) pairs (loss report,
    scientific notation to keep plot-ready dynamic range). ``kind`` forces
    the schema for empty inputs.
    """
    rows = list(rows)
    if kind == "auto":
        if not rows:
            kind = "budget"
        elif isinstance(rows[0], BudgetRow):
            kind = "budget"
        else:
            kind = "loss"
    if kind == "budget":
        lines = [_BUDGET_HEADER] + [format_budget_row(r) for r in rows]
    elif kind == "loss":
        lines = [_LOSS_HEADER] + [format_loss_row(f, l) for f, l in rows]
    else:
        raise OutOfDomainError(f"unknown report kind {kind!r}")
    _write_text("\n".join(lines) + "\n", destination)


def emit_discrepancy_report(records: list[dict], destination) -> None:
    """Write the reference-row consistency report produced by consistency_check."""
    lines = ["label,reference_value,computed_value,deviation,verdict"]
    for r in records:
        if "spectral_efficiency" in r:
            lines.append(
                ",".join(
                    [
                        f"{r['label']}/C_over_B",
                        f"{r['spectral_efficiency']:.2f}",
                        f"{r['computed_spectral_efficiency']:.2f}",
                        f"{r['efficiency_error']:+.3f}",
                        "ok" if abs(r["efficiency_error"]) <= 0.02 else "DISCREPANT",
                    ]
                )
            )
        if "capacity_bps" in r:
            lines.append(
                ",".join(
                    [
                        f"{r['label']}/C",
                        f"{r['capacity_bps'] / 1e9:.2f}",
                        f"{r['computed_capacity_bps'] / 1e9:.2f}",
                        f"{r['capacity_rel_error']:+.4f}",
                        "ok" if abs(r["capacity_rel_error"]) <= 0.005 else "DISCREPANT",
                    ]
                )
            )
    _write_text("\n".join(lines) + "\n", destination)
