#!/usr/bin/env python3
"""Generate the bundled band-allocation table, scenario presets, and
example atmosphere configs.

The allocation rows transcribe the ITU Radio Regulations (WRC-19)
frequency allocations between 0.1 and 0.45 THz for the six service
classes the budget tool filters on. Scenario presets cover the
space-ground, space-sea, ground-air-sea, and sea-air-sea studies.
"""

import hashlib
import math
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "thzsaga" / "data"

# f_lo, f_hi GHz, then flags: fixed_mobile, aeronautical_mobile,
# fixed_satellite_up, fixed_satellite_down, mobile_satellite_up, mobile_satellite_down
BANDS = [
    (111.8, 114.25, 1, 0, 0, 0, 0, 0),
    (122.25, 123, 1, 1, 0, 0, 0, 0),
    (123, 130, 0, 0, 0, 1, 0, 1),
    (130, 134, 1, 1, 0, 0, 0, 0),
    (141, 148.5, 1, 0, 0, 0, 0, 0),
    (151.5, 158.5, 1, 0, 0, 0, 0, 0),
    (158.5, 164, 1, 0, 0, 1, 0, 1),
    (167, 174.5, 1, 1, 0, 1, 0, 0),
    (174.5, 174.8, 1, 1, 0, 0, 0, 0),
    (191.8, 200, 1, 1, 0, 0, 1, 1),
    (209, 226, 1, 0, 1, 0, 0, 0),
    (231.5, 232, 1, 0, 0, 0, 0, 0),
    (232, 235, 1, 0, 0, 1, 0, 0),
    (235, 238, 0, 0, 0, 1, 0, 0),
    (238, 240, 1, 0, 0, 1, 0, 0),
    (240, 241, 1, 0, 0, 0, 0, 0),
    (252, 265, 1, 0, 0, 0, 1, 0),
    (265, 275, 1, 0, 1, 0, 0, 0),
    (275, 296, 1, 0, 0, 0, 0, 0),
    (306, 313, 1, 0, 0, 0, 0, 0),
    (318, 333, 1, 0, 0, 0, 0, 0),
    (356, 450, 1, 0, 0, 0, 0, 0),
]

BAND_HEADER = (
    "f_lo_ghz,f_hi_ghz,fixed_mobile,aeronautical_mobile,"
    "fixed_satellite_up,fixed_satellite_down,mobile_satellite_up,mobile_satellite_down"
)


def write_band_table():
    rows = [BAND_HEADER]
    for band in BANDS:
        lo, hi, *flags = band
        rows.append(f"{lo:g},{hi:g}," + ",".join(str(f) for f in flags))
    digest = hashlib.sha256("\n".join(rows).encode()).hexdigest()
    path = DATA / "band_allocations.csv"
    path.write_text(
        "\n".join(
            [
                "# provenance=ITU Radio Regulations (WRC-19) allocations, 0.1-0.45 THz",
                f"# sha256={digest}",
                *rows,
                "",
            ]
        )
    )
    print(f"wrote {path}")


# --- scenario presets -------------------------------------------------------

K_B = 1.380649e-23
SEA_LEVEL_AIR = 101325.0 / (K_B * 298.15)

# relay plane at 10 km; slant hop covering half the ground distance
def slant(ground_km: float) -> tuple[float, float]:
    """(elevation_rad, hop length check) for a 10 km relay over ground_km."""
    elev = math.atan2(10.0, ground_km / 2.0)
    return elev


SCENARIOS = {
    # space-ground uplink / downlink
    "space_ground_up_sunny": f"""\
[scenario]
name = space-ground uplink, sunny
p_total_w = 10
gain_db = 110

[hop:up]
band_ghz = 209, 226
h0_m = 0
h1_m = 550000
elevation_rad = {math.pi / 2}
""",
    "space_ground_up_rain": f"""\
[scenario]
name = space-ground uplink, heavy rain and cumulonimbus
p_total_w = 10
gain_db = 110

[weather]
rain_rate_mmhr = 50
rain_top_m = 5000
cloud = true
cloud_top_m = 5000

[hop:up]
band_ghz = 209, 226
h0_m = 0
h1_m = 550000
elevation_rad = {math.pi / 2}
""",
    "space_ground_up_relay": f"""\
[scenario]
name = space-ground uplink via aircraft relay at 10 km
p_total_w = 10
gain_db = 110

[weather]
rain_rate_mmhr = 50
rain_top_m = 5000
cloud = true
cloud_top_m = 5000

[hop:lower]
band_ghz = 130, 134
h0_m = 0
h1_m = 10000
elevation_rad = {math.pi / 2}

[hop:upper]
band_ghz = 209, 226
h0_m = 10000
h1_m = 550000
elevation_rad = {math.pi / 2}
""",
    "space_ground_up_relay_slant": f"""\
[scenario]
name = space-ground uplink via relay, slant lower hop avoiding the cloud
p_total_w = 10
gain_db = 110

[weather]
rain_rate_mmhr = 50
rain_top_m = 5000
cloud = true
cloud_top_m = 5000

[hop:lower]
band_ghz = 130, 134
h0_m = 0
h1_m = 10000
elevation_rad = {math.pi / 4}
include_cloud = false

[hop:upper]
band_ghz = 209, 226
h0_m = 10000
h1_m = 550000
elevation_rad = {math.pi / 2}
""",
    "space_ground_down_sunny": f"""\
[scenario]
name = space-ground downlink, sunny
p_total_w = 10
gain_db = 110

[hop:down]
band_ghz = 123, 130
h0_m = 550000
h1_m = 0
elevation_rad = {math.pi / 2}
""",
    "space_ground_down_rain": f"""\
[scenario]
name = space-ground downlink, heavy rain and cumulonimbus
p_total_w = 10
gain_db = 110

[weather]
rain_rate_mmhr = 50
rain_top_m = 5000
cloud = true
cloud_top_m = 5000

[hop:down]
band_ghz = 123, 130
h0_m = 550000
h1_m = 0
elevation_rad = {math.pi / 2}
""",
    "space_sea_up_sunny": f"""\
[scenario]
name = space-sea uplink, sunny
p_total_w = 10
gain_db = 110

[hop:up]
band_ghz = 252, 265
h0_m = 0
h1_m = 550000
elevation_rad = {math.pi / 2}
""",
    "ground_air_sea_direct": """\
[scenario]
name = ground-air-sea direct link over 100 km
p_total_w = 10
gain_db = 110

[hop:direct]
band_ghz = 141, 148.5
horizontal_km = 100
altitude_m = 0
""",
    "ground_air_sea_relay": f"""\
[scenario]
name = ground-air-sea link via aircraft relay at 10 km
p_total_w = 10
gain_db = 110

[hop:a]
band_ghz = 141, 148.5
h0_m = 0
h1_m = 10000
elevation_rad = {math.atan2(10.0, 50.0)}

[hop:b]
band_ghz = 141, 148.5
h0_m = 10000
h1_m = 0
elevation_rad = {math.atan2(10.0, 50.0)}
""",
    "sea_air_sea_direct": """\
[scenario]
name = sea-air-sea direct link over 40 km
p_total_w = 10
gain_db = 110

[hop:direct]
band_ghz = 151.5, 164
horizontal_km = 40
altitude_m = 0
""",
    "sea_air_sea_relay": f"""\
[scenario]
name = sea-air-sea link via aircraft relay at 10 km
p_total_w = 10
gain_db = 110

[hop:a]
band_ghz = 151.5, 164
h0_m = 0
h1_m = 10000
elevation_rad = {math.atan2(10.0, 20.0)}

[hop:b]
band_ghz = 151.5, 164
h0_m = 10000
h1_m = 0
elevation_rad = {math.atan2(10.0, 20.0)}
""",
}

ATMOSPHERES = {
    "atmosphere_saturated": f"""\
[atmosphere]
surface_temperature_k = 298.15
humidity_mode = saturated

[gas:dry_air]
profile = hydrostatic
surface_density_m3 = {SEA_LEVEL_AIR:.6e}
ceiling_m = 50000

[gas:water_vapor]
profile = saturated-water
ceiling_m = 15000

[plasma:ionosphere]
h_lo_m = 50000
h_hi_m = 1000000
ne_m3 = 1e11
t_k = 2000
""",
    "atmosphere_unsaturated": f"""\
[atmosphere]
surface_temperature_k = 298.15
humidity_mode = unsaturated

[gas:dry_air]
profile = hydrostatic
surface_density_m3 = {SEA_LEVEL_AIR:.6e}
ceiling_m = 50000

[gas:water_vapor]
profile = unsaturated-water
surface_density_m3 = {0.5 * 6.02214076e23:.6e}
ceiling_m = 15000

[plasma:ionosphere]
h_lo_m = 50000
h_hi_m = 1000000
ne_m3 = 1e11
t_k = 2000
""",
}


def write_scenarios():
    outdir = DATA / "scenarios"
    outdir.mkdir(parents=True, exist_ok=True)
    for name, text in {**SCENARIOS, **ATMOSPHERES}.items():
        path = outdir / f"{name}.cfg"
        path.write_text(text)
        print(f"wrote {path}")


def write_rain_spectrum():
    rows = ["0.002,1000"]
    digest = hashlib.sha256("\n".join(rows).encode()).hexdigest()
    path = DATA / "rain_98mmhr.csv"
    path.write_text(
        "\n".join(["# rain_rate_mmhr=98", f"# sha256={digest}", *rows, ""])
    )
    print(f"wrote {path}")


def main():
    write_band_table()
    write_scenarios()
    write_rain_spectrum()
    return 0


if __name__ == "__main__":
    sys.exit(main())
