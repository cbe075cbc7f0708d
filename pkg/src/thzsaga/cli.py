"""Command-line front end: cross sections, profiles, loss sweeps, budgets.

Exit codes: 0 success, 1 computation error, 2 usage error (including
missing or malformed input files). Outputs are deterministic CSV.
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import data_io, linkbudget, pathloss, presets
from .constants import CONST
from .datafiles import bundled_path
from .errors import DataFormatError, ThzSagaError
from .geometry import PathGeometry
from .xsection import (
    FixedIndex,
    PlasmaState,
    WaterIndex,
    auto_cross_sections,
    coulomb_absorption_xs,
    molecular_absorption_xs,
    molecular_scattering_xs,
    thomson_scattering_xs,
)


def _parse_grid(token: str) -> np.ndarray:
    parts = token.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be 'lo:hi:count', got {token!r}")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad grid {token!r}")
    return np.linspace(lo, hi, count)


def _parse_span(token: str) -> tuple[float, float]:
    parts = token.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"span must be 'lo:hi', got {token!r}")
    return float(parts[0]), float(parts[1])


def _out_stream(args):
    if args.output is None:
        return sys.stdout
    return open(args.output, "w", encoding="utf-8")


def _frequency_grid(args) -> np.ndarray:
    if args.f is not None:
        return args.f
    if args.band_ghz is not None:
        lo, hi = args.band_ghz
        return np.array([0.5 * (lo + hi) * 1e9])
    raise SystemExit2("one of --f or --band-ghz is required")


class SystemExit2(Exception):
    """Usage error carrying its message; mapped to exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thzsaga",
        description="THz space-air-ground attenuation and link-budget tool",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    x = sub.add_parser("xsec", help="cross sections of one particle over a frequency grid")
    x.add_argument("--water-drop-d", type=float, help="water sphere diameter, m")
    x.add_argument("--drop-d", type=float, help="sphere diameter for --fixed-q, m")
    x.add_argument("--fixed-q", help="fixed complex index ratio 're,im'")
    x.add_argument("--gas", help="gas species name (e.g. water_vapor, dry_air)")
    x.add_argument("--electron", action="store_true", help="free electron")
    x.add_argument("--temperature", type=float, default=None, help="K (water or plasma)")
    x.add_argument("--ne", type=float, default=1e11, help="electron density, 1/m^3")
    x.add_argument("--f", type=_parse_grid, required=True, help="frequency grid lo:hi:count, Hz")
    x.add_argument("--output", default=None)

    p = sub.add_parser("profile", help="species number densities vs altitude")
    p.add_argument("atmosphere", help="atmosphere config file")
    p.add_argument("--h", type=_parse_grid, required=True, help="altitude grid lo:hi:count, m")
    p.add_argument("--output", default=None)

    l = sub.add_parser("loss", help="per-mechanism loss along one path")
    l.add_argument("--atmosphere", default=None, help="atmosphere config (bundled default)")
    l.add_argument("--vertical", type=_parse_span, default=None, help="altitudes 'h0:h1', m")
    l.add_argument("--theta", type=float, default=math.pi / 2, help="elevation angle, rad")
    l.add_argument("--horizontal-km", type=float, default=None, help="horizontal length, km")
    l.add_argument("--altitude", type=float, default=0.0, help="altitude of horizontal path, m")
    l.add_argument("--f", type=_parse_grid, default=None, help="frequency grid lo:hi:count, Hz")
    l.add_argument("--band-ghz", type=_parse_span, default=None, help="band 'lo:hi', GHz")
    l.add_argument("--output", default=None)

    b = sub.add_parser("budget", help="budget table for a scenario file")
    b.add_argument("scenario", help="scenario config file")
    b.add_argument("--points", type=int, default=1, help="band-averaging grid points")
    b.add_argument("--output", default=None)

    s = sub.add_parser("sweep", help="loss rows over a frequency grid for a scenario's first hop")
    s.add_argument("scenario", help="scenario config file")
    s.add_argument("--f", type=_parse_grid, required=True, help="frequency grid lo:hi:count, Hz")
    s.add_argument("--output", default=None)
    return parser


def _cmd_xsec(args) -> int:
    chosen = [
        bool(args.water_drop_d),
        args.fixed_q is not None,
        args.gas is not None,
        args.electron,
    ]
    if sum(chosen) != 1:
        raise SystemExit2(
            "exactly one particle spec required: --water-drop-d | --fixed-q with --drop-d "
            "| --gas | --electron"
        )

    def xs_at(f_hz: float) -> tuple[float, float]:
        wavelength = CONST.c / f_hz
        if args.water_drop_d:
            model = WaterIndex(temperature_k=args.temperature or 298.15)
            xs = auto_cross_sections(args.water_drop_d, wavelength, model)
            return xs.absorption_m2, xs.scattering_m2
        if args.fixed_q is not None:
            if not args.drop_d:
                raise SystemExit2("--fixed-q requires --drop-d")
            re, im = (float(t) for t in args.fixed_q.split(","))
            xs = auto_cross_sections(args.drop_d, wavelength, FixedIndex(complex(re, im)))
            return xs.absorption_m2, xs.scattering_m2
        if args.gas is not None:
            registry = presets.default_species_registry()
            if args.gas not in registry:
                raise SystemExit2(
                    f"unknown gas {args.gas!r}; available: {', '.join(sorted(registry))}"
                )
            species = registry[args.gas]
            return (
                molecular_absorption_xs(species, f_hz),
                molecular_scattering_xs(wavelength, species.polarizability_m3),
            )
        plasma = PlasmaState(args.ne, args.temperature or 2000.0)
        return coulomb_absorption_xs(f_hz, plasma), thomson_scattering_xs()

    out = _out_stream(args)
    out.write("f_hz,sigma_a_m2,sigma_s_m2\n")
    for f in args.f:
        sa, ss = xs_at(float(f))
        out.write(f"{f:.10g},{sa:.8e},{ss:.8e}\n")
    if out is not sys.stdout:
        out.close()
    return 0


def _cmd_profile(args) -> int:
    model = data_io.load_atmosphere(args.atmosphere)
    from .atmosphere import species_at

    out = _out_stream(args)
    out.write("h_m,species,n_m3\n")
    for h in args.h:
        for species, density in species_at(model, float(h)):
            name = getattr(species, "name", None) or getattr(species, "label", "particles")
            out.write(f"{h:.10g},{name},{density:.8e}\n")
    if out is not sys.stdout:
        out.close()
    return 0


def _cmd_loss(args) -> int:
    source = args.atmosphere or bundled_path("scenarios", "atmosphere_saturated.cfg")
    model = data_io.load_atmosphere(source)
    if (args.vertical is None) == (args.horizontal_km is None):
        raise SystemExit2("exactly one of --vertical or --horizontal-km is required")
    if args.vertical is not None:
        h0, h1 = args.vertical
        path = PathGeometry.slant(h0, h1, args.theta)
    else:
        path = PathGeometry.horizontal(args.altitude, args.horizontal_km * 1e3)
    grid = _frequency_grid(args)
    rows = [(float(f), pathloss.total_loss(model, path, float(f))) for f in grid]
    out = _out_stream(args)
    data_io.emit_report(rows, out, kind="loss")
    if out is not sys.stdout:
        out.close()
    return 0


def _cmd_budget(args) -> int:
    scenario = data_io.load_scenario(args.scenario)
    rows = linkbudget.evaluate_scenario(scenario, n_points=args.points)
    out = _out_stream(args)
    data_io.emit_report(rows, out, kind="budget")
    if out is not sys.stdout:
        out.close()
    return 0


def _cmd_sweep(args) -> int:
    scenario = data_io.load_scenario(args.scenario)
    hop = scenario.hops[0]
    rows = [
        (float(f), pathloss.total_loss(hop.atmosphere, hop.geometry, float(f)))
        for f in args.f
    ]
    out = _out_stream(args)
    data_io.emit_report(rows, out, kind="loss")
    if out is not sys.stdout:
        out.close()
    return 0


_COMMANDS = {
    "xsec": _cmd_xsec,
    "profile": _cmd_profile,
    "loss": _cmd_loss,
    "budget": _cmd_budget,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
        return 2
    except DataFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ThzSagaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
