"""Command-line front end.

Subcommands: partial, envelope, total, ksweep, elastic, gbessel, verify,
plot.  Scenarios come from a JSON config file (schema below); every CSV
artifact embeds the fully-resolved configuration in a header comment so a
run can be reproduced from its output alone.

Config schema:

    {
      "laser":     {"photon_energy_eV": 1.17 | "wavelength_nm": ...,
                    "intensity_W_cm2": 3.5e16 | "K": 0.17,
                    "zeta": 1.0},
      "electron":  {"kinetic_energy_eV": 2700.0, "direction": [0, 0, 1]},
      "potential": {"Za": 1.0,
                    "screening_radius_au": 4.0 | "table_path": "..."},
      "geometry":  {"deflection_mrad": 0.6, "azimuth_deg": 0.0},
      "run":       {"formula": "general", "n": 0, "n_min": ..., "n_max": ...,
                    "k_grid": [...], "tail_cut": 1e-8,
                    "output_format": "csv", "output_path": "..."}
    }

Exit codes: 0 success, 2 config error, 3 closed-channel/domain error,
4 convergence error, 5 verification failure.
"""

import argparse
import json
import math
import sys

from . import units
from .errors import (
    ChannelClosedError,
    ConfigError,
    ConvergenceError,
    DomainError,
)
from .gbessel import gbessel, gbessel_quad
from .kinematics import LaserField
from .potential import PotentialFT
from .scan import (
    TAIL_CUT_DEFAULT,
    envelope,
    k_sweep,
    oracle_deviation_sweep,
    partial,
    total_xs,
)
from .xsection import Scenario, elastic_born

ENVELOPE_COLUMNS = "n,dsigma_au,alpha1,q2_au,term_main,term_recoil,term_wave"
KSWEEP_COLUMNS = "K,total_au"


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}")


def resolve_config(cfg, k_override=None):
    """Validate and normalize a raw config dict.

    Returns (resolved_dict, Scenario, run_options).  The resolved dict is
    what gets embedded in output headers: photon energy in eV, field
    strength as K, angles as given.
    """
    _require(isinstance(cfg, dict), "config must be a JSON object")
    for section in ("laser", "electron", "potential", "geometry"):
        _require(section in cfg, f"config section {section!r} missing")
    laser_c = cfg["laser"]
    elec_c = cfg["electron"]
    pot_c = cfg["potential"]
    geo_c = cfg["geometry"]
    run_c = cfg.get("run", {})

    has_w = "photon_energy_eV" in laser_c
    has_l = "wavelength_nm" in laser_c
    _require(has_w != has_l,
             "laser: exactly one of photon_energy_eV / wavelength_nm")
    omega = (float(laser_c["photon_energy_eV"]) if has_w
             else units.wavelength_nm_to_ev(float(laser_c["wavelength_nm"])))
    _require(omega > 0.0, "laser: photon energy must be > 0")

    has_i = "intensity_W_cm2" in laser_c
    has_k = "K" in laser_c
    _require(has_i != has_k, "laser: exactly one of intensity_W_cm2 / K")
    K = (units.intensity_to_K(float(laser_c["intensity_W_cm2"]), omega)
         if has_i else float(laser_c["K"]))
    if k_override is not None:
        K = float(k_override)
    _require(K >= 0.0, "laser: K must be >= 0")

    zeta = float(laser_c.get("zeta", 0.0))
    _require(0.0 <= zeta <= 1.0, "laser: zeta must lie in [0, 1]")

    _require("kinetic_energy_eV" in elec_c, "electron: kinetic_energy_eV missing")
    ek = float(elec_c["kinetic_energy_eV"])
    _require(ek > 0.0, "electron: kinetic energy must be > 0")
    direction = elec_c.get("direction", [0.0, 0.0, 1.0])
    _require(isinstance(direction, (list, tuple)) and len(direction) == 3,
             "electron: direction must be a 3-vector")
    direction = [float(c) for c in direction]
    _require(any(c != 0.0 for c in direction),
             "electron: direction must be nonzero")

    has_r = "screening_radius_au" in pot_c
    has_t = "table_path" in pot_c
    _require(has_r != has_t,
             "potential: exactly one of screening_radius_au / table_path")
    if has_r:
        _require("Za" in pot_c, "potential: Za missing")
        za = float(pot_c["Za"])
        radius = float(pot_c["screening_radius_au"])
        _require(za > 0.0 and radius > 0.0,
                 "potential: Za and screening_radius_au must be > 0")
        potential = PotentialFT.screened_coulomb_au(za, radius)
        pot_resolved = {"Za": za, "screening_radius_au": radius}
    else:
        potential = PotentialFT.from_table(pot_c["table_path"])
        pot_resolved = {"table_path": str(pot_c["table_path"])}

    _require("deflection_mrad" in geo_c, "geometry: deflection_mrad missing")
    deflection_mrad = float(geo_c["deflection_mrad"])
    _require(deflection_mrad > 0.0, "geometry: deflection_mrad must be > 0")
    azimuth_deg = float(geo_c.get("azimuth_deg", 0.0))

    formula = str(run_c.get("formula", "general"))
    _require(formula in ("general", "circular", "linear", "nonrel", "oracle"),
             f"run: unknown formula {formula!r}")
    if formula == "circular":
        _require(zeta == 1.0, "run: formula=circular requires zeta = 1")
    if formula == "linear":
        _require(zeta == 0.0, "run: formula=linear requires zeta = 0")

    tail_cut = float(run_c.get("tail_cut", TAIL_CUT_DEFAULT))
    _require(0.0 < tail_cut < 1.0, "run: tail_cut must lie in (0, 1)")

    resolved = {
        "laser": {"photon_energy_eV": omega, "K": K, "zeta": zeta},
        "electron": {"kinetic_energy_eV": ek, "direction": direction},
        "potential": pot_resolved,
        "geometry": {"deflection_mrad": deflection_mrad,
                     "azimuth_deg": azimuth_deg},
        "run": {"formula": formula, "tail_cut": tail_cut},
    }
    for key in ("n", "n_min", "n_max"):
        if key in run_c:
            resolved["run"][key] = int(run_c[key])
    if "k_grid" in run_c:
        resolved["run"]["k_grid"] = [float(k) for k in run_c["k_grid"]]
    for key in ("output_format", "output_path"):
        if key in run_c:
            resolved["run"][key] = str(run_c[key])

    try:
        scenario = Scenario(
            laser=LaserField.from_K(omega, K, zeta),
            kinetic_energy=ek,
            direction=tuple(direction),
            potential=potential,
            deflection=deflection_mrad * 1.0e-3,
            azimuth=math.radians(azimuth_deg),
            formula=formula,
        )
    except DomainError as exc:
        raise ConfigError(str(exc))
    return resolved, scenario, resolved["run"]


def config_header(resolved, kind):
    blob = json.dumps(resolved, sort_keys=True, separators=(",", ":"))
    return f"# sbxs {kind}\n# config: {blob}\n"


def _fmt(x):
    return repr(float(x))


def _rows_csv(header, columns, rows):
    lines = [header + columns]
    for row in rows:
        lines.append(",".join(_fmt(c) if not isinstance(c, int) else str(c)
                              for c in row))
    return "\n".join(lines) + "\n"


def _px_row(px):
    return (px.n, px.value, px.alpha1, units.momentum_ev_to_au(1.0) ** 2 * px.q2,
            px.terms.main_energy, px.terms.recoil, px.terms.wave_pressure)


def _emit(text, output_path):
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope_payload(resolved, env, fmt, kind):
    if fmt == "json":
        doc = {
            "config": resolved,
            "kind": kind,
            "n_peak": env.n_peak,
            "alpha1_at_peak": env.alpha1_at_peak,
            "total_au": env.total,
            "entries": [
                {
                    "n": px.n,
                    "dsigma_au": px.value,
                    "alpha1": px.alpha1,
                    "q2_au": units.momentum_ev_to_au(1.0) ** 2 * px.q2,
                    "term_main": px.terms.main_energy,
                    "term_recoil": px.terms.recoil,
                    "term_wave": px.terms.wave_pressure,
                }
                for px in env.entries
            ],
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"
    rows = [_px_row(px) for px in env.entries]
    return _rows_csv(config_header(resolved, kind), ENVELOPE_COLUMNS, rows)


def cmd_partial(args):
    resolved, scenario, run = resolve_config(load_config(args.config), args.K)
    n = args.n if args.n is not None else run.get("n")
    _require(n is not None, "partial: photon number n missing (flag --n or run.n)")
    px = partial(scenario, int(n))
    fmt = args.format or run.get("output_format", "csv")
    if fmt == "json":
        doc = {"config": resolved, "kind": "partial", "entry": {
            "n": px.n, "dsigma_au": px.value, "alpha1": px.alpha1,
            "q2_au": units.momentum_ev_to_au(1.0) ** 2 * px.q2,
            "term_main": px.terms.main_energy,
            "term_recoil": px.terms.recoil,
            "term_wave": px.terms.wave_pressure}}
        text = json.dumps(doc, sort_keys=True, indent=1) + "\n"
    else:
        text = _rows_csv(config_header(resolved, "partial"),
                         ENVELOPE_COLUMNS, [_px_row(px)])
    _emit(text, args.output or run.get("output_path"))
    return 0


def cmd_envelope(args):
    resolved, scenario, run = resolve_config(load_config(args.config), args.K)
    n_min = args.n_min if args.n_min is not None else run.get("n_min")
    n_max = args.n_max if args.n_max is not None else run.get("n_max")
    n_range = None
    if n_min is not None or n_max is not None:
        _require(n_min is not None and n_max is not None,
                 "envelope: give both n_min and n_max or neither")
        n_range = (int(n_min), int(n_max))
    tail_cut = args.tail_cut if args.tail_cut is not None else run["tail_cut"]
    env = envelope(scenario, n_range=n_range, tail_cut=tail_cut)
    fmt = args.format or run.get("output_format", "csv")
    _emit(_envelope_payload(resolved, env, fmt, "envelope"),
          args.output or run.get("output_path"))
    return 0


def cmd_total(args):
    resolved, scenario, run = resolve_config(load_config(args.config), args.K)
    value = total_xs(scenario, tail_cut=run["tail_cut"])
    _emit(f"{_fmt(value)}\n", args.output or run.get("output_path"))
    return 0


def cmd_elastic(args):
    resolved, scenario, run = resolve_config(load_config(args.config), args.K)
    value = elastic_born(scenario)
    _emit(f"{_fmt(value)}\n", args.output or run.get("output_path"))
    return 0


def cmd_ksweep(args):
    resolved, scenario, run = resolve_config(load_config(args.config), args.K)
    k_grid = run.get("k_grid")
    _require(k_grid, "ksweep: run.k_grid missing or empty")
    points = k_sweep(scenario, k_grid)
    bad = [p for p in points if p.error]
    rows = [(p.K, p.total) for p in points]
    text = _rows_csv(config_header(resolved, "ksweep"), KSWEEP_COLUMNS, rows)
    for p in bad:
        text += f"# error K={_fmt(p.K)}: {p.error}\n"
    _emit(text, args.output or run.get("output_path"))
    return 0


def cmd_gbessel(args):
    series = gbessel(args.n, args.u, args.v, args.delta)
    quad = gbessel_quad(args.n, args.u, args.v, args.delta)
    diff = abs(series - quad)
    sys.stdout.write(
        f"series  {series.real!r} {series.imag!r}\n"
        f"quad    {quad.real!r} {quad.imag!r}\n"
        f"absdiff {diff!r}\n"
    )
    return 0


def cmd_verify(args):
    max_dev, records = oracle_deviation_sweep(seed=args.seed,
                                              samples=args.samples)
    sys.stdout.write(
        f"verify: {len(records)} randomized open channels, seed {args.seed}\n"
        f"max relative deviation closed-form vs spinor oracle: {max_dev!r}\n"
    )
    if max_dev < args.tol:
        sys.stdout.write(f"PASS (tolerance {args.tol!r})\n")
        return 0
    sys.stdout.write(f"FAIL (tolerance {args.tol!r})\n")
    return 5


# ---------------------------------------------------------------------------
# SVG rendering (hand-rolled: byte-for-byte reproducible output)
# ---------------------------------------------------------------------------

_SVG_W, _SVG_H = 860, 560
_ML, _MR, _MT, _MB = 90, 24, 40, 70


def _nice_ticks(lo, hi, target=6):
    span = hi - lo
    if span <= 0.0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return ticks


def _tick_label(v):
    if v == 0.0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-3:
        return f"{v:.1e}"
    return f"{v:g}"


def render_svg(xs, ys, xlabel, ylabel, title, logy=False):
    """Minimal deterministic line plot (no external dependencies)."""
    pts = [(x, y) for x, y in zip(xs, ys) if not logy or y > 0.0]
    if not pts:
        raise DomainError("nothing to plot (all values nonpositive on log axis)")
    pxs = [p[0] for p in pts]
    pys = [math.log10(p[1]) if logy else p[1] for p in pts]
    x_lo, x_hi = min(pxs), max(pxs)
    y_lo, y_hi = min(pys), max(pys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad = 0.04 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    iw = _SVG_W - _ML - _MR
    ih = _SVG_H - _MT - _MB

    def sx(x):
        return _ML + iw * (x - x_lo) / (x_hi - x_lo)

    def sy(y):
        return _MT + ih * (1.0 - (y - y_lo) / (y_hi - y_lo))

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">'
    )
    out.append(f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>')
    out.append(
        f'<text x="{_SVG_W // 2}" y="24" text-anchor="middle" '
        f'font-family="monospace" font-size="15">{title}</text>'
    )
    axis = (f'M {_ML} {_MT} L {_ML} {_MT + ih} L {_ML + iw} {_MT + ih}')
    out.append(f'<path d="{axis}" stroke="black" fill="none" stroke-width="1"/>')

    for t in _nice_ticks(x_lo, x_hi):
        px = sx(t)
        out.append(
            f'<line x1="{px:.2f}" y1="{_MT + ih}" x2="{px:.2f}" '
            f'y2="{_MT + ih + 6}" stroke="black" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px:.2f}" y="{_MT + ih + 22}" text-anchor="middle" '
            f'font-family="monospace" font-size="12">{_tick_label(t)}</text>'
        )
    if logy:
        d_lo, d_hi = math.floor(y_lo), math.ceil(y_hi)
        decades = range(int(d_lo), int(d_hi) + 1)
        for d in decades:
            if not y_lo <= d <= y_hi:
                continue
            py = sy(d)
            out.append(
                f'<line x1="{_ML - 6}" y1="{py:.2f}" x2="{_ML}" y2="{py:.2f}" '
                f'stroke="black" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_ML - 10}" y="{py:.2f}" text-anchor="end" '
                f'dominant-baseline="middle" font-family="monospace" '
                f'font-size="12">1e{d}</text>'
            )
    else:
        for t in _nice_ticks(y_lo, y_hi):
            py = sy(t)
            out.append(
                f'<line x1="{_ML - 6}" y1="{py:.2f}" x2="{_ML}" y2="{py:.2f}" '
                f'stroke="black" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{_ML - 10}" y="{py:.2f}" text-anchor="end" '
                f'dominant-baseline="middle" font-family="monospace" '
                f'font-size="12">{_tick_label(t)}</text>'
            )
    out.append(
        f'<text x="{_ML + iw // 2}" y="{_SVG_H - 18}" text-anchor="middle" '
        f'font-family="monospace" font-size="13">{xlabel}</text>'
    )
    out.append(
        f'<text x="22" y="{_MT + ih // 2}" text-anchor="middle" '
        f'font-family="monospace" font-size="13" '
        f'transform="rotate(-90 22 {_MT + ih // 2})">{ylabel}</text>'
    )
    path = " ".join(
        f"{'M' if i == 0 else 'L'} {sx(x):.2f} {sy(y):.2f}"
        for i, (x, y) in enumerate(zip(pxs, pys))
    )
    out.append(
        f'<path d="{path}" stroke="#1f5fa8" fill="none" stroke-width="1.6"/>'
    )
    for x, y in zip(pxs, pys):
        out.append(
            f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.2" fill="#1f5fa8"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _read_csv_artifact(path):
    kind = None
    header = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith("# sbxs "):
                    kind = line[len("# sbxs "):].strip()
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(c) for c in line.split(",")])
    if header is None or not rows:
        raise ConfigError(f"{path}: no data rows found")
    return kind, header, rows


def cmd_plot(args):
    kind, header, rows = _read_csv_artifact(args.input)
    cols = {name: [r[i] for r in rows] for i, name in enumerate(header)}
    if "dsigma_au" in cols and "n" in cols:
        svg = render_svg(
            cols["n"], cols["dsigma_au"],
            xlabel="photon number n",
            ylabel="dsigma/dOmega [a.u.]",
            title=kind or "envelope",
            logy=True,
        )
    elif "total_au" in cols and "K" in cols:
        svg = render_svg(
            cols["K"], cols["total_au"],
            xlabel="intensity parameter K",
            ylabel="dsigma/dOmega [a.u.]",
            title=kind or "ksweep",
            logy=False,
        )
    else:
        raise ConfigError(f"{args.input}: unrecognized CSV columns {header}")
    _emit(svg, args.output)
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sbxs",
        description="Multiphoton stimulated-bremsstrahlung cross sections "
                    "in a strong plane wave (Born limit).",
    )
    sub = ap.add_subparsers(dest="command")

    def add_scenario_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--K", type=float, default=None,
                       help="override the field-strength parameter K")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.set_defaults(fn=fn)
        return p

    p = add_scenario_cmd("partial", cmd_partial, "one photon channel")
    p.add_argument("--n", type=int, default=None, help="photon number")

    p = add_scenario_cmd("envelope", cmd_envelope,
                         "partial cross sections vs photon number")
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--tail-cut", type=float, default=None)

    add_scenario_cmd("total", cmd_total, "summed cross section")
    add_scenario_cmd("elastic", cmd_elastic, "field-free Mott-Born value")
    add_scenario_cmd("ksweep", cmd_ksweep, "total vs intensity parameter K")

    p = sub.add_parser("gbessel", help="generalized Bessel debug evaluation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.set_defaults(fn=cmd_gbessel)

    p = sub.add_parser("verify", help="closed form vs spinor oracle sweep")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=60)
    p.add_argument("--tol", type=float, default=1.0e-8)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plot", help="render a CSV artifact to SVG")
    p.add_argument("--input", required=True, help="CSV produced by envelope/ksweep")
    p.add_argument("--output", default=None, help="SVG path (default stdout)")
    p.set_defaults(fn=cmd_plot)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "fn", None):
        ap.print_usage(sys.stderr)
        return 2
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ChannelClosedError, DomainError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
