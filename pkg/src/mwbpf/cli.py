"""Command-line surface: synth, simulate, layout, materials, compare.

Config and design files are JSON (nested key/value); see CONFIG_HELP.
Distinct exit codes per failure class:

  2  unsatisfiable filter specification
  3  unknown substrate material
  4  dimension synthesis did not converge / coupling unreachable
  5  band edges fall outside the swept span
  6  layout fold infeasible
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from .coupling import coupling_coefficients
from .design import (
    DesignDocument,
    load_design,
    save_design,
    synthesize_design,
)
from .layout import (
    FilterLayout,
    FoldTooTight,
    hairpin_fold,
    ml_hairpin_layout,
    multilayer_stackup,
    pcl_layout,
    single_layer_stackup,
    export_svg,
)
from .materials import UnknownMaterial, default_registry
from .microstrip import (
    CouplingUnreachable,
    NoConvergence,
    Substrate,
    analyze_coupled,
    synthesize_single_width,
    unloaded_q,
)
from .prototype import FilterSpec, UnsatisfiableSpec
from .rfsim import (
    BandEdgeOutOfRange,
    FrequencySweep,
    extract_metrics,
    sweep_coupling_matrix,
    sweep_pcl,
)
from .touchstone import write_csv, write_touchstone

CONFIG_HELP = """\
Config file (JSON):
  {
    "spec": {
      "f_lower_ghz": 2.52, "f_upper_ghz": 2.65, "f0_ghz": 2.58,
      "ripple_db": 0.01, "stop_freq_ghz": 2.77, "stop_atten_db": 25.0,
      "z0_ohm": 50.0
    },
    "substrate": "FR4"
  }
f0_ghz is optional (defaults to the geometric band-edge mean). The
substrate must name a registry entry ("mwbpf materials list"); extra
materials can be supplied via the MWBPF_MATERIALS environment variable
pointing at a JSON file {"materials": [{"name", "eps_r", "tan_d", "h",
"t", "conductivity"}, ...]}.
"""

EXIT_UNSATISFIABLE = 2
EXIT_UNKNOWN_MATERIAL = 3
EXIT_NO_CONVERGENCE = 4
EXIT_BAND_EDGE = 5
EXIT_FOLD = 6

DEFAULT_ARM_GAP = 4.0
DEFAULT_OVERLAP = 1.0
DEFAULT_PLANAR_GAP = 1.0


def _load_spec_config(path: str) -> tuple[FilterSpec, str]:
    data = json.loads(Path(path).read_text())
    s = data["spec"]
    spec = FilterSpec(
        f_lower=float(s["f_lower_ghz"]),
        f_upper=float(s["f_upper_ghz"]),
        f0=float(s.get("f0_ghz", 0.0)),
        ripple_db=float(s["ripple_db"]),
        stop_freq=float(s["stop_freq_ghz"]),
        stop_atten_db=float(s["stop_atten_db"]),
        z0=float(s.get("z0_ohm", 50.0)),
    )
    return spec, data["substrate"]


def _created_stamp(epoch: float | None) -> str | None:
    if epoch is None:
        return None
    return datetime.fromtimestamp(epoch, timezone.utc).isoformat(timespec="seconds")


def cmd_synth(args) -> int:
    spec, substrate_name = _load_spec_config(args.config)
    registry = default_registry()
    sub = registry.get(substrate_name)
    doc = synthesize_design(spec, sub, created=_created_stamp(args.epoch))
    save_design(doc, args.out)

    print(f"order n = {doc.prototype.n}, ripple {doc.prototype.ripple_db} dB")
    print("g-values: " + ", ".join(f"{g:.4f}" for g in doc.prototype.g))
    print("\nsection   J/Y0      Z0e (ohm)  Z0o (ohm)")
    for i, s in enumerate(doc.coupling.sections):
        print(f"{i:>7}   {s.j_over_y0:.4f}    {s.z0e:8.4f}   {s.z0o:8.4f}")
    print(f"\nsection   W (mm)    S (mm)    L (mm)   [{sub.name}]")
    for i, d in enumerate(doc.dims):
        print(f"{i:>7}   {d.w:7.3f}   {d.s:7.3f}   {d.l:7.3f}")
    print(f"\nwrote {args.out}")
    return 0


def _design_metrics(
    doc: DesignDocument, sub: Substrate, mode: str, lossy: bool, sweep: FrequencySweep
):
    if mode == "ml":
        qu = None
        if lossy:
            eps_avg = _mean_eps_eff(doc, sub)
            qu = unloaded_q(sub, eps_avg, doc.spec.f0)
        model = coupling_coefficients(
            doc.prototype, doc.spec.fbw(), doc.spec.f0, qu=qu
        )
        return sweep_coupling_matrix(model, sweep, z0=doc.spec.z0)
    return sweep_pcl(
        doc.coupling,
        doc.spec.f0,
        sweep,
        mode=mode,
        dims=doc.dims if mode == "physical" else None,
        substrate=sub if mode == "physical" else None,
        lossy=lossy,
    )


def _mean_eps_eff(doc: DesignDocument, sub: Substrate) -> float:
    vals = []
    for d in doc.dims:
        mp = analyze_coupled(d.w, d.s, sub)
        vals.append((mp.eps_eff_e + mp.eps_eff_o) / 2.0)
    return sum(vals) / len(vals)


def cmd_simulate(args) -> int:
    doc = load_design(args.design)
    sub = default_registry().get(doc.substrate)
    sweep = FrequencySweep(f_start=args.f_start, f_stop=args.f_stop, n_points=args.points)
    result = _design_metrics(doc, sub, args.mode, args.lossy, sweep)

    comments = (
        f"generated by {doc.tool} ({doc.created})",
        f"mode={args.mode} lossy={args.lossy} substrate={doc.substrate}",
    )
    s2p_path = f"{args.out_prefix}.s2p"
    csv_path = f"{args.out_prefix}.csv"
    write_touchstone(result, s2p_path, comments=comments)
    write_csv(result, csv_path)

    m = extract_metrics(result, rl_band=(doc.spec.f_lower, doc.spec.f_upper))
    target_bw = doc.spec.fbw() * doc.spec.f0 * 1e3
    print(f"f_c       = {m.f_c:.4f} GHz")
    print(f"-3dB band = {m.f_lower_3db:.4f} .. {m.f_upper_3db:.4f} GHz")
    print(f"BW        = {m.bw_3db:.1f} MHz (ripple-level target {target_bw:.1f} MHz)")
    print(f"IL at f_c = {m.il_db:.3f} dB")
    print(f"worst RL  = {m.rl_db:.3f} dB")
    il_ok = m.il_db > -3.0
    rl_ok = m.rl_db < -20.0
    print(f"spec check: IL > -3 dB: {'PASS' if il_ok else 'FAIL'}; "
          f"RL < -20 dB: {'PASS' if rl_ok else 'FAIL'}; "
          f"BW {m.bw_3db:.1f} MHz vs target {target_bw:.1f} MHz "
          f"({m.bw_3db / target_bw - 1:+.1%} relative)")
    print(f"wrote {s2p_path}, {csv_path}")
    return 0


def _build_pcl_layout(doc: DesignDocument, sub: Substrate) -> FilterLayout:
    feed_w = synthesize_single_width(doc.spec.z0, sub)
    return pcl_layout(doc.dims, feed_width=feed_w, stackup=single_layer_stackup(sub))


def _build_ml_layout(
    doc: DesignDocument,
    sub: Substrate,
    arm_gap: float,
    overlap: float,
    planar_gap: float,
) -> FilterLayout:
    n = doc.prototype.n
    if n != 4:
        raise FoldTooTight(
            f"multilayer hairpin layout is defined for 4 resonators, design has {n}"
        )
    resonators = []
    for i in range(1, 5):
        half_wave = doc.dims[i - 1].l + doc.dims[i].l
        w = (doc.dims[i - 1].w + doc.dims[i].w) / 2.0
        resonators.append(hairpin_fold(half_wave, arm_gap, w))
    return ml_hairpin_layout(
        resonators, overlap, multilayer_stackup(sub), planar_gap=planar_gap
    )


def cmd_layout(args) -> int:
    doc = load_design(args.design)
    sub = default_registry().get(doc.substrate)
    if args.kind == "pcl":
        lay = _build_pcl_layout(doc, sub)
    else:
        lay = _build_ml_layout(doc, sub, args.arm_gap, args.overlap, args.planar_gap)
    Path(args.out).write_text(export_svg(lay), encoding="ascii")
    print(f"{args.kind} bounding box: {lay.bounds[0]:.3f} x {lay.bounds[1]:.3f} mm "
          f"(area {lay.area():.1f} mm^2)")
    if args.compare:
        pcl = _build_pcl_layout(doc, sub)
        ml = _build_ml_layout(doc, sub, args.arm_gap, args.overlap, args.planar_gap)
        ratio = ml.area() / pcl.area()
        print(f"area ratio multilayer/edge-coupled = {ratio:.3f}")
    print(f"wrote {args.out}")
    return 0


def cmd_materials(args) -> int:
    if args.action != "list":
        raise ValueError("supported action: list")
    print(f"{'name':<10} {'eps_r':>6} {'tan_d':>8} {'h_mm':>6} {'t_mm':>6} {'sigma_S/m':>10}")
    for sub in default_registry().substrates():
        print(
            f"{sub.name:<10} {sub.eps_r:>6.2f} {sub.tan_d:>8.4f} "
            f"{sub.h:>6.3f} {sub.t:>6.3f} {sub.conductivity:>10.2e}"
        )
    return 0


def cmd_compare(args) -> int:
    spec, _ = _load_spec_config(args.config)
    registry = default_registry()
    sweep = FrequencySweep(f_start=args.f_start, f_stop=args.f_stop, n_points=args.points)
    rows = {}
    for name in ("FR4", "RO3003"):
        sub = registry.get(name)
        doc = synthesize_design(spec, sub, created=_created_stamp(args.epoch))
        mode = "physical" if args.mode == "pcl" else "ml"
        result = _design_metrics(doc, sub, mode, lossy=True, sweep=sweep)
        m = extract_metrics(result, rl_band=(spec.f_lower, spec.f_upper))
        if args.mode == "pcl":
            lay = _build_pcl_layout(doc, sub)
        else:
            lay = _build_ml_layout(
                doc, sub, DEFAULT_ARM_GAP, DEFAULT_OVERLAP, DEFAULT_PLANAR_GAP
            )
        rows[name] = (m, lay)

    print(f"{args.mode} filter comparison (lossy simulation)")
    print(f"{'property':<28} {'FR4':>14} {'RO3003':>14}")
    fr4_m, fr4_l = rows["FR4"]
    ro_m, ro_l = rows["RO3003"]
    for label, fa, fb in (
        ("lower cut-off f_L (GHz)", fr4_m.f_lower_3db, ro_m.f_lower_3db),
        ("upper cut-off f_U (GHz)", fr4_m.f_upper_3db, ro_m.f_upper_3db),
        ("FC (GHz)", fr4_m.f_c, ro_m.f_c),
        ("S21 at FC (dB)", fr4_m.il_db, ro_m.il_db),
        ("worst in-band S11 (dB)", fr4_m.rl_db, ro_m.rl_db),
        ("BW (MHz)", fr4_m.bw_3db, ro_m.bw_3db),
    ):
        print(f"{label:<28} {fa:>14.4f} {fb:>14.4f}")
    print(
        f"{'size (mm)':<28} {f'{fr4_l.bounds[0]:.2f} x {fr4_l.bounds[1]:.2f}':>14} "
        f"{f'{ro_l.bounds[0]:.2f} x {ro_l.bounds[1]:.2f}':>14}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwbpf",
        description="Microstrip bandpass filter synthesis, simulation, and layout.",
        epilog=CONFIG_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a design from a config file",
                       epilog=CONFIG_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--out", required=True, help="design document to write (JSON)")
    p.add_argument("--epoch", type=float, default=None,
                   help="fixed POSIX timestamp for reproducible provenance")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("simulate", help="sweep S-parameters of a design")
    p.add_argument("--design", required=True)
    p.add_argument("--mode", choices=("ideal", "physical", "ml"), default="ideal",
                   help="ideal: synthesis impedances, quarter-wave sections; "
                        "physical: from synthesized dimensions; "
                        "ml: coupled-resonator model")
    p.add_argument("--lossy", action="store_true",
                   help="include substrate loss (physical/ml modes)")
    p.add_argument("--f-start", type=float, default=2.0, dest="f_start")
    p.add_argument("--f-stop", type=float, default=3.0, dest="f_stop")
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--out-prefix", required=True, dest="out_prefix")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("layout", help="emit an SVG layout")
    p.add_argument("--design", required=True)
    p.add_argument("--kind", choices=("pcl", "ml"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--arm-gap", type=float, default=DEFAULT_ARM_GAP, dest="arm_gap")
    p.add_argument("--overlap", type=float, default=DEFAULT_OVERLAP)
    p.add_argument("--planar-gap", type=float, default=DEFAULT_PLANAR_GAP,
                   dest="planar_gap")
    p.add_argument("--compare", action="store_true",
                   help="also print the multilayer/edge-coupled area ratio")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("materials", help="registry operations")
    p.add_argument("action", choices=("list",))
    p.set_defaults(func=cmd_materials)

    p = sub.add_parser("compare", help="run both substrates and compare")
    p.add_argument("--config", required=True)
    p.add_argument("--mode", choices=("pcl", "ml"), default="pcl")
    p.add_argument("--f-start", type=float, default=2.0, dest="f_start")
    p.add_argument("--f-stop", type=float, default=3.0, dest="f_stop")
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--epoch", type=float, default=None)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsatisfiableSpec as exc:
        print(f"error: unsatisfiable specification: {exc}", file=sys.stderr)
        return EXIT_UNSATISFIABLE
    except UnknownMaterial as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_UNKNOWN_MATERIAL
    except (NoConvergence, CouplingUnreachable) as exc:
        print(f"error: synthesis failed: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except BandEdgeOutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAND_EDGE
    except FoldTooTight as exc:
        print(f"error: layout infeasible: {exc}", file=sys.stderr)
        return EXIT_FOLD


if __name__ == "__main__":
    sys.exit(main())
