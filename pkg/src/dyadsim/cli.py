"""Command-line front end.

Every command resolves its parameters from built-in defaults, then an
optional JSON config file, then explicit flags (flags win), runs the
campaign, and writes plot-ready CSV plus a JSON summary and a run manifest
into the output directory. Campaigns are bitwise reproducible from the
manifest for any --threads value.

Config file schema (all sections optional):

    {
      "model":       {"J": .., "gamma": .., "g": .., "xi": ..,
                      "chain": {<ChainSpec>}},
      "integration": {"dt_init": .., "rel_tol": .., "abs_tol": .., "t_max": ..,
                      "stationarity_window": .., "stationarity_tol": ..,
                      "asym_threshold": ..},
      "noise":       {"amplitude": .., "distribution": "complex_gaussian",
                      "seed": ..},
      "campaign":    {"trials": .., "threads": ..}
    }

The environment variable DYADSIM_SEED overrides the config seed.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import json
import os
import sys
import time
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import __version__, ensemble, perturbation, rngstream
from .dynamics import NoiseDistribution, NoiseSpec, TrialKind, run_trial
from .errors import DyadsimError
from .model import IntegrationControls, SiteParams
from .topology import (ChainSpec, InterDyadLink, LinkKind, SiteBoost,
                       TetradShape, chain, chain_dyads, dyad, tetrad)

FIG1CD = {"J": 0.55, "gamma": 2.8, "g": 0.5, "xi": 5.0 / 3.0}
FIG1B = {"J": 0.45, "gamma": 1.8, "g": 0.4, "xi": 2.0}

# Figure presets with desk-scale trial counts; the original campaign counts
# (1000 per curve point, 10000 per tetrad alpha, 12500 region points, 5000
# chain samples) are restored by --full-scale.
PRESETS: dict[str, dict[str, Any]] = {
    "fig1a": {"kind": "region", "model": dict(FIG1CD), "trials": 8,
              "g_grid": [0.1, 1.0, 10], "absJ_grid": [0.1, 0.9, 10],
              "xi_grid": [0.8, 4.3, 8]},
    "fig1b": {"kind": "perturb", "model": dict(FIG1B)},
    "fig1cd": {"kind": "ensemble", "model": dict(FIG1CD), "trials": 400},
    "fig2": {"kind": "tetrad", "model": dict(FIG1CD), "trials": 2000,
             "alphas": [0.0, 0.025, 0.05, 0.075, 0.1], "shape": "square"},
    "fig3": {"kind": "chain", "model": dict(FIG1CD), "samples": 1,
             "chain": {"n_dyads": 30, "intra_coupling": 0.55}},
    "fig4a": {"kind": "chain", "model": dict(FIG1CD), "samples": 2000,
              "chain": {"n_dyads": 5, "intra_coupling": 0.55}},
    # link and boost placements for the biased-chain campaigns are declared
    # here and flow through ChainSpec unchanged
    "fig4b": {"kind": "chain", "model": dict(FIG1CD), "samples": 2000,
              "chain": {"n_dyads": 5, "intra_coupling": 0.55,
                        "inter_links": [
                            {"position": 1, "kind": "lateral", "alpha": 0.1},
                            {"position": 3, "kind": "lateral", "alpha": 0.1}],
                        "boosted_sites": [{"site": 0, "factor": 1.05}]}},
    "fig4c": {"kind": "chain", "model": dict(FIG1CD), "samples": 2000,
              "chain": {"n_dyads": 5, "intra_coupling": 0.55,
                        "inter_links": [
                            {"position": 0, "kind": "lateral", "alpha": 0.01},
                            {"position": 2, "kind": "crossed", "alpha": 0.01}],
                        "boosted_sites": [{"site": 8, "factor": 1.05}]}},
}

FULL_SCALE = {"fig1cd": 1000, "fig2": 10000, "fig4a": 5000, "fig4b": 5000,
              "fig4c": 5000}


def _chain_spec_from_json(payload: dict[str, Any]) -> ChainSpec:
    links = tuple(InterDyadLink(position=int(l["position"]),
                                kind=LinkKind(l["kind"]),
                                alpha=float(l["alpha"]))
                  for l in payload.get("inter_links", []))
    boosts = tuple(SiteBoost(site=int(b["site"]), factor=float(b["factor"]))
                   for b in payload.get("boosted_sites", []))
    return ChainSpec(n_dyads=int(payload["n_dyads"]),
                     intra_coupling=float(payload["intra_coupling"]),
                     inter_links=links, boosted_sites=boosts)


def _chain_spec_to_json(spec: ChainSpec) -> dict[str, Any]:
    return {
        "n_dyads": spec.n_dyads,
        "intra_coupling": spec.intra_coupling,
        "inter_links": [{"position": l.position, "kind": l.kind.value,
                         "alpha": l.alpha} for l in spec.inter_links],
        "boosted_sites": [{"site": b.site, "factor": b.factor}
                          for b in spec.boosted_sites],
    }


def _resolve(args: argparse.Namespace) -> dict[str, Any]:
    """Defaults <- preset <- config file <- flags, flags winning."""
    resolved: dict[str, Any] = {
        "model": dict(FIG1CD),
        "integration": dataclasses.asdict(IntegrationControls()),
        "noise": {"amplitude": NoiseSpec().amplitude,
                  "distribution": NoiseSpec().distribution.value, "seed": 0},
        "campaign": {"trials": 400, "threads": 1},
    }
    preset = getattr(args, "preset", None)
    if preset:
        if preset not in PRESETS:
            raise DyadsimError(f"unknown preset {preset!r}; "
                               f"choose from {sorted(PRESETS)}")
        p = PRESETS[preset]
        resolved["model"].update(p["model"])
        for key in ("trials", "samples", "alphas", "shape", "chain",
                    "g_grid", "absJ_grid", "xi_grid"):
            if key in p:
                resolved["campaign"][key] = p[key]
        if getattr(args, "full_scale", False) and preset in FULL_SCALE:
            key = "samples" if "samples" in p else "trials"
            resolved["campaign"][key] = FULL_SCALE[preset]
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        try:
            payload = json.loads(Path(cfg_path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DyadsimError(
                f"config parse error in {cfg_path} at line {exc.lineno}, "
                f"column {exc.colno}: {exc.msg}") from None
        for section in ("model", "integration", "noise", "campaign"):
            resolved[section].update(payload.get(section, {}))
    for flag, path in (("J", ("model", "J")), ("gamma", ("model", "gamma")),
                       ("g", ("model", "g")), ("xi", ("model", "xi")),
                       ("trials", ("campaign", "trials")),
                       ("samples", ("campaign", "samples")),
                       ("threads", ("campaign", "threads")),
                       ("noise_amplitude", ("noise", "amplitude")),
                       ("seed", ("noise", "seed"))):
        value = getattr(args, flag, None)
        if value is not None:
            resolved[path[0]][path[1]] = value
    env_seed = os.environ.get("DYADSIM_SEED")
    if env_seed is not None:
        resolved["noise"]["seed"] = int(env_seed)
    return resolved


def _noise(resolved) -> NoiseSpec:
    n = resolved["noise"]
    return NoiseSpec(amplitude=float(n["amplitude"]),
                     distribution=NoiseDistribution(n["distribution"]),
                     seed=int(n["seed"]))


def _integration(resolved) -> IntegrationControls:
    return IntegrationControls(**resolved["integration"])


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _finish(out_dir: Optional[str], command: str, resolved: dict[str, Any],
            summary: dict[str, Any], csv_files: dict[str, tuple[list, list]],
            t_start: float, extra_files: Optional[dict[str, bytes]] = None) -> None:
    print(json.dumps(summary, indent=2, sort_keys=True, default=str))
    if not out_dir:
        return
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: dict[str, str] = {}
    for name, (header, rows) in csv_files.items():
        path = out / name
        _write_csv(path, header, rows)
        written[name] = hashlib.sha256(path.read_bytes()).hexdigest()
    for name, blob in (extra_files or {}).items():
        path = out / name
        path.write_bytes(blob)
        written[name] = hashlib.sha256(blob).hexdigest()
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True,
                                       default=str) + "\n", encoding="utf-8")
    written["summary.json"] = hashlib.sha256(
        summary_path.read_bytes()).hexdigest()
    manifest = {
        "command": command,
        "resolved_config": resolved,
        "seed": resolved["noise"]["seed"],
        "tool_version": __version__,
        "wall_clock_s": round(time.monotonic() - t_start, 3),
        "outputs": written,
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n",
        encoding="utf-8")


def _ensemble_summary(stats: ensemble.EnsembleStats) -> dict[str, Any]:
    return {
        "n_trials": stats.n_trials,
        "n_resolved": stats.n_resolved,
        "n_unresolved": stats.n_unresolved,
        "n_nonstationary": stats.n_nonstationary,
        "n_diverged": stats.n_diverged,
        "state_counts": {str(k): v for k, v in sorted(stats.state_counts.items())},
        "p1_per_dyad": [float(x) for x in stats.p1_per_dyad],
        "sigma_per_dyad": [float(x) for x in stats.sigma_per_dyad],
        "stderr_per_dyad": [float(x) for x in stats.stderr_per_dyad],
        "bias": stats.bias,
    }


def cmd_defaults(args) -> int:
    resolved = _resolve(args)
    resolved["presets"] = sorted(PRESETS)
    print(json.dumps(resolved, indent=2, sort_keys=True))
    return 0


def cmd_perturb(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    m = resolved["model"]
    base = perturbation.equal_occupancy_state(m["J"], m["gamma"], m["g"], m["xi"])
    closed = perturbation.closed_form_corrections(m["J"], m["gamma"], m["g"], m["xi"])
    solved = perturbation.solve_first_order(base)
    epsilons = args.eps if args.eps else [0.0, 0.01, 0.02, 0.04]
    curve = perturbation.analytic_calibration_curve(
        m["J"], m["gamma"], m["g"], m["xi"], epsilons)
    summary = {
        "base_state": {"a1": base.a1, "a2": base.a2, "theta": base.theta,
                       "mu": base.mu},
        "closed_form": dataclasses.asdict(closed),
        "first_order": dataclasses.asdict(solved),
        "analytic_slope": perturbation.calibration_slope(m["J"], m["g"]),
        "calibration_curve": [{"eps": e, "r_g": rg, "r_gamma": rgam}
                              for e, (rg, rgam) in zip(epsilons, curve)],
    }
    csvs = {"calibration_curve.csv": (
        ["eps", "r_g", "r_gamma"],
        [[e, rg, rgam] for e, (rg, rgam) in zip(epsilons, curve)])}
    _finish(args.out, "perturb", resolved, summary, csvs, t0)
    return 0


def cmd_trial(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    m = resolved["model"]
    config = dyad(m["J"], SiteParams(gamma=m["gamma"], g=m["g"]), m["xi"],
                  integration=_integration(resolved))
    out = run_trial(config, [(0, 1)], _noise(resolved))
    summary = {
        "kind": out.kind.value,
        "final_densities": [float(x) for x in out.final_densities],
        "final_relative_phases": [float(x) for x in out.final_relative_phases],
        "mu": out.mu,
        "bits": list(out.bits) if out.bits is not None else None,
        "elapsed_t": out.elapsed_t,
        "seed": out.seed,
    }
    _finish(args.out, "trial", resolved, summary, {}, t0)
    return 0


def cmd_ensemble(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    m = resolved["model"]
    c = resolved["campaign"]
    r_gamma = args.r_gamma if args.r_gamma is not None else 1.0
    r_g = args.r_g if args.r_g is not None else 1.0
    config = ensemble.calibration_dyad(m["J"], m["gamma"], m["g"], m["xi"],
                                       r_gamma, r_g, _integration(resolved))
    stats = ensemble.run_ensemble(config, [(0, 1)], int(c["trials"]),
                                  int(resolved["noise"]["seed"]),
                                  _noise(resolved), int(c.get("threads", 1)))
    summary = {"r_gamma": r_gamma, "r_g": r_g, **_ensemble_summary(stats)}
    csvs = {"states.csv": (
        ["state", "count"],
        [[k, v] for k, v in sorted(stats.state_counts.items())])}
    _finish(args.out, "ensemble", resolved, summary, csvs, t0)
    return 0


def cmd_calibrate(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    m = resolved["model"]
    c = resolved["campaign"]
    grid = (args.r_g_grid if args.r_g_grid
            else list(np.linspace(args.r_g_min, args.r_g_max, args.r_g_points)))
    result = ensemble.calibration_sweep(
        m["J"], m["gamma"], m["g"], m["xi"], args.r_gamma, grid,
        int(c["trials"]), int(resolved["noise"]["seed"]), _noise(resolved),
        _integration(resolved), int(c.get("threads", 1)))
    summary = {
        "r_gamma": result.r_gamma,
        "r_g_star_p": result.r_g_star_p,
        "r_g_star_sigma": result.r_g_star_sigma,
    }
    csvs = {"calibration.csv": (
        ["r_g", "p1", "sigma"],
        [[rg, p1, s] for (rg, p1), (_, s)
         in zip(result.p1_curve, result.sigma_curve)])}
    _finish(args.out, "calibrate", resolved, summary, csvs, t0)
    return 0


def cmd_locus(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    m = resolved["model"]
    c = resolved["campaign"]
    fit = ensemble.critical_locus(
        m["J"], m["gamma"], m["g"], m["xi"], args.r_gammas, int(c["trials"]),
        base_seed=int(resolved["noise"]["seed"]), noise=_noise(resolved),
        integration=_integration(resolved), threads=int(c.get("threads", 1)))
    summary = {
        "slope": fit.slope, "slope_stderr": fit.slope_stderr,
        "intercept": fit.intercept, "intercept_stderr": fit.intercept_stderr,
        "analytic_slope": perturbation.calibration_slope(m["J"], m["g"]),
        "points": [{"r_g_star": x, "r_gamma_star": y} for x, y in fit.points],
    }
    csvs = {"locus.csv": (["r_g_star", "r_gamma_star"],
                          [[x, y] for x, y in fit.points])}
    _finish(args.out, "locus", resolved, summary, csvs, t0)
    return 0


def cmd_tetrad(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    m = resolved["model"]
    c = resolved["campaign"]
    alphas = args.alphas if args.alphas else c.get(
        "alphas", [0.0, 0.025, 0.05, 0.075, 0.1])
    shape = TetradShape(args.shape or c.get("shape", "square"))
    points = ensemble.tetrad_bias(
        m["J"], alphas, shape, SiteParams(gamma=m["gamma"], g=m["g"]),
        m["xi"], int(c["trials"]), int(resolved["noise"]["seed"]),
        _noise(resolved), _integration(resolved), int(c.get("threads", 1)))
    summary = {"shape": shape.value,
               "points": [{"alpha": p.alpha, "bias": p.bias,
                           "bias_infinite": p.bias_infinite,
                           **_ensemble_summary(p.stats)} for p in points]}
    rows = []
    for p in points:
        for state in range(4):
            rows.append([p.alpha, state, p.stats.state_counts.get(state, 0),
                         p.bias])
    csvs = {"tetrad.csv": (["alpha", "state", "count", "bias"], rows)}
    _finish(args.out, "tetrad", resolved, summary, csvs, t0)
    return 0


def cmd_region(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    m = resolved["model"]
    c = resolved["campaign"]

    def grid(flag, key, default):
        spec = getattr(args, flag, None) or c.get(key, default)
        lo, hi, n = spec
        return list(np.linspace(float(lo), float(hi), int(n)))

    g_values = grid("g_grid", "g_grid", [0.1, 1.0, 10])
    absj_values = grid("absj_grid", "absJ_grid", [0.1, 0.9, 10])
    xi_values = grid("xi_grid", "xi_grid", [0.8, 4.3, 8])
    results = ensemble.region_sweep(
        m["gamma"], g_values, absj_values, xi_values,
        int(c.get("trials", 8)), int(resolved["noise"]["seed"]),
        _noise(resolved), _integration(resolved))
    boundaries = ensemble.xi_boundaries(results)
    summary = {
        "gamma": m["gamma"],
        "n_points": len(results),
        "verdict_counts": {v.value: sum(1 for r in results if r.verdict is v)
                           for v in ensemble.RegionVerdict},
        "n_boundaries": len(boundaries),
    }
    csvs = {
        "region.csv": (["g", "absJ", "xi", "verdict", "contrast"],
                       [[r.g, r.absJ, r.xi, r.verdict.value, r.contrast]
                        for r in results]),
        "boundaries.csv": (["g", "absJ", "xi_mid", "verdict_below",
                            "verdict_above"],
                           [[g, j, x, lo.value, hi.value]
                            for g, j, x, lo, hi in boundaries]),
    }
    _finish(args.out, "region", resolved, summary, csvs, t0)
    return 0


def _chain_config(resolved, args):
    m = resolved["model"]
    c = resolved["campaign"]
    if getattr(args, "chain_spec", None):
        path = Path(args.chain_spec)
        if not path.is_file():
            raise DyadsimError(f"chain spec file not found: {path}")
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DyadsimError(
                f"chain spec parse error in {path} at line {exc.lineno}, "
                f"column {exc.colno}: {exc.msg}") from None
    elif "chain" in c:
        payload = c["chain"]
    else:
        payload = {"n_dyads": 5, "intra_coupling": m["J"]}
    spec = _chain_spec_from_json(payload)
    config = chain(spec, SiteParams(gamma=m["gamma"], g=m["g"]), m["xi"],
                   integration=_integration(resolved))
    return spec, config


def cmd_chain(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    c = resolved["campaign"]
    spec, config = _chain_config(resolved, args)
    n_samples = int(c.get("samples", 1000))
    samples = rngstream.generate_stream(config, n_samples,
                                        int(resolved["noise"]["seed"]),
                                        _noise(resolved))
    values = np.array([s.value for s in samples])
    n_states = 1 << spec.n_dyads
    hist_rows = []
    if n_states <= 4096:
        counts = np.bincount(values, minlength=n_states)
        hist_rows = [[v, int(n)] for v, n in enumerate(counts)]
    reports = []
    if len(samples) >= 100:
        reports = rngstream.test_suite(samples)
    summary = {
        "chain_spec": _chain_spec_to_json(spec),
        "n_samples": len(samples),
        "first_values": [int(v) for v in values[:10]],
        "tests": [dataclasses.asdict(r) for r in reports],
    }
    csvs = {"histogram.csv": (["value", "count"], hist_rows)} if hist_rows else {}
    _finish(args.out, "chain", resolved, summary, csvs, t0)
    return 0


def cmd_rng(args) -> int:
    t0 = time.monotonic()
    resolved = _resolve(args)
    c = resolved["campaign"]
    spec, config = _chain_config(resolved, args)
    n_samples = int(c.get("samples", 1000))
    samples = rngstream.generate_stream(config, n_samples,
                                        int(resolved["noise"]["seed"]),
                                        _noise(resolved))
    reports = rngstream.test_suite(samples) if len(samples) >= 100 else []
    packed = rngstream.pack_bits(samples)
    summary = {
        "chain_spec": _chain_spec_to_json(spec),
        "n_samples": len(samples),
        "n_bits": len(samples) * spec.n_dyads,
        "tests": [dataclasses.asdict(r) for r in reports],
        "all_tests_passed": all(r.passed for r in reports) if reports else None,
    }
    csvs = {"samples.csv": (["seed", "value", "bits"],
                            [[s.seed, s.value,
                              "".join(str(b) for b in s.bits)]
                             for s in samples])}
    _finish(args.out, "rng", resolved, summary, csvs, t0,
            extra_files={"stream.bin": packed})
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="JSON",
                        help="JSON config file (flags override its values)")
    parser.add_argument("--preset", choices=sorted(PRESETS))
    parser.add_argument("--out", metavar="DIR",
                        help="output directory for CSV/JSON/manifest")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--threads", type=int)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--full-scale", action="store_true",
                        help="restore the original trial counts for presets")
    parser.add_argument("--J", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--g", type=float)
    parser.add_argument("--xi", type=float)
    parser.add_argument("--noise-amplitude", type=float, dest="noise_amplitude")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyadsim",
        description="Gain-dissipative condensate dyad networks: trials, "
                    "ensembles, calibration, and random-number streams.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("defaults", help="print resolved default parameters")
    _add_common(p)
    p.set_defaults(func=cmd_defaults)

    p = sub.add_parser("perturb", help="calibration analytics for a dyad")
    _add_common(p)
    p.add_argument("--eps", type=float, nargs="+")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("trial", help="run one noise-seeded dyad trial")
    _add_common(p)
    p.set_defaults(func=cmd_trial)

    p = sub.add_parser("ensemble", help="dyad ensemble statistics")
    _add_common(p)
    p.add_argument("--r-gamma", type=float, dest="r_gamma")
    p.add_argument("--r-g", type=float, dest="r_g")
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("calibrate", help="p1/sigma curves over an r_g grid")
    _add_common(p)
    p.add_argument("--r-gamma", type=float, required=True, dest="r_gamma")
    p.add_argument("--r-g-grid", type=float, nargs="+", dest="r_g_grid")
    p.add_argument("--r-g-min", type=float, default=0.99, dest="r_g_min")
    p.add_argument("--r-g-max", type=float, default=1.06, dest="r_g_max")
    p.add_argument("--r-g-points", type=int, default=9, dest="r_g_points")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("locus", help="critical (r_g*, r_gamma*) locus fit")
    _add_common(p)
    p.add_argument("--r-gammas", type=float, nargs="+", required=True,
                   dest="r_gammas")
    p.set_defaults(func=cmd_locus)

    p = sub.add_parser("tetrad", help="tetrad bias vs alpha")
    _add_common(p)
    p.add_argument("--alphas", type=float, nargs="+")
    p.add_argument("--shape", choices=[s.value for s in TetradShape])
    p.set_defaults(func=cmd_tetrad)

    p = sub.add_parser("region", help="asymmetry-region parameter sweep")
    _add_common(p)
    p.add_argument("--g-grid", type=float, nargs=3, dest="g_grid",
                   metavar=("LO", "HI", "N"))
    p.add_argument("--absj-grid", type=float, nargs=3, dest="absj_grid",
                   metavar=("LO", "HI", "N"))
    p.add_argument("--xi-grid", type=float, nargs=3, dest="xi_grid",
                   metavar=("LO", "HI", "N"))
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("chain", help="chain outcome histogram")
    _add_common(p)
    p.add_argument("--chain-spec", metavar="JSON", dest="chain_spec")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("rng", help="random-number stream with validation")
    _add_common(p)
    p.add_argument("--chain-spec", metavar="JSON", dest="chain_spec")
    p.set_defaults(func=cmd_rng)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DyadsimError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
