"""Command-line front end: convert, sample, stats, experiment, analyze."""

from __future__ import annotations

import argparse
import glob as globmod
import json
import sys
from pathlib import Path

from . import __version__
from .experiments import emit_outputs, load_config, run_experiment
from .ingest import (
    dataset_scatter,
    group_report,
    group_report_to_csv,
    load_profile,
    scatter_to_csv,
    write_profile,
)
from .normalize import norm_phi_from_phi, phi_from_norm_phi
from .sampler import DispersionSpec, SamplerConfig, sample_profile
from .stats import frequency_matrix, positionwise_distance_from_identity, winner_report
from .svgplot import scatter_plot


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mallows", description=__doc__)
    p.add_argument("--version", action="version", version=f"mallows {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="convert between phi and its normalized form")
    c.add_argument("--m", type=int, required=True, help="number of alternatives")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--phi", type=float, help="classic dispersion in [0, 1]")
    g.add_argument("--norm-phi", type=float, help="normalized dispersion in [0, 1]")
    c.add_argument("--tol", type=float, default=1e-12, help="residual tolerance")

    s = sub.add_parser("sample", help="sample a profile and write it to a ranking file")
    s.add_argument("--model", choices=("classic", "normalized"), required=True)
    s.add_argument("--param", type=float, required=True, help="dispersion value in [0, 1]")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", required=True, help="output ranking file")

    t = sub.add_parser("stats", help="winners, frequency matrix, positionwise distance")
    t.add_argument("--in", dest="infile", required=True, help="ranking file")
    t.add_argument("--json", action="store_true", help="emit a JSON object instead of text")

    e = sub.add_parser("experiment", help="run a config-driven experiment")
    e.add_argument("--config", required=True, help="INI config file")
    e.add_argument("--threads", type=int, default=1, help="worker threads for Monte Carlo trials")
    e.add_argument("--out", default=None, help="override the config's output prefix")

    a = sub.add_parser("analyze", help="scatter or group report over ranking files")
    mode = a.add_mutually_exclusive_group(required=True)
    mode.add_argument("--glob", dest="pattern", help="glob pattern of ranking files")
    mode.add_argument("--groups", help="JSON manifest mapping group label to file list")
    a.add_argument("--label-from", choices=("filename", "dir"), default="filename")
    a.add_argument("--out", required=True, help="output prefix")
    return p


def _cmd_convert(args) -> int:
    if args.phi is not None:
        phi = args.phi
        norm = norm_phi_from_phi(phi, args.m)
    else:
        norm = args.norm_phi
        phi = phi_from_norm_phi(norm, args.m, tol=args.tol)
    print(f"phi={phi:.12g} norm_phi={norm:.12g} m={args.m}")
    return 0


def _cmd_sample(args) -> int:
    cfg = SamplerConfig(
        dispersion=DispersionSpec(args.model, args.param),
        m=args.m,
        n=args.n,
        seed=args.seed,
    )
    write_profile(sample_profile(cfg), args.out)
    print(f"wrote {args.n} rankings over {args.m} alternatives to {args.out}")
    return 0


def _cmd_stats(args) -> int:
    p = load_profile(args.infile)
    rep = winner_report(p)
    freq = frequency_matrix(p)
    dist = positionwise_distance_from_identity(p) if p.m >= 2 else 0.0

    def name(alt):
        return None if alt is None else p.names[alt]

    if args.json:
        print(json.dumps({
            "m": p.m,
            "n": p.n,
            "plurality_winner": name(rep.plurality_winner),
            "plurality_score": rep.plurality_score,
            "borda_winner": name(rep.borda_winner),
            "condorcet_winner": name(rep.condorcet_winner),
            "positionwise_distance_from_identity": dist,
            "frequency_matrix": freq.tolist(),
        }, indent=2))
        return 0
    print(f"profile: m={p.m} alternatives, n={p.n} rankings")
    print(f"plurality winner : {name(rep.plurality_winner)} (score {rep.plurality_score})")
    print(f"borda winner     : {name(rep.borda_winner)}")
    print(f"condorcet winner : {name(rep.condorcet_winner) or 'none'}")
    print(f"positionwise distance from identity: {dist:.6f}")
    print("frequency matrix (rows = positions, columns = alternatives):")
    print("position," + ",".join(p.names))
    for i in range(p.m):
        print(f"{i + 1}," + ",".join(f"{x:.6g}" for x in freq[i]))
    return 0


def _cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    prefix = args.out or cfg.out_prefix
    if prefix is None:
        raise ValueError("no output prefix: set 'out' in the config or pass --out")
    if args.threads < 1:
        raise ValueError("--threads must be at least 1")
    result = run_experiment(cfg, threads=args.threads)
    for path in emit_outputs(result, prefix):
        print(f"wrote {path}")
    for variant, verdict in result.verdicts:
        print(f"{variant}: {verdict}")
    return 0


def _cmd_analyze(args) -> int:
    if args.groups:
        manifest = json.loads(Path(args.groups).read_text(encoding="utf-8"))
        if not isinstance(manifest, dict):
            raise ValueError(f"{args.groups}: manifest must map labels to file lists")
        report = group_report(manifest)
        out = Path(args.out).with_suffix(".csv")
        out.parent.mkdir(parents=True, exist_ok=True)
        group_report_to_csv(report, out)
        print(f"wrote {out}")
        return 0
    paths = sorted(globmod.glob(args.pattern))
    if not paths:
        raise ValueError(f"no files match {args.pattern!r}")
    if args.label_from == "filename":
        labels = [Path(p).stem for p in paths]
    else:
        labels = [Path(p).parent.name for p in paths]
    points = dataset_scatter(paths, labels)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    scatter_to_csv(points, out.with_suffix(".csv"))
    ordered = []
    for pt in points:
        if pt.label not in ordered:
            ordered.append(pt.label)
    scatter_plot(
        out.with_suffix(".svg"),
        [
            (label,
             [pt.m for pt in points if pt.label == label],
             [pt.distance for pt in points if pt.label == label])
            for label in ordered
        ],
        "number of alternatives",
        "positionwise distance from identity",
        "profile scatter",
    )
    print(f"wrote {out.with_suffix('.csv')}")
    print(f"wrote {out.with_suffix('.svg')}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "convert": _cmd_convert,
        "sample": _cmd_sample,
        "stats": _cmd_stats,
        "experiment": _cmd_experiment,
        "analyze": _cmd_analyze,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
