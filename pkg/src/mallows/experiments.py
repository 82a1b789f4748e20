"""Config-driven experiment runner: closed-form curves, Monte Carlo winner
and distance sweeps, the delete-versus-resample comparison, and empirical
coverage tables, all emitted as CSV (and SVG) files.

Randomness schedule: a master stream is derived from the config seed; Monte
Carlo cells get child streams in deterministic enumeration order and trial
``t`` inside a cell uses ``cell_stream.spawn_key(t)``.  Results are
therefore identical for any thread count, and repeated runs of the same
config rewrite byte-identical CSV.
"""

from __future__ import annotations

import configparser
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import svgplot
from .analytic import (
    normalized_expected_position,
    normalized_first_beats_last,
    normalized_swap_distance,
    normalized_top_choice_prob,
)
from .core import Profile, random_restriction
from .normalize import (
    limit_first_beats_last,
    limit_normalized_position,
    phi_from_norm_phi,
)
from .rng import SplitMix64
from .sampler import DispersionSpec, InsertionTables, SamplerConfig, _insertion_codes, _ranking_from_code
from .stats import (
    borda,
    condorcet,
    plurality,
    positionwise_distance_from_identity,
)

KINDS = (
    "swap-curve",
    "top1-curve",
    "pos1-curve",
    "beats-m-curve",
    "plurality-winner-prob",
    "borda-winner-prob",
    "condorcet-winner-prob",
    "posdist-curve",
    "deletion-compare",
    "coverage-check",
)
VARIANTS = ("classic", "normalized", "both")
DELETION_STATISTICS = (
    "max-plurality-score",
    "plurality-winner-position",
    "posdist-id",
    "plurality-is-borda",
)
COVERAGE_PROPERTIES = ("top1", "pos1", "beats-m", "swap")

CSV_HEADER = "kind,variant,param,m,n,trials,mean,stderr,seed"

# the m -> infinity limit has no finite m; limit rows carry this sentinel
LIMIT_M = 0

_PROPERTY_FUNS: dict[str, Callable[[float, int], float]] = {
    "top1": normalized_top_choice_prob,
    "pos1": normalized_expected_position,
    "beats-m": normalized_first_beats_last,
    "swap": normalized_swap_distance,
}


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    variant: str
    params: tuple[float, ...]
    m_grid: tuple[int, ...]
    n: int = 100
    trials: int = 200
    seed: int = 0
    out_prefix: Optional[str] = None
    statistic: Optional[str] = None   # deletion-compare only
    property: Optional[str] = None    # coverage-check only
    m_max: int = 200                  # deletion-compare source size

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; choose from {KINDS}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; choose from {VARIANTS}")
        if not self.params:
            raise ValueError("parameter grid is empty")
        for x in self.params:
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"parameters must lie in [0, 1], got {x}")
        if not self.m_grid:
            raise ValueError("m grid is empty")
        for m in self.m_grid:
            if m < 2:
                raise ValueError(f"m grid entries must be >= 2, got {m}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.kind == "deletion-compare":
            if self.statistic not in DELETION_STATISTICS:
                raise ValueError(
                    f"deletion-compare needs statistic from {DELETION_STATISTICS}, "
                    f"got {self.statistic!r}"
                )
            if self.m_max < max(self.m_grid):
                raise ValueError("m_max must cover the whole m grid")
        if self.kind == "coverage-check" and self.property not in COVERAGE_PROPERTIES:
            raise ValueError(
                f"coverage-check needs property from {COVERAGE_PROPERTIES}, "
                f"got {self.property!r}"
            )

    def variants(self) -> tuple[str, ...]:
        return ("classic", "normalized") if self.variant == "both" else (self.variant,)


@dataclass(frozen=True)
class Cell:
    kind: str
    variant: str
    param: float
    m: int
    n: int
    trials: int
    mean: float
    stderr: float


@dataclass(frozen=True)
class CurveResult:
    kind: str
    config: ExperimentConfig
    cells: tuple[Cell, ...]
    verdicts: tuple[tuple[str, str], ...] = ()  # (variant, verdict) for coverage

    def csv_lines(self) -> list[str]:
        lines = [CSV_HEADER]
        for c in self.cells:
            lines.append(
                f"{c.kind},{c.variant},{_f17(c.param)},{c.m},{c.n},{c.trials},"
                f"{_f17(c.mean)},{_f17(c.stderr)},{self.config.seed}"
            )
        return lines


def _f17(x: float) -> str:
    return f"{float(x):.17g}"


def _phi_for(variant: str, param: float, m: int) -> float:
    return param if variant == "classic" else phi_from_norm_phi(param, m)


def _mean_stderr(values: Sequence[float]) -> tuple[float, float]:
    t = len(values)
    mean = math.fsum(values) / t
    if t < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (t - 1)
    return mean, math.sqrt(var / t)


def _sample(phi: float, m: int, n: int, stream: SplitMix64) -> Profile:
    tables = InsertionTables(phi, m)
    codes = _insertion_codes(tables, n, stream.seed)
    return Profile(rankings=tuple(_ranking_from_code(codes[r]) for r in range(n)))


def _map_trials(work: Callable[[int], float], trials: int, threads: int) -> list[float]:
    if threads <= 1:
        return [work(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, range(trials)))


# ---------------------------------------------------------------- analytic

def run_swap_curve(cfg: ExperimentConfig) -> CurveResult:
    """Normalized expected swap distance per (parameter, m); no sampling.
    The normalized variant is flat at its parameter by definition."""
    cells = []
    for variant in cfg.variants():
        for param in cfg.params:
            for m in cfg.m_grid:
                value = param if variant == "normalized" else normalized_swap_distance(param, m)
                cells.append(Cell(cfg.kind, variant, param, m, cfg.n, 0, value, 0.0))
    return CurveResult(cfg.kind, cfg, tuple(cells))


def run_property_curve(cfg: ExperimentConfig) -> CurveResult:
    """Closed-form curves for the first-place, position, or first-beats-last
    statistic, with the known large-m limit overlaid where one exists."""
    prop = {"top1-curve": "top1", "pos1-curve": "pos1", "beats-m-curve": "beats-m"}[cfg.kind]
    fun = _PROPERTY_FUNS[prop]
    cells = []
    for variant in cfg.variants():
        for param in cfg.params:
            for m in cfg.m_grid:
                cells.append(
                    Cell(cfg.kind, variant, param, m, cfg.n, 0,
                         fun(_phi_for(variant, param, m), m), 0.0)
                )
            limit = _property_limit(prop, variant, param)
            if limit is not None:
                cells.append(
                    Cell(cfg.kind, f"{variant}-limit", param, LIMIT_M, cfg.n, 0, limit, 0.0)
                )
    return CurveResult(cfg.kind, cfg, tuple(cells))


def _property_limit(prop: str, variant: str, param: float) -> Optional[float]:
    if variant == "classic" and prop == "top1":
        return 1.0 - param
    if variant == "normalized" and prop == "pos1" and param > 0.0:
        return limit_normalized_position(param)
    if variant == "normalized" and prop == "beats-m" and param > 0.0:
        return limit_first_beats_last(param)
    return None


# ------------------------------------------------------------- Monte Carlo

def run_winner_prob(cfg: ExperimentConfig, threads: int = 1) -> CurveResult:
    """Fraction of sampled profiles whose best central alternative wins under
    the configured rule; plurality and Borda cells come with companion
    ``...-ties`` cells recording how often the winning score was shared."""
    rule = cfg.kind.split("-")[0]
    master = SplitMix64(cfg.seed)
    cell_idx = 0
    cells = []
    for variant in cfg.variants():
        for param in cfg.params:
            for m in cfg.m_grid:
                phi = _phi_for(variant, param, m)
                cell = master.spawn_key(cell_idx)
                cell_idx += 1

                def work(t: int, phi=phi, m=m, cell=cell) -> tuple[float, float]:
                    p = _sample(phi, m, cfg.n, cell.spawn_key(t))
                    if rule == "plurality":
                        w, scores = plurality(p)
                        tie = float((scores == scores[w]).sum() > 1)
                    elif rule == "borda":
                        w, scores = borda(p)
                        tie = float((scores == scores[w]).sum() > 1)
                    else:
                        w = condorcet(p)
                        tie = 0.0
                    return float(w == 0), tie

                results = _map_trials(lambda t, f=work: f(t), cfg.trials, threads)
                wins, ties = zip(*results)
                mean, err = _mean_stderr(wins)
                cells.append(Cell(cfg.kind, variant, param, m, cfg.n, cfg.trials, mean, err))
                if rule in ("plurality", "borda"):
                    tmean, terr = _mean_stderr(ties)
                    cells.append(
                        Cell(f"{cfg.kind}-ties", variant, param, m, cfg.n, cfg.trials, tmean, terr)
                    )
    return CurveResult(cfg.kind, cfg, tuple(cells))


def run_posdist_curve(cfg: ExperimentConfig, threads: int = 1) -> CurveResult:
    """Mean positionwise distance from identity of sampled profiles."""
    master = SplitMix64(cfg.seed)
    cell_idx = 0
    cells = []
    for variant in cfg.variants():
        for param in cfg.params:
            for m in cfg.m_grid:
                phi = _phi_for(variant, param, m)
                cell = master.spawn_key(cell_idx)
                cell_idx += 1
                work = lambda t, phi=phi, m=m, cell=cell: positionwise_distance_from_identity(
                    _sample(phi, m, cfg.n, cell.spawn_key(t))
                )
                mean, err = _mean_stderr(_map_trials(work, cfg.trials, threads))
                cells.append(Cell(cfg.kind, variant, param, m, cfg.n, cfg.trials, mean, err))
    return CurveResult(cfg.kind, cfg, tuple(cells))


def _deletion_statistic(name: str, p: Profile) -> float:
    if name == "max-plurality-score":
        w, scores = plurality(p)
        return scores[w] / p.n
    if name == "plurality-winner-position":
        w, _ = plurality(p)
        avg = sum(v.position(w) for v in p.rankings) / p.n
        return (avg - 1.0) / (p.m - 1.0)
    if name == "posdist-id":
        return positionwise_distance_from_identity(p)
    if name == "plurality-is-borda":
        return float(plurality(p)[0] == borda(p)[0])
    raise ValueError(f"unknown deletion statistic {name!r}")


def run_deletion_compare(cfg: ExperimentConfig, threads: int = 1) -> CurveResult:
    """Direct sampling at each m versus sampling at m_max and deleting a
    random subset of alternatives, with a shared seed schedule per trial.

    Trial t of one (variant, parameter) cell derives both arms from the same
    trial stream: the direct profile at m, the size-m_max profile, and a
    restriction stream at key ``n + m`` (ranking substreams use 0..n-1).
    The insertion draws are prefix-coupled across m, so arm differences are
    not seed artifacts.
    """
    master = SplitMix64(cfg.seed)
    cell_idx = 0
    per_arm: dict[tuple[str, float, int, str], tuple[float, float]] = {}
    for variant in cfg.variants():
        for param in cfg.params:
            cell = master.spawn_key(cell_idx)
            cell_idx += 1
            phis = {m: _phi_for(variant, param, m) for m in cfg.m_grid}
            phi_max = _phi_for(variant, param, cfg.m_max)

            def work(t: int, phis=phis, phi_max=phi_max, cell=cell) -> list[tuple[float, float]]:
                trial = cell.spawn_key(t)
                big = _sample(phi_max, cfg.m_max, cfg.n, trial)
                out = []
                for m in cfg.m_grid:
                    direct = _sample(phis[m], m, cfg.n, trial)
                    kept = random_restriction(big, m, trial.spawn_key(cfg.n + m))
                    out.append(
                        (
                            _deletion_statistic(cfg.statistic, direct),
                            _deletion_statistic(cfg.statistic, kept),
                        )
                    )
                return out

            rows = _map_trials(lambda t, f=work: f(t), cfg.trials, threads)
            for mi, m in enumerate(cfg.m_grid):
                direct_vals = [rows[t][mi][0] for t in range(cfg.trials)]
                deleted_vals = [rows[t][mi][1] for t in range(cfg.trials)]
                per_arm[(variant, param, m, "direct")] = _mean_stderr(direct_vals)
                per_arm[(variant, param, m, "deleted")] = _mean_stderr(deleted_vals)
    cells = []
    for variant in cfg.variants():
        for param in cfg.params:
            for arm in ("direct", "deleted"):
                for m in cfg.m_grid:
                    mean, err = per_arm[(variant, param, m, arm)]
                    cells.append(
                        Cell(cfg.kind, f"{variant}-{arm}", param, m, cfg.n, cfg.trials, mean, err)
                    )
    return CurveResult(cfg.kind, cfg, tuple(cells))


# ------------------------------------------------------------- coverage

COVERAGE_SPREAD_LIMIT = 0.02   # max-min over the top decade that counts as flat
COVERAGE_DISTINCT_GAP = 0.05   # parameter rows must end at least this far apart


def run_coverage_check(cfg: ExperimentConfig) -> CurveResult:
    """Tabulates the chosen statistic over an (exponentially spaced) m grid
    for each parameter value and judges, per variant, whether the rows settle
    on distinct levels ("covers") or collapse together ("cannot-distinguish").

    The spread of a row is max - min over the top decade of the m grid; the
    thresholds are repo constants, not figures from any source.
    """
    fun = _PROPERTY_FUNS[cfg.property]
    top = max(cfg.m_grid)
    decade = [m for m in cfg.m_grid if m >= top / 10]
    cells = []
    verdicts = []
    for variant in cfg.variants():
        tails = []
        spreads = []
        for param in cfg.params:
            values = {m: fun(_phi_for(variant, param, m), m) for m in cfg.m_grid}
            for m in cfg.m_grid:
                cells.append(Cell(cfg.kind, variant, param, m, cfg.n, 0, values[m], 0.0))
            tail = [values[m] for m in decade]
            spread = max(tail) - min(tail)
            spreads.append(spread)
            tails.append(values[top])
            cells.append(
                Cell(f"{cfg.kind}-spread", variant, param, LIMIT_M, cfg.n, 0, spread, 0.0)
            )
        interior = [t for t, p in zip(tails, cfg.params) if 0.0 < p < 1.0]
        gaps = [abs(a - b) for i, a in enumerate(tails) for b in tails[i + 1 :]]
        flat = all(s <= COVERAGE_SPREAD_LIMIT for s in spreads)
        if flat and (not gaps or min(gaps) >= COVERAGE_DISTINCT_GAP):
            verdict = "covers"
        elif interior and max(interior) - min(interior) <= COVERAGE_DISTINCT_GAP:
            verdict = "cannot-distinguish"
        else:
            verdict = "inconclusive"
        verdicts.append((variant, verdict))
    return CurveResult(cfg.kind, cfg, tuple(cells), tuple(verdicts))


# ------------------------------------------------------------- dispatch/IO

def run_experiment(cfg: ExperimentConfig, threads: int = 1) -> CurveResult:
    if cfg.kind == "swap-curve":
        return run_swap_curve(cfg)
    if cfg.kind in ("top1-curve", "pos1-curve", "beats-m-curve"):
        return run_property_curve(cfg)
    if cfg.kind in ("plurality-winner-prob", "borda-winner-prob", "condorcet-winner-prob"):
        return run_winner_prob(cfg, threads)
    if cfg.kind == "posdist-curve":
        return run_posdist_curve(cfg, threads)
    if cfg.kind == "deletion-compare":
        return run_deletion_compare(cfg, threads)
    return run_coverage_check(cfg)


_Y_LABELS = {
    "swap-curve": "normalized swap distance",
    "top1-curve": "normalized first-place probability",
    "pos1-curve": "normalized expected position",
    "beats-m-curve": "normalized first-beats-last",
    "plurality-winner-prob": "fraction with best alternative winning",
    "borda-winner-prob": "fraction with best alternative winning",
    "condorcet-winner-prob": "fraction with best alternative winning",
    "posdist-curve": "positionwise distance from identity",
    "deletion-compare": "statistic value",
    "coverage-check": "statistic value",
}


def emit_outputs(result: CurveResult, prefix) -> list[Path]:
    """Write ``<prefix>.csv`` (17-significant-digit floats) and
    ``<prefix>.svg``; coverage runs also get ``<prefix>_verdicts.csv``."""
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    written = []
    csv_path = prefix.with_suffix(".csv")
    try:
        csv_path.write_text("\n".join(result.csv_lines()) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {csv_path}: {exc}") from exc
    written.append(csv_path)

    curves = []
    seen = []
    for c in result.cells:
        if c.m == LIMIT_M or c.kind.endswith(("-ties", "-spread")):
            continue
        key = (c.variant, c.param)
        if key not in seen:
            seen.append(key)
    for variant, param in seen:
        pts = [(c.m, c.mean) for c in result.cells
               if c.variant == variant and c.param == param
               and c.m != LIMIT_M and not c.kind.endswith(("-ties", "-spread"))]
        pts.sort()
        curves.append(
            (f"{variant} {param:g}", [x for x, _ in pts], [y for _, y in pts],
             variant.startswith("normalized"))
        )
    svg_path = prefix.with_suffix(".svg")
    svgplot.line_plot(
        svg_path, curves, "number of alternatives",
        _Y_LABELS[result.kind], result.kind,
    )
    written.append(svg_path)

    if result.verdicts:
        vpath = Path(str(prefix) + "_verdicts.csv")
        lines = ["variant,property,verdict"]
        lines += [f"{v},{result.config.property},{verdict}" for v, verdict in result.verdicts]
        vpath.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(vpath)
    return written


# ------------------------------------------------------------- config file

def load_config(path) -> ExperimentConfig:
    """Read one experiment from an INI file with a single [experiment] section."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValueError(f"cannot read config file {path}")
    if "experiment" not in parser:
        raise ValueError(f"{path}: missing [experiment] section")
    sec = parser["experiment"]
    known = {
        "kind", "variant", "params", "m_grid", "n", "trials",
        "seed", "out", "statistic", "property", "m_max",
    }
    for key in sec:
        if key not in known:
            raise ValueError(f"{path}: unknown config key {key!r}")

    def _req(key: str) -> str:
        if key not in sec:
            raise ValueError(f"{path}: missing required key {key!r}")
        return sec[key]

    def _floats(text: str) -> tuple[float, ...]:
        try:
            return tuple(float(tok) for tok in text.replace(",", " ").split())
        except ValueError:
            raise ValueError(f"{path}: expected a list of numbers, got {text!r}")

    def _ints(text: str) -> tuple[int, ...]:
        try:
            return tuple(int(tok) for tok in text.replace(",", " ").split())
        except ValueError:
            raise ValueError(f"{path}: expected a list of integers, got {text!r}")

    return ExperimentConfig(
        kind=_req("kind"),
        variant=sec.get("variant", "both"),
        params=_floats(_req("params")),
        m_grid=_ints(_req("m_grid")),
        n=sec.getint("n", fallback=100),
        trials=sec.getint("trials", fallback=200),
        seed=sec.getint("seed", fallback=0),
        out_prefix=sec.get("out", fallback=None),
        statistic=sec.get("statistic", fallback=None),
        property=sec.get("property", fallback=None),
        m_max=sec.getint("m_max", fallback=200),
    )
