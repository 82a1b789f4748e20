"""Reading and writing ranking-profile files, cleaning incomplete data, and
per-dataset scatter/group summaries.

File format (UTF-8 text, one construct per line):

* ``# ...`` comment, ignored
* ``alt <id> <name...>`` declares an alternative; id is a positive integer,
  the name runs to the end of the line (defaults to ``c<id>``)
* ``[k:] id,id,...,id`` one ranking, best first, optionally repeated k times

Rankings may omit declared alternatives; such lines are kept but flagged
incomplete, and cleaning them is the explicit job of
:func:`complete_by_intersection` (which keeps only alternatives ranked by
everybody).  Written files are canonical: declarations sorted by id, every
name spelled out, one ranking per line with no multiplicity compression.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence, Union

from .core import Profile, Ranking
from .stats import GroupStatistics, group_statistics, positionwise_distance_from_identity

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, path: PathLike, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


@dataclass(frozen=True)
class ParsedProfile:
    """Raw parse result; rows hold internal alternative indices, best first."""

    ids: tuple[int, ...]
    names: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    incomplete: tuple[bool, ...]

    @property
    def m(self) -> int:
        return len(self.ids)

    @property
    def n(self) -> int:
        return len(self.rows)

    def is_complete(self) -> bool:
        return not any(self.incomplete)

    def to_profile(self) -> Profile:
        if not self.is_complete():
            bad = sum(self.incomplete)
            raise ValueError(
                f"profile has {bad} incomplete ranking(s); clean it first "
                "(complete_by_intersection)"
            )
        return Profile(
            rankings=tuple(Ranking(row) for row in self.rows),
            ids=self.ids,
            names=self.names,
        )


def parse_profile(path: PathLike) -> ParsedProfile:
    """Parse one ranking file; raises :class:`ParseError` with a line number."""
    ids: list[int] = []
    names: dict[int, str] = {}
    raw_rows: list[tuple[int, tuple[int, ...]]] = []  # (line, external ids)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("alt "):
                parts = line.split(maxsplit=2)
                try:
                    ext = int(parts[1])
                except (IndexError, ValueError):
                    raise ParseError(path, lineno, "expected 'alt <id> <name...>'")
                if ext <= 0:
                    raise ParseError(path, lineno, f"alternative id must be positive, got {ext}")
                if ext in names:
                    raise ParseError(path, lineno, f"alternative {ext} declared twice")
                ids.append(ext)
                names[ext] = parts[2] if len(parts) > 2 else f"c{ext}"
                continue
            mult = 1
            body = line
            if ":" in line:
                head, body = line.split(":", 1)
                try:
                    mult = int(head.strip())
                except ValueError:
                    raise ParseError(path, lineno, f"bad multiplicity {head.strip()!r}")
                if mult <= 0:
                    raise ParseError(path, lineno, f"multiplicity must be positive, got {mult}")
            try:
                row = tuple(int(tok.strip()) for tok in body.split(",") if tok.strip())
            except ValueError:
                raise ParseError(path, lineno, f"bad ranking line {body.strip()!r}")
            if not row:
                raise ParseError(path, lineno, "empty ranking line")
            if len(set(row)) != len(row):
                dup = next(x for x in row if row.count(x) > 1)
                raise ParseError(path, lineno, f"alternative {dup} repeated in one ranking")
            unknown = [x for x in row if x not in names]
            if unknown:
                raise ParseError(path, lineno, f"undeclared alternative {unknown[0]}")
            raw_rows.extend([(lineno, row)] * mult)
    if not names:
        raise ParseError(path, 0, "no alternatives declared")
    if not raw_rows:
        raise ParseError(path, 0, "no rankings in file body")
    order = sorted(names)
    internal = {ext: k for k, ext in enumerate(order)}
    rows = tuple(tuple(internal[x] for x in row) for _, row in raw_rows)
    return ParsedProfile(
        ids=tuple(order),
        names=tuple(names[ext] for ext in order),
        rows=rows,
        incomplete=tuple(len(row) < len(order) for row in rows),
    )


def write_profile(p: Profile, path: PathLike) -> None:
    """Write in canonical form: ids ascending, no multiplicity compression."""
    ordering = sorted(range(p.m), key=lambda a: p.ids[a])
    with open(path, "w", encoding="utf-8") as fh:
        for a in ordering:
            fh.write(f"alt {p.ids[a]} {p.names[a]}\n")
        for v in p.rankings:
            fh.write(",".join(str(p.ids[a]) for a in v.order) + "\n")


def complete_by_intersection(parsed: ParsedProfile) -> Profile:
    """Keep only alternatives ranked in every row, preserving relative order."""
    common = set(range(parsed.m))
    for row in parsed.rows:
        common &= set(row)
    if not common:
        raise ValueError("rankings share no common alternative")
    kept = sorted(common)
    new_id = {a: k for k, a in enumerate(kept)}
    rankings = tuple(
        Ranking(tuple(new_id[a] for a in row if a in new_id)) for row in parsed.rows
    )
    return Profile(
        rankings=rankings,
        ids=tuple(parsed.ids[a] for a in kept),
        names=tuple(parsed.names[a] for a in kept),
    )


def load_profile(path: PathLike) -> Profile:
    """Parse and, if needed, clean a ranking file into a complete profile."""
    parsed = parse_profile(path)
    if parsed.is_complete():
        return parsed.to_profile()
    return complete_by_intersection(parsed)


@dataclass(frozen=True)
class ScatterPoint:
    m: int
    n: int
    distance: float
    label: str


def dataset_scatter(paths: Sequence[PathLike], labels: Sequence[str]) -> list[ScatterPoint]:
    """One (m, n, positionwise distance, label) point per profile file."""
    if len(paths) != len(labels):
        raise ValueError("need one label per path")
    points = []
    for path, label in zip(paths, labels):
        p = load_profile(path)
        points.append(
            ScatterPoint(p.m, p.n, positionwise_distance_from_identity(p), label)
        )
    return points


def scatter_to_csv(points: Iterable[ScatterPoint], path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "n", "distance", "label"])
        for pt in points:
            writer.writerow([pt.m, pt.n, f"{pt.distance:.17g}", pt.label])


GROUP_REPORT_ROWS = (
    ("plurality_score_share", "Plurality score of Plurality winner"),
    ("winner_position_share", "Average position of Plurality winner"),
    ("plurality_is_borda", "Fraction of profiles where Borda and Plurality winner coincide"),
    ("plurality_is_condorcet", "Fraction of profiles where Plurality and Condorcet winner coincide"),
)


def group_report(groups: Mapping[str, Sequence[PathLike]]) -> dict[str, GroupStatistics]:
    """Per-group averaged winner statistics from ranking files."""
    if not groups:
        raise ValueError("no groups given")
    report = {}
    for label, paths in groups.items():
        if not paths:
            raise ValueError(f"group {label!r} is empty")
        report[label] = group_statistics([load_profile(p) for p in paths])
    return report


def group_report_to_csv(report: Mapping[str, GroupStatistics], path: PathLike) -> None:
    """Four-row table, one column per group."""
    labels = list(report)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["statistic"] + labels)
        for field_name, description in GROUP_REPORT_ROWS:
            writer.writerow(
                [description]
                + [f"{getattr(report[label], field_name):.17g}" for label in labels]
            )
