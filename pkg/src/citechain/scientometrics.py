"""Citation-table analytics: kappa ratios, h summaries, rank correlations.

Operates on ranked author records (total citations, h-index, most-cited
paper) such as the top-10 listings scraped from a citation index for one
field.  Three such listings, captured 2020-02-16 for the Google Scholar
labels "Mathematics", "Biostatistics", and "Physics", ship as fixtures so
every statistic can be reproduced offline.

kappa = N / h^2 tests the folk proportionality "citations ~ kappa h^2 with
kappa between 3 and 5"; the report counts how many authors actually land
at kappa <= 5 and kappa in (5, 6).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "AuthorRecord",
    "FIXTURE_NAMES",
    "ReportTable",
    "kappa",
    "load_dataset",
    "pearson",
    "report",
    "summary",
]

_HEADER = ("rank", "total_citations", "h_index", "max_paper_citations")


@dataclass(frozen=True)
class AuthorRecord:
    rank: int
    total_citations: int
    h_index: int
    max_paper_citations: int

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank!r}")
        for field in ("total_citations", "h_index", "max_paper_citations"):
            if getattr(self, field) < 0:
                raise ValueError(f"{field} must be >= 0 (rank {self.rank})")
        # an index of h needs h papers each cited at least h times
        if self.h_index >= 1 and self.h_index**2 > self.total_citations:
            raise ValueError(
                f"invariant violation at rank {self.rank}: "
                f"h_index^2 = {self.h_index ** 2} exceeds "
                f"total_citations = {self.total_citations}"
            )
        if self.max_paper_citations > self.total_citations:
            raise ValueError(
                f"invariant violation at rank {self.rank}: max_paper_citations "
                f"= {self.max_paper_citations} exceeds total_citations "
                f"= {self.total_citations}"
            )


@dataclass(frozen=True)
class ReportTable:
    """Per-record kappa plus the field-level summary statistics.

    rho1 correlates total citations with h; rho2 correlates h with the
    most-cited paper's count.  The kappa counts use full precision, not
    the 2-decimal presentation rounding.
    """

    kappa: tuple[float, ...]
    h_mean: float
    h_sample_sd: float
    rho1: float
    rho2: float
    kappa_le_5_count: int
    kappa_5_6_count: int


# columns 1-4 of the three ranked listings (rank, total, h, max-cited)
_FIXTURES: dict[str, tuple[tuple[int, int, int, int], ...]] = {
    "mathematics": (
        (1, 448557, 270, 28303),
        (2, 162457, 98, 44406),
        (3, 159123, 147, 26929),
        (4, 138820, 64, 110393),
        (5, 101662, 59, 35640),
        (6, 99206, 78, 41647),
        (7, 85288, 59, 55293),
        (8, 84918, 48, 18901),
        (9, 77319, 98, 11715),
        (10, 73989, 72, 17153),
    ),
    "biostatistics": (
        (1, 478691, 227, 66611),
        (2, 301786, 132, 59613),
        (3, 253221, 208, 26127),
        (4, 223038, 218, 10184),
        (5, 199143, 169, 23447),
        (6, 178855, 117, 39271),
        (7, 150695, 105, 42485),
        (8, 119199, 111, 20666),
        (9, 108648, 140, 20842),
        (10, 100491, 111, 30315),
    ),
    "physics": (
        (1, 326718, 206, 25605),
        (2, 259321, 223, 7275),
        (3, 240376, 200, 15651),
        (4, 232057, 206, 26535),
        (5, 231746, 218, 15589),
        (6, 227530, 206, 15684),
        (7, 217495, 144, 35746),
        (8, 200565, 191, 11807),
        (9, 198735, 190, 7497),
        (10, 197679, 198, 25649),
    ),
}

FIXTURE_NAMES = tuple(sorted(_FIXTURES))


def _parse_csv(path: Path) -> list[AuthorRecord]:
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header row") from None
        if tuple(h.strip() for h in header) != _HEADER:
            raise ValueError(
                f"{path}: row 1: header must be {','.join(_HEADER)!r}, "
                f"got {','.join(header)!r}"
            )
        records = []
        for row_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 4:
                raise ValueError(f"{path}: row {row_no}: expected 4 fields, got {len(row)}")
            values = []
            for col_no, (name, cell) in enumerate(zip(_HEADER, row), start=1):
                try:
                    values.append(int(cell.strip()))
                except ValueError:
                    raise ValueError(
                        f"{path}: row {row_no}, column {col_no} ({name}): "
                        f"not an integer: {cell!r}"
                    ) from None
            records.append(AuthorRecord(*values))
    return records


def load_dataset(source: str | Path) -> list[AuthorRecord]:
    """Records from a fixture name or a CSV file path.

    Fixtures: "mathematics", "biostatistics", "physics".  CSV files need
    the exact header rank,total_citations,h_index,max_paper_citations and
    integer fields; record invariants are enforced either way.
    """
    if isinstance(source, str) and source in _FIXTURES:
        return [AuthorRecord(*row) for row in _FIXTURES[source]]
    path = Path(source)
    if not path.exists():
        raise ValueError(
            f"{source!r} is neither a fixture name {FIXTURE_NAMES} nor an "
            "existing file"
        )
    return _parse_csv(path)


def kappa(record: AuthorRecord) -> float:
    """total_citations / h_index^2; the proportionality factor under test."""
    if record.h_index < 1:
        raise ValueError(f"kappa undefined at h_index = 0 (rank {record.rank})")
    return record.total_citations / record.h_index**2


def summary(values) -> tuple[float, float]:
    """(mean, sample sd).  The sd uses the n-1 denominator."""
    xs = [float(v) for v in values]
    if len(xs) < 2:
        raise ValueError(f"summary needs at least 2 values, got {len(xs)}")
    mean = math.fsum(xs) / len(xs)
    var = math.fsum((x - mean) ** 2 for x in xs) / (len(xs) - 1)
    return mean, math.sqrt(var)


def pearson(xs, ys) -> float:
    """Sample Pearson correlation, clipped to [-1, 1] against rounding."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("pearson needs two equal-length 1-d sequences")
    if x.size < 2:
        raise ValueError(f"pearson needs at least 2 points, got {x.size}")
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise ValueError("pearson undefined: a sequence has zero variance")
    r = float(np.corrcoef(x, y)[0, 1])
    return max(-1.0, min(1.0, r))


def report(records) -> ReportTable:
    """Full analysis of one listing; see ReportTable for the fields."""
    recs = list(records)
    if len(recs) < 2:
        raise ValueError(f"report needs at least 2 records, got {len(recs)}")
    kappas = tuple(kappa(r) for r in recs)
    h = [r.h_index for r in recs]
    h_mean, h_sd = summary(h)
    rho1 = pearson([r.total_citations for r in recs], h)
    rho2 = pearson(h, [r.max_paper_citations for r in recs])
    return ReportTable(
        kappa=kappas,
        h_mean=h_mean,
        h_sample_sd=h_sd,
        rho1=rho1,
        rho2=rho2,
        kappa_le_5_count=sum(1 for k in kappas if k <= 5.0),
        kappa_5_6_count=sum(1 for k in kappas if 5.0 < k < 6.0),
    )
