"""Per-category consensus statistics over the consideration grid.

Each category row of the grid is mapped to numeric values (D=3, I=2, C=1,
N=0) and summarized by its mean, sample standard deviation, cohort z-score,
one-sample t statistic against a zero null, and exact two-tailed p-value.
The consensus label thresholds on the mean and p jointly.

Conventions that the numbers depend on: sample (n-1) standard deviations
everywhere, including the cohort sd behind the z-scores; null mean 0; and a
two-tailed p. Zero-variance rows produce flagged sentinels, never NaN.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from .codes import HarmCode
from .matrix import THEORIES, ConsiderationCode, ConsiderationMatrix, likert
from .special import regularized_incomplete_beta


class DegenerateCohortError(ValueError):
    """Cohort of means has zero spread; z-scores are undefined."""


class ConsensusLabel(Enum):
    STRONG = "Strong"
    MODERATE = "Moderate"
    WEAK = "Weak"
    NONE = "None"


def row_stats(codes: Sequence[ConsiderationCode]) -> tuple[float, float]:
    """Mean and sample standard deviation of a row's numeric values."""
    n = len(codes)
    if n < 2:
        raise ValueError(f"need at least 2 values, got {n}")
    values = [likert(c) for c in codes]
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def cohort_z(means: Sequence[float]) -> list[float]:
    """Z-score of each mean relative to the cohort of means."""
    n = len(means)
    if n < 2:
        raise ValueError(f"need at least 2 means, got {n}")
    center = sum(means) / n
    var = sum((m - center) ** 2 for m in means) / (n - 1)
    sd = math.sqrt(var)
    if sd == 0.0:
        raise DegenerateCohortError("cohort of means has zero standard deviation")
    return [(m - center) / sd for m in means]


def t_statistic(mean: float, sd: float, n: int) -> float:
    """One-sample t against a zero null; +/-inf sentinel when sd is 0."""
    if n < 2:
        raise ValueError(f"need at least 2 observations, got {n}")
    if sd == 0.0:
        if mean == 0.0:
            return 0.0
        return math.inf if mean > 0.0 else -math.inf
    return mean / (sd / math.sqrt(n))


def student_t_two_tailed_p(t: float, df: int) -> float:
    """Exact two-tailed p-value for a t statistic.

    Uses the identity P(|T| >= t) = I_x(df/2, 1/2) with x = df/(df + t^2),
    evaluated by the in-repo incomplete beta. Infinite t (the zero-variance
    sentinel) maps to p = 0.
    """
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if math.isinf(t):
        return 0.0
    if math.isnan(t):
        raise ValueError("t statistic is NaN")
    if t == 0.0:
        return 1.0
    t2 = t * t
    x = df / (df + t2)
    xc = t2 / (df + t2)
    return regularized_incomplete_beta(df / 2.0, 0.5, x, xc)


def classify_consensus(mean: float, p: float) -> ConsensusLabel:
    """Label a row: Strong (mean >= 2.0), Moderate (mean >= 1.5), or Weak,
    all gated on p < 0.05; otherwise None."""
    if p < 0.05:
        if mean >= 2.0:
            return ConsensusLabel.STRONG
        if mean >= 1.5:
            return ConsensusLabel.MODERATE
        return ConsensusLabel.WEAK
    return ConsensusLabel.NONE


@dataclass(frozen=True)
class ConsensusRow:
    category: HarmCode
    mean: float
    sd: float
    z: float
    t: float
    p: float
    label: ConsensusLabel
    degenerate: bool = False


@dataclass(frozen=True)
class ConsensusReport:
    rows: tuple[ConsensusRow, ...]
    cohort_mean: float
    cohort_sd: float

    def row_for(self, category: HarmCode) -> ConsensusRow:
        for row in self.rows:
            if row.category == category:
                return row
        raise KeyError(f"no consensus row for {category}")

    def to_dict(self) -> dict:
        return {
            "rows": [
                {
                    "category": str(r.category),
                    "mean": r.mean,
                    "sd": r.sd,
                    "z": r.z,
                    "t": _json_number(r.t),
                    "p": r.p,
                    "label": r.label.value,
                    "degenerate": r.degenerate,
                }
                for r in self.rows
            ],
            "cohort_mean": self.cohort_mean,
            "cohort_sd": self.cohort_sd,
        }

    def render_table(self) -> str:
        """Aligned plain-text table; 2 decimals, scientific p."""
        header = ("Category", "Mean", "Std Dev", "Z-Score", "T-Statistic", "P-Value", "Consensus")
        body = [
            (
                str(r.category),
                f"{r.mean:.2f}",
                f"{r.sd:.2f}",
                f"{r.z:.2f}",
                "inf" if math.isinf(r.t) else f"{r.t:.2f}",
                f"{r.p:.5E}",
                r.label.value,
            )
            for r in self.rows
        ]
        widths = [max(len(header[i]), *(len(row[i]) for row in body)) for i in range(len(header))]
        lines = [
            "  ".join(h.ljust(widths[i]) for i, h in enumerate(header)),
            "  ".join("-" * w for w in widths),
        ]
        for row in body:
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
        lines.append("")
        lines.append(f"cohort mean {self.cohort_mean:.2f}, cohort sd {self.cohort_sd:.2f}")
        return "\n".join(lines)


def _json_number(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def consensus_table(matrix: ConsiderationMatrix) -> ConsensusReport:
    """Full consensus report over the matrix's categories, in row order."""
    n = len(THEORIES)
    df = n - 1
    stats = []
    for cat in matrix.categories:
        mean, sd = row_stats(matrix.consideration_row(cat))
        stats.append((cat, mean, sd))

    means = [m for _, m, _ in stats]
    zs = cohort_z(means)
    k = len(means)
    cohort_mean = sum(means) / k
    cohort_sd = math.sqrt(sum((m - cohort_mean) ** 2 for m in means) / (k - 1))

    rows = []
    for (cat, mean, sd), z in zip(stats, zs):
        degenerate = sd == 0.0
        t = t_statistic(mean, sd, n)
        p = student_t_two_tailed_p(t, df)
        rows.append(
            ConsensusRow(
                category=cat,
                mean=mean,
                sd=sd,
                z=z,
                t=t,
                p=p,
                label=classify_consensus(mean, p),
                degenerate=degenerate,
            )
        )
    return ConsensusReport(rows=tuple(rows), cohort_mean=cohort_mean, cohort_sd=cohort_sd)
