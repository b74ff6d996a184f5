"""Composite per-theory severity scoring for incident profiles.

The score is this project's own deterministic scoring rule, built so that
its baseline coincides with the consideration scale: each harm contributes

    likert(consideration) * irr_factor * dur_factor * victim_multiplier

and a profile's theory score is the mean over its harms. Every factor is of
the form 1 + weight * attribute, so a factor whose table weight is zero
("Irrelevant" importance, and duration at the bottom of its scale) is
provably inert: with irreversibility 0, duration 1, and no priority
victims, the score reduces to the plain likert mean.

Harm codes below category level score through their category ancestor,
since all the normative tables are keyed by category.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .codes import EntityCode, HarmCode
from .consensus import consensus_table
from .matrix import (
    DEFAULT_DUR_BETA,
    DEFAULT_IRR_ALPHA,
    THEORIES,
    ConsiderationMatrix,
    DuranceWeight,
    ImportanceCode,
    Theory,
    likert,
)
from .registry import Registry, UnknownCodeError, category_of

AGGREGATION_MODES = ("mean", "consensus_weighted")

# Victim multiplier: each priority-class match adds a quarter step, capped.
VICTIM_MATCH_STEP = 0.25
VICTIM_MULTIPLIER_CAP = 2.0


@dataclass(frozen=True)
class IncidentProfile:
    """A concrete harm event to be scored.

    ``irreversibility`` runs 0 (fully reversible) to 1 (fully irreversible);
    ``duration`` runs 1 (short) to 3 (long). A missing duration defaults,
    per harm, to the harm category's durance score.
    """

    harms: tuple[HarmCode, ...]
    victims: tuple[EntityCode, ...] = ()
    irreversibility: float = 0.0
    duration: float | None = None
    note: str = ""

    def __post_init__(self):
        if not self.harms:
            raise ValueError("profile must list at least one harm code")
        if len(set(self.harms)) != len(self.harms):
            raise ValueError("profile lists a harm code more than once")
        if not 0.0 <= self.irreversibility <= 1.0:
            raise ValueError(f"irreversibility {self.irreversibility} outside [0, 1]")
        if self.duration is not None and not 1.0 <= self.duration <= 3.0:
            raise ValueError(f"duration {self.duration} outside [1, 3]")
        for code in self.harms:
            if code.is_root:
                raise ValueError(f"domain root {code} cannot appear in a profile")


@dataclass(frozen=True)
class FactorTrail:
    """Per-(theory, harm) factor breakdown behind a score."""

    likert: int
    irr: float
    dur: float
    victim: float

    @property
    def score(self) -> float:
        return self.likert * self.irr * self.dur * self.victim


@dataclass(frozen=True)
class SeverityReport:
    per_theory: Mapping[Theory, float]
    aggregate: float
    mode: str
    ranking: tuple[Theory, ...]
    trail: Mapping[Theory, Mapping[HarmCode, FactorTrail]]

    def to_dict(self) -> dict:
        return {
            "per_theory": {t.value: self.per_theory[t] for t in THEORIES},
            "aggregate": self.aggregate,
            "mode": self.mode,
            "ranking": [t.value for t in self.ranking],
            "trail": {
                t.value: {
                    str(h): {
                        "likert": ft.likert,
                        "irr": ft.irr,
                        "dur": ft.dur,
                        "victim": ft.victim,
                    }
                    for h, ft in self.trail[t].items()
                }
                for t in THEORIES
            },
        }

    def render_text(self) -> str:
        """Ranking table plus one factor line per (theory, harm)."""
        lines = [f"aggregate severity ({self.mode}): {self.aggregate:.4f}", ""]
        lines.append("rank  theory  score    name")
        for i, theory in enumerate(self.ranking, start=1):
            lines.append(
                f"{i:>4}  {theory.value:<6}  {self.per_theory[theory]:.4f}   {theory.label}"
            )
        lines.append("")
        for theory in THEORIES:
            for harm, ft in self.trail[theory].items():
                lines.append(
                    f"{theory.value} {harm}: likert={ft.likert} irr={ft.irr:.4f} "
                    f"dur={ft.dur:.4f} victim={ft.victim:.4f} score={ft.score:.4f}"
                )
        return "\n".join(lines)


def irr_factor(
    code: ImportanceCode,
    irreversibility: float,
    alpha: Mapping[ImportanceCode, float] | None = None,
) -> float:
    """Irreversibility factor 1 + alpha(code) * irreversibility."""
    if not 0.0 <= irreversibility <= 1.0:
        raise ValueError(f"irreversibility {irreversibility} outside [0, 1]")
    table = DEFAULT_IRR_ALPHA if alpha is None else alpha
    return 1.0 + table[code] * irreversibility


def dur_factor(
    weight: DuranceWeight,
    duration: float,
    beta: Mapping[DuranceWeight, float] | None = None,
) -> float:
    """Duration factor 1 + beta(weight) * (duration - 1) / 2."""
    if not 1.0 <= duration <= 3.0:
        raise ValueError(f"duration {duration} outside [1, 3]")
    table = DEFAULT_DUR_BETA if beta is None else beta
    return 1.0 + table[weight] * (duration - 1.0) / 2.0


def victim_multiplier(
    matrix: ConsiderationMatrix,
    theory: Theory,
    victims: Sequence[EntityCode],
) -> float:
    """1 + a quarter per distinct priority-class victim, capped at 2.0."""
    matches = set(victims) & set(matrix.priorities(theory))
    return min(VICTIM_MULTIPLIER_CAP, 1.0 + VICTIM_MATCH_STEP * len(matches))


def _validate_profile(registry: Registry, profile: IncidentProfile) -> None:
    for code in profile.harms:
        if code not in registry.nodes:
            raise UnknownCodeError(f"profile harm code {code} is not registered")
    known = registry.entity_codes()
    for victim in profile.victims:
        if victim not in known:
            raise UnknownCodeError(f"profile victim code {victim} is not registered")


def _harm_trail(
    matrix: ConsiderationMatrix,
    profile: IncidentProfile,
    theory: Theory,
    harm: HarmCode,
) -> FactorTrail:
    cat = category_of(harm)
    duration = profile.duration if profile.duration is not None else matrix.durance_class(cat).score
    return FactorTrail(
        likert=likert(matrix.consideration(cat, theory)),
        irr=irr_factor(
            matrix.irreversibility_importance(cat, theory),
            profile.irreversibility,
            matrix.irr_alpha,
        ),
        dur=dur_factor(matrix.durance_weight(theory), duration, matrix.dur_beta),
        victim=victim_multiplier(matrix, theory, profile.victims),
    )


def theory_severity(
    matrix: ConsiderationMatrix,
    registry: Registry,
    profile: IncidentProfile,
    theory: Theory,
) -> float:
    """Mean factor product over the profile's harms for one theory."""
    _validate_profile(registry, profile)
    trails = [_harm_trail(matrix, profile, theory, h) for h in profile.harms]
    return sum(ft.score for ft in trails) / len(trails)


def severity_report(
    matrix: ConsiderationMatrix,
    registry: Registry,
    profile: IncidentProfile,
    mode: str = "mean",
) -> SeverityReport:
    """Score all theories and aggregate.

    ``mean`` averages the per-theory scores. ``consensus_weighted``
    reweights each harm by its category's consensus mean (renormalized over
    the profile's harms) before averaging across theories; per-theory
    scores themselves always use the plain mean over harms.
    """
    if mode not in AGGREGATION_MODES:
        raise ValueError(f"unknown aggregation mode {mode!r}")
    _validate_profile(registry, profile)

    trail: dict[Theory, dict[HarmCode, FactorTrail]] = {}
    per_theory: dict[Theory, float] = {}
    for theory in THEORIES:
        harm_trails = {h: _harm_trail(matrix, profile, theory, h) for h in profile.harms}
        trail[theory] = harm_trails
        per_theory[theory] = sum(ft.score for ft in harm_trails.values()) / len(harm_trails)

    if mode == "mean":
        aggregate = sum(per_theory.values()) / len(per_theory)
    else:
        weights = _consensus_weights(matrix, profile.harms)
        weighted_by_theory = [
            sum(weights[h] * trail[theory][h].score for h in profile.harms)
            for theory in THEORIES
        ]
        aggregate = sum(weighted_by_theory) / len(weighted_by_theory)

    ranking = tuple(sorted(THEORIES, key=lambda t: (-per_theory[t], t.ordinal)))
    return SeverityReport(
        per_theory=per_theory,
        aggregate=aggregate,
        mode=mode,
        ranking=ranking,
        trail=trail,
    )


def _consensus_weights(
    matrix: ConsiderationMatrix, harms: Sequence[HarmCode]
) -> dict[HarmCode, float]:
    report = consensus_table(matrix)
    raw = {h: report.row_for(category_of(h)).mean for h in harms}
    total = sum(raw.values())
    if total <= 0.0 or math.isnan(total):
        raise ValueError("consensus weights are degenerate (category means sum to zero)")
    return {h: v / total for h, v in raw.items()}
