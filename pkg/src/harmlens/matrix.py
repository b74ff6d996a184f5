"""Normative lookup tables keyed by harm category and ethical theory.

Two letter alphabets live here and must never be confused: consideration
codes (D/I/C/N, how directly a theory treats a harm category as unethical)
and irreversibility-importance codes (C/X/M/I, how much weight a theory puts
on whether the harm can be undone). They are separate enum types so a
``C`` from one table can never compare equal to a ``C`` from the other.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

from .codes import EntityCode, HarmCode


class MatrixDataError(ValueError):
    """Matrix data violates totality or structural rules."""


class Theory(Enum):
    """The eleven-theory ensemble, in fixed column order T1..T11."""

    UTILITARIANISM = "T1"
    DEONTOLOGY = "T2"
    VIRTUE_ETHICS = "T3"
    ETHICS_OF_CARE = "T4"
    RIGHTS_BASED = "T5"
    SOCIAL_CONTRACT = "T6"
    RAWLSIAN_JUSTICE = "T7"
    NATURAL_LAW = "T8"
    ENVIRONMENTAL = "T9"
    PRAGMATISM = "T10"
    EXISTENTIALIST = "T11"

    @property
    def ordinal(self) -> int:
        return int(self.value[1:])

    @property
    def label(self) -> str:
        return _THEORY_LABELS[self]


_THEORY_LABELS = {
    Theory.UTILITARIANISM: "Utilitarianism",
    Theory.DEONTOLOGY: "Deontology",
    Theory.VIRTUE_ETHICS: "Virtue Ethics",
    Theory.ETHICS_OF_CARE: "Ethics of Care",
    Theory.RIGHTS_BASED: "Rights-Based Ethics",
    Theory.SOCIAL_CONTRACT: "Social Contract",
    Theory.RAWLSIAN_JUSTICE: "Rawlsian Justice",
    Theory.NATURAL_LAW: "Natural Law",
    Theory.ENVIRONMENTAL: "Environmental Ethics",
    Theory.PRAGMATISM: "Pragmatism",
    Theory.EXISTENTIALIST: "Existentialist Ethics",
}

THEORIES: tuple[Theory, ...] = tuple(Theory)


class ConsiderationCode(Enum):
    """How directly a theory treats a harm category as unethical."""

    DIRECT = "D"
    INDIRECT = "I"
    CONDITIONAL = "C"
    NEUTRAL = "N"


LIKERT_SCALE = {
    ConsiderationCode.DIRECT: 3,
    ConsiderationCode.INDIRECT: 2,
    ConsiderationCode.CONDITIONAL: 1,
    ConsiderationCode.NEUTRAL: 0,
}


def likert(code: ConsiderationCode) -> int:
    """Numeric consideration value: D=3, I=2, C=1, N=0."""
    return LIKERT_SCALE[code]


class ImportanceCode(Enum):
    """Weight a theory places on irreversibility for a harm category."""

    CORE = "C"
    CONTEXTUAL = "X"
    MINOR = "M"
    IRRELEVANT = "I"


class DuranceClass(Enum):
    """How long a harm category's effects persist, on a 1 (short) to
    3 (long) scale. The score is the midpoint of the class's range."""

    LONG_TERM = "Long-Term"
    MEDIUM_TO_LONG = "Medium-to-Long"
    SHORT_TO_LONG = "Short-to-Long"
    SHORT_TO_MEDIUM = "Short-to-Medium"

    @property
    def score(self) -> float:
        return _DURANCE_SCORES[self]


_DURANCE_SCORES = {
    DuranceClass.LONG_TERM: 3.0,
    DuranceClass.MEDIUM_TO_LONG: 2.5,
    DuranceClass.SHORT_TO_LONG: 2.0,
    DuranceClass.SHORT_TO_MEDIUM: 1.5,
}


class DuranceWeight(Enum):
    """How strongly a theory cares about harm duration."""

    HIGH = "High"
    MODERATE = "Moderate"
    LOW = "Low"


# Default factor constants used by the severity engine. The four importance
# levels and three duration-weight levels are ordered by the tables; the
# numeric spacing is this project's choice and can be overridden per matrix
# file.
DEFAULT_IRR_ALPHA: Mapping[ImportanceCode, float] = {
    ImportanceCode.CORE: 1.0,
    ImportanceCode.CONTEXTUAL: 0.5,
    ImportanceCode.MINOR: 0.2,
    ImportanceCode.IRRELEVANT: 0.0,
}

DEFAULT_DUR_BETA: Mapping[DuranceWeight, float] = {
    DuranceWeight.HIGH: 1.0,
    DuranceWeight.MODERATE: 0.5,
    DuranceWeight.LOW: 0.2,
}


@dataclass(frozen=True)
class TableNotes:
    """Free-text row notes carried through from the source tables, stored
    as printed (the context column is known to be row-shifted; it is not
    interpreted)."""

    reversibility: str = ""
    context: str = ""


@dataclass(frozen=True)
class ConsiderationMatrix:
    """All normative tables, immutable after construction.

    ``categories`` fixes row order for reports; both grids must be total
    over ``categories`` x ``THEORIES``.
    """

    categories: tuple[HarmCode, ...]
    considerations: Mapping[tuple[HarmCode, Theory], ConsiderationCode]
    irr_importance: Mapping[tuple[HarmCode, Theory], ImportanceCode]
    irr_rank: Mapping[HarmCode, int]
    durance: Mapping[HarmCode, DuranceClass]
    theory_durance_weight: Mapping[Theory, DuranceWeight]
    victim_priorities: Mapping[Theory, tuple[EntityCode, ...]]
    irr_alpha: Mapping[ImportanceCode, float] = field(default_factory=lambda: dict(DEFAULT_IRR_ALPHA))
    dur_beta: Mapping[DuranceWeight, float] = field(default_factory=lambda: dict(DEFAULT_DUR_BETA))
    notes: Mapping[HarmCode, TableNotes] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        cats = self.categories
        if len(set(cats)) != len(cats):
            raise MatrixDataError("duplicate categories")
        for cat in cats:
            if not cat.is_category:
                raise MatrixDataError(f"{cat} is not a category code")
            for theory in THEORIES:
                if (cat, theory) not in self.considerations:
                    raise MatrixDataError(f"consideration grid missing cell ({cat}, {theory.value})")
                if (cat, theory) not in self.irr_importance:
                    raise MatrixDataError(f"importance grid missing cell ({cat}, {theory.value})")
            if cat not in self.irr_rank:
                raise MatrixDataError(f"irreversibility rank missing for {cat}")
            if cat not in self.durance:
                raise MatrixDataError(f"durance class missing for {cat}")
        ranks = sorted(self.irr_rank[c] for c in cats)
        if ranks != list(range(1, len(cats) + 1)):
            raise MatrixDataError(f"irreversibility ranks {ranks} are not a permutation of 1..{len(cats)}")
        for theory in THEORIES:
            if theory not in self.theory_durance_weight:
                raise MatrixDataError(f"durance weight missing for {theory.value}")
            if theory not in self.victim_priorities:
                raise MatrixDataError(f"victim priorities missing for {theory.value}")
        missing_alpha = [c for c in ImportanceCode if c not in self.irr_alpha]
        if missing_alpha:
            raise MatrixDataError(f"irr_alpha missing levels {missing_alpha}")
        missing_beta = [w for w in DuranceWeight if w not in self.dur_beta]
        if missing_beta:
            raise MatrixDataError(f"dur_beta missing levels {missing_beta}")

    def _require_category(self, category: HarmCode) -> HarmCode:
        if category not in self.irr_rank:
            raise KeyError(f"unknown harm category {category}")
        return category

    def consideration(self, category: HarmCode, theory: Theory) -> ConsiderationCode:
        """Exact consideration grid value for a category/theory pair."""
        self._require_category(category)
        return self.considerations[(category, theory)]

    def irreversibility_importance(self, category: HarmCode, theory: Theory) -> ImportanceCode:
        """Exact irreversibility-importance grid value."""
        self._require_category(category)
        return self.irr_importance[(category, theory)]

    def durance_class(self, category: HarmCode) -> DuranceClass:
        return self.durance[self._require_category(category)]

    def irreversibility_rank(self, category: HarmCode) -> int:
        return self.irr_rank[self._require_category(category)]

    def durance_weight(self, theory: Theory) -> DuranceWeight:
        return self.theory_durance_weight[theory]

    def priorities(self, theory: Theory) -> tuple[EntityCode, ...]:
        """Victim classes the theory prioritizes, in table order."""
        return tuple(self.victim_priorities[theory])

    def consideration_row(self, category: HarmCode) -> list[ConsiderationCode]:
        """Row of consideration codes in theory order T1..T11."""
        self._require_category(category)
        return [self.considerations[(category, t)] for t in THEORIES]

    def with_factors(
        self,
        irr_alpha: Mapping[ImportanceCode, float] | None = None,
        dur_beta: Mapping[DuranceWeight, float] | None = None,
    ) -> "ConsiderationMatrix":
        """Copy of the matrix with replaced severity factor constants."""
        from dataclasses import replace

        return replace(
            self,
            irr_alpha=dict(irr_alpha) if irr_alpha is not None else dict(self.irr_alpha),
            dur_beta=dict(dur_beta) if dur_beta is not None else dict(self.dur_beta),
        )


def theory_by_key(key: str) -> Theory:
    """Resolve ``T1``..``T11`` (or a theory name) to a :class:`Theory`."""
    for theory in THEORIES:
        if key == theory.value or key == theory.label:
            return theory
    raise KeyError(f"unknown theory {key!r}")
