"""Bidirectional mapping between domain-specific harms and canonical codes.

Mappings are authored data: each domain harm lists the canonical codes it
activates, graded by strength. The engine validates and queries; it never
infers strengths from text. The ``Latent`` grade marks codes that are
structurally relevant to the domain without having been observed, which is
what the reverse (coverage) pass surfaces as suggestions.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum

from .codes import HarmCode
from .registry import Registry, UnknownCodeError, category_of, lookup


class MappingError(ValueError):
    """Mapping data violates its structural rules."""


class MappingStrength(Enum):
    """Activation grade, strongest first."""

    DIRECT = "Direct"
    CONDITIONAL = "Conditional"
    WEAK = "Weak"
    LATENT = "Latent"

    @property
    def rank(self) -> int:
        return _STRENGTH_RANK[self]

    def __lt__(self, other: "MappingStrength") -> bool:
        if not isinstance(other, MappingStrength):
            return NotImplemented
        return self.rank < other.rank


_STRENGTH_RANK = {
    MappingStrength.DIRECT: 3,
    MappingStrength.CONDITIONAL: 2,
    MappingStrength.WEAK: 1,
    MappingStrength.LATENT: 0,
}


@dataclass(frozen=True)
class MappingEntry:
    domain_harm: str
    canonical: tuple[tuple[HarmCode, MappingStrength], ...]


@dataclass(frozen=True)
class DomainMapping:
    domain_name: str
    entries: tuple[MappingEntry, ...]

    def entry_for(self, domain_harm: str) -> MappingEntry:
        for entry in self.entries:
            if entry.domain_harm == domain_harm:
                return entry
        raise KeyError(f"unknown domain harm {domain_harm!r}")

    def validate(self, registry: Registry | None = None) -> None:
        """Reject duplicate (domain harm, code) pairs and, when a registry
        is given, any unregistered code."""
        seen_harms = set()
        for entry in self.entries:
            if entry.domain_harm in seen_harms:
                raise MappingError(f"domain harm {entry.domain_harm!r} listed twice")
            seen_harms.add(entry.domain_harm)
            seen_codes = set()
            for code, _strength in entry.canonical:
                if code in seen_codes:
                    raise MappingError(
                        f"duplicate code {code} under domain harm {entry.domain_harm!r}"
                    )
                seen_codes.add(code)
                if registry is not None and code not in registry.nodes:
                    raise UnknownCodeError(
                        f"mapping references unregistered code {code} "
                        f"(domain harm {entry.domain_harm!r})"
                    )


@dataclass(frozen=True)
class CoverageReport:
    """Reverse-mapping view: which categories the domain mapping reaches."""

    covered: tuple[HarmCode, ...]
    uncovered: tuple[HarmCode, ...]
    latent_suggestions: tuple[tuple[HarmCode, str], ...]

    def to_dict(self) -> dict:
        return {
            "covered": [str(c) for c in self.covered],
            "uncovered": [str(c) for c in self.uncovered],
            "latent_suggestions": [
                {"code": str(c), "rationale": r} for c, r in self.latent_suggestions
            ],
        }

    def render_text(self) -> str:
        lines = [
            f"covered categories ({len(self.covered)}): "
            + (", ".join(str(c) for c in self.covered) or "none"),
            f"uncovered categories ({len(self.uncovered)}): "
            + (", ".join(str(c) for c in self.uncovered) or "none"),
            "latent suggestions:",
        ]
        if self.latent_suggestions:
            lines.extend(f"  {code}: {rationale}" for code, rationale in self.latent_suggestions)
        else:
            lines.append("  none")
        return "\n".join(lines)


@dataclass(frozen=True)
class AsymmetryReport:
    """Strength histograms across the mapping, for documentation."""

    totals: Mapping[MappingStrength, int]
    per_code: Mapping[HarmCode, Mapping[MappingStrength, int]]

    def to_dict(self) -> dict:
        return {
            "totals": {s.value: self.totals.get(s, 0) for s in MappingStrength},
            "per_code": {
                str(code): {s.value: counts.get(s, 0) for s in MappingStrength if counts.get(s, 0)}
                for code, counts in sorted(self.per_code.items())
            },
        }


def map_forward(mapping: DomainMapping, domain_harm: str) -> list[tuple[HarmCode, MappingStrength]]:
    """Canonical codes a domain harm activates, strongest first; ties break
    by code order."""
    entry = mapping.entry_for(domain_harm)
    return sorted(entry.canonical, key=lambda pair: (-pair[1].rank, str(pair[0])))


def map_reverse(mapping: DomainMapping, registry: Registry) -> CoverageReport:
    """Coverage of the category set, plus latent-flagged suggestions."""
    mapping.validate(registry)
    categories = registry.categories
    touched: set[HarmCode] = set()
    latents: list[tuple[HarmCode, str]] = []
    seen_latent: set[HarmCode] = set()
    for entry in mapping.entries:
        for code, strength in entry.canonical:
            touched.add(category_of(code))
            if strength is MappingStrength.LATENT and code not in seen_latent:
                seen_latent.add(code)
                label = lookup(registry, code).label
                latents.append(
                    (code, f"{label}; flagged latent under {entry.domain_harm!r}")
                )
    covered = tuple(c for c in categories if c in touched)
    uncovered = tuple(c for c in categories if c not in touched)
    latents.sort(key=lambda pair: str(pair[0]))
    return CoverageReport(covered=covered, uncovered=uncovered, latent_suggestions=tuple(latents))


def mapping_asymmetry_check(mapping: DomainMapping) -> AsymmetryReport:
    """Histogram the mapping's strengths; nothing forces forward and
    reverse views to agree in strength, so this is purely descriptive."""
    mapping.validate()
    totals: Counter = Counter()
    per_code: dict[HarmCode, Counter] = {}
    for entry in mapping.entries:
        for code, strength in entry.canonical:
            totals[strength] += 1
            per_code.setdefault(code, Counter())[strength] += 1
    return AsymmetryReport(totals=dict(totals), per_code={c: dict(v) for c, v in per_code.items()})
