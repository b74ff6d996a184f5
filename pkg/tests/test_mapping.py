"""Forward/reverse mapping queries and coverage reporting."""

from __future__ import annotations

import pytest

from harmlens import (
    DomainMapping,
    MappingEntry,
    MappingStrength,
    map_forward,
    map_reverse,
    mapping_asymmetry_check,
    parse_harm_code,
)
from harmlens.mapping import MappingError
from harmlens.registry import UnknownCodeError

AGENCY_HARM = "loss of student agency due to automated decision systems"


def entry(domain_harm, *pairs):
    return MappingEntry(
        domain_harm=domain_harm,
        canonical=tuple((parse_harm_code(c), MappingStrength(s)) for c, s in pairs),
    )


def test_forward_education_fixture(education_mapping):
    result = map_forward(education_mapping, AGENCY_HARM)
    assert [(str(c), s.value) for c, s in result] == [
        ("H.H5.04", "Direct"),
        ("H.H2.03", "Conditional"),
        ("H.H6.04", "Conditional"),
    ]


def test_forward_sorts_by_strength_then_code():
    mapping = DomainMapping(
        domain_name="t",
        entries=(
            entry(
                "h",
                ("H.H6.04", "Conditional"),
                ("H.H1.00", "Latent"),
                ("H.H2.03", "Conditional"),
                ("A.E1.00", "Direct"),
            ),
        ),
    )
    result = map_forward(mapping, "h")
    assert [str(c) for c, _ in result] == ["A.E1.00", "H.H2.03", "H.H6.04", "H.H1.00"]


def test_forward_singleton():
    mapping = DomainMapping(domain_name="t", entries=(entry("only", ("A.E4.00", "Direct")),))
    assert len(map_forward(mapping, "only")) == 1


def test_forward_unknown_harm(education_mapping):
    with pytest.raises(KeyError, match="unknown domain harm"):
        map_forward(education_mapping, "no such harm")


def test_reverse_education_fixture(education_mapping, registry):
    report = map_reverse(education_mapping, registry)
    latent_codes = [str(c) for c, _ in report.latent_suggestions]
    assert latent_codes == ["H.H4.02", "H.H5.02"]
    assert {str(c) for c in report.covered} == {"H.H2.00", "H.H4.00", "H.H5.00", "H.H6.00"}
    assert len(report.covered) + len(report.uncovered) == 11
    for _, rationale in report.latent_suggestions:
        assert rationale


def test_reverse_full_coverage(registry):
    entries = tuple(
        entry(f"harm {i}", (str(cat), "Direct")) for i, cat in enumerate(registry.categories)
    )
    report = map_reverse(DomainMapping(domain_name="t", entries=entries), registry)
    assert report.uncovered == ()
    assert len(report.covered) == 11


def test_reverse_empty_mapping(registry):
    report = map_reverse(DomainMapping(domain_name="t", entries=()), registry)
    assert report.covered == ()
    assert len(report.uncovered) == 11
    assert report.latent_suggestions == ()


def test_reverse_rejects_unregistered_codes(registry):
    mapping = DomainMapping(domain_name="t", entries=(entry("h", ("H.H9.00", "Direct")),))
    with pytest.raises(UnknownCodeError):
        map_reverse(mapping, registry)


def test_forward_reverse_consistency(education_mapping, registry):
    """Everything the forward view returns lands in a covered category."""
    report = map_reverse(education_mapping, registry)
    covered = set(report.covered)
    for e in education_mapping.entries:
        for code, _ in map_forward(education_mapping, e.domain_harm):
            assert code.category_node() in covered
            assert code.category_node() not in set(report.uncovered)


def test_histogram_education_fixture(education_mapping):
    report = mapping_asymmetry_check(education_mapping)
    assert report.to_dict()["totals"] == {
        "Direct": 1,
        "Conditional": 2,
        "Weak": 0,
        "Latent": 2,
    }


def test_histogram_empty_mapping():
    report = mapping_asymmetry_check(DomainMapping(domain_name="t", entries=()))
    assert report.to_dict()["totals"] == {"Direct": 0, "Conditional": 0, "Weak": 0, "Latent": 0}


def test_duplicate_pair_is_rejected():
    mapping = DomainMapping(
        domain_name="t",
        entries=(entry("h", ("A.E1.00", "Direct"), ("A.E1.00", "Latent")),),
    )
    with pytest.raises(MappingError, match="duplicate code"):
        mapping_asymmetry_check(mapping)


def test_duplicate_domain_harm_is_rejected():
    mapping = DomainMapping(
        domain_name="t",
        entries=(entry("h", ("A.E1.00", "Direct")), entry("h", ("A.E2.00", "Weak"))),
    )
    with pytest.raises(MappingError, match="listed twice"):
        mapping.validate()


def test_strength_order_is_total():
    order = sorted(MappingStrength)
    assert order == [
        MappingStrength.LATENT,
        MappingStrength.WEAK,
        MappingStrength.CONDITIONAL,
        MappingStrength.DIRECT,
    ]
    assert MappingStrength.DIRECT > MappingStrength.CONDITIONAL > MappingStrength.WEAK > MappingStrength.LATENT
