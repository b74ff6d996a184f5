"""Loader validation: diagnostics, all-or-nothing, default resolution."""

from __future__ import annotations

import json
import shutil

import pytest

from harmlens import (
    LoadError,
    load_instances,
    load_mappings,
    load_matrix,
    load_profile,
    load_registry,
)
from harmlens.loaders import DATA_DIR_ENV, default_data_path


def write_json(path, doc):
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return path


@pytest.fixture()
def registry_doc(data_dir):
    return json.loads((data_dir / "registry.json").read_text(encoding="utf-8"))


@pytest.fixture()
def matrix_doc(data_dir):
    return json.loads((data_dir / "matrix.json").read_text(encoding="utf-8"))


def test_shipped_registry_loads(registry):
    assert len(registry.categories) == 11
    assert registry.stable
    assert len(registry.entities) == 27


def test_registry_missing_parent_reports_record_index(tmp_path, registry_doc):
    registry_doc["nodes"] = [n for n in registry_doc["nodes"] if n["code"] != "H.H5.00"]
    path = write_json(tmp_path / "broken.json", registry_doc)
    with pytest.raises(LoadError) as err:
        load_registry(path)
    assert any("H.H5" in d.message for d in err.value.diagnostics)
    assert all(d.severity == "error" for d in err.value.diagnostics)


def test_registry_bad_code_reports_index(tmp_path, registry_doc):
    registry_doc["nodes"][3]["code"] = "A.Q1.00"
    path = write_json(tmp_path / "broken.json", registry_doc)
    with pytest.raises(LoadError) as err:
        load_registry(path)
    assert err.value.diagnostics[0].index == 3


def test_registry_duplicate_node(tmp_path, registry_doc):
    registry_doc["nodes"].append(registry_doc["nodes"][-1])
    path = write_json(tmp_path / "broken.json", registry_doc)
    with pytest.raises(LoadError, match="twice"):
        load_registry(path)


def test_stable_registry_requires_eleven_categories(tmp_path, registry_doc):
    registry_doc["nodes"] = [
        n for n in registry_doc["nodes"] if n["code"] not in ("H.H6.00", "H.H6.04")
    ]
    path = write_json(tmp_path / "short.json", registry_doc)
    with pytest.raises(LoadError, match="exactly 11"):
        load_registry(path)
    registry_doc["stable"] = False
    path = write_json(tmp_path / "short_unstable.json", registry_doc)
    assert len(load_registry(path).categories) == 10


def test_registry_wrong_declared_parent(tmp_path, registry_doc):
    for node in registry_doc["nodes"]:
        if node["code"] == "H.H5.04":
            node["parent"] = "H.H2.00"
    path = write_json(tmp_path / "broken.json", registry_doc)
    with pytest.raises(LoadError, match="expected"):
        load_registry(path)


def test_matrix_missing_cell_is_totality_error(tmp_path, matrix_doc):
    del matrix_doc["considerations"]["H.H4.00"]["T10"]
    path = write_json(tmp_path / "broken.json", matrix_doc)
    with pytest.raises(LoadError, match="missing cell"):
        load_matrix(path)


def test_matrix_missing_section(tmp_path, matrix_doc):
    del matrix_doc["durance"]
    path = write_json(tmp_path / "broken.json", matrix_doc)
    with pytest.raises(LoadError, match="missing section"):
        load_matrix(path)


def test_matrix_unknown_code_letter(tmp_path, matrix_doc):
    matrix_doc["considerations"]["A.E1.00"]["T1"] = "Z"
    path = write_json(tmp_path / "broken.json", matrix_doc)
    with pytest.raises(LoadError, match="unknown value"):
        load_matrix(path)


def test_matrix_rank_must_be_permutation(tmp_path, matrix_doc):
    matrix_doc["irr_rank"]["A.E1.00"] = 11
    path = write_json(tmp_path / "broken.json", matrix_doc)
    with pytest.raises(LoadError, match="permutation"):
        load_matrix(path)


def test_matrix_factor_overrides(tmp_path, matrix_doc):
    matrix_doc["irr_alpha"] = {"C": 2.0}
    matrix_doc["dur_beta"] = {"High": 0.8}
    path = write_json(tmp_path / "custom.json", matrix_doc)
    loaded = load_matrix(path)
    from harmlens import DuranceWeight, ImportanceCode

    assert loaded.irr_alpha[ImportanceCode.CORE] == 2.0
    assert loaded.irr_alpha[ImportanceCode.MINOR] == 0.2  # untouched default
    assert loaded.dur_beta[DuranceWeight.HIGH] == 0.8


def test_profile_range_diagnostic(tmp_path, registry):
    path = write_json(
        tmp_path / "p.json",
        {"harms": ["H.H1.00"], "victims": [], "irreversibility": 1.7},
    )
    with pytest.raises(LoadError, match="outside"):
        load_profile(path, registry)


def test_profile_unregistered_harm(tmp_path, registry):
    path = write_json(tmp_path / "p.json", {"harms": ["H.H9.00"]})
    with pytest.raises(LoadError, match="not registered"):
        load_profile(path, registry)


def test_profile_unknown_victim(tmp_path, registry):
    path = write_json(tmp_path / "p.json", {"harms": ["H.H1.00"], "victims": ["E1c"]})
    with pytest.raises(LoadError, match="unknown entity variant"):
        load_profile(path, registry)


def test_profile_defaults(tmp_path, registry):
    path = write_json(tmp_path / "p.json", {"harms": ["H.H1.00"]})
    profile = load_profile(path, registry)
    assert profile.irreversibility == 0.0
    assert profile.duration is None
    assert profile.victims == ()


def test_mapping_duplicate_pair(tmp_path, registry):
    path = write_json(
        tmp_path / "m.json",
        {
            "domain_name": "t",
            "entries": [
                {
                    "domain_harm": "h",
                    "canonical": [
                        {"code": "A.E1.00", "strength": "Direct"},
                        {"code": "A.E1.00", "strength": "Weak"},
                    ],
                }
            ],
        },
    )
    with pytest.raises(LoadError, match="duplicate code"):
        load_mappings(path, registry)


def test_mapping_bad_strength(tmp_path, registry):
    path = write_json(
        tmp_path / "m.json",
        {
            "domain_name": "t",
            "entries": [
                {"domain_harm": "h", "canonical": [{"code": "A.E1.00", "strength": "Strong"}]}
            ],
        },
    )
    with pytest.raises(LoadError) as err:
        load_mappings(path, registry)
    assert err.value.diagnostics[0].index == 0


def test_instances_duplicate_id(tmp_path, registry):
    path = write_json(
        tmp_path / "i.json",
        {
            "instances": [
                {"id": "X", "codes": ["A.E1.00"]},
                {"id": "X", "codes": ["A.E2.00"]},
            ]
        },
    )
    with pytest.raises(LoadError, match="duplicate instance id"):
        load_instances(path, registry)


def test_instances_unregistered_code_reports_index(tmp_path, registry):
    path = write_json(
        tmp_path / "i.json",
        {
            "instances": [
                {"id": "A", "codes": ["A.E1.00"]},
                {"id": "B", "codes": ["H.H9.00"]},
            ]
        },
    )
    with pytest.raises(LoadError) as err:
        load_instances(path, registry)
    assert err.value.diagnostics[0].index == 1


def test_json_decode_error_propagates(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(json.JSONDecodeError):
        load_registry(path)


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        load_registry(tmp_path / "nope.json")


def test_data_dir_env_override(tmp_path, data_dir, monkeypatch):
    shutil.copy(data_dir / "registry.json", tmp_path / "registry.json")
    monkeypatch.setenv(DATA_DIR_ENV, str(tmp_path))
    assert default_data_path("registry.json") == tmp_path / "registry.json"
    assert load_registry(default_data_path("registry.json")).version == 1
    monkeypatch.delenv(DATA_DIR_ENV)
    assert default_data_path("registry.json").name == "registry.json"
    assert str(default_data_path("registry.json")) != str(tmp_path / "registry.json")
