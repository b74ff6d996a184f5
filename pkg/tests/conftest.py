"""Shared fixtures: the shipped datasets, loaded once per session."""

from __future__ import annotations

from pathlib import Path

import pytest

from harmlens import (
    load_instances,
    load_mappings,
    load_matrix,
    load_profile,
    load_registry,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "harmlens" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def registry():
    return load_registry(DATA_DIR / "registry.json")


@pytest.fixture(scope="session")
def matrix():
    return load_matrix(DATA_DIR / "matrix.json")


@pytest.fixture(scope="session")
def education_mapping(registry):
    return load_mappings(DATA_DIR / "education_mapping.json", registry)


@pytest.fixture(scope="session")
def corpus(registry):
    return load_instances(DATA_DIR / "orthogonality_corpus.json", registry)


@pytest.fixture(scope="session")
def education_profile(registry):
    return load_profile(DATA_DIR / "education_profile.json", registry)
