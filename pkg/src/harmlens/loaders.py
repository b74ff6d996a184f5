"""JSON loaders for registries, matrices, profiles, mappings, and corpora.

Loading is all-or-nothing: a file either yields a fully validated value or
a :class:`LoadError` carrying diagnostics that name the file and the index
of the offending record. Defaults resolve to the datasets embedded in the
package; the ``HARMLENS_DATA_DIR`` environment variable redirects every
default to a directory of the same file names.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .codes import CodeError, HarmCode, parse_entity_code, parse_harm_code
from .matrix import (
    DEFAULT_DUR_BETA,
    DEFAULT_IRR_ALPHA,
    ConsiderationCode,
    ConsiderationMatrix,
    DuranceClass,
    DuranceWeight,
    ImportanceCode,
    MatrixDataError,
    TableNotes,
    theory_by_key,
)
from .mapping import DomainMapping, MappingEntry, MappingError, MappingStrength
from .registry import (
    EntityRecord,
    HarmNode,
    Registry,
    RegistryError,
    build_registry,
)
from .severity import IncidentProfile

DATA_DIR_ENV = "HARMLENS_DATA_DIR"

REGISTRY_FILE = "registry.json"
MATRIX_FILE = "matrix.json"
MAPPING_FILE = "education_mapping.json"
INSTANCES_FILE = "orthogonality_corpus.json"
PROFILE_FILE = "education_profile.json"

EXPECTED_CATEGORY_COUNT = 11


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    file: str
    index: int | None
    message: str

    def __str__(self) -> str:
        where = self.file if self.index is None else f"{self.file}[{self.index}]"
        return f"{self.severity}: {where}: {self.message}"


class LoadError(Exception):
    """One or more diagnostics prevented loading; nothing was returned."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics))


def default_data_path(name: str) -> Path:
    """Resolve a shipped dataset, honoring the data-dir override."""
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override) / name
    return Path(str(resources.files("harmlens").joinpath("data", name)))


def _read_json(path: str | Path) -> dict:
    # OSError and json.JSONDecodeError deliberately propagate: the CLI maps
    # them to the I/O-or-parse exit code, distinct from validation failures.
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _fail(file: str, index: int | None, message: str) -> LoadError:
    return LoadError([Diagnostic("error", file, index, message)])


def load_registry(path: str | Path) -> Registry:
    """Load and validate a registry file."""
    doc = _read_json(path)
    fname = str(path)
    if not isinstance(doc, dict):
        raise _fail(fname, None, "top-level value must be an object")

    version = doc.get("version", 1)
    if not isinstance(version, int) or version < 1:
        raise _fail(fname, None, f"version must be a positive integer, got {version!r}")
    stable = doc.get("stable", True)
    if not isinstance(stable, bool):
        raise _fail(fname, None, "stable must be a boolean")

    nodes = []
    for i, rec in enumerate(doc.get("nodes", [])):
        try:
            code = parse_harm_code(rec["code"], allow_root=True)
            parent_text = rec.get("parent")
            parent = None if parent_text is None else parse_harm_code(parent_text, allow_root=True)
            nodes.append(
                HarmNode(
                    code=code,
                    label=rec["label"],
                    description=rec.get("description", ""),
                    parent=parent,
                )
            )
        except (KeyError, TypeError) as exc:
            raise _fail(fname, i, f"node record malformed: {exc}") from exc
        except (CodeError, ValueError, RegistryError) as exc:
            raise _fail(fname, i, str(exc)) from exc

    entities = []
    for i, rec in enumerate(doc.get("entities", [])):
        try:
            code = parse_entity_code(rec["code"])
            entities.append(
                EntityRecord(code=code, label=rec["label"], description=rec.get("description", ""))
            )
        except (KeyError, TypeError) as exc:
            raise _fail(fname, i, f"entity record malformed: {exc}") from exc
        except CodeError as exc:
            raise _fail(fname, i, str(exc)) from exc

    try:
        registry = build_registry(nodes, entities, version=version, stable=stable)
    except RegistryError as exc:
        raise _fail(fname, None, str(exc)) from exc

    if stable and len(registry.categories) != EXPECTED_CATEGORY_COUNT:
        raise _fail(
            fname,
            None,
            f"stable registry must carry exactly {EXPECTED_CATEGORY_COUNT} categories, "
            f"found {len(registry.categories)}",
        )
    return registry


def _parse_category_key(fname: str, key: str) -> HarmCode:
    try:
        code = parse_harm_code(key)
    except CodeError as exc:
        raise _fail(fname, None, f"bad category key {key!r}: {exc}") from exc
    if not code.is_category:
        raise _fail(fname, None, f"category key {key!r} is not a category code")
    return code


def _parse_enum(fname: str, cls, value: str, context: str):
    try:
        return cls(value)
    except ValueError as exc:
        raise _fail(fname, None, f"{context}: unknown value {value!r}") from exc


def load_matrix(path: str | Path) -> ConsiderationMatrix:
    """Load and validate a normative-tables file."""
    doc = _read_json(path)
    fname = str(path)

    required = ("considerations", "irr_importance", "irr_rank", "durance",
                "theory_durance_weight", "victim_priorities")
    for section in required:
        if section not in doc:
            raise _fail(fname, None, f"missing section {section!r}")

    categories = tuple(_parse_category_key(fname, key) for key in doc["considerations"])

    def load_grid(section: str, cls) -> dict:
        grid = {}
        for key, row in doc[section].items():
            cat = _parse_category_key(fname, key)
            for tkey, value in row.items():
                try:
                    theory = theory_by_key(tkey)
                except KeyError as exc:
                    raise _fail(fname, None, f"{section}[{key}]: {exc.args[0]}") from exc
                grid[(cat, theory)] = _parse_enum(fname, cls, value, f"{section}[{key}][{tkey}]")
        return grid

    considerations = load_grid("considerations", ConsiderationCode)
    irr_importance = load_grid("irr_importance", ImportanceCode)

    irr_rank = {}
    for key, rank in doc["irr_rank"].items():
        cat = _parse_category_key(fname, key)
        if not isinstance(rank, int):
            raise _fail(fname, None, f"irr_rank[{key}] must be an integer, got {rank!r}")
        irr_rank[cat] = rank

    durance = {
        _parse_category_key(fname, key): _parse_enum(fname, DuranceClass, value, f"durance[{key}]")
        for key, value in doc["durance"].items()
    }

    weights = {}
    for tkey, value in doc["theory_durance_weight"].items():
        try:
            theory = theory_by_key(tkey)
        except KeyError as exc:
            raise _fail(fname, None, f"theory_durance_weight: {exc.args[0]}") from exc
        weights[theory] = _parse_enum(fname, DuranceWeight, value, f"theory_durance_weight[{tkey}]")

    priorities = {}
    for tkey, codes in doc["victim_priorities"].items():
        try:
            theory = theory_by_key(tkey)
        except KeyError as exc:
            raise _fail(fname, None, f"victim_priorities: {exc.args[0]}") from exc
        try:
            priorities[theory] = tuple(parse_entity_code(c) for c in codes)
        except CodeError as exc:
            raise _fail(fname, None, f"victim_priorities[{tkey}]: {exc}") from exc

    notes = {}
    for key, rec in doc.get("notes", {}).items():
        cat = _parse_category_key(fname, key)
        notes[cat] = TableNotes(
            reversibility=rec.get("reversibility", ""),
            context=rec.get("context", ""),
        )

    irr_alpha = dict(DEFAULT_IRR_ALPHA)
    for key, value in doc.get("irr_alpha", {}).items():
        irr_alpha[_parse_enum(fname, ImportanceCode, key, "irr_alpha")] = float(value)
    dur_beta = dict(DEFAULT_DUR_BETA)
    for key, value in doc.get("dur_beta", {}).items():
        dur_beta[_parse_enum(fname, DuranceWeight, key, "dur_beta")] = float(value)

    try:
        return ConsiderationMatrix(
            categories=categories,
            considerations=considerations,
            irr_importance=irr_importance,
            irr_rank=irr_rank,
            durance=durance,
            theory_durance_weight=weights,
            victim_priorities=priorities,
            irr_alpha=irr_alpha,
            dur_beta=dur_beta,
            notes=notes,
        )
    except MatrixDataError as exc:
        raise _fail(fname, None, str(exc)) from exc


def load_profile(path: str | Path, registry: Registry) -> IncidentProfile:
    """Load an incident profile, validating codes against the registry."""
    doc = _read_json(path)
    fname = str(path)
    try:
        harms = tuple(parse_harm_code(text) for text in doc["harms"])
    except KeyError as exc:
        raise _fail(fname, None, f"missing field {exc.args[0]!r}") from exc
    except CodeError as exc:
        raise _fail(fname, None, str(exc)) from exc
    try:
        victims = tuple(
            parse_entity_code(text, known=registry.entity_codes())
            for text in doc.get("victims", [])
        )
    except CodeError as exc:
        raise _fail(fname, None, str(exc)) from exc

    for i, code in enumerate(harms):
        if code not in registry.nodes:
            raise _fail(fname, i, f"harm code {code} is not registered")

    raw_irr = doc.get("irreversibility", 0.0)
    raw_dur = doc.get("duration")
    if not isinstance(raw_irr, (int, float)) or isinstance(raw_irr, bool):
        raise _fail(fname, None, f"irreversibility must be a number, got {raw_irr!r}")
    if raw_dur is not None and (not isinstance(raw_dur, (int, float)) or isinstance(raw_dur, bool)):
        raise _fail(fname, None, f"duration must be a number or null, got {raw_dur!r}")
    try:
        return IncidentProfile(
            harms=harms,
            victims=victims,
            irreversibility=float(raw_irr),
            duration=None if raw_dur is None else float(raw_dur),
            note=doc.get("note", ""),
        )
    except ValueError as exc:
        raise _fail(fname, None, str(exc)) from exc


def load_mappings(path: str | Path, registry: Registry) -> DomainMapping:
    """Load a domain mapping, validating codes against the registry."""
    doc = _read_json(path)
    fname = str(path)
    entries = []
    for i, rec in enumerate(doc.get("entries", [])):
        try:
            canonical = tuple(
                (parse_harm_code(item["code"]), MappingStrength(item["strength"]))
                for item in rec["canonical"]
            )
            entries.append(MappingEntry(domain_harm=rec["domain_harm"], canonical=canonical))
        except (KeyError, TypeError) as exc:
            raise _fail(fname, i, f"mapping entry malformed: {exc}") from exc
        except (CodeError, ValueError) as exc:
            raise _fail(fname, i, str(exc)) from exc

    mapping = DomainMapping(domain_name=doc.get("domain_name", ""), entries=tuple(entries))
    try:
        mapping.validate(registry)
    except (MappingError, RegistryError) as exc:
        raise _fail(fname, None, str(exc)) from exc
    return mapping


def load_instances(path: str | Path, registry: Registry) -> list[tuple[str, frozenset[HarmCode]]]:
    """Load an instance corpus for the orthogonality audit."""
    doc = _read_json(path)
    fname = str(path)
    instances = []
    seen = set()
    for i, rec in enumerate(doc.get("instances", [])):
        try:
            iid = rec["id"]
            codes = frozenset(parse_harm_code(text) for text in rec["codes"])
        except (KeyError, TypeError) as exc:
            raise _fail(fname, i, f"instance record malformed: {exc}") from exc
        except CodeError as exc:
            raise _fail(fname, i, str(exc)) from exc
        if iid in seen:
            raise _fail(fname, i, f"duplicate instance id {iid!r}")
        seen.add(iid)
        if not codes:
            raise _fail(fname, i, f"instance {iid!r} annotates no codes")
        for code in codes:
            if code not in registry.nodes:
                raise _fail(fname, i, f"instance {iid!r} references unregistered code {code}")
        instances.append((iid, codes))
    return instances
