"""Persistent harm-code registry: hierarchy storage, extension, and auditing.

A :class:`Registry` is an immutable snapshot. Extension returns a new
snapshot with the version bumped; old snapshots stay valid, which keeps
every prior state of the taxonomy inspectable. A registry marked stable
rejects any change at domain or category level; only subclass and instance
nodes may be added or removed.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence, Set as AbstractSet
from dataclasses import dataclass, replace

from .codes import DOMAINS, EntityCode, HarmCode


class RegistryError(Exception):
    """Base for registry contract violations."""


class DuplicateCodeError(RegistryError):
    pass


class MissingParentError(RegistryError):
    pass


class HierarchyError(RegistryError):
    """Declared parent does not match the code's structural parent."""


class StabilityError(RegistryError):
    """Domain/category-level mutation attempted on a stable registry."""


class UnknownCodeError(RegistryError, KeyError):
    pass


@dataclass(frozen=True)
class HarmNode:
    code: HarmCode
    label: str
    description: str = ""
    parent: HarmCode | None = None

    def __post_init__(self):
        if not self.label:
            raise ValueError(f"node {self.code} has an empty label")
        if self.parent is None and not self.code.is_root:
            raise HierarchyError(f"non-root node {self.code} must declare a parent")


@dataclass(frozen=True)
class EntityRecord:
    code: EntityCode
    label: str
    description: str = ""


@dataclass(frozen=True)
class Registry:
    """Immutable code registry; safe for concurrent reads."""

    nodes: Mapping[HarmCode, HarmNode]
    entities: Mapping[EntityCode, EntityRecord]
    version: int = 1
    stable: bool = True

    @classmethod
    def empty(cls, stable: bool = False) -> "Registry":
        roots = {
            HarmCode.root(d): HarmNode(HarmCode.root(d), label=f"{d}-domain root")
            for d in DOMAINS
        }
        return cls(nodes=roots, entities={}, version=1, stable=stable)

    @property
    def categories(self) -> tuple[HarmCode, ...]:
        return tuple(sorted(c for c in self.nodes if c.is_category))

    def get(self, code: HarmCode) -> HarmNode | None:
        return self.nodes.get(code)

    def entity_codes(self) -> frozenset[EntityCode]:
        return frozenset(self.entities)


def lookup(registry: Registry, code: HarmCode) -> HarmNode:
    """Return the node for ``code`` or raise :class:`UnknownCodeError`."""
    node = registry.nodes.get(code)
    if node is None:
        raise UnknownCodeError(f"code {code} is not registered")
    return node


def ancestors(registry: Registry, code: HarmCode) -> list[HarmCode]:
    """Parent chain of a registered code, immediate parent first, root last."""
    node = lookup(registry, code)
    chain: list[HarmCode] = []
    while node.parent is not None:
        chain.append(node.parent)
        node = lookup(registry, node.parent)
    return chain


def category_of(code: HarmCode) -> HarmCode:
    """Category ancestor of any non-root code (identity for categories)."""
    return code.category_node()


def _check_stability(registry: Registry, code: HarmCode) -> None:
    if registry.stable and (code.is_root or code.is_category):
        raise StabilityError(
            f"registry is stable: cannot add or remove domain/category node {code}"
        )


def register_node(registry: Registry, node: HarmNode) -> Registry:
    """Add a node, returning a new registry version. The input is unchanged."""
    _check_stability(registry, node.code)
    if node.code in registry.nodes:
        raise DuplicateCodeError(f"code {node.code} is already registered")
    structural = node.code.parent()
    if node.parent != structural:
        raise HierarchyError(
            f"node {node.code} declares parent {node.parent}, expected {structural}"
        )
    if structural is not None and structural not in registry.nodes:
        raise MissingParentError(f"parent {structural} of {node.code} is not registered")
    nodes = dict(registry.nodes)
    nodes[node.code] = node
    return replace(registry, nodes=nodes, version=registry.version + 1)


def remove_node(registry: Registry, code: HarmCode) -> Registry:
    """Remove a childless node, returning a new registry version."""
    _check_stability(registry, code)
    if code not in registry.nodes:
        raise UnknownCodeError(f"code {code} is not registered")
    children = [c for c, n in registry.nodes.items() if n.parent == code]
    if children:
        raise HierarchyError(f"cannot remove {code}: it still has children {children}")
    nodes = dict(registry.nodes)
    del nodes[code]
    return replace(registry, nodes=nodes, version=registry.version + 1)


# ---------------------------------------------------------------------------
# Orthogonality audit
# ---------------------------------------------------------------------------

Instance = tuple[str, AbstractSet[HarmCode]]


@dataclass(frozen=True)
class AuditReport:
    """Exclusive-witness audit of the category set.

    A category passes when at least one instance annotates codes lying
    entirely inside that category's subtree; such an instance would become
    inexpressible if the category were removed.
    """

    passed: tuple[HarmCode, ...]
    failed: tuple[HarmCode, ...]
    witnesses: Mapping[HarmCode, tuple[str, ...]]
    unmapped_instances: tuple[str, ...]
    no_witnesses: bool = False

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {
            "passed": [str(c) for c in self.passed],
            "failed": [str(c) for c in self.failed],
            "witnesses": {str(c): list(ids) for c, ids in sorted(self.witnesses.items())},
            "unmapped_instances": list(self.unmapped_instances),
            "no_witnesses": self.no_witnesses,
            "ok": self.ok,
        }


def audit_orthogonality(registry: Registry, instances: Sequence[Instance]) -> AuditReport:
    """Check that every category has an exclusive witness instance."""
    categories = registry.categories
    for iid, codes in instances:
        if not codes:
            raise ValueError(f"instance {iid!r} annotates no codes")
        for code in codes:
            if code not in registry.nodes:
                raise UnknownCodeError(f"instance {iid!r} references unregistered code {code}")

    witnesses: dict[HarmCode, list[str]] = {c: [] for c in categories}
    unmapped: list[str] = []
    for iid, codes in instances:
        touched = {category_of(code) for code in codes}
        if len(touched) == 1:
            cat = next(iter(touched))
            if cat in witnesses:
                witnesses[cat].append(iid)
        else:
            unmapped.append(iid)

    passed = tuple(c for c in categories if witnesses[c])
    failed = tuple(c for c in categories if not witnesses[c])
    return AuditReport(
        passed=passed,
        failed=failed,
        witnesses={c: tuple(ids) for c, ids in witnesses.items()},
        unmapped_instances=tuple(unmapped),
        no_witnesses=not instances,
    )


def build_registry(
    nodes: Iterable[HarmNode],
    entities: Iterable[EntityRecord],
    version: int = 1,
    stable: bool = True,
) -> Registry:
    """Assemble a registry from records, enforcing hierarchy invariants.

    Records may arrive in any order; parents are resolved after collection.
    """
    node_map: dict[HarmCode, HarmNode] = {}
    for node in nodes:
        if node.code in node_map:
            raise DuplicateCodeError(f"code {node.code} appears twice")
        node_map[node.code] = node
    for node in node_map.values():
        structural = node.code.parent()
        if node.parent != structural:
            raise HierarchyError(
                f"node {node.code} declares parent {node.parent}, expected {structural}"
            )
        if structural is not None and structural not in node_map:
            raise MissingParentError(f"parent {structural} of {node.code} is missing")

    entity_map: dict[EntityCode, EntityRecord] = {}
    for rec in entities:
        if rec.code in entity_map:
            raise DuplicateCodeError(f"entity {rec.code} appears twice")
        entity_map[rec.code] = rec

    return Registry(nodes=node_map, entities=entity_map, version=version, stable=stable)
