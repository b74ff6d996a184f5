"""Dotted harm codes and victim entity codes.

A harm code names one node of the harm hierarchy:

    <domain> "." <category> "." <subclass> ("." <instance>)*

* domain is ``A`` (harms to non-human systems) or ``H`` (harms to people),
* category is a letter+digit token whose letter is fixed by the domain
  (``E`` under ``A``, ``H`` under ``H``) with digit 1-9,
* subclass is a two-digit ordinal, ``00`` meaning the category node itself,
* instance segments are further two-digit ordinals used for incident-level
  extension.

The two domain roots are written as the bare letters ``A`` / ``H``; they are
never produced by :func:`parse_harm_code`, only by :meth:`HarmCode.root` and
by registry files.

Entity codes are flat: group ``E1``-``E7`` plus a variant letter ``a``-``f``
or ``x`` (the "other" bucket). Which combinations exist is data owned by the
registry; this module only enforces the grammar.
"""

from __future__ import annotations

import re
from collections.abc import Set as AbstractSet
from dataclasses import dataclass, field

DOMAINS = ("A", "H")

# Category letter is determined by the domain.
_CATEGORY_LETTER = {"A": "E", "H": "H"}

_CATEGORY_RE = re.compile(r"^[A-Z][1-9]$")
_ORDINAL_RE = re.compile(r"^[0-9]{2}$")
_ENTITY_RE = re.compile(r"^(E[1-9])([a-z])$")

ENTITY_GROUPS = ("E1", "E2", "E3", "E4", "E5", "E6", "E7")
ENTITY_VARIANTS = "abcdefx"


class CodeError(ValueError):
    """Malformed code text. ``offset`` is the byte offset of the bad segment."""

    def __init__(self, message: str, text: str, offset: int = 0):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


@dataclass(frozen=True)
class HarmCode:
    """One node address in the harm hierarchy.

    ``category`` and ``subclass`` are ``None`` only for the two domain
    roots. Codes sort by their canonical dotted text.
    """

    domain: str
    category: str | None = None
    subclass: str | None = None
    instance_path: tuple[str, ...] = field(default=())

    def __lt__(self, other: "HarmCode") -> bool:
        if not isinstance(other, HarmCode):
            return NotImplemented
        return str(self) < str(other)

    @classmethod
    def root(cls, domain: str) -> "HarmCode":
        if domain not in DOMAINS:
            raise CodeError("unknown domain letter", domain, 0)
        return cls(domain)

    @property
    def is_root(self) -> bool:
        return self.category is None

    @property
    def is_category(self) -> bool:
        return self.subclass == "00" and not self.instance_path and not self.is_root

    @property
    def depth(self) -> int:
        """Levels below the domain root (category node = 1)."""
        if self.is_root:
            return 0
        base = 1 if self.subclass == "00" else 2
        return base + len(self.instance_path)

    def category_node(self) -> "HarmCode":
        """The ``XX.YY.00`` category ancestor (or self for a category/root)."""
        if self.is_root:
            raise ValueError(f"domain root {self} has no category")
        return HarmCode(self.domain, self.category, "00")

    def parent(self) -> "HarmCode | None":
        """Structural parent; None for a domain root."""
        if self.is_root:
            return None
        if self.instance_path:
            return HarmCode(self.domain, self.category, self.subclass, self.instance_path[:-1])
        if self.subclass != "00":
            return self.category_node()
        return HarmCode.root(self.domain)

    def __str__(self) -> str:
        if self.is_root:
            return self.domain
        parts = [self.domain, self.category, self.subclass, *self.instance_path]
        return ".".join(parts)


def parse_harm_code(text: str, allow_root: bool = False) -> HarmCode:
    """Parse dotted harm code text into a :class:`HarmCode`.

    ``allow_root`` additionally accepts the bare domain letters used for
    root records in registry files; the public grammar requires at least
    domain, category, and subclass.
    """
    if not text:
        raise CodeError("empty code", text, 0)
    segments = text.split(".")
    offsets = []
    pos = 0
    for seg in segments:
        offsets.append(pos)
        pos += len(seg) + 1

    domain = segments[0]
    if domain not in DOMAINS:
        raise CodeError("unknown domain letter", text, offsets[0])
    if len(segments) == 1:
        if allow_root:
            return HarmCode.root(domain)
        raise CodeError("wrong segment count: expected domain.category.subclass", text, 0)
    if len(segments) == 2:
        raise CodeError("wrong segment count: expected domain.category.subclass", text, 0)

    category = segments[1]
    if not _CATEGORY_RE.match(category):
        raise CodeError("malformed category segment", text, offsets[1])
    if category[0] != _CATEGORY_LETTER[domain]:
        raise CodeError(
            f"category letter {category[0]!r} not valid under domain {domain!r}",
            text,
            offsets[1],
        )

    subclass = segments[2]
    if not _ORDINAL_RE.match(subclass):
        raise CodeError("malformed subclass segment: expected two digits", text, offsets[2])

    instance_path = []
    for seg, off in zip(segments[3:], offsets[3:]):
        if not _ORDINAL_RE.match(seg):
            raise CodeError("malformed instance segment: expected two digits", text, off)
        instance_path.append(seg)

    return HarmCode(domain, category, subclass, tuple(instance_path))


def format_harm_code(code: HarmCode) -> str:
    """Canonical dotted text; inverse of :func:`parse_harm_code`."""
    return str(code)


@dataclass(frozen=True, order=True)
class EntityCode:
    """Victim entity code: group ``E1``-``E7`` plus variant letter."""

    group: str
    variant: str

    def __str__(self) -> str:
        return f"{self.group}{self.variant}"


def parse_entity_code(text: str, known: AbstractSet[EntityCode] | None = None) -> EntityCode:
    """Parse entity code text, optionally validating against a known set.

    Grammar errors distinguish an unknown group (``E9z``) from a malformed
    variant letter; when ``known`` is given, grammar-valid codes outside the
    set are rejected as unknown variants.
    """
    if not text:
        raise CodeError("empty entity code", text, 0)
    m = _ENTITY_RE.match(text)
    if not m:
        raise CodeError("malformed entity code: expected E<digit><letter>", text, 0)
    group, variant = m.group(1), m.group(2)
    if group not in ENTITY_GROUPS:
        raise CodeError(f"unknown entity group {group!r}", text, 0)
    if variant not in ENTITY_VARIANTS:
        raise CodeError(f"malformed variant letter {variant!r}", text, 2)
    code = EntityCode(group, variant)
    if known is not None and code not in known:
        raise CodeError(f"unknown entity variant {text!r}", text, 2)
    return code
