"""Formal contexts, derivation operators and concept lattices.

Object and attribute sets are handled internally as int bitsets over the
label lists; the public functions take and return frozensets of labels.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, TextIO

from . import config
from ._bits import bits_of, from_matrix, is_subset, iter_bits, mask, popcount, to_matrix, transpose
from .errors import CapacityError, DimensionError, DomainError, LabelError
from .order import Poset, QuasiOrder, subset_label

__all__ = [
    "FormalContext",
    "Concept",
    "ConceptLattice",
    "derive_objects",
    "derive_attributes",
    "closure_objects",
    "closure_attributes",
    "is_extent",
    "is_intent",
    "all_concepts",
    "ordinal_scale",
    "contraordinal_scale",
    "dual_context",
    "object_concept",
    "attribute_concept",
    "dm_completion",
    "read_cxt",
    "write_cxt",
    "context_to_json",
    "context_from_json",
]


@dataclass(frozen=True)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]  # rows[g] = bitset of attributes of object g

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != len(self.objects):
            raise DimensionError(f"{len(self.objects)} objects but {len(self.rows)} incidence rows")
        if any(r >> len(self.attributes) for r in self.rows):
            raise DimensionError("incidence row wider than the attribute list")
        if len(set(self.objects)) != len(self.objects):
            raise DomainError("object labels must be unique")
        if len(set(self.attributes)) != len(self.attributes):
            raise DomainError("attribute labels must be unique")

    @classmethod
    def from_matrix(cls, objects, attributes, incidence):
        incidence = [list(r) for r in incidence]
        if any(len(r) != len(attributes) for r in incidence):
            raise DimensionError("incidence row length differs from attribute count")
        return cls(tuple(objects), tuple(attributes), from_matrix(incidence))

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """cols[m] = bitset of objects having attribute m."""
        return transpose(self.rows, len(self.attributes))

    @cached_property
    def _gpos(self):
        return {g: i for i, g in enumerate(self.objects)}

    @cached_property
    def _mpos(self):
        return {m: i for i, m in enumerate(self.attributes)}

    @property
    def all_objects(self) -> int:
        return mask(len(self.objects))

    @property
    def all_attributes(self) -> int:
        return mask(len(self.attributes))

    def incidence(self) -> list[list[int]]:
        return to_matrix(self.rows, len(self.attributes))

    def has(self, g: str, m: str) -> bool:
        gi = self.object_bits([g]).bit_length() - 1
        mi = self.attribute_bits([m]).bit_length() - 1
        return bool((self.rows[gi] >> mi) & 1)

    # bitset primitives

    def intent_bits(self, extent: int) -> int:
        """A' for a set of objects A."""
        out = self.all_attributes
        for g in iter_bits(extent):
            out &= self.rows[g]
        return out

    def extent_bits(self, intent: int) -> int:
        """B' for a set of attributes B."""
        out = self.all_objects
        for m in iter_bits(intent):
            out &= self.cols[m]
        return out

    def close_objects_bits(self, extent: int) -> int:
        return self.extent_bits(self.intent_bits(extent))

    def close_attributes_bits(self, intent: int) -> int:
        return self.intent_bits(self.extent_bits(intent))

    # label conversions

    def object_bits(self, labels: Iterable[str]) -> int:
        try:
            return bits_of(self._gpos[g] for g in labels)
        except KeyError as exc:
            raise LabelError(f"unknown object {exc.args[0]!r}") from None

    def attribute_bits(self, labels: Iterable[str]) -> int:
        try:
            return bits_of(self._mpos[m] for m in labels)
        except KeyError as exc:
            raise LabelError(f"unknown attribute {exc.args[0]!r}") from None

    def object_labels(self, bits: int) -> frozenset[str]:
        return frozenset(self.objects[i] for i in iter_bits(bits))

    def attribute_labels(self, bits: int) -> frozenset[str]:
        return frozenset(self.attributes[i] for i in iter_bits(bits))


def derive_objects(ctx: FormalContext, objects: Iterable[str]) -> frozenset[str]:
    """Attributes shared by every object in ``objects``."""
    return ctx.attribute_labels(ctx.intent_bits(ctx.object_bits(objects)))


def derive_attributes(ctx: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    """Objects having every attribute in ``attributes``."""
    return ctx.object_labels(ctx.extent_bits(ctx.attribute_bits(attributes)))


def closure_objects(ctx: FormalContext, objects: Iterable[str]) -> frozenset[str]:
    return ctx.object_labels(ctx.close_objects_bits(ctx.object_bits(objects)))


def closure_attributes(ctx: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    return ctx.attribute_labels(ctx.close_attributes_bits(ctx.attribute_bits(attributes)))


def is_extent(ctx: FormalContext, objects: Iterable[str]) -> bool:
    a = ctx.object_bits(objects)
    return ctx.close_objects_bits(a) == a


def is_intent(ctx: FormalContext, attributes: Iterable[str]) -> bool:
    b = ctx.attribute_bits(attributes)
    return ctx.close_attributes_bits(b) == b


@dataclass(frozen=True)
class Concept:
    extent: frozenset[str]
    intent: frozenset[str]


def _next_closure(ctx: FormalContext):
    """Yield every intent of ``ctx`` in lectic order (attribute 0 least significant)."""
    k = len(ctx.attributes)
    current = ctx.close_attributes_bits(0)
    yield current
    full = ctx.all_attributes
    while current != full:
        for i in range(k - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                current &= ~bit
                continue
            candidate = ctx.close_attributes_bits(current | bit)
            if (candidate & ~current) & mask(i) == 0:
                current = candidate
                break
        else:  # pragma: no cover - NextClosure always finds a successor before the full set
            raise AssertionError("lectic enumeration stalled")
        yield current


@dataclass(frozen=True)
class ConceptLattice:
    """All concepts of a context, ordered by extent inclusion.

    Concepts are listed by extent size, ties broken lexicographically on object
    indices, so index 0 is the bottom concept and the last index is the top.
    """

    context: FormalContext
    extents: tuple[int, ...]
    intents: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.extents)

    @cached_property
    def concepts(self) -> tuple[Concept, ...]:
        ctx = self.context
        return tuple(Concept(ctx.object_labels(a), ctx.attribute_labels(b)) for a, b in zip(self.extents, self.intents))

    @cached_property
    def order(self) -> tuple[int, ...]:
        """order[i] = bitset of concepts j with extent(i) a subset of extent(j)."""
        return tuple(bits_of(j for j, b in enumerate(self.extents) if is_subset(a, b)) for a in self.extents)

    @cached_property
    def _by_extent(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.extents)}

    def index_of_extent(self, extent_bits: int) -> int:
        try:
            return self._by_extent[extent_bits]
        except KeyError:
            raise DomainError("not an extent of this context") from None

    def index_of(self, concept: Concept) -> int:
        return self.index_of_extent(self.context.object_bits(concept.extent))

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.extents) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool((self.order[i] >> j) & 1)

    def as_poset(self, label: Callable[["ConceptLattice", int], str] | None = None) -> Poset:
        """The lattice as a Poset, each concept named by ``label(lattice, index)``."""
        label = label or extent_label
        return Poset(tuple(label(self, i) for i in range(len(self))), self.order)


def extent_label(lattice: ConceptLattice, i: int) -> str:
    """Name a concept by its extent, e.g. ``{a1,a2}``."""
    ctx = lattice.context
    return subset_label(ctx.objects[g] for g in iter_bits(lattice.extents[i]))


def position_label(prefix: str) -> Callable[[ConceptLattice, int], str]:
    """Name concepts ``prefix1, prefix2, ...`` in lattice index order.

    For a lattice that is a chain this is its bottom-up position.
    """

    def label(lattice: ConceptLattice, i: int) -> str:
        return f"{prefix}{i + 1}"

    return label


def all_concepts(ctx: FormalContext) -> ConceptLattice:
    cap = config.max_context()
    if len(ctx.objects) > cap or len(ctx.attributes) > cap:
        raise CapacityError(f"context is {len(ctx.objects)}x{len(ctx.attributes)}; cap is {cap}")
    intents = list(_next_closure(ctx))
    pairs = sorted(((ctx.extent_bits(b), b) for b in intents), key=lambda ab: (popcount(ab[0]), _index_key(ab[0])))
    return ConceptLattice(ctx, tuple(a for a, _ in pairs), tuple(b for _, b in pairs))


def _index_key(bits: int) -> tuple[int, ...]:
    return tuple(iter_bits(bits))


def ordinal_scale(p: QuasiOrder) -> FormalContext:
    """The context (P, P, <=)."""
    return FormalContext(p.elements, p.elements, p.rows)


def contraordinal_scale(p: QuasiOrder) -> FormalContext:
    """The context (P, P, not >=): ``x I y`` iff ``y <= x`` fails."""
    n = len(p)
    return FormalContext(p.elements, p.elements, tuple(mask(n) & ~c for c in p.cols))


def dual_context(ctx: FormalContext) -> FormalContext:
    return FormalContext(ctx.attributes, ctx.objects, ctx.cols)


def object_concept(ctx: FormalContext, g: str) -> Concept:
    a = ctx.object_bits([g])
    b = ctx.intent_bits(a)
    return Concept(ctx.object_labels(ctx.extent_bits(b)), ctx.attribute_labels(b))


def attribute_concept(ctx: FormalContext, m: str) -> Concept:
    b = ctx.attribute_bits([m])
    a = ctx.extent_bits(b)
    return Concept(ctx.object_labels(a), ctx.attribute_labels(ctx.intent_bits(a)))


def dm_completion(p: Poset) -> ConceptLattice:
    """Dedekind-MacNeille completion, realised as the concepts of (P, P, <=)."""
    return all_concepts(ordinal_scale(p))


# serialisation


def write_cxt(ctx: FormalContext, out: TextIO | None = None) -> str:
    """Burmeister format; returns the text and writes it to ``out`` if given."""
    lines = ["B", "", str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    lines += list(ctx.objects) + list(ctx.attributes)
    lines += ["".join("X" if (r >> j) & 1 else "." for j in range(len(ctx.attributes))) for r in ctx.rows]
    text = "\n".join(lines) + "\n"
    if out is not None:
        out.write(text)
    return text


def read_cxt(source: str | TextIO) -> FormalContext:
    """Parse a Burmeister ``.cxt`` document (text or open file)."""
    text = source if isinstance(source, str) else source.read()
    lines = [ln.rstrip("\r") for ln in io.StringIO(text).read().split("\n")]
    pos = 0

    def skip_blank():
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1

    skip_blank()
    if pos >= len(lines) or lines[pos].strip() != "B":
        raise DomainError("cxt: first line must be 'B'")
    pos += 1
    skip_blank()
    # optional context name before the two counts
    if pos < len(lines) and not lines[pos].strip().isdigit():
        pos += 1
        skip_blank()
    try:
        g = int(lines[pos].strip())
        pos += 1
        skip_blank()
        m = int(lines[pos].strip())
        pos += 1
    except (IndexError, ValueError):
        raise DomainError("cxt: expected object and attribute counts") from None
    skip_blank()
    body = [ln.strip() for ln in lines[pos:] if ln.strip()]
    # with no attributes every incidence row is an empty line
    need = g + m + (g if m else 0)
    if len(body) < need:
        raise DomainError(f"cxt: expected {g} object names, {m} attribute names and {g} rows")
    objects, attributes = body[:g], body[g : g + m]
    table = body[g + m : need] if m else [""] * g
    rows = []
    for k, row in enumerate(table):
        if len(row) != m or set(row) - set("Xx."):
            raise DomainError(f"cxt: malformed incidence row {k + 1}: {row!r}")
        rows.append(bits_of(j for j, ch in enumerate(row) if ch in "Xx"))
    return FormalContext(tuple(objects), tuple(attributes), tuple(rows))


def context_to_json(ctx: FormalContext) -> dict:
    return {"objects": list(ctx.objects), "attributes": list(ctx.attributes), "incidence": ctx.incidence()}


def context_from_json(data: dict | str) -> FormalContext:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return FormalContext.from_matrix(data["objects"], data["attributes"], data["incidence"])
    except (KeyError, TypeError):
        raise DomainError('context JSON needs "objects", "attributes" and "incidence"') from None
