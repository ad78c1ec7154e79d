"""Finite quasi-orders and posets stored as row bitsets.

``rows[i]`` has bit ``j`` set exactly when element ``i`` is weakly below
element ``j``.  Element labels are strings and matrix indices follow the label
order, so two orders compare equal only when labels *and* relation agree.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import config
from ._bits import bits_of, from_matrix, is_subset, iter_bits, mask, popcount, to_matrix, transpose
from .errors import CapacityError, DimensionError, DomainError, LabelError

__all__ = [
    "QuasiOrder",
    "Poset",
    "OrderReport",
    "LatticeCheckReport",
    "Isomorphism",
    "reflexive_transitive_closure",
    "make_chain",
    "make_antichain",
    "make_boolean_lattice",
    "validate",
    "hasse_edges",
    "lattice_check",
    "lattice_operations",
    "poset_isomorphic",
    "disjoint_union",
    "poset_to_json",
    "poset_from_json",
]


def reflexive_transitive_closure(rows: Sequence[int]) -> tuple[int, ...]:
    """Close a relation under reflexivity and transitivity by repeated squaring."""
    cur = tuple(r | (1 << i) for i, r in enumerate(rows))
    while True:
        nxt = []
        for r in cur:
            acc = r
            for k in iter_bits(r):
                acc |= cur[k]
            nxt.append(acc)
        nxt = tuple(nxt)
        if nxt == cur:
            return cur
        cur = nxt


def _is_reflexive(rows: Sequence[int]) -> bool:
    return all((r >> i) & 1 for i, r in enumerate(rows))


def _is_transitive(rows: Sequence[int]) -> bool:
    for r in rows:
        for k in iter_bits(r):
            if not is_subset(rows[k], r):
                return False
    return True


def _is_antisymmetric(rows: Sequence[int]) -> bool:
    cols = transpose(rows, len(rows))
    return all(r & cols[i] == 1 << i or r & cols[i] == 0 for i, r in enumerate(rows))


@dataclass(frozen=True)
class QuasiOrder:
    """A reflexive, transitive relation on a finite list of labels."""

    elements: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "rows", tuple(self.rows))
        n = len(self.elements)
        if len(self.rows) != n:
            raise DimensionError(f"{n} labels but {len(self.rows)} rows")
        if len(set(self.elements)) != n:
            raise DomainError("element labels must be unique")
        if any(r >> n for r in self.rows):
            raise DimensionError("row bitset wider than the ground set")
        if not _is_reflexive(self.rows):
            raise DomainError("relation is not reflexive")
        if not _is_transitive(self.rows):
            raise DomainError("relation is not transitive")

    @classmethod
    def from_pairs(cls, elements: Iterable[str], pairs: Iterable[tuple[str, str]]):
        """Reflexive-transitive closure of ``pairs`` over ``elements``."""
        elements = tuple(elements)
        pos = {e: i for i, e in enumerate(elements)}
        rows = [0] * len(elements)
        for x, y in pairs:
            try:
                rows[pos[x]] |= 1 << pos[y]
            except KeyError as exc:
                raise LabelError(f"unknown label {exc.args[0]!r}") from None
        return cls(elements, reflexive_transitive_closure(rows))

    @classmethod
    def from_matrix(cls, elements: Iterable[str], matrix: Iterable[Iterable]):
        return cls(tuple(elements), from_matrix(matrix))

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _pos(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """``cols[j]`` is the bitset of elements weakly below ``j``."""
        return transpose(self.rows, len(self.rows))

    def index(self, label: str) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise LabelError(f"unknown label {label!r}") from None

    def le(self, x: str, y: str) -> bool:
        return bool((self.rows[self.index(x)] >> self.index(y)) & 1)

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.le(x, y)

    def up(self, label: str) -> frozenset[str]:
        return self.labels_of(self.rows[self.index(label)])

    def down(self, label: str) -> frozenset[str]:
        return self.labels_of(self.cols[self.index(label)])

    def labels_of(self, bits: int) -> frozenset[str]:
        return frozenset(self.elements[i] for i in iter_bits(bits))

    def bits_of(self, labels: Iterable[str]) -> int:
        return bits_of(self.index(x) for x in labels)

    def matrix(self) -> list[list[int]]:
        return to_matrix(self.rows, len(self))

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.elements[i], self.elements[j]) for i, r in enumerate(self.rows) for j in iter_bits(r)]

    def is_antisymmetric(self) -> bool:
        return _is_antisymmetric(self.rows)

    def is_chain(self) -> bool:
        """Every pair of elements is comparable."""
        full = mask(len(self))
        return all((r | c) == full for r, c in zip(self.rows, self.cols))

    def is_index_chain(self) -> bool:
        """The order is exactly ``i <= j`` on indices (a chain listed bottom-up)."""
        n = len(self)
        return all(r == mask(n) & ~mask(i) for i, r in enumerate(self.rows))

    def is_antichain(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))

    def restrict(self, labels: Iterable[str]):
        labels = tuple(labels)
        idx = [self.index(x) for x in labels]
        rows = tuple(bits_of(b for b, j in enumerate(idx) if (self.rows[i] >> j) & 1) for i in idx)
        return type(self)(labels, rows)

    def relabel(self, mapping: Mapping[str, str]):
        return type(self)(tuple(mapping[e] for e in self.elements), self.rows)

    def dual(self):
        return type(self)(self.elements, self.cols)

    def as_poset(self) -> "Poset":
        return Poset(self.elements, self.rows)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.elements)!r}, pairs={len(self.pairs())})"


class Poset(QuasiOrder):
    """A quasi-order that is also antisymmetric."""

    def __post_init__(self):
        super().__post_init__()
        if not _is_antisymmetric(self.rows):
            raise DomainError("relation is not antisymmetric")


def make_chain(n: int, prefix: str = "c") -> Poset:
    """The n-chain ``c1 < c2 < ... < cn``."""
    if n < 0:
        raise DomainError("chain length must be nonnegative")
    return Poset(tuple(f"{prefix}{i}" for i in range(1, n + 1)), tuple(mask(n) & ~mask(i) for i in range(n)))


def make_antichain(m: int, prefix: str = "a") -> Poset:
    if m < 0:
        raise DomainError("antichain size must be nonnegative")
    return Poset(tuple(f"{prefix}{i}" for i in range(1, m + 1)), tuple(1 << i for i in range(m)))


def subset_label(names: Iterable[str]) -> str:
    return "{" + ",".join(names) + "}"


def make_boolean_lattice(m: int, prefix: str = "a") -> Poset:
    """Subsets of ``{a1..am}`` under inclusion, labelled like ``{a1,a3}``.

    Elements are listed by size, then lexicographically on indices.
    """
    if m < 0:
        raise DomainError("Boolean lattice rank must be nonnegative")
    if m > 10:
        raise CapacityError("Boolean lattices are capped at rank 10")
    subsets = [s for k in range(m + 1) for s in itertools.combinations(range(m), k)]
    masks = [bits_of(s) for s in subsets]
    labels = tuple(subset_label(f"{prefix}{i + 1}" for i in s) for s in subsets)
    rows = tuple(bits_of(j for j, b in enumerate(masks) if is_subset(a, b)) for a in masks)
    return Poset(labels, rows)


def disjoint_union(p: QuasiOrder, q: QuasiOrder) -> QuasiOrder:
    if set(p.elements) & set(q.elements):
        raise DomainError("ground sets are not disjoint")
    shift = len(p)
    rows = p.rows + tuple(r << shift for r in q.rows)
    cls = Poset if isinstance(p, Poset) and isinstance(q, Poset) else QuasiOrder
    return cls(p.elements + q.elements, rows)


@dataclass(frozen=True)
class OrderReport:
    reflexive: bool
    transitive: bool
    antisymmetric: bool
    value: QuasiOrder | None = None

    @property
    def is_quasi_order(self) -> bool:
        return self.reflexive and self.transitive

    @property
    def is_poset(self) -> bool:
        return self.is_quasi_order and self.antisymmetric


def validate(matrix: Sequence[Sequence], labels: Sequence[str] | None = None) -> OrderReport:
    """Classify a square 0/1 matrix; build the typed order when the laws hold."""
    matrix = [list(row) for row in matrix]
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionError("relation matrix is not square")
    if labels is None:
        labels = tuple(f"x{i}" for i in range(1, n + 1))
    if len(labels) != n:
        raise DimensionError(f"{len(labels)} labels for a {n}x{n} matrix")
    rows = from_matrix(matrix)
    refl, trans, anti = _is_reflexive(rows), _is_transitive(rows), _is_antisymmetric(rows)
    value = None
    if refl and trans:
        value = (Poset if anti else QuasiOrder)(tuple(labels), rows)
    return OrderReport(refl, trans, anti, value)


def _strict(p: QuasiOrder) -> list[int]:
    return [r & ~(1 << i) for i, r in enumerate(p.rows)]


def hasse_edges(p: Poset) -> list[tuple[str, str]]:
    """Cover pairs ``(x, y)``: ``x < y`` with nothing strictly between."""
    strict = _strict(p)
    edges = []
    for i, s in enumerate(strict):
        above = 0
        for k in iter_bits(s):
            above |= strict[k]
        for j in iter_bits(s & ~above):
            edges.append((p.elements[i], p.elements[j]))
    return edges


def _least(candidates: int, rows: Sequence[int]) -> int | None:
    for u in iter_bits(candidates):
        if is_subset(candidates, rows[u]):
            return u
    return None


def lattice_operations(p: Poset) -> tuple[list[list[int]], list[list[int]]] | None:
    """Index tables ``(meet, join)``, or None when some pair lacks a bound."""
    n = len(p)
    rows, cols = p.rows, p.cols
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            j = _least(rows[x] & rows[y], rows)
            m = _least(cols[x] & cols[y], cols)
            if j is None or m is None:
                return None
            join[x][y] = join[y][x] = j
            meet[x][y] = meet[y][x] = m
    return meet, join


@dataclass(frozen=True)
class LatticeCheckReport:
    """Outcome of :func:`lattice_check`.

    ``witnesses`` holds triples ``(x, y, z)`` with
    ``x ^ (y v z) != (x ^ y) v (x ^ z)``; ``missing_bounds`` holds pairs
    without a meet or join when the order is not a lattice.
    """

    is_lattice: bool
    is_distributive: bool | None
    witnesses: tuple[tuple[str, str, str], ...] = ()
    missing_bounds: tuple[tuple[str, str], ...] = ()


def lattice_check(p: Poset, max_witnesses: int | None = None) -> LatticeCheckReport:
    n = len(p)
    if n == 0:
        # no pair has a bound problem, but a lattice needs a top and a bottom
        return LatticeCheckReport(False, None)
    ops = lattice_operations(p)
    if ops is None:
        missing = []
        rows, cols = p.rows, p.cols
        for x in range(n):
            for y in range(x + 1, n):
                if _least(rows[x] & rows[y], rows) is None or _least(cols[x] & cols[y], cols) is None:
                    missing.append((p.elements[x], p.elements[y]))
        return LatticeCheckReport(False, None, (), tuple(missing))
    meet, join = ops
    labels = p.elements
    witnesses = []
    for x in range(n):
        mx, jx = meet[x], join[x]
        for y in range(n):
            for z in range(y + 1, n):
                if mx[join[y][z]] != join[mx[y]][mx[z]]:
                    witnesses.append((labels[x], labels[y], labels[z]))
                    if max_witnesses is not None and len(witnesses) >= max_witnesses:
                        return LatticeCheckReport(True, False, tuple(witnesses))
    return LatticeCheckReport(True, not witnesses, tuple(witnesses))


@dataclass(frozen=True)
class Isomorphism:
    """Result of :func:`poset_isomorphic`; truthy when an isomorphism exists."""

    found: bool
    mapping: dict[str, str] | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.found


def _signatures(p: QuasiOrder) -> list[tuple[int, int, int, int]]:
    strict = _strict(p)
    strict_down = [c & ~(1 << i) for i, c in enumerate(p.cols)]
    covers_up = [0] * len(p)
    covers_down = [0] * len(p)
    for i, s in enumerate(strict):
        above = 0
        for k in iter_bits(s):
            above |= strict[k]
        for j in iter_bits(s & ~above):
            covers_up[i] += 1
            covers_down[j] += 1
    return [
        (popcount(strict_down[i]), popcount(strict[i]), covers_down[i], covers_up[i]) for i in range(len(p))
    ]


def poset_isomorphic(p: QuasiOrder, q: QuasiOrder) -> Isomorphism:
    """Search for an order isomorphism ``p -> q`` by backtracking.

    Candidates are pruned by (down-set size, up-set size, lower/upper cover
    counts); elements of ``p`` are placed bottom-up so that every new choice
    is checked against all earlier ones.
    """
    n = len(p)
    if n > config.MAX_ISOMORPHISM or len(q) > config.MAX_ISOMORPHISM:
        raise CapacityError(f"isomorphism search is capped at {config.MAX_ISOMORPHISM} elements")
    if n != len(q):
        return Isomorphism(False)
    sp, sq = _signatures(p), _signatures(q)
    if sorted(sp) != sorted(sq):
        return Isomorphism(False)
    order = sorted(range(n), key=lambda i: (sp[i][0], i))
    candidates = {i: [j for j in range(n) if sq[j] == sp[i]] for i in range(n)}
    image = [-1] * n
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        for k in order:
            fk = image[k]
            if fk < 0:
                continue
            if ((p.rows[i] >> k) & 1) != ((q.rows[j] >> fk) & 1):
                return False
            if ((p.rows[k] >> i) & 1) != ((q.rows[fk] >> j) & 1):
                return False
        return True

    def place(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if not used[j] and consistent(i, j):
                image[i], used[j] = j, True
                if place(pos + 1):
                    return True
                image[i], used[j] = -1, False
        return False

    if not place(0):
        return Isomorphism(False)
    return Isomorphism(True, {p.elements[i]: q.elements[image[i]] for i in range(n)})


def poset_to_json(p: QuasiOrder) -> dict:
    return {"elements": list(p.elements), "le": p.matrix()}


def poset_from_json(data: dict | str) -> QuasiOrder:
    """Inverse of :func:`poset_to_json`; returns a Poset when antisymmetric."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        elements, le = data["elements"], data["le"]
    except (KeyError, TypeError):
        raise DomainError('poset JSON needs "elements" and "le"') from None
    report = validate(le, elements)
    if report.value is None:
        broken = [name for name, ok in (("reflexive", report.reflexive), ("transitive", report.transitive)) if not ok]
        raise DomainError("relation is not " + " and ".join(broken))
    return report.value
