"""Bonds, the (R, S) description of mergings and the merging lattice.

A merging of disjoint quasi-orders P and Q is a pair of cross relations
``R`` (P below Q) and ``S`` (Q below P) whose union with both orders is again
a quasi-order.  Validation goes through the four bond/product conditions;
:func:`brute_force_mergings` checks transitivity directly and serves as the
independent oracle for :func:`enumerate_mergings`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import config
from ._bits import bits_of, compose, is_subset, iter_bits, mask, to_matrix, transpose
from .errors import CapacityError, DimensionError, DomainError, LabelError
from .fca import FormalContext, all_concepts, contraordinal_scale
from .order import Poset, QuasiOrder, disjoint_union, hasse_edges, poset_from_json, poset_to_json

__all__ = [
    "CrossRelation",
    "Merging",
    "MergingLattice",
    "relational_product",
    "is_bond",
    "enumerate_bonds",
    "classify_merging",
    "merged_order",
    "enumerate_mergings",
    "brute_force_mergings",
    "merging_lattice",
    "merging_to_json",
    "merging_from_json",
    "merging_to_dot",
]


@dataclass(frozen=True)
class CrossRelation:
    """A relation between two label lists; ``rows[i]`` is a bitset over ``right``."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != len(self.left):
            raise DimensionError(f"{len(self.left)} left labels but {len(self.rows)} rows")
        if any(r >> len(self.right) for r in self.rows):
            raise DimensionError("row bitset wider than the right label list")

    @classmethod
    def empty(cls, left, right):
        return cls(tuple(left), tuple(right), (0,) * len(left))

    @classmethod
    def full(cls, left, right):
        return cls(tuple(left), tuple(right), (mask(len(right)),) * len(left))

    @classmethod
    def from_pairs(cls, left, right, pairs: Iterable[tuple[str, str]]):
        left, right = tuple(left), tuple(right)
        lpos = {x: i for i, x in enumerate(left)}
        rpos = {y: j for j, y in enumerate(right)}
        rows = [0] * len(left)
        for x, y in pairs:
            if x not in lpos or y not in rpos:
                raise LabelError(f"pair ({x!r}, {y!r}) is not in {left} x {right}")
            rows[lpos[x]] |= 1 << rpos[y]
        return cls(left, right, tuple(rows))

    @cached_property
    def cols(self) -> tuple[int, ...]:
        return transpose(self.rows, len(self.right))

    def __contains__(self, pair) -> bool:
        x, y = pair
        try:
            return bool((self.rows[self.left.index(x)] >> self.right.index(y)) & 1)
        except ValueError:
            return False

    def __len__(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.left[i], self.right[j]) for i, r in enumerate(self.rows) for j in iter_bits(r)]

    def index_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in iter_bits(r)]

    def transpose(self) -> "CrossRelation":
        return CrossRelation(self.right, self.left, self.cols)

    def row_labels(self, x: str) -> frozenset[str]:
        return frozenset(self.right[j] for j in iter_bits(self.rows[self.left.index(x)]))

    def matrix(self) -> list[list[int]]:
        return to_matrix(self.rows, len(self.right))

    def is_subset(self, other: "CrossRelation") -> bool:
        return all(is_subset(a, b) for a, b in zip(self.rows, other.rows))

    def is_disjoint(self, other: "CrossRelation") -> bool:
        return all(a & b == 0 for a, b in zip(self.rows, other.rows))


def relational_product(r1: CrossRelation, r2: CrossRelation) -> CrossRelation:
    """``r1 ; r2 = {(a, c) : a r1 b and b r2 c for some b}``."""
    if r1.right != r2.left:
        raise DimensionError("middle label lists of a relational product must agree")
    return CrossRelation(r1.left, r2.right, compose(r1.rows, r2.rows))


def _bond_rows_ok(rows, cols, ctx1: FormalContext, ctx2: FormalContext) -> bool:
    return all(ctx2.close_attributes_bits(r) == r for r in rows) and all(ctx1.close_objects_bits(c) == c for c in cols)


def is_bond(r: CrossRelation, ctx1: FormalContext, ctx2: FormalContext) -> bool:
    """Rows of ``r`` are intents of ``ctx2`` and columns are extents of ``ctx1``."""
    if r.left != ctx1.objects or r.right != ctx2.attributes:
        raise DimensionError("relation sides must be the objects of ctx1 and the attributes of ctx2")
    return _bond_rows_ok(r.rows, r.cols, ctx1, ctx2)


def enumerate_bonds(ctx1: FormalContext, ctx2: FormalContext) -> list[tuple[int, ...]]:
    """All bonds from ``ctx1`` to ``ctx2`` as row-bitset tuples.

    Rows are chosen one object at a time among the intents of ``ctx2``; a
    partial choice is kept only if every partial column is the trace of some
    extent of ``ctx1`` on the rows chosen so far.
    """
    intents = list(all_concepts(ctx2).intents)
    extents = list(all_concepts(ctx1).extents)
    g = len(ctx1.objects)
    k = len(ctx2.attributes)
    budget = config.max_enumeration()
    if len(intents) ** g > budget:
        raise CapacityError(f"bond search would visit {len(intents)}^{g} row choices; cap is {budget}")
    traces = [{e & mask(i) for e in extents} for i in range(g + 1)]
    out: list[tuple[int, ...]] = []
    rows: list[int] = []

    def columns_ok(depth: int) -> bool:
        allowed = traces[depth]
        for j in range(k):
            col = bits_of(i for i in range(depth) if (rows[i] >> j) & 1)
            if col not in allowed:
                return False
        return True

    def extend(depth: int):
        if depth == g:
            out.append(tuple(rows))
            return
        for b in intents:
            rows.append(b)
            if columns_ok(depth + 1):
                extend(depth + 1)
            rows.pop()

    if columns_ok(0):
        extend(0)
    return sorted(out)


@dataclass(frozen=True)
class Merging:
    """A candidate merging ``(R, S)`` of ``p`` and ``q`` with its validation flags.

    The flags mirror the four merging conditions: ``r_is_bond`` and
    ``s_is_bond`` for the contraordinal-scale bonds, ``rs_in_p`` for
    ``R;S`` inside the order of ``p`` and ``sr_in_q`` for ``S;R`` inside ``q``.
    """

    p: QuasiOrder
    q: QuasiOrder
    r: CrossRelation
    s: CrossRelation
    r_is_bond: bool
    s_is_bond: bool
    rs_in_p: bool
    sr_in_q: bool

    @property
    def is_merging(self) -> bool:
        return self.r_is_bond and self.s_is_bond and self.rs_in_p and self.sr_in_q

    @property
    def proper(self) -> bool:
        """True when R and the inverse of S share no pair (no element identified)."""
        return self.is_merging and self.r.is_disjoint(self.s.transpose())

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.r.rows, self.s.rows)

    def precedes(self, other: "Merging") -> bool:
        """``self`` below ``other``: R grows and S shrinks."""
        return self.r.is_subset(other.r) and other.s.is_subset(self.s)

    @classmethod
    def from_pairs(cls, p, q, r_pairs, s_pairs) -> "Merging":
        return classify_merging(
            p, q, CrossRelation.from_pairs(p.elements, q.elements, r_pairs), CrossRelation.from_pairs(q.elements, p.elements, s_pairs)
        )


def _scales(p: QuasiOrder, q: QuasiOrder) -> tuple[FormalContext, FormalContext]:
    return contraordinal_scale(p), contraordinal_scale(q)


def classify_merging(p: QuasiOrder, q: QuasiOrder, r: CrossRelation, s: CrossRelation) -> Merging:
    if set(p.elements) & set(q.elements):
        raise DomainError("P and Q must be disjoint")
    if r.left != p.elements or r.right != q.elements:
        raise DimensionError("R must relate the elements of P to the elements of Q")
    if s.left != q.elements or s.right != p.elements:
        raise DimensionError("S must relate the elements of Q to the elements of P")
    cp, cq = _scales(p, q)
    return _classify(p, q, r, s, cp, cq)


def _classify(p, q, r, s, cp, cq) -> Merging:
    return Merging(
        p,
        q,
        r,
        s,
        r_is_bond=_bond_rows_ok(r.rows, r.cols, cp, cq),
        s_is_bond=_bond_rows_ok(s.rows, s.cols, cq, cp),
        rs_in_p=all(is_subset(a, b) for a, b in zip(compose(r.rows, s.rows), p.rows)),
        sr_in_q=all(is_subset(a, b) for a, b in zip(compose(s.rows, r.rows), q.rows)),
    )


def _union_rows(p: QuasiOrder, q: QuasiOrder, r_rows, s_rows) -> tuple[int, ...]:
    shift = len(p)
    top = tuple(pr | (rr << shift) for pr, rr in zip(p.rows, r_rows))
    bottom = tuple((qr << shift) | sr for qr, sr in zip(q.rows, s_rows))
    return top + bottom


def merged_order(m: Merging) -> QuasiOrder:
    """The union of both orders with R and S on the disjoint union of the ground sets.

    A Poset comes back exactly when ``m`` is proper and both inputs are posets.
    """
    if not m.is_merging:
        raise DomainError("not a merging: " + ", ".join(_failed_conditions(m)))
    rows = _union_rows(m.p, m.q, m.r.rows, m.s.rows)
    elements = m.p.elements + m.q.elements
    base = disjoint_union(m.p, m.q)  # checks disjointness
    if m.proper and isinstance(base, Poset):
        return Poset(elements, rows)
    return QuasiOrder(elements, rows)


def _failed_conditions(m: Merging) -> list[str]:
    names = [
        ("R is not a bond", m.r_is_bond),
        ("S is not a bond", m.s_is_bond),
        ("R;S not contained in P", m.rs_in_p),
        ("S;R not contained in Q", m.sr_in_q),
    ]
    return [text for text, ok in names if not ok]


def enumerate_mergings(p: QuasiOrder, q: QuasiOrder, proper_only: bool = True) -> list[Merging]:
    """All (proper) mergings of ``p`` and ``q`` sorted by (R bits, S bits)."""
    if set(p.elements) & set(q.elements):
        raise DomainError("P and Q must be disjoint")
    cp, cq = _scales(p, q)
    r_bonds = enumerate_bonds(cp, cq)
    s_bonds = enumerate_bonds(cq, cp)
    budget = config.max_enumeration()
    if len(r_bonds) * len(s_bonds) > budget:
        raise CapacityError(f"{len(r_bonds)} x {len(s_bonds)} bond pairs exceed the cap of {budget}")
    s_cols = [transpose(s, len(p)) for s in s_bonds]
    out = []
    for r in r_bonds:
        for s, sc in zip(s_bonds, s_cols):
            if not all(is_subset(a, b) for a, b in zip(compose(r, s), p.rows)):
                continue
            if not all(is_subset(a, b) for a, b in zip(compose(s, r), q.rows)):
                continue
            if proper_only and any(a & b for a, b in zip(r, sc)):
                continue
            out.append(
                Merging(
                    p,
                    q,
                    CrossRelation(p.elements, q.elements, r),
                    CrossRelation(q.elements, p.elements, s),
                    True,
                    True,
                    True,
                    True,
                )
            )
    return out


def brute_force_mergings(p: QuasiOrder, q: QuasiOrder, proper_only: bool = True) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every ``(R, S)`` whose union with the two orders is transitive.

    Tries all ``2^(2|P||Q|)`` pairs and checks transitivity and (optionally)
    antisymmetry across the cut directly, without using bonds.  Returns the
    row bitsets of R and S in the same order as :func:`enumerate_mergings`.
    """
    m, n = len(p), len(q)
    budget = config.max_enumeration()
    if 4 ** (m * n) > budget:
        raise CapacityError(f"brute force over 4^{m * n} relation pairs exceeds the cap of {budget}")
    r_all = list(itertools.product(range(1 << n), repeat=m))
    s_all = list(itertools.product(range(1 << m), repeat=n))
    out = []
    for r in r_all:
        for s in s_all:
            rows = _union_rows(p, q, r, s)
            if not _transitive(rows):
                continue
            if proper_only and any((s[j] >> i) & 1 for i in range(m) for j in iter_bits(r[i])):
                continue
            out.append((tuple(r), tuple(s)))
    return sorted(out)


def _transitive(rows) -> bool:
    for r in rows:
        for k in iter_bits(r):
            if rows[k] & ~r:
                return False
    return True


@dataclass(frozen=True)
class MergingLattice:
    mergings: tuple[Merging, ...]
    order: tuple[int, ...]  # order[i] bit j  <=>  mergings[i] precedes mergings[j]

    def __len__(self) -> int:
        return len(self.mergings)

    def as_poset(self, prefix: str = "M") -> Poset:
        return Poset(tuple(f"{prefix}{i}" for i in range(len(self))), self.order)

    def index(self, m: Merging) -> int:
        keys = [x.key for x in self.mergings]
        return keys.index(m.key)


def merging_lattice(p: QuasiOrder, q: QuasiOrder, proper_only: bool = True) -> MergingLattice:
    ms = tuple(enumerate_mergings(p, q, proper_only))
    order = tuple(bits_of(j for j, b in enumerate(ms) if a.precedes(b)) for a in ms)
    return MergingLattice(ms, order)


def merging_to_json(m: Merging) -> dict:
    return {
        "p": poset_to_json(m.p),
        "q": poset_to_json(m.q),
        "r": [list(ij) for ij in m.r.index_pairs()],
        "s": [list(ji) for ji in m.s.index_pairs()],
        "proper": m.proper,
    }


def merging_from_json(data: dict | str) -> Merging:
    """Parse merging JSON; ``r`` holds ``[i, j]`` index pairs into (P, Q), ``s`` into (Q, P)."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        p, q = poset_from_json(data["p"]), poset_from_json(data["q"])
        r_pairs, s_pairs = data["r"], data["s"]
    except (KeyError, TypeError):
        raise DomainError('merging JSON needs "p", "q", "r" and "s"') from None
    r = _relation_from_indices(p.elements, q.elements, r_pairs, "r")
    s = _relation_from_indices(q.elements, p.elements, s_pairs, "s")
    m = classify_merging(p, q, r, s)
    if "proper" in data and bool(data["proper"]) != m.proper:
        raise DomainError(f'"proper" is {data["proper"]} but the relations say {m.proper}')
    return m


def _relation_from_indices(left, right, pairs, name) -> CrossRelation:
    rows = [0] * len(left)
    for pair in pairs:
        try:
            i, j = pair
        except (TypeError, ValueError):
            raise DomainError(f"{name}: expected index pairs, got {pair!r}") from None
        if not (0 <= i < len(left) and 0 <= j < len(right)):
            raise DomainError(f"{name}: index pair {pair!r} out of range")
        rows[i] |= 1 << j
    return CrossRelation(left, right, tuple(rows))


def merging_to_dot(m: Merging, name: str = "merging") -> str:
    """Hasse diagram of the merged order; P nodes are green circles, Q nodes black boxes."""
    order = merged_order(m)
    if not isinstance(order, Poset):
        raise DomainError("only proper mergings of posets have a Hasse diagram")
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for x in m.p.elements:
        lines.append(f'  "{x}" [shape=circle, color=green4, fontcolor=green4];')
    for y in m.q.elements:
        lines.append(f'  "{y}" [shape=box, color=black];')
    for x, y in hasse_edges(order):
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
