"""Dual bonds and the Galois connections they induce between concept lattices.

A relation ``R`` from the objects of ``K1`` to the objects of ``K2`` is a dual
bond when each row is an extent of ``K2`` and each column an extent of ``K1``.
It induces the pair

    phi(X) = {h : g R h for all g in X},   psi(Y) = {g : g R h for all h in Y},

mapping extents of ``K1`` to extents of ``K2`` and back, and every Galois
connection between the two concept lattices arises this way exactly once.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Mapping

from . import config
from ._bits import bits_of, iter_bits, mask
from .bijections import MonotoneColoring, PlanePartition, coloring_to_merging, enumerate_plane_partitions, pp_to_merging
from .errors import CapacityError, DimensionError, DomainError
from .fca import ConceptLattice, FormalContext, all_concepts, contraordinal_scale, extent_label, object_concept, position_label
from .merging import CrossRelation
from .order import Poset, make_antichain, make_chain

Labeler = Callable[[ConceptLattice, int], str]

__all__ = [
    "DualBond",
    "GaloisConnection",
    "is_dual_bond",
    "galois_from_dual_bond",
    "dual_bond_from_galois",
    "reflect_s_to_t",
    "chain_identification",
    "chain_labeler",
    "galois_chain_rows",
    "galois_boolean_chain_rows",
    "enumerate_galois_chains",
    "enumerate_galois_boolean_chain",
    "is_galois_connection",
    "galois_violations",
    "brute_force_galois",
    "galois_to_json",
    "galois_from_json",
    "render_table",
]


def _extent_rows_ok(rel: CrossRelation, ctx1: FormalContext, ctx2: FormalContext) -> bool:
    return all(ctx2.close_objects_bits(r) == r for r in rel.rows) and all(ctx1.close_objects_bits(c) == c for c in rel.cols)


def is_dual_bond(rel: CrossRelation, ctx1: FormalContext, ctx2: FormalContext) -> bool:
    if rel.left != ctx1.objects or rel.right != ctx2.objects:
        raise DimensionError("a dual bond relates the objects of ctx1 to the objects of ctx2")
    return _extent_rows_ok(rel, ctx1, ctx2)


@dataclass(frozen=True)
class DualBond:
    relation: CrossRelation
    ctx1: FormalContext
    ctx2: FormalContext

    def __post_init__(self):
        if not is_dual_bond(self.relation, self.ctx1, self.ctx2):
            raise DomainError("relation is not a dual bond: some row or column is not an extent")


@dataclass(frozen=True)
class GaloisConnection:
    """Antitone ``phi: left -> right`` and ``psi: right -> left`` with both composites extensive."""

    left: Poset
    right: Poset
    phi: Mapping[str, str]
    psi: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "phi", dict(self.phi))
        object.__setattr__(self, "psi", dict(self.psi))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaloisConnection):
            return NotImplemented
        return (self.left, self.right, self.phi, self.psi) == (other.left, other.right, other.phi, other.psi)

    def __hash__(self) -> int:
        return hash((self.left, self.right, tuple(sorted(self.phi.items())), tuple(sorted(self.psi.items()))))

    @property
    def key(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return tuple(self.phi[x] for x in self.left.elements), tuple(self.psi[y] for y in self.right.elements)


def galois_violations(phi: Mapping[str, str], psi: Mapping[str, str], p: Poset, q: Poset) -> list[str]:
    """Human-readable list of broken laws; empty for a Galois connection."""
    if set(phi) != set(p.elements) or not set(phi.values()) <= set(q.elements):
        raise DomainError("phi must be a total map from the left poset into the right poset")
    if set(psi) != set(q.elements) or not set(psi.values()) <= set(p.elements):
        raise DomainError("psi must be a total map from the right poset into the left poset")
    out = []
    for x, y in itertools.product(p.elements, repeat=2):
        if p.le(x, y) and not q.le(phi[y], phi[x]):
            out.append(f"phi not antitone on {x} <= {y}")
    for x, y in itertools.product(q.elements, repeat=2):
        if q.le(x, y) and not p.le(psi[y], psi[x]):
            out.append(f"psi not antitone on {x} <= {y}")
    for x in p.elements:
        if not p.le(x, psi[phi[x]]):
            out.append(f"{x} not below psi(phi({x}))")
    for y in q.elements:
        if not q.le(y, phi[psi[y]]):
            out.append(f"{y} not below phi(psi({y}))")
    return out


def is_galois_connection(phi: Mapping[str, str], psi: Mapping[str, str], p: Poset, q: Poset) -> bool:
    return not galois_violations(phi, psi, p, q)


def _lattices(ctx1, ctx2, left_label, right_label):
    l1, l2 = all_concepts(ctx1), all_concepts(ctx2)
    names1 = [left_label(l1, i) for i in range(len(l1))]
    names2 = [right_label(l2, i) for i in range(len(l2))]
    return l1, l2, names1, names2


def galois_from_dual_bond(
    bond: DualBond | CrossRelation,
    ctx1: FormalContext | None = None,
    ctx2: FormalContext | None = None,
    left_label: Labeler = extent_label,
    right_label: Labeler = extent_label,
) -> GaloisConnection:
    if isinstance(bond, CrossRelation):
        if ctx1 is None or ctx2 is None:
            raise DomainError("a bare relation needs both contexts")
        bond = DualBond(bond, ctx1, ctx2)
    rel, ctx1, ctx2 = bond.relation, bond.ctx1, bond.ctx2
    l1, l2, names1, names2 = _lattices(ctx1, ctx2, left_label, right_label)
    full2, full1 = mask(len(ctx2.objects)), mask(len(ctx1.objects))
    phi = {}
    for i, ext in enumerate(l1.extents):
        img = full2
        for g in iter_bits(ext):
            img &= rel.rows[g]
        phi[names1[i]] = names2[l2.index_of_extent(img)]
    psi = {}
    for j, ext in enumerate(l2.extents):
        img = full1
        for h in iter_bits(ext):
            img &= rel.cols[h]
        psi[names2[j]] = names1[l1.index_of_extent(img)]
    return GaloisConnection(l1.as_poset(left_label), l2.as_poset(right_label), phi, psi)


def dual_bond_from_galois(
    g: GaloisConnection,
    ctx1: FormalContext,
    ctx2: FormalContext,
    left_label: Labeler = extent_label,
    right_label: Labeler = extent_label,
) -> DualBond:
    """``R = {(x, y) : object concept of x <= psi(object concept of y)}``."""
    l1, l2, names1, names2 = _lattices(ctx1, ctx2, left_label, right_label)
    if tuple(names1) != g.left.elements or tuple(names2) != g.right.elements:
        raise DimensionError("the connection is not labelled like the concept lattices of these contexts")
    bad = galois_violations(g.phi, g.psi, g.left, g.right)
    if bad:
        raise DomainError("not a Galois connection: " + "; ".join(bad[:3]))
    pos1 = {name: i for i, name in enumerate(names1)}
    gamma1 = [l1.index_of(object_concept(ctx1, x)) for x in ctx1.objects]
    gamma2 = [l2.index_of(object_concept(ctx2, y)) for y in ctx2.objects]
    rows = []
    for gi in gamma1:
        rows.append(bits_of(h for h, gh in enumerate(gamma2) if l1.leq(gi, pos1[g.psi[names2[gh]]])))
    return DualBond(CrossRelation(ctx1.objects, ctx2.objects, tuple(rows)), ctx1, ctx2)


def reflect_s_to_t(s: CrossRelation) -> CrossRelation:
    """``b_j T a_i`` iff ``b_j S a_{k-i+1}`` where ``k`` is the length of the ``a`` side."""
    k = len(s.right)
    rows = tuple(bits_of(k - 1 - i for i in iter_bits(r)) for r in s.rows)
    return CrossRelation(s.left, s.right, rows)


def chain_identification(lattice: ConceptLattice, prefix: str) -> dict[int, str]:
    """Name the concepts of a chain-shaped lattice ``prefix1 < prefix2 < ...``.

    Raises when the lattice is not a chain, since then no such naming is an
    order isomorphism.
    """
    n = len(lattice)
    for i in range(n):
        for j in range(n):
            if not (lattice.leq(i, j) or lattice.leq(j, i)):
                raise DomainError("concept lattice is not a chain")
    name = position_label(prefix)
    return {i: name(lattice, i) for i in range(n)}


def chain_labeler(prefix: str) -> Labeler:
    """Labeler for :meth:`ConceptLattice.as_poset` that insists on a chain."""

    def label(lattice: ConceptLattice, i: int) -> str:
        return chain_identification(lattice, prefix)[i]

    return label


def galois_chain_rows(m: int, n: int) -> list[tuple[PlanePartition, DualBond, GaloisConnection]]:
    """Every Galois connection between chains ``a1..am`` and ``b1..bn`` with its source partition.

    Partitions in ``PP(m-1, n-1, 1)`` give relations ``S`` from ``b`` to ``a``
    on chains one shorter; reflecting the ``a`` side and transposing turns
    them into dual bonds between the contraordinal scales, whose concept
    lattices are the chains of length m and n.
    """
    if m < 1 or n < 1:
        raise DomainError("both chains need at least one element")
    pa, pb = make_chain(m - 1, "a"), make_chain(n - 1, "b")
    k1, k2 = contraordinal_scale(pa), contraordinal_scale(pb)
    la, lb = chain_labeler("a"), chain_labeler("b")
    out = []
    for pp in enumerate_plane_partitions(m - 1, n - 1, 1):
        s = pp_to_merging(pp, pa, pb).s
        t = reflect_s_to_t(s)
        bond = DualBond(t.transpose(), k1, k2)
        out.append((pp, bond, galois_from_dual_bond(bond, left_label=la, right_label=lb)))
    return out


def enumerate_galois_chains(m: int, n: int) -> list[GaloisConnection]:
    return [row[2] for row in galois_chain_rows(m, n)]


def galois_boolean_chain_rows(m: int, n: int) -> list[tuple[MonotoneColoring, DualBond, GaloisConnection]]:
    """Galois connections from the Boolean lattice on ``a1..am`` to the chain ``b1..b(n+1)``.

    One per coloring whose first side is all 1: its relation ``S`` from the
    n-chain to the m-antichain, transposed, is a dual bond between the
    contraordinal scales.  Boolean elements are named by extents like ``{a1}``.
    """
    if m < 0 or n < 0:
        raise DomainError("m and n must be nonnegative")
    if m > 10:
        raise CapacityError("Boolean side is capped at 10 atoms")
    if (n + 1) ** m > config.max_enumeration():
        raise CapacityError(f"{(n + 1) ** m} connections exceed the enumeration cap")
    pa, pc = make_antichain(m, "a"), make_chain(n, "c")
    ka, kc = contraordinal_scale(pa), contraordinal_scale(pc)
    lb = chain_labeler("b")
    out = []
    for v2 in itertools.product(range(1, n + 2), repeat=m):
        col = MonotoneColoring(m, n + 1, (1,) * m, v2)
        merging = coloring_to_merging(col, pa, pc)
        assert not any(merging.r.rows)
        bond = DualBond(merging.s.transpose(), ka, kc)
        out.append((col, bond, galois_from_dual_bond(bond, left_label=extent_label, right_label=lb)))
    return out


def enumerate_galois_boolean_chain(m: int, n: int) -> list[GaloisConnection]:
    return [row[2] for row in galois_boolean_chain_rows(m, n)]


def _antitone_maps(p: Poset, q: Poset) -> list[dict[str, str]]:
    out = []
    for image in itertools.product(q.elements, repeat=len(p)):
        f = dict(zip(p.elements, image))
        if all(q.le(f[y], f[x]) for x, y in p.pairs()):
            out.append(f)
    return out


def brute_force_galois(p: Poset, q: Poset) -> list[tuple[dict[str, str], dict[str, str]]]:
    """All ``(phi, psi)`` pairs passing :func:`is_galois_connection`, by exhaustive search.

    Exponential; intended only for posets of a handful of elements.
    """
    if len(q) ** len(p) + len(p) ** len(q) > config.max_enumeration():
        raise CapacityError("map search space exceeds the enumeration cap")
    phis, psis = _antitone_maps(p, q), _antitone_maps(q, p)
    return [(f, g) for f in phis for g in psis if is_galois_connection(f, g, p, q)]


def galois_to_json(g: GaloisConnection) -> dict:
    return {
        "phi": {x: g.phi[x] for x in g.left.elements},
        "psi": {y: g.psi[y] for y in g.right.elements},
    }


def galois_from_json(data: dict | str, left: Poset, right: Poset) -> GaloisConnection:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        phi, psi = dict(data["phi"]), dict(data["psi"])
    except (KeyError, TypeError, ValueError):
        raise DomainError('Galois JSON needs "phi" and "psi" objects') from None
    bad = galois_violations(phi, psi, left, right)
    if bad:
        raise DomainError("not a Galois connection: " + "; ".join(bad[:3]))
    return GaloisConnection(left, right, phi, psi)


def render_table(rows: list[tuple[str, GaloisConnection]]) -> str:
    """One line per connection: source, then psi, then phi, as ``x->y`` pairs."""
    lines = []
    for source, g in rows:
        psi = " ".join(f"{y}->{g.psi[y]}" for y in g.right.elements)
        phi = " ".join(f"{x}->{g.phi[x]}" for x in g.left.elements)
        lines.append(f"{source} | psi: {psi} | phi: {phi}")
    return "\n".join(lines) + ("\n" if lines else "")
