"""Mergings of several chains built from arrangements of plane partitions.

Chains are named ``a1..``, ``b1..``, ``c1..`` and so on.  An arrangement puts a
partition with parts at most 2 on each chosen ordered pair ``(i, j)`` of
chains; cell ``(r, c)`` compares element ``r`` of chain ``i`` with element
``n_j - c`` of chain ``j`` exactly as in the two-chain case.  The union of all
chain orders and cell relations is closed transitively and only then checked
for properness, since nothing guarantees that the construction stays proper.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import config
from ._bits import bits_of, iter_bits
from .bijections import PlanePartition, enumerate_plane_partitions, reversed_column
from .counting import macmahon
from .errors import CapacityError, DimensionError, DomainError
from .order import Poset, QuasiOrder, reflexive_transitive_closure

__all__ = [
    "Arrangement",
    "GeneralizedResult",
    "GeneralizedMergings",
    "default_pairs",
    "cyclic_pairs",
    "chain_labels",
    "arrangement_to_relation",
    "enumerate_generalized",
]

Pair = tuple[int, int]


def chain_labels(sizes: Sequence[int]) -> tuple[tuple[str, ...], ...]:
    if len(sizes) > len(string.ascii_lowercase):
        raise CapacityError("at most 26 chains")
    return tuple(tuple(f"{string.ascii_lowercase[t]}{k + 1}" for k in range(n)) for t, n in enumerate(sizes))


def default_pairs(t: int) -> list[Pair]:
    """All ``(i, j)`` with ``i < j``."""
    return list(itertools.combinations(range(t), 2))


def cyclic_pairs(t: int) -> list[Pair]:
    """``(0, 1), (1, 2), ..., (t-1, 0)``: each chain against the next, wrapping around."""
    if t < 2:
        return []
    if t == 2:
        return [(0, 1)]
    return [(i, (i + 1) % t) for i in range(t)]


@dataclass(frozen=True)
class Arrangement:
    chain_sizes: tuple[int, ...]
    partitions: Mapping[Pair, PlanePartition] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "chain_sizes", tuple(self.chain_sizes))
        object.__setattr__(self, "partitions", dict(self.partitions))
        if any(n < 1 for n in self.chain_sizes):
            raise DomainError("chain sizes must be positive")
        t = len(self.chain_sizes)
        seen = set()
        for (i, j), pp in self.partitions.items():
            if not (0 <= i < t and 0 <= j < t) or i == j:
                raise DimensionError(f"pair ({i}, {j}) does not name two different chains")
            if frozenset((i, j)) in seen:
                raise DomainError(f"chains {i} and {j} carry two partitions")
            seen.add(frozenset((i, j)))
            if (pp.rows, pp.cols) != (self.chain_sizes[i], self.chain_sizes[j]):
                raise DimensionError(f"partition on ({i}, {j}) must be {self.chain_sizes[i]}x{self.chain_sizes[j]}")
            if any(x > 2 for x in pp.flat):
                raise DomainError("parts must be at most 2")

    def __hash__(self) -> int:
        return hash((self.chain_sizes, tuple(sorted((k, v.parts) for k, v in self.partitions.items()))))

    def label(self, pairs: Sequence[Pair] | None = None) -> str:
        """Concatenated flattened partitions, pair by pair."""
        pairs = pairs if pairs is not None else sorted(self.partitions)
        return "|".join("".join(str(x) for x in self.partitions[p].flat) for p in pairs)


@dataclass(frozen=True)
class GeneralizedResult:
    """Outcome of closing one arrangement.

    ``chains_preserved`` says whether every chain still carries exactly its own
    order after closure; ``proper`` additionally requires that no two elements
    of different chains became equivalent.
    """

    order: QuasiOrder
    chains_preserved: bool
    proper: bool


def _offsets(sizes):
    out, acc = [], 0
    for n in sizes:
        out.append(acc)
        acc += n
    return out


def arrangement_to_relation(a: Arrangement) -> GeneralizedResult:
    sizes = a.chain_sizes
    labels = chain_labels(sizes)
    elements = tuple(x for block in labels for x in block)
    off = _offsets(sizes)
    rows = [0] * len(elements)
    for t, n in enumerate(sizes):
        for r in range(n):
            rows[off[t] + r] |= bits_of(off[t] + k for k in range(r, n))
    for (i, j), pp in a.partitions.items():
        nj = sizes[j]
        for r in range(sizes[i]):
            for c in range(nj):
                x, y = off[i] + r, off[j] + reversed_column(c, nj)
                if pp.parts[r][c] == 2:
                    rows[x] |= 1 << y
                elif pp.parts[r][c] == 0:
                    rows[y] |= 1 << x
    closed = reflexive_transitive_closure(rows)
    preserved = True
    for t, n in enumerate(sizes):
        block = bits_of(range(off[t], off[t] + n))
        for r in range(n):
            if closed[off[t] + r] & block != bits_of(off[t] + k for k in range(r, n)):
                preserved = False
    symmetric_cross = any(
        (closed[y] >> x) & 1 for x in range(len(elements)) for y in iter_bits(closed[x]) if y != x
    )
    proper = preserved and not symmetric_cross
    order = Poset(elements, closed) if proper else QuasiOrder(elements, closed)
    return GeneralizedResult(order, preserved, proper)


@dataclass(frozen=True)
class GeneralizedMergings:
    """All arrangements for fixed chain sizes, grouped by the merging they produce.

    ``fibers[k]`` lists indices into ``arrangements`` that give ``mergings[k]``.
    ``order`` is the generalized merging order on ``mergings`` as row bitsets.
    """

    chain_sizes: tuple[int, ...]
    pairs: tuple[Pair, ...]
    arrangements: tuple[Arrangement, ...]
    results: tuple[GeneralizedResult, ...]
    mergings: tuple[Poset, ...]
    fibers: tuple[tuple[int, ...], ...]
    order: tuple[int, ...]

    @property
    def proper_count(self) -> int:
        return sum(r.proper for r in self.results)

    def as_poset(self, prefix: str = "M") -> Poset:
        return Poset(tuple(f"{prefix}{k}" for k in range(len(self.mergings))), self.order)


def _generalized_leq(r: QuasiOrder, s: QuasiOrder, chain_of: Sequence[int]) -> bool:
    for x in range(len(chain_of)):
        for y in range(len(chain_of)):
            cx, cy = chain_of[x], chain_of[y]
            if cx == cy:
                continue
            rx, sx = (r.rows[x] >> y) & 1, (s.rows[x] >> y) & 1
            if cx < cy and rx and not sx:
                return False
            if cx > cy and sx and not rx:
                return False
    return True


def enumerate_generalized(sizes: Sequence[int], pairs: Sequence[Pair] | None = None) -> GeneralizedMergings:
    """Every arrangement on ``pairs`` (default: all ``i < j``), closed and deduplicated.

    Mergings are kept in order of first appearance over the arrangements,
    which run lexicographically over the partitions pair by pair.
    """
    sizes = tuple(sizes)
    if any(n < 1 for n in sizes):
        raise DomainError("chain sizes must be positive")
    if sum(sizes) > config.max_context():
        raise CapacityError(f"{sum(sizes)} elements exceed the cap of {config.max_context()}")
    pairs = tuple(default_pairs(len(sizes)) if pairs is None else pairs)
    total = 1
    for i, j in pairs:
        total *= macmahon(sizes[i], sizes[j], 2)
    if total > config.max_enumeration():
        raise CapacityError(f"{total} arrangements exceed the cap of {config.max_enumeration()}")
    per_pair = [enumerate_plane_partitions(sizes[i], sizes[j], 2) for i, j in pairs]
    arrangements, results = [], []
    index: dict[tuple[int, ...], int] = {}
    mergings: list[Poset] = []
    fibers: list[list[int]] = []
    for choice in itertools.product(*per_pair):
        arr = Arrangement(sizes, dict(zip(pairs, choice)))
        res = arrangement_to_relation(arr)
        k = len(arrangements)
        arrangements.append(arr)
        results.append(res)
        if not res.proper:
            continue
        key = res.order.rows
        if key not in index:
            index[key] = len(mergings)
            mergings.append(res.order)
            fibers.append([])
        fibers[index[key]].append(k)
    chain_of = [t for t, n in enumerate(sizes) for _ in range(n)]
    order = tuple(
        bits_of(b for b, mb in enumerate(mergings) if _generalized_leq(ma, mb, chain_of)) for ma in mergings
    )
    return GeneralizedMergings(
        sizes, pairs, tuple(arrangements), tuple(results), tuple(mergings), tuple(map(tuple, fibers)), order
    )
