"""Plane partitions, monotone colorings and their maps onto proper mergings.

Two bijections live here:

* ``PP(m, n, 2)`` to proper mergings of an m-chain ``a`` and an n-chain ``b``.
  Cell ``(i, j)`` of the partition talks about ``a_i`` and ``b_{n-j+1}``
  (1-based): 2 puts ``a_i`` below it, 0 puts it below ``a_i``, 1 leaves them
  incomparable.
* Monotone ``(n+1)``-colorings of the complete bipartite digraph ``K_{m,m}``
  to proper mergings of an m-antichain ``a`` and an n-chain ``c``.

The component flip for mergings of two antichains is here as well.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import config
from ._bits import popcount
from .errors import CapacityError, DimensionError, DomainError
from .merging import CrossRelation, Merging, classify_merging
from .order import Poset, QuasiOrder, make_antichain, make_chain

__all__ = [
    "PlanePartition",
    "MonotoneColoring",
    "BipartiteComponents",
    "reversed_column",
    "enumerate_plane_partitions",
    "pp_to_merging",
    "merging_to_pp",
    "enumerate_monotone_colorings",
    "coloring_to_merging",
    "merging_to_coloring",
    "hasse_components",
    "flip_component",
    "pp_to_json",
    "pp_from_json",
    "coloring_to_json",
    "coloring_from_json",
]


@dataclass(frozen=True)
class PlanePartition:
    """An ``rows x cols`` array, weakly decreasing along rows and columns, parts in ``0..max_part``."""

    rows: int
    cols: int
    parts: tuple[tuple[int, ...], ...]
    max_part: int = 2

    def __post_init__(self):
        parts = tuple(tuple(int(x) for x in row) for row in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.rows < 0 or self.cols < 0 or self.max_part < 0:
            raise DomainError("plane partition dimensions and bound must be nonnegative")
        if len(parts) != self.rows or any(len(row) != self.cols for row in parts):
            raise DimensionError(f"parts must be a {self.rows}x{self.cols} array")
        for i, row in enumerate(parts):
            for j, x in enumerate(row):
                if not 0 <= x <= self.max_part:
                    raise DomainError(f"part {x} at ({i + 1},{j + 1}) outside 0..{self.max_part}")
                if (j and x > row[j - 1]) or (i and x > parts[i - 1][j]):
                    raise DomainError(f"not weakly decreasing at ({i + 1},{j + 1})")

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.parts[i][j]

    def __le__(self, other: "PlanePartition") -> bool:
        """Cellwise order on partitions of the same shape."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("cellwise comparison needs equal shapes")
        return all(x <= y for r1, r2 in zip(self.parts, other.parts) for x, y in zip(r1, r2))

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.parts for x in row)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.parts)


def enumerate_plane_partitions(m: int, n: int, l: int) -> list[PlanePartition]:
    """All of ``PP(m, n, l)``, sorted lexicographically by the row-major flattening."""
    from .counting import macmahon

    if min(m, n, l) < 0:
        raise DomainError("m, n and l must be nonnegative")
    total = macmahon(m, n, l)
    if total > config.max_enumeration():
        raise CapacityError(f"PP({m},{n},{l}) has {total} elements; cap is {config.max_enumeration()}")
    cells = m * n
    grid = [0] * cells
    out: list[PlanePartition] = []

    def fill(k: int):
        if k == cells:
            out.append(PlanePartition(m, n, tuple(tuple(grid[i * n : (i + 1) * n]) for i in range(m)), l))
            return
        i, j = divmod(k, n)
        hi = l
        if j:
            hi = min(hi, grid[k - 1])
        if i:
            hi = min(hi, grid[k - n])
        for x in range(hi + 1):
            grid[k] = x
            fill(k + 1)

    fill(0)
    return out


def reversed_column(j: int, n: int) -> int:
    """0-based partner of partition column ``j``: column j talks about chain element ``n-1-j``."""
    if not 0 <= j < n:
        raise DimensionError(f"column {j} outside 0..{n - 1}")
    return n - 1 - j


def _chains(m: int, n: int) -> tuple[Poset, Poset]:
    return make_chain(m, "a"), make_chain(n, "b")


def pp_to_merging(pp: PlanePartition, p: QuasiOrder | None = None, q: QuasiOrder | None = None) -> Merging:
    """Proper merging of an m-chain and n-chain encoded by a partition with parts at most 2.

    ``p`` and ``q`` default to ``a1..am`` and ``b1..bn``; when given they must be
    index chains of the matching sizes.
    """
    if pp.max_part > 2 and any(x > 2 for x in pp.flat):
        raise DomainError("parts larger than 2 have no merging")
    m, n = pp.rows, pp.cols
    p, q = _chain_pair(p, q, m, n)
    r = [0] * m
    s = [0] * n
    for i in range(m):
        for j in range(n):
            jj = reversed_column(j, n)
            if pp.parts[i][j] == 2:
                r[i] |= 1 << jj
            elif pp.parts[i][j] == 0:
                s[jj] |= 1 << i
    merging = classify_merging(p, q, CrossRelation(p.elements, q.elements, tuple(r)), CrossRelation(q.elements, p.elements, tuple(s)))
    assert merging.proper, "partition produced an improper merging"
    return merging


def _chain_pair(p, q, m, n):
    if p is None and q is None:
        return _chains(m, n)
    if p is None or q is None:
        raise DomainError("give both chains or neither")
    if len(p) != m or len(q) != n or not (p.is_index_chain() and q.is_index_chain()):
        raise DomainError(f"expected index-ordered chains of sizes {m} and {n}")
    return p, q


def merging_to_pp(merging: Merging) -> PlanePartition:
    if not merging.proper:
        raise DomainError("only proper mergings correspond to plane partitions")
    p, q = merging.p, merging.q
    if not (p.is_index_chain() and q.is_index_chain()):
        raise DomainError("both sides must be chains ordered by index")
    m, n = len(p), len(q)
    parts = []
    for i in range(m):
        row = []
        for j in range(n):
            jj = reversed_column(j, n)
            if (merging.r.rows[i] >> jj) & 1:
                row.append(2)
            elif (merging.s.rows[jj] >> i) & 1:
                row.append(0)
            else:
                row.append(1)
        parts.append(tuple(row))
    return PlanePartition(m, n, tuple(parts), 2)


@dataclass(frozen=True)
class MonotoneColoring:
    """Colors ``1..k`` on the two sides of ``K_{m,m}``; every ``v1`` color is at most every ``v2`` color."""

    m: int
    k: int
    v1: tuple[int, ...]
    v2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "v1", tuple(int(x) for x in self.v1))
        object.__setattr__(self, "v2", tuple(int(x) for x in self.v2))
        if self.m < 0 or self.k < 0:
            raise DomainError("m and k must be nonnegative")
        if len(self.v1) != self.m or len(self.v2) != self.m:
            raise DimensionError(f"both color vectors need length {self.m}")
        for side, vec in (("v1", self.v1), ("v2", self.v2)):
            for i, c in enumerate(vec):
                if not 1 <= c <= self.k:
                    raise DomainError(f"{side}[{i + 1}] = {c} outside 1..{self.k}")
        if self.m and max(self.v1) > min(self.v2):
            raise DomainError(f"not monotone: max(v1) = {max(self.v1)} exceeds min(v2) = {min(self.v2)}")

    def __le__(self, other: "MonotoneColoring") -> bool:
        if (self.m, self.k) != (other.m, other.k):
            raise DimensionError("vertexwise comparison needs equal m and k")
        return all(x <= y for x, y in zip(self.v1 + self.v2, other.v1 + other.v2))


def enumerate_monotone_colorings(m: int, k: int) -> list[MonotoneColoring]:
    """All monotone k-colorings of ``K_{m,m}`` ordered by ``(v1, v2)``."""
    if m < 0 or k < 0:
        raise DomainError("m and k must be nonnegative")
    if m == 0:
        return [MonotoneColoring(0, k, (), ())]
    if k == 0:
        return []
    if k ** (2 * m) > config.max_enumeration() * 16:
        raise CapacityError(f"{k}^{2 * m} color vectors exceed the enumeration cap")
    out = []
    for v1 in itertools.product(range(1, k + 1), repeat=m):
        lo = max(v1)
        for v2 in itertools.product(range(lo, k + 1), repeat=m):
            out.append(MonotoneColoring(m, k, v1, v2))
    return out


def coloring_to_merging(g: MonotoneColoring, p: QuasiOrder | None = None, q: QuasiOrder | None = None) -> Merging:
    """Proper merging of antichain ``a1..am`` with chain ``c1..cn`` where ``n = k - 1``.

    Color ``κ`` on ``v1[i]`` puts ``a_i`` below the top ``κ - 1`` chain
    elements; color ``κ`` on ``v2[i]`` puts the bottom ``n + 1 - κ`` chain
    elements below ``a_i``.
    """
    if g.k < 1:
        raise DomainError("need at least one color")
    n = g.k - 1
    if p is None and q is None:
        p, q = make_antichain(g.m, "a"), make_chain(n, "c")
    elif p is None or q is None:
        raise DomainError("give both sides or neither")
    elif len(p) != g.m or len(q) != n or not p.is_antichain() or not q.is_index_chain():
        raise DomainError(f"expected an antichain of size {g.m} and an index chain of size {n}")
    r = tuple(((1 << (kappa - 1)) - 1) << (n - kappa + 1) for kappa in g.v1)
    s_cols = [(1 << (n + 1 - kappa)) - 1 for kappa in g.v2]
    s = tuple(sum(1 << i for i in range(g.m) if (s_cols[i] >> j) & 1) for j in range(n))
    merging = classify_merging(p, q, CrossRelation(p.elements, q.elements, r), CrossRelation(q.elements, p.elements, s))
    assert merging.proper, "coloring produced an improper merging"
    return merging


def merging_to_coloring(merging: Merging) -> MonotoneColoring:
    if not merging.proper:
        raise DomainError("only proper mergings correspond to colorings")
    p, q = merging.p, merging.q
    if not p.is_antichain() or not q.is_index_chain():
        raise DomainError("left side must be an antichain and right side an index-ordered chain")
    n = len(q)
    v1 = tuple(popcount(row) + 1 for row in merging.r.rows)
    v2 = tuple(n + 1 - popcount(col) for col in merging.s.cols)
    return MonotoneColoring(len(p), n + 1, v1, v2)


@dataclass(frozen=True)
class BipartiteComponents:
    """Connected components of the Hasse graph of a merging of two antichains.

    ``component_of`` is indexed like ``p.elements + q.elements``.
    """

    component_of: tuple[int, ...]
    left: tuple[tuple[str, ...], ...]
    right: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.left)

    def size(self, comp: int) -> int:
        return len(self.left[comp]) + len(self.right[comp])

    @property
    def nontrivial(self) -> tuple[int, ...]:
        return tuple(c for c in range(len(self)) if self.size(c) > 1)


def _require_antichains(merging: Merging):
    if not (merging.p.is_antichain() and merging.q.is_antichain()):
        raise DomainError("both sides must be antichains")


def hasse_components(merging: Merging) -> BipartiteComponents:
    """Components of the undirected graph on ``P + Q`` with an edge for each cross pair.

    For a proper merging of two antichains every cross pair is a cover, so
    this is the Hasse graph.  Components are numbered by their first vertex.
    """
    _require_antichains(merging)
    m = len(merging.p)
    parent = list(range(m + len(merging.q)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in merging.r.index_pairs():
        parent[find(i)] = find(m + j)
    for j, i in merging.s.index_pairs():
        parent[find(i)] = find(m + j)
    roots: dict[int, int] = {}
    comp = []
    for v in range(len(parent)):
        comp.append(roots.setdefault(find(v), len(roots)))
    left = [[] for _ in roots]
    right = [[] for _ in roots]
    for i, x in enumerate(merging.p.elements):
        left[comp[i]].append(x)
    for j, y in enumerate(merging.q.elements):
        right[comp[m + j]].append(y)
    return BipartiteComponents(tuple(comp), tuple(map(tuple, left)), tuple(map(tuple, right)))


def flip_component(merging: Merging, comp: int) -> Merging:
    """Reverse every cross pair inside component ``comp``; other components stay put."""
    if not merging.proper:
        raise DomainError("flip is defined on proper mergings")
    comps = hasse_components(merging)
    if not 0 <= comp < len(comps):
        raise DomainError(f"component {comp} does not exist; there are {len(comps)}")
    m = len(merging.p)
    in_p = sum(1 << i for i in range(m) if comps.component_of[i] == comp)
    in_q = sum(1 << j for j in range(len(merging.q)) if comps.component_of[m + j] == comp)
    r_rows, s_rows = merging.r.rows, merging.s.rows
    s_cols = merging.s.cols
    r_cols = merging.r.cols
    new_r = tuple((r_rows[i] & ~in_q) | (s_cols[i] & in_q) if (in_p >> i) & 1 else r_rows[i] for i in range(m))
    new_s = tuple((s_rows[j] & ~in_p) | (r_cols[j] & in_p) if (in_q >> j) & 1 else s_rows[j] for j in range(len(merging.q)))
    p, q = merging.p, merging.q
    return classify_merging(p, q, CrossRelation(p.elements, q.elements, new_r), CrossRelation(q.elements, p.elements, new_s))


def pp_to_json(pp: PlanePartition) -> dict:
    return {"rows": pp.rows, "cols": pp.cols, "max": pp.max_part, "parts": [list(r) for r in pp.parts]}


def pp_from_json(data: dict | str) -> PlanePartition:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        parts = data["parts"]
        rows = data.get("rows", len(parts))
        cols = data.get("cols", len(parts[0]) if parts else 0)
        return PlanePartition(rows, cols, tuple(tuple(r) for r in parts), data.get("max", 2))
    except (KeyError, TypeError, AttributeError):
        raise DomainError('plane partition JSON needs "parts" as a list of rows') from None


def coloring_to_json(g: MonotoneColoring) -> dict:
    return {"m": g.m, "k": g.k, "v1": list(g.v1), "v2": list(g.v2)}


def coloring_from_json(data: dict | str) -> MonotoneColoring:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return MonotoneColoring(data["m"], data["k"], tuple(data["v1"]), tuple(data["v2"]))
    except (KeyError, TypeError):
        raise DomainError('coloring JSON needs "m", "k", "v1" and "v2"') from None

