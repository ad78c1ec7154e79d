"""Small helpers for sets encoded as Python ints (bit i set <=> element i present)."""

from typing import Iterable, Iterator


def mask(n: int) -> int:
    return (1 << n) - 1


def bits_of(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def popcount(x: int) -> int:
    return bin(x).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def transpose(rows: Iterable[int], ncols: int) -> tuple[int, ...]:
    rows = tuple(rows)
    cols = [0] * ncols
    for i, row in enumerate(rows):
        for j in iter_bits(row):
            cols[j] |= 1 << i
    return tuple(cols)


def compose(left: Iterable[int], right: Iterable[int]) -> tuple[int, ...]:
    """Boolean matrix product of two row-bitset matrices."""
    right = tuple(right)
    out = []
    for row in left:
        acc = 0
        for k in iter_bits(row):
            acc |= right[k]
        out.append(acc)
    return tuple(out)


def to_matrix(rows: Iterable[int], ncols: int) -> list[list[int]]:
    return [[(row >> j) & 1 for j in range(ncols)] for row in rows]


def from_matrix(matrix: Iterable[Iterable]) -> tuple[int, ...]:
    return tuple(bits_of(j for j, v in enumerate(row) if v) for row in matrix)
