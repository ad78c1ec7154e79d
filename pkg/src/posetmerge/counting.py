"""Closed-form counts, exact over Python integers.

Each counter has a brute-force counterpart elsewhere in the package
(:mod:`posetmerge.merging`, :mod:`posetmerge.bijections`,
:mod:`posetmerge.galois`); the tests pin them against each other.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .errors import DomainError

__all__ = [
    "macmahon",
    "narayana",
    "count_chain_mergings",
    "count_antichain_mergings",
    "eta",
    "eta_swapped",
    "count_antichain_chain",
    "count_galois_chains",
    "count_galois_boolean_chain",
]


def _nonneg(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or v < 0:
            raise DomainError(f"{name} must be a nonnegative integer, got {v!r}")


def macmahon(m: int, n: int, l: int) -> int:
    """Plane partitions in an ``m x n`` box with parts at most ``l``.

    Product of ``(i+j+k-1)/(i+j+k-2)`` over the box, accumulated as a Fraction.
    """
    _nonneg(m=m, n=n, l=l)
    acc = Fraction(1)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            for k in range(1, l + 1):
                acc *= Fraction(i + j + k - 1, i + j + k - 2)
    if acc.denominator != 1:
        raise ArithmeticError(f"box product for ({m},{n},{l}) is not integral: {acc}")
    return acc.numerator


def narayana(N: int, M: int) -> int:
    if not (isinstance(N, int) and isinstance(M, int)) or not 1 <= M <= N:
        raise DomainError(f"Narayana numbers need 1 <= M <= N, got N={N}, M={M}")
    num = comb(N, M) * comb(N, M - 1)
    q, rem = divmod(num, N)
    assert rem == 0
    return q


def count_chain_mergings(m: int, n: int) -> int:
    """Proper mergings of an m-chain and an n-chain."""
    _nonneg(m=m, n=n)
    N = n + m + 1
    value, rem = divmod(comb(N, m + 1) * comb(N, m), N)
    assert rem == 0
    if __debug__:
        assert value == macmahon(m, n, 2) == narayana(N, m + 1), (m, n)
    return value


def _multinomial(*ks: int) -> int:
    out = factorial(sum(ks))
    for k in ks:
        out //= factorial(k)
    return out


def count_antichain_mergings(m: int, n: int) -> int:
    """Proper mergings of an m-antichain and an n-antichain (inclusion-exclusion sum)."""
    _nonneg(m=m, n=n)
    total = 0
    for n1 in range(m + 1):
        for m1 in range(m + 1 - n1):
            k1 = m - n1 - m1
            total += _multinomial(n1, m1, k1) * (-1) ** k1 * (2**n1 + 2**m1 - 1) ** n
    assert total >= 0
    return total


def _pow00(base: int, exp: int) -> int:
    # 0^0 counts as 0 in the coloring sums
    return 0 if base == 0 else base**exp


def eta(k: int, m1: int, m2: int) -> int:
    """Monotone k-colorings of the complete bipartite digraph ``K_{m1,m2}``.

    Sum over the smallest target color ``i``.  ``eta(0, 0, 0)`` is 1: the
    empty graph has one (empty) coloring.
    """
    _nonneg(k=k, m1=m1, m2=m2)
    if k == 0:
        if m1 or m2:
            return 0
        return 1
    return sum((_pow00(k + 1 - i, m1) - _pow00(k - i, m1)) * _pow00(i, m2) for i in range(1, k + 1))


def eta_swapped(k: int, m1: int, m2: int) -> int:
    """Same count summed over the largest source color instead."""
    _nonneg(k=k, m1=m1, m2=m2)
    if k == 0:
        return 1 if m1 == m2 == 0 else 0
    return sum((_pow00(k + 1 - i, m2) - _pow00(k - i, m2)) * _pow00(i, m1) for i in range(1, k + 1))


def count_antichain_chain(m: int, n: int) -> int:
    """Proper mergings of an m-antichain and an n-chain."""
    _nonneg(m=m, n=n)
    return sum((_pow00(n + 2 - i, m) - _pow00(n + 1 - i, m)) * _pow00(i, m) for i in range(1, n + 2))


def count_galois_chains(m: int, n: int) -> int:
    """Galois connections between an m-chain and an n-chain."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise DomainError(f"both chains need at least one element, got m={m}, n={n}")
    return comb(m + n - 2, m - 1)


def count_galois_boolean_chain(m: int, n: int) -> int:
    """Galois connections between the Boolean lattice on m atoms and an (n+1)-chain."""
    _nonneg(m=m, n=n)
    return (n + 1) ** m
