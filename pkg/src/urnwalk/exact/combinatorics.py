"""Big-integer counts: rising factorials, Catalan and Eulerian numbers."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "rising_factorial",
    "catalan",
    "eulerian",
    "eulerian_row",
    "eulerian_direct",
    "log_rising_factorial",
]


def rising_factorial(x, s: int):
    """Pochhammer symbol ``x (x+1) ... (x+s-1)``; equals 1 when ``s == 0``.

    Integer ``x`` gives an ``int``; anything else is coerced to ``Fraction``.
    """
    if s < 0:
        raise ValueError(f"rising factorial needs s >= 0, got {s}")
    if isinstance(x, int) and not isinstance(x, bool):
        if x > 0:
            return math.factorial(x + s - 1) // math.factorial(x - 1)
        acc = 1
    else:
        x = Fraction(x)
        acc = Fraction(1)
    for i in range(s):
        acc *= x + i
    return acc


def log_rising_factorial(x: float, s: int) -> float:
    """``log <x>_s`` for ``x > 0``."""
    return math.lgamma(x + s) - math.lgamma(x)


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError(f"Catalan index must be nonnegative, got {n}")
    return math.comb(2 * n, n) // (n + 1)


# Rows are built by the recurrence and extended forward from the last row
# computed; only that frontier row is retained to keep memory linear.
_frontier: list = [1, [1]]


def eulerian_row(n: int) -> tuple[int, ...]:
    """``(A(n,0), ..., A(n,n-1))`` where ``A(n,k)`` counts permutations with k ascents."""
    if n < 1:
        raise ValueError(f"Eulerian row index must be positive, got {n}")
    return _eulerian_row_cached(n)


@lru_cache(maxsize=64)
def _eulerian_row_cached(n: int) -> tuple[int, ...]:
    m, row = _frontier
    if m > n:
        m, row = 1, [1]
    while m < n:
        m += 1
        # A(m,k) = (k+1) A(m-1,k) + (m-k) A(m-1,k-1)
        prev = row
        row = [1] * m
        for k in range(1, m - 1):
            row[k] = (k + 1) * prev[k] + (m - k) * prev[k - 1]
    _frontier[:] = [m, row]
    return tuple(row)


def eulerian(n: int, k: int) -> int:
    """Eulerian number ``A(n, k)``; zero outside ``0 <= k <= n-1``."""
    if n < 1:
        return 1 if (n == 0 and k == 0) else 0
    if k < 0 or k > n - 1:
        return 0
    return eulerian_row(n)[k]


def eulerian_direct(n: int, k: int) -> int:
    """``A(n, k)`` from the alternating sum ``sum_j (-1)^j C(n+1, j) (k+1-j)^n``.

    Costs ``O(k)`` big-integer powers instead of ``O(n^2)`` for a full row,
    so it is the route for single central entries at large ``n``.
    """
    if n < 1:
        return 1 if (n == 0 and k == 0) else 0
    if k < 0 or k > n - 1:
        return 0
    k = min(k, n - 1 - k)
    total = 0
    binom = 1
    for j in range(k + 1):
        term = binom * (k + 1 - j) ** n
        total += -term if j % 2 else term
        binom = binom * (n + 1 - j) // (j + 1)
    return total
