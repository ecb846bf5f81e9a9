"""Closed-form laws of the draw counts, return probabilities and first-return times.

Exact routines return :class:`Fraction`; the ``log_*`` variants return
natural logarithms as floats for large ``n``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..urn import Kind, UrnScheme, validate_start
from .combinatorics import (
    catalan,
    eulerian,
    eulerian_direct,
    log_rising_factorial,
    rising_factorial,
)

# Above this row length the single-entry alternating sum beats building rows.
_EULERIAN_ROW_LIMIT = 600


def _check_polya(w: int, b: int) -> None:
    validate_start(UrnScheme.polya(), w, b)


def polya_pmf(w: int, b: int, n: int, k: int) -> Fraction:
    """``P(W_n = k)`` for a Polya urn started with ``w`` white and ``b`` blue balls."""
    _check_polya(w, b)
    if n < 0:
        raise ValueError(f"number of draws must be nonnegative, got {n}")
    if not 0 <= k <= n:
        return Fraction(0)
    return Fraction(
        math.comb(n, k) * rising_factorial(w, k) * rising_factorial(b, n - k),
        rising_factorial(w + b, n),
    )


def polya_return_prob(w: int, b: int, m: int) -> Fraction:
    """``P(X_m = 0)`` for the 1-D Polya walk."""
    _check_polya(w, b)
    if m < 0:
        raise ValueError(f"number of moves must be nonnegative, got {m}")
    if m % 2:
        return Fraction(0)
    n = m // 2
    return Fraction(
        rising_factorial(w, n) * rising_factorial(b, n) * math.comb(2 * n, n),
        rising_factorial(w + b, 2 * n),
    )


def log_polya_return_prob(w: int, b: int, m: int) -> float:
    _check_polya(w, b)
    if m % 2:
        return -math.inf
    n = m // 2
    return (
        log_rising_factorial(w, n)
        + log_rising_factorial(b, n)
        - log_rising_factorial(w + b, 2 * n)
        + math.lgamma(2 * n + 1)
        - 2 * math.lgamma(n + 1)
    )


def polya_hitting_pmf(w: int, b: int, m: int) -> Fraction:
    """``P(H_0 = m)``, the first return of the 1-D Polya walk to the origin.

    Every first-return draw order of length ``2n`` has ``n`` whites and ``n``
    blues, so by exchangeability each has the probability of ``W^n B^n``.
    There are ``catalan(n-1)`` such orders starting with a white draw and as
    many starting with a blue one.
    """
    _check_polya(w, b)
    if m < 1:
        raise ValueError(f"hitting time must be positive, got {m}")
    if m % 2:
        return Fraction(0)
    n = m // 2
    return Fraction(
        2 * catalan(n - 1) * rising_factorial(w, n) * rising_factorial(b, n),
        rising_factorial(w + b, 2 * n),
    )


def log_polya_hitting_pmf(w: int, b: int, m: int) -> float:
    _check_polya(w, b)
    if m % 2:
        return -math.inf
    n = m // 2
    log_catalan = math.lgamma(2 * n - 1) - math.lgamma(n) - math.lgamma(n + 1)
    return (
        math.log(2)
        + log_catalan
        + log_rising_factorial(w, n)
        + log_rising_factorial(b, n)
        - log_rising_factorial(w + b, 2 * n)
    )


def bernoulli_return_prob(p, m: int) -> Fraction:
    """``P(X_m = 0)`` for the fixed-coin walk with white probability ``p``."""
    p = Fraction(p)
    if m % 2:
        return Fraction(0)
    n = m // 2
    return math.comb(2 * n, n) * (p * (1 - p)) ** n


def log_bernoulli_return_prob(p, m: int) -> float:
    p = float(p)
    if m % 2 or p in (0.0, 1.0):
        return 0.0 if m == 0 else -math.inf
    n = m // 2
    return (math.lgamma(2 * n + 1) - 2 * math.lgamma(n + 1)
            + n * (math.log(p) + math.log1p(-p)))


def bernoulli_hitting_pmf(p, m: int) -> Fraction:
    p = Fraction(p)
    if m < 1:
        raise ValueError(f"hitting time must be positive, got {m}")
    if m % 2:
        return Fraction(0)
    n = m // 2
    return 2 * catalan(n - 1) * (p * (1 - p)) ** n


def log_bernoulli_hitting_pmf(p, m: int) -> float:
    p = float(p)
    if m % 2 or p in (0.0, 1.0):
        return -math.inf
    n = m // 2
    log_catalan = math.lgamma(2 * n - 1) - math.lgamma(n) - math.lgamma(n + 1)
    return math.log(2) + log_catalan + n * (math.log(p) + math.log1p(-p))


def friedman_white_draw_pmf(n: int, k: int) -> Fraction:
    """``P(W_n = k)`` for a Friedman urn started with a single white ball.

    The urn then holds ``1 + B_n`` white balls, and the white-ball count
    follows the Eulerian law ``P(1 + B_n = j) = A(n, j-1) / n!``.  Since
    ``B_n = n - W_n`` and ``A(n, j) = A(n, n-1-j)`` this gives
    ``P(W_n = k) = A(n, k-1) / n!`` for ``1 <= k <= n``.
    """
    if n < 1:
        raise ValueError(f"number of draws must be positive, got {n}")
    if not 1 <= k <= n:
        return Fraction(0)
    count = eulerian(n, k - 1) if n <= _EULERIAN_ROW_LIMIT else eulerian_direct(n, k - 1)
    return Fraction(count, math.factorial(n))


def friedman_return_prob(m: int) -> Fraction:
    """``P(X_m = 0)`` for the 1-D Friedman walk from one white ball: ``A(2n, n) / (2n)!``."""
    if m < 0:
        raise ValueError(f"number of moves must be nonnegative, got {m}")
    if m == 0:
        return Fraction(1)
    if m % 2:
        return Fraction(0)
    return friedman_white_draw_pmf(m, m // 2)


def log_friedman_return_prob(m: int) -> float:
    """Log of ``A(2n, n) / (2n)!`` from the exact Eulerian count and ``lgamma``."""
    if m == 0:
        return 0.0
    if m % 2:
        return -math.inf
    count = eulerian_direct(m, m // 2)
    return math.log(count) - math.lgamma(m + 1)


def return_prob(scheme: UrnScheme, w: int, b: int, m: int) -> Fraction:
    """One-dimensional ``P(X_m = 0)`` for any scheme and legal start.

    Friedman starts other than one white ball have no closed form and go
    through the draw-count dynamic programme.
    """
    validate_start(scheme, w, b)
    if scheme.kind is Kind.POLYA:
        return polya_return_prob(w, b, m)
    if scheme.kind is Kind.BERNOULLI:
        return bernoulli_return_prob(scheme.p, m)
    if (w, b) == (1, 0):
        return friedman_return_prob(m)
    if m % 2:
        return Fraction(0)
    from .dp import draw_count_pmf_dp

    return draw_count_pmf_dp(scheme, w, b, m).get(m // 2, Fraction(0))


def hitting_pmf(scheme: UrnScheme, w: int, b: int, m: int) -> Fraction:
    """Closed-form ``P(H_0 = m)``; only the exchangeable schemes have one."""
    if scheme.kind is Kind.POLYA:
        return polya_hitting_pmf(w, b, m)
    if scheme.kind is Kind.BERNOULLI:
        return bernoulli_hitting_pmf(scheme.p, m)
    raise ValueError("the Friedman first-return law has no closed form; use hitting_pmf_dp")


def _per_dim_starts(d: int, starts) -> list[tuple[int, int]]:
    if isinstance(starts, tuple) and len(starts) == 2 and all(isinstance(v, int) for v in starts):
        return [starts] * d
    starts = [tuple(s) for s in starts]
    if len(starts) != d:
        raise ValueError(f"expected {d} (w, b) pairs, got {len(starts)}")
    return starts


def ddim_return_prob(scheme: UrnScheme, starts: Sequence | tuple[int, int], d: int,
                     m: int) -> Fraction:
    """``P(X_m = 0)`` in ``d`` dimensions: the product of the per-coordinate probabilities.

    ``starts`` is one ``(w, b)`` pair shared by every coordinate, or ``d`` pairs.
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    prob = Fraction(1)
    for w, b in _per_dim_starts(d, starts):
        prob *= return_prob(scheme, w, b, m)
    return prob
