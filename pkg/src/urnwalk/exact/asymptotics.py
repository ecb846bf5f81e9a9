"""Stirling brackets and asymptotic estimates of the return probabilities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..urn import Kind, UrnScheme, validate_start
from .closed_forms import log_bernoulli_return_prob, log_friedman_return_prob, log_polya_return_prob
from .dp import return_probs_float


def stirling_bracket(n: int) -> tuple[float, float]:
    """``(log lower, log upper)`` with ``(n/e)^n sqrt(2 pi n) <= n! <= that * e^(1/(12n))``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    lower = n * math.log(n) - n + 0.5 * math.log(2 * math.pi * n)
    return lower, lower + 1 / (12 * n)


def polya_lower_constant(w: int, b: int) -> float:
    """Constant ``C1`` with ``P(X_{2n} = 0) >= C1 / n`` for the Polya walk.

    ``C1 = K e^{3/4} / 2^{s} / (e^{s} (s+1)^{s}) / sqrt(1 + s/2)`` where
    ``s = w + b - 1`` and ``K = (w+b-1)! / ((w-1)! (b-1)!)``.
    """
    validate_start(UrnScheme.polya(), w, b)
    s = w + b - 1
    K = math.factorial(s) // (math.factorial(w - 1) * math.factorial(b - 1))
    log_c1 = (math.log(K) + 0.75 - s * math.log(2) - s - s * math.log(s + 1)
              - 0.5 * math.log(1 + s / 2))
    return math.exp(log_c1)


@dataclass
class AsymptoticEntry:
    n: int
    exact: float
    estimate: float

    @property
    def ratio(self) -> float:
        return self.exact / self.estimate


@dataclass
class AsymptoticReport:
    """Exact return probabilities beside their bound or asymptotic estimate.

    For the Polya walk ``estimate`` is the lower bound ``C1 / n`` and
    ``constant`` is ``C1``; ``sup_n_times_prob`` is the largest observed
    ``n * P(X_{2n} = 0)``, an empirical upper-bound constant.  For the
    Friedman walk ``estimate`` is ``sqrt(3 / (pi n))``.
    """

    scheme: str
    w: int
    b: int
    constant: float | None
    entries: list[AsymptoticEntry] = field(default_factory=list)

    @property
    def min_ratio(self) -> float:
        return min(e.ratio for e in self.entries)

    @property
    def max_ratio(self) -> float:
        return max(e.ratio for e in self.entries)

    @property
    def sup_n_times_prob(self) -> float:
        return max(e.n * e.exact for e in self.entries)


def asymptotic_estimate(scheme: UrnScheme, w: int, b: int, n: int) -> AsymptoticEntry:
    """Exact ``P(X_{2n} = 0)`` (as a float) with its paired bound or estimate."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    validate_start(scheme, w, b)
    if scheme.kind is Kind.POLYA:
        exact = math.exp(log_polya_return_prob(w, b, 2 * n))
        return AsymptoticEntry(n, exact, polya_lower_constant(w, b) / n)
    if scheme.kind is Kind.FRIEDMAN:
        if (w, b) == (1, 0):
            exact = math.exp(log_friedman_return_prob(2 * n))
        else:
            exact = float(return_probs_float(scheme, w, b, n)[-1])
        return AsymptoticEntry(n, exact, math.sqrt(3 / (math.pi * n)))
    exact = math.exp(log_bernoulli_return_prob(scheme.p, 2 * n))
    return AsymptoticEntry(n, exact, 1 / math.sqrt(math.pi * n))


def asymptotic_report(scheme: UrnScheme, w: int, b: int, ns) -> AsymptoticReport:
    ns = list(ns)
    constant = polya_lower_constant(w, b) if scheme.kind is Kind.POLYA else None
    report = AsymptoticReport(str(scheme), w, b, constant)
    if scheme.kind is Kind.FRIEDMAN and ns:
        # one DP pass covers the whole range
        probs = return_probs_float(scheme, w, b, max(ns))
        for n in ns:
            report.entries.append(
                AsymptoticEntry(n, float(probs[n - 1]), math.sqrt(3 / (math.pi * n))))
        return report
    report.entries = [asymptotic_estimate(scheme, w, b, n) for n in ns]
    return report
