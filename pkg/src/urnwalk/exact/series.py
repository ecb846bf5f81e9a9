"""Partial-sum tables for return and first-return series, and recurrence diagnostics.

A state is recurrent iff ``sum_n P(X_n = 0)`` diverges.  Only the finite
partial sums can be computed, so :func:`recurrence_diagnostic` compares
their growth against the leading-order term asymptotics: a divergent
series must keep gaining roughly the integral of the asymptotic term, and a
convergent one must have its tail bounded by the integral of an envelope
``c * n**-alpha`` with ``alpha > 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..urn import Kind, UrnScheme, validate_start
from .closed_forms import (
    _per_dim_starts,
    bernoulli_hitting_pmf,
    log_bernoulli_hitting_pmf,
    log_bernoulli_return_prob,
    log_polya_hitting_pmf,
    log_polya_return_prob,
    polya_hitting_pmf,
    return_prob,
)
from .combinatorics import eulerian_row
from .dp import hitting_pmf_dp, hitting_probs_float, return_probs_float

KINDS = ("return_series", "hitting_mass", "expected_hitting")
MODES = ("exact", "log")
_ALIASES = {
    "return-prob": "return_series",
    "return_prob": "return_series",
    "series": "return_series",
    "hitting_pmf": "hitting_mass",
    "hitting-pmf": "hitting_mass",
    "log_space": "log",
}


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesRow:
    n: int
    term: Fraction | float
    partial_sum: Fraction | float


@dataclass
class SeriesTable:
    """Rows ``(n, term_n, sum_{j<=n} term_j)`` for ``n = 1..N``.

    Terms are indexed by half-time: row ``n`` is about time ``2n``.
    """

    kind: str
    scheme: UrnScheme
    starts: tuple[tuple[int, int], ...]
    dims: int
    mode: str
    rows: list[SeriesRow] = field(default_factory=list)

    @property
    def terms(self) -> np.ndarray:
        return np.array([float(r.term) for r in self.rows])

    @property
    def partial_sums(self) -> np.ndarray:
        return np.array([float(r.partial_sum) for r in self.rows])

    def partial_sum(self, n: int):
        return self.rows[n - 1].partial_sum

    def records(self, decimal_digits: int | None = None) -> list[dict]:
        return [
            {"n": r.n,
             "term": format_value(r.term, decimal_digits),
             "partial_sum": format_value(r.partial_sum, decimal_digits)}
            for r in self.rows
        ]


def format_value(value, decimal_digits: int | None = None) -> str:
    """Render exact values as ``p/q`` and floats with full round-trip precision."""
    if isinstance(value, Fraction):
        if decimal_digits is None:
            return f"{value.numerator}/{value.denominator}"
        with localcontext() as ctx:
            ctx.prec = decimal_digits
            return str(Decimal(value.numerator) / Decimal(value.denominator))
    if isinstance(value, int):
        return format_value(Fraction(value), decimal_digits)
    if decimal_digits is None:
        return repr(float(value))
    return f"{float(value):.{decimal_digits}g}"


def _normalise(kind: str, mode: str) -> tuple[str, str]:
    kind = _ALIASES.get(kind, kind)
    mode = _ALIASES.get(mode, mode)
    if kind not in KINDS:
        raise SeriesError(f"unknown series kind {kind!r}; choose one of {', '.join(KINDS)}")
    if mode not in MODES:
        raise SeriesError(f"unknown mode {mode!r}; choose one of {', '.join(MODES)}")
    return kind, mode


# -- per-dimension term generators ---------------------------------------------

def _exact_return_terms(scheme: UrnScheme, w: int, b: int, N: int) -> list[Fraction]:
    if scheme.kind is Kind.FRIEDMAN and (w, b) == (1, 0):
        # A(2n, n) / (2n)!, walking the Eulerian rows upward once
        out = []
        fact = 1
        for n in range(1, N + 1):
            fact *= (2 * n - 1) * (2 * n)
            out.append(Fraction(eulerian_row(2 * n)[n], fact))
        return out
    if scheme.kind is Kind.FRIEDMAN:
        return _exact_return_terms_dp(scheme, w, b, N)
    return [return_prob(scheme, w, b, 2 * n) for n in range(1, N + 1)]


def _exact_return_terms_dp(scheme: UrnScheme, w: int, b: int, N: int) -> list[Fraction]:
    # one forward pass of the draw-count law, reading off P(W_2n = n)
    nums = [1]
    denom = 1
    out = []
    for t in range(2 * N):
        total = t + w + b
        nxt = [0] * (t + 2)
        for k, v in enumerate(nums):
            if v:
                nxt[k + 1] += v * (w + t - k)
                nxt[k] += v * (b + k)
        denom *= total
        nums = nxt
        if t % 2:
            out.append(Fraction(nums[(t + 1) // 2], denom))
    return out


def _log_return_terms(scheme: UrnScheme, w: int, b: int, N: int) -> np.ndarray:
    if scheme.kind is Kind.FRIEDMAN:
        return return_probs_float(scheme, w, b, N)
    if scheme.kind is Kind.POLYA:
        return np.exp([log_polya_return_prob(w, b, 2 * n) for n in range(1, N + 1)])
    return np.exp([log_bernoulli_return_prob(scheme.p, 2 * n) for n in range(1, N + 1)])


def _exact_hitting_terms(scheme: UrnScheme, w: int, b: int, N: int) -> list[Fraction]:
    if scheme.kind is Kind.POLYA:
        return [polya_hitting_pmf(w, b, 2 * n) for n in range(1, N + 1)]
    if scheme.kind is Kind.BERNOULLI:
        return [bernoulli_hitting_pmf(scheme.p, 2 * n) for n in range(1, N + 1)]
    pmf = hitting_pmf_dp(scheme, w, b, N)
    return [pmf[2 * n] for n in range(1, N + 1)]


def _log_hitting_terms(scheme: UrnScheme, w: int, b: int, N: int) -> np.ndarray:
    if scheme.kind is Kind.POLYA:
        return np.exp([log_polya_hitting_pmf(w, b, 2 * n) for n in range(1, N + 1)])
    if scheme.kind is Kind.BERNOULLI:
        return np.exp([log_bernoulli_hitting_pmf(scheme.p, 2 * n) for n in range(1, N + 1)])
    return hitting_probs_float(scheme, w, b, N)


def series_partial_sums(kind: str, scheme: UrnScheme, starts=(1, 1), d: int = 1,
                        N: int = 10, mode: str = "exact") -> SeriesTable:
    """Tabulate one of the series with running partial sums.

    ``return_series``
        ``P(X_{2n} = 0)`` in ``d`` dimensions.
    ``hitting_mass``
        ``P(H_0 = 2n)``; partial sums are the probability of returning by ``2n``.
    ``expected_hitting``
        ``2n P(H_0 = 2n)``; partial sums approach ``E[H_0]``.

    The two first-return kinds are one-dimensional only.  ``mode="log"``
    works in double precision via log-gamma closed forms or float DP.
    """
    kind, mode = _normalise(kind, mode)
    if N < 1:
        raise SeriesError(f"N must be positive, got {N}")
    starts = tuple(_per_dim_starts(d, starts))
    for w, b in starts:
        validate_start(scheme, w, b)
    if kind != "return_series" and d != 1:
        raise SeriesError(f"{kind} is only available for one-dimensional walks (got d={d})")

    if kind == "return_series":
        gen = _exact_return_terms if mode == "exact" else _log_return_terms
        # identical coordinates share one computation
        cache = {}
        per_dim = []
        for start in starts:
            if start not in cache:
                cache[start] = gen(scheme, *start, N)
            per_dim.append(cache[start])
        if mode == "exact":
            terms = [math.prod(col, start=Fraction(1)) for col in zip(*per_dim)]
        else:
            terms = np.prod(np.vstack(per_dim), axis=0)
    else:
        w, b = starts[0]
        if mode == "exact":
            terms = _exact_hitting_terms(scheme, w, b, N)
        else:
            terms = _log_hitting_terms(scheme, w, b, N)
        if kind == "expected_hitting":
            terms = [2 * n * t for n, t in enumerate(terms, 1)]

    table = SeriesTable(kind, scheme, starts, d, mode)
    if mode == "exact":
        acc = Fraction(0)
        for n, t in enumerate(terms, 1):
            acc += t
            table.rows.append(SeriesRow(n, t, acc))
    else:
        sums = np.cumsum(np.asarray(terms, dtype=float))
        table.rows = [SeriesRow(n, float(t), float(s))
                      for n, (t, s) in enumerate(zip(terms, sums), 1)]
    return table


# -- recurrence diagnostics ------------------------------------------------------

def return_prob_asymptotic(scheme: UrnScheme, w: int, b: int) -> tuple[float, float]:
    """Leading behaviour ``P(X_{2n} = 0) ~ c * n**-alpha`` as ``(c, alpha)``.

    Polya: ``W_{2n} / 2n`` tends to a Beta(w, b) law, so ``n P -> f(1/2) / 2``.
    Friedman: ``W_n`` is asymptotically normal with variance ``n/12`` for
    every start, giving ``sqrt(3 / (pi n))``.
    A biased coin decays geometrically and is reported as ``alpha = inf``.
    """
    if scheme.kind is Kind.POLYA:
        log_beta = math.lgamma(w) + math.lgamma(b) - math.lgamma(w + b)
        return math.exp(-(w + b - 1) * math.log(2) - log_beta), 1.0
    if scheme.kind is Kind.FRIEDMAN:
        return math.sqrt(3 / math.pi), 0.5
    if scheme.p == Fraction(1, 2):
        return 1 / math.sqrt(math.pi), 0.5
    return 0.0, math.inf


def literature_classification(scheme: UrnScheme, d: int) -> str:
    """Published recurrence label of the origin for each scheme and dimension.

    These are reported as labels, not verified facts: the 1-D Polya walk is
    labelled null recurrent, yet it returns with probability
    ``E[2 min(theta, 1 - theta)]`` for ``theta ~ Beta(w, b)`` (1/2 at
    ``w = b = 1``), as ``RecurrenceDiagnostic.return_mass`` shows.
    """
    if scheme.kind is Kind.POLYA:
        return "null recurrent" if d == 1 else "transient"
    if scheme.kind is Kind.FRIEDMAN:
        if d == 1:
            return "recurrent (conjectured positive recurrent)"
        return "recurrent (type undetermined)" if d == 2 else "transient"
    if scheme.p != Fraction(1, 2):
        return "transient"
    return "recurrent" if d <= 2 else "transient"


@dataclass
class RecurrenceDiagnostic:
    scheme: str
    starts: list
    dims: int
    n_lo: int
    n_hi: int
    sum_lo: float
    sum_hi: float
    increment: float
    fitted_exponent: float
    asymptotic_constant: float
    asymptotic_exponent: float
    predicted_increment: float
    envelope: float
    tail_bound_lo: float | None
    tail_bound_hi: float | None
    verdict: str
    classification: str
    # P(H_0 <= 2 n_hi) for one-dimensional walks; None otherwise
    return_mass: float | None = None

    def as_dict(self) -> dict:
        # NaN and inf are not valid JSON
        return {k: None if isinstance(v, float) and not math.isfinite(v) else v
                for k, v in self.__dict__.items()}


# Fitted decay exponents at or below this are read as a divergent series.
DIVERGENCE_EXPONENT = 1.05


def recurrence_diagnostic(scheme: UrnScheme, starts=(1, 1), d: int = 1, n_lo: int = 100,
                          n_hi: int = 10_000, table: SeriesTable | None = None
                          ) -> RecurrenceDiagnostic:
    """Summarise the return series between half-times ``n_lo`` and ``n_hi``.

    ``fitted_exponent`` is the log-log slope of the terms between the two
    ends.  ``predicted_increment`` sums the asymptotic term
    ``c * n**-alpha`` over ``(n_lo, n_hi]``.  For ``alpha > 1`` the envelope
    ``max(c, max_n n**alpha * term_n)`` gives integral tail bounds beyond
    ``n_lo`` and beyond ``n_hi``.
    """
    if not 1 <= n_lo < n_hi:
        raise SeriesError(f"need 1 <= n_lo < n_hi, got {n_lo}, {n_hi}")
    starts = _per_dim_starts(d, starts)
    if table is None:
        table = series_partial_sums("return_series", scheme, starts, d, n_hi, mode="log")
    terms = table.terms[:n_hi]
    sums = table.partial_sums[:n_hi]

    c, alpha = 1.0, 0.0
    for w, b in starts:
        ci, ai = return_prob_asymptotic(scheme, w, b)
        c *= ci
        alpha += ai

    t_lo, t_hi = terms[n_lo - 1], terms[n_hi - 1]
    if t_lo > 0 and t_hi > 0:
        fitted = -math.log(t_hi / t_lo) / math.log(n_hi / n_lo)
    else:
        fitted = math.inf

    ns = np.arange(n_lo + 1, n_hi + 1, dtype=float)
    predicted = float(np.sum(c * ns ** -alpha)) if math.isfinite(alpha) else 0.0

    envelope = math.nan
    tail_lo = tail_hi = None
    if alpha > 1 and math.isfinite(alpha):
        window = np.arange(n_lo, n_hi + 1, dtype=float)
        envelope = max(c, float(np.max(window ** alpha * terms[n_lo - 1:n_hi])))
        tail_lo = envelope * n_lo ** (1 - alpha) / (alpha - 1)
        tail_hi = envelope * n_hi ** (1 - alpha) / (alpha - 1)
    elif math.isinf(alpha):
        tail_lo = tail_hi = 0.0

    verdict = "divergent" if fitted <= DIVERGENCE_EXPONENT else "convergent"
    # The return series diverging is not enough on its own for an urn walk,
    # which is not Markov: a 1-D Polya walk diverges yet escapes with positive
    # probability.  The first-return mass is reported so this shows up.
    mass = None
    if d == 1:
        mass = float(np.sum(_log_hitting_terms(scheme, *starts[0], n_hi)))
    return RecurrenceDiagnostic(
        scheme=str(scheme), starts=[list(s) for s in starts], dims=d,
        n_lo=n_lo, n_hi=n_hi,
        sum_lo=float(sums[n_lo - 1]), sum_hi=float(sums[n_hi - 1]),
        increment=float(sums[n_hi - 1] - sums[n_lo - 1]),
        fitted_exponent=fitted,
        asymptotic_constant=c, asymptotic_exponent=alpha,
        predicted_increment=predicted,
        envelope=envelope, tail_bound_lo=tail_lo, tail_bound_hi=tail_hi,
        verdict=verdict,
        classification=literature_classification(scheme, d),
        return_mass=mass,
    )
