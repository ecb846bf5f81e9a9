"""Dynamic-programming oracles over (step, white-draw count).

The urn composition after ``n`` draws is a function of ``(n, W_n)``, so the
law of ``W_n`` and of the first return time can be propagated forward
without enumerating paths.  For the urn schemes every transition at step
``n`` shares the denominator ``n + w + b`` (``s`` for a Bernoulli coin
``p = r/s``), so the exact versions carry integer numerators over one
running common denominator and only build fractions at the end.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..urn import Kind, UrnScheme, validate_start


def _weights(scheme: UrnScheme, w: int, b: int):
    """Return ``f(n, k) -> (white_weight, blue_weight, denominator)`` for integer DP."""
    if scheme.kind is Kind.BERNOULLI:
        r, s = scheme.p.numerator, scheme.p.denominator
        return lambda n, k: (r, s - r, s)
    if scheme.kind is Kind.POLYA:
        return lambda n, k: (w + k, b + n - k, n + w + b)
    return lambda n, k: (w + n - k, b + k, n + w + b)


def draw_count_pmf_dp(scheme: UrnScheme, w: int, b: int, n: int) -> dict[int, Fraction]:
    """Exact law of ``W_n`` as ``{k: P(W_n = k)}`` (zero entries omitted)."""
    validate_start(scheme, w, b)
    if n < 0:
        raise ValueError(f"number of draws must be nonnegative, got {n}")
    weights = _weights(scheme, w, b)
    nums = [1]
    denom = 1
    for step in range(n):
        nxt = [0] * (step + 2)
        for k, v in enumerate(nums):
            if v:
                ww, bw, _ = weights(step, k)
                nxt[k + 1] += v * ww
                nxt[k] += v * bw
        denom *= weights(step, 0)[2]
        nums = nxt
    return {k: Fraction(v, denom) for k, v in enumerate(nums) if v}


def hitting_pmf_dp(scheme: UrnScheme, w: int, b: int, N: int) -> dict[int, Fraction]:
    """Exact ``P(H_0 = 2n)`` for ``1 <= n <= N`` as ``{2n: prob}``.

    Paths are absorbed the first time ``W = B`` after the first draw; the
    state is the white-draw count ``k`` at step ``t`` (position ``2k - t``).
    """
    validate_start(scheme, w, b)
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    weights = _weights(scheme, w, b)
    nums = {0: 1}
    denom = 1
    out = {}
    for t in range(2 * N):
        nxt: dict[int, int] = {}
        step_den = weights(t, 0)[2]
        for k, v in nums.items():
            ww, bw, _ = weights(t, k)
            if ww:
                nxt[k + 1] = nxt.get(k + 1, 0) + v * ww
            if bw:
                nxt[k] = nxt.get(k, 0) + v * bw
        denom *= step_den
        if t % 2 == 1:
            out[t + 1] = Fraction(nxt.pop((t + 1) // 2, 0), denom)
        nums = {k: v for k, v in nxt.items() if v}
    return out


# -- floating-point versions for large n -------------------------------------

# Entries below this are dropped from the ends of the float law; they cannot
# move any double-precision sum we report.
_TINY = 1e-300


class _FloatLaw:
    """Law of ``W_t`` on a trimmed window ``k = lo .. lo + len(probs) - 1``."""

    def __init__(self, scheme: UrnScheme, w: int, b: int):
        validate_start(scheme, w, b)
        self.scheme, self.w, self.b = scheme, w, b
        self.t = 0
        self.lo = 0
        self.probs = np.ones(1)

    def step(self) -> None:
        k = self.lo + np.arange(self.probs.size, dtype=float)
        t, w, b = self.t, self.w, self.b
        if self.scheme.kind is Kind.BERNOULLI:
            pw = np.full(self.probs.size, float(self.scheme.p))
        elif self.scheme.kind is Kind.POLYA:
            pw = (w + k) / (t + w + b)
        else:
            pw = (w + t - k) / (t + w + b)
        nxt = np.zeros(self.probs.size + 1)
        nxt[1:] += self.probs * pw
        nxt[:-1] += self.probs * (1.0 - pw)
        keep = np.flatnonzero(nxt > _TINY)
        if keep.size:
            self.lo += int(keep[0])
            nxt = nxt[keep[0]:keep[-1] + 1]
        self.probs = nxt
        self.t += 1

    def at(self, k: int) -> float:
        i = k - self.lo
        return float(self.probs[i]) if 0 <= i < self.probs.size else 0.0

    def remove(self, k: int) -> None:
        i = k - self.lo
        if 0 <= i < self.probs.size:
            self.probs[i] = 0.0


def return_probs_float(scheme: UrnScheme, w: int, b: int, N: int) -> np.ndarray:
    """``P(X_{2n} = 0)`` for ``n = 1..N`` in double precision (array of length N)."""
    law = _FloatLaw(scheme, w, b)
    out = np.empty(N)
    for n in range(N):
        law.step()
        law.step()
        out[n] = law.at(n + 1)
    return out


def hitting_probs_float(scheme: UrnScheme, w: int, b: int, N: int) -> np.ndarray:
    """``P(H_0 = 2n)`` for ``n = 1..N`` in double precision (array of length N)."""
    law = _FloatLaw(scheme, w, b)
    out = np.empty(N)
    for n in range(N):
        law.step()
        law.step()
        out[n] = law.at(n + 1)
        law.remove(n + 1)
    return out
