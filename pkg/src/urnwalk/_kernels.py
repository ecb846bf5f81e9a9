"""Compiled stepping loops for the simulation engine.

Each coordinate consumes one uniform per step, in coordinate order.  A
draw is white iff ``u * total < whites`` (``u < p`` for a fixed coin),
exactly as :func:`urnwalk.urn.is_white`.  Kernels consume the uniform block
``u`` from index ``pos`` and report where they stopped, so the caller can
refill the block without changing which variate goes to which draw.
"""

from numba import njit

BERNOULLI, POLYA, FRIEDMAN = 0, 1, 2

NEED_MORE, HIT, CENSORED, DONE = 0, 1, 2, 3


@njit(cache=True, nogil=True)
def _draw(kind, w, b, p, wd, bd, i, n, x):
    if kind[i] == BERNOULLI:
        white = x < p[i]
    elif kind[i] == POLYA:
        white = x * (n + w[i] + b[i]) < w[i] + wd[i]
    else:
        white = x * (n + w[i] + b[i]) < w[i] + bd[i]
    if white:
        wd[i] += 1
    else:
        bd[i] += 1


@njit(cache=True, nogil=True)
def hitting_kernel(kind, w, b, p, wd, bd, n, cap, u, pos):
    """Step until every coordinate is back at 0, ``n`` reaches ``cap``, or ``u`` runs out.

    Returns ``(status, n, pos)``.
    """
    d = kind.size
    while n < cap:
        if pos + d > u.size:
            return NEED_MORE, n, pos
        origin = True
        for i in range(d):
            _draw(kind, w, b, p, wd, bd, i, n, u[pos])
            pos += 1
            if wd[i] != bd[i]:
                origin = False
        n += 1
        if origin:
            return HIT, n, pos
    return CENSORED, n, pos


@njit(cache=True, nogil=True)
def occupancy_kernel(kind, w, b, p, wd, bd, n, horizon, u, pos, counts):
    """Step up to ``horizon``, adding 1 to ``counts[t // 2 - 1]`` at each even ``t`` spent at 0."""
    d = kind.size
    while n < horizon:
        if pos + d > u.size:
            return NEED_MORE, n, pos
        origin = True
        for i in range(d):
            _draw(kind, w, b, p, wd, bd, i, n, u[pos])
            pos += 1
            if wd[i] != bd[i]:
                origin = False
        n += 1
        if origin and n % 2 == 0:
            counts[n // 2 - 1] += 1
    return DONE, n, pos
