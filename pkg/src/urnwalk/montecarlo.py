"""Seeded, parallel replication of first-return times and origin occupancy.

Reproducibility contract
------------------------
Replica ``r`` of a run with seed ``s`` draws its uniforms from
``PCG64(SeedSequence(s, spawn_key=(r,)))`` -- the same stream as
``SeedSequence(s).spawn(...)[r]`` -- so each replica's outcome depends only
on ``(s, r)`` and the configuration.  Replicas are merged by index, which
makes results identical for any number of workers.

Each step consumes one uniform per coordinate.  When every coordinate is a
Friedman urn holding a single white ball, the first draw is forced white
and is applied before the loop without consuming a variate (the
``W <- 1, B <- 0`` start); every other configuration starts at ``n = 0``.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .urn import Kind, UrnError, UrnScheme, validate_start

logger = logging.getLogger(__name__)

DEFAULT_CAP = 1_000_000

_KIND_CODES = {
    Kind.BERNOULLI: _kernels.BERNOULLI,
    Kind.POLYA: _kernels.POLYA,
    Kind.FRIEDMAN: _kernels.FRIEDMAN,
}
_FIRST_BLOCK = 64
_MAX_BLOCK = 1 << 16


@dataclass(frozen=True)
class SimConfig:
    scheme: UrnScheme
    dims: int = 1
    starts: tuple[tuple[int, int], ...] = ((1, 1),)
    replicas: int = 10_000
    cap: int = DEFAULT_CAP
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.scheme, str):
            object.__setattr__(self, "scheme", UrnScheme.parse(self.scheme))
        if self.dims < 1:
            raise ValueError(f"dims must be positive, got {self.dims}")
        starts = tuple(tuple(int(v) for v in s) for s in self.starts)
        if len(starts) == 1 and self.dims > 1:
            starts = starts * self.dims
        if len(starts) != self.dims:
            raise ValueError(f"expected {self.dims} (w, b) pairs, got {len(starts)}")
        for w, b in starts:
            validate_start(self.scheme, w, b)
        object.__setattr__(self, "starts", starts)
        if self.replicas < 1:
            raise ValueError(f"replicas must be at least 1, got {self.replicas}")
        if self.cap < 2:
            raise ValueError(f"cap must be at least 2, got {self.cap}")
        if not -(1 << 63) <= self.seed < (1 << 64):
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")

    @property
    def forced_first_draw(self) -> bool:
        return self.scheme.kind is Kind.FRIEDMAN and all(s == (1, 0) for s in self.starts)

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme.name,
            "p": str(self.scheme.p) if self.scheme.kind is Kind.BERNOULLI else None,
            "dims": self.dims,
            "starts": [list(s) for s in self.starts],
            "replicas": self.replicas,
            "cap": self.cap,
            "seed": self.seed,
        }


class HittingSample(NamedTuple):
    replica: int
    outcome: str  # "hit" or "censored"
    time: int


@dataclass
class SampleStats:
    """Aggregate of a replication run; ``mean`` etc. are over hits only."""

    replicas: int
    hits: int
    censored: int
    mean: float | None
    variance: float | None
    median: int | None
    q90: int | None
    q99: int | None
    seed: int
    cap: int
    pmf: dict[int, float] = field(default_factory=dict, repr=False)

    FIELDS = ("replicas", "hits", "censored", "mean", "variance",
              "median", "q90", "q99", "seed", "cap")

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}


def replica_generator(seed: int, replica: int) -> np.random.Generator:
    seq = np.random.SeedSequence(seed % (1 << 64), spawn_key=(replica,))
    return np.random.Generator(np.random.PCG64(seq))


class _Walker:
    """Per-replica kernel arguments and the block-refill loop."""

    def __init__(self, scheme: UrnScheme, starts, forced: bool):
        d = len(starts)
        self.kind = np.full(d, _KIND_CODES[scheme.kind], dtype=np.int64)
        self.w = np.array([s[0] for s in starts], dtype=np.int64)
        self.b = np.array([s[1] for s in starts], dtype=np.int64)
        self.p = np.full(d, float(scheme.p))
        self.forced = forced

    def _start(self):
        d = self.kind.size
        wd = np.zeros(d, dtype=np.int64)
        bd = np.zeros(d, dtype=np.int64)
        n = 0
        if self.forced:
            wd[:] = 1
            n = 1
        return wd, bd, n

    def hitting_time(self, rng: np.random.Generator, cap: int) -> tuple[bool, int]:
        wd, bd, n = self._start()
        d = self.kind.size
        block = _FIRST_BLOCK
        while True:
            u = rng.random(block * d)
            status, n, _ = _kernels.hitting_kernel(
                self.kind, self.w, self.b, self.p, wd, bd, n, cap, u, 0)
            if status == _kernels.HIT:
                return True, n
            if status == _kernels.CENSORED:
                return False, cap
            block = min(block * 2, _MAX_BLOCK)

    def occupancy(self, rng: np.random.Generator, horizon: int, counts: np.ndarray) -> None:
        wd, bd, n = self._start()
        d = self.kind.size
        block = _FIRST_BLOCK
        while True:
            u = rng.random(min(block, horizon - n) * d)
            status, n, _ = _kernels.occupancy_kernel(
                self.kind, self.w, self.b, self.p, wd, bd, n, horizon, u, 0, counts)
            if status == _kernels.DONE:
                return
            block = min(block * 2, _MAX_BLOCK)


def simulate_hitting_time(scheme: UrnScheme, w: int = 1, b: int = 1, cap: int = DEFAULT_CAP,
                          rng: np.random.Generator | None = None, dims: int = 1,
                          forced_first_draw: bool | None = None) -> tuple[str, int]:
    """One replica: ``("hit", time)`` or ``("censored", cap)``.

    In ``dims`` dimensions (all coordinates started at ``(w, b)``) the hit is
    the first time every coordinate is at 0 simultaneously.
    """
    validate_start(scheme, w, b)
    if rng is None:
        raise ValueError("an explicit rng is required")
    if forced_first_draw is None:
        forced_first_draw = scheme.kind is Kind.FRIEDMAN and (w, b) == (1, 0)
    walker = _Walker(scheme, [(w, b)] * dims, forced_first_draw)
    hit, time = walker.hitting_time(rng, cap)
    return ("hit" if hit else "censored"), time


def _hitting_chunk(cfg: SimConfig, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    walker = _Walker(cfg.scheme, cfg.starts, cfg.forced_first_draw)
    hits = np.zeros(hi - lo, dtype=bool)
    times = np.zeros(hi - lo, dtype=np.int64)
    for j, r in enumerate(range(lo, hi)):
        hits[j], times[j] = walker.hitting_time(replica_generator(cfg.seed, r), cfg.cap)
    return hits, times


def _occupancy_chunk(cfg: SimConfig, horizon: int, lo: int, hi: int) -> np.ndarray:
    walker = _Walker(cfg.scheme, cfg.starts, cfg.forced_first_draw)
    counts = np.zeros(horizon // 2, dtype=np.int64)
    for r in range(lo, hi):
        walker.occupancy(replica_generator(cfg.seed, r), horizon, counts)
    return counts


def _chunks(replicas: int, workers: int) -> list[tuple[int, int]]:
    n_chunks = max(1, min(replicas, 4 * workers))
    edges = np.linspace(0, replicas, n_chunks + 1).astype(int)
    return [(int(a), int(c)) for a, c in zip(edges[:-1], edges[1:]) if c > a]


def _resolve_workers(workers: int | None) -> int:
    if workers is None or workers == 0:
        return os.cpu_count() or 1
    if workers < 0:
        raise ValueError(f"workers must be nonnegative, got {workers}")
    return workers


def _map_chunks(fn, cfg, extra, chunks, workers):
    if workers == 1 or len(chunks) == 1:
        return [fn(cfg, *extra, lo, hi) for lo, hi in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, cfg, *extra, lo, hi) for lo, hi in chunks]
        return [f.result() for f in futures]


def hitting_arrays(cfg: SimConfig, workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """``(hit, time)`` arrays indexed by replica."""
    workers = _resolve_workers(workers)
    parts = _map_chunks(_hitting_chunk, cfg, (), _chunks(cfg.replicas, workers), workers)
    hits = np.concatenate([p[0] for p in parts])
    times = np.concatenate([p[1] for p in parts])
    return hits, times


def summarize(cfg: SimConfig, hits: np.ndarray, times: np.ndarray) -> SampleStats:
    hit_times = times[hits]
    n_hits = int(hit_times.size)
    mean = variance = median = q90 = q99 = None
    if n_hits:
        mean = float(hit_times.mean())
        variance = float(hit_times.var(ddof=1)) if n_hits > 1 else None
        median, q90, q99 = (int(q) for q in np.quantile(
            hit_times, [0.5, 0.9, 0.99], method="inverted_cdf"))
    values, counts = np.unique(hit_times, return_counts=True)
    pmf = {int(v): int(c) / cfg.replicas for v, c in zip(values, counts)}
    return SampleStats(
        replicas=cfg.replicas, hits=n_hits, censored=cfg.replicas - n_hits,
        mean=mean, variance=variance, median=median, q90=q90, q99=q99,
        seed=cfg.seed, cap=cfg.cap, pmf=pmf,
    )


def run_replications(cfg: SimConfig, workers: int = 1) -> tuple[list[HittingSample], SampleStats]:
    """Run ``cfg.replicas`` first-return simulations, optionally across processes."""
    hits, times = hitting_arrays(cfg, workers)
    samples = [HittingSample(r, "hit" if h else "censored", int(t))
               for r, (h, t) in enumerate(zip(hits.tolist(), times.tolist()))]
    stats = summarize(cfg, hits, times)
    if stats.censored:
        logger.info("%d of %d replicas censored at cap %d", stats.censored, cfg.replicas, cfg.cap)
    return samples, stats


def empirical_return_frequency(cfg: SimConfig, horizon: int, workers: int = 1) -> dict[int, float]:
    """Fraction of replicas sitting at the origin at each even time ``2 .. horizon``."""
    if horizon < 2:
        raise ValueError(f"horizon must be at least 2, got {horizon}")
    if horizon > cfg.cap:
        raise ValueError(f"horizon {horizon} exceeds cap {cfg.cap}")
    workers = _resolve_workers(workers)
    parts = _map_chunks(_occupancy_chunk, cfg, (horizon,), _chunks(cfg.replicas, workers),
                        workers)
    counts = np.sum(parts, axis=0)
    return {2 * (i + 1): int(c) / cfg.replicas for i, c in enumerate(counts)}


def samples_to_csv(samples, fh) -> None:
    fh.write("replica,outcome,time\n")
    for s in samples:
        fh.write(f"{s.replica},{s.outcome},{s.time}\n")


__all__ = [
    "DEFAULT_CAP",
    "HittingSample",
    "SampleStats",
    "SimConfig",
    "UrnError",
    "empirical_return_frequency",
    "hitting_arrays",
    "replica_generator",
    "run_replications",
    "samples_to_csv",
    "simulate_hitting_time",
    "summarize",
]
