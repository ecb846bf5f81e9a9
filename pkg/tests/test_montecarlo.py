import io
import math

import numpy as np
import pytest

from urnwalk.exact import ddim_return_prob, friedman_white_draw_pmf, polya_hitting_pmf
from urnwalk.montecarlo import (
    SimConfig,
    empirical_return_frequency,
    hitting_arrays,
    replica_generator,
    run_replications,
    samples_to_csv,
    simulate_hitting_time,
)
from urnwalk.urn import WHITE, UrnError, UrnScheme
from urnwalk.walk import new_walk, step, step_with

POLYA = UrnScheme.polya()
FRIEDMAN = UrnScheme.friedman()
COIN = UrnScheme.bernoulli()


def reference_hitting_time(scheme, starts, cap, rng, forced):
    """Pure-python replica built on ``walk.step``, drawing from the same generator."""
    walk = new_walk(len(starts), scheme, [s[0] for s in starts], [s[1] for s in starts])
    if forced:
        walk = step_with(walk, [WHITE] * len(starts))
    while walk.time < cap:
        walk = step(walk, rng)
        if walk.at_origin():
            return True, walk.time
    return False, cap


@pytest.mark.parametrize("scheme,starts", [
    (POLYA, ((1, 1),)), (POLYA, ((2, 1), (1, 3))), (FRIEDMAN, ((1, 0),)),
    (FRIEDMAN, ((1, 0), (1, 0))), (FRIEDMAN, ((2, 1),)), (COIN, ((1, 1), (1, 1))),
])
def test_kernel_matches_python_reference(scheme, starts):
    cfg = SimConfig(scheme, len(starts), starts, replicas=60, cap=400, seed=11)
    hits, times = hitting_arrays(cfg)
    for r in range(cfg.replicas):
        ref = reference_hitting_time(scheme, starts, cfg.cap, replica_generator(cfg.seed, r),
                                     cfg.forced_first_draw)
        assert (bool(hits[r]), int(times[r])) == ref


def test_single_replica_function():
    rng = replica_generator(3, 0)
    outcome, t = simulate_hitting_time(POLYA, 1, 1, 1000, rng)
    assert outcome in ("hit", "censored")
    assert t % 2 == 0 and t <= 1000
    assert simulate_hitting_time(POLYA, 1, 1, 1000, replica_generator(3, 0)) == (outcome, t)
    with pytest.raises(ValueError):
        simulate_hitting_time(POLYA, 1, 1, 10)
    with pytest.raises(UrnError):
        simulate_hitting_time(POLYA, 0, 1, 10, rng)


def test_config_validation():
    with pytest.raises(UrnError):
        SimConfig(POLYA, 1, ((1, 0),))
    with pytest.raises(ValueError):
        SimConfig(POLYA, 2, ((1, 1), (1, 1), (1, 1)))
    with pytest.raises(ValueError):
        SimConfig(POLYA, replicas=0)
    assert SimConfig(POLYA, 3, ((2, 1),)).starts == ((2, 1),) * 3
    assert SimConfig(FRIEDMAN, 2, ((1, 0),)).forced_first_draw
    assert not SimConfig(FRIEDMAN, 2, ((1, 0), (2, 0))).forced_first_draw


def test_determinism_and_parity():
    cfg = SimConfig(POLYA, 1, ((1, 1),), replicas=500, cap=2000, seed=5)
    a, b = hitting_arrays(cfg), hitting_arrays(cfg)
    np.testing.assert_array_equal(a[0], b[0])
    np.testing.assert_array_equal(a[1], b[1])
    assert np.all(a[1][a[0]] % 2 == 0)
    other = hitting_arrays(SimConfig(POLYA, 1, ((1, 1),), replicas=500, cap=2000, seed=6))
    assert not np.array_equal(a[1], other[1])


def test_prefix_replicas_are_stable():
    small = hitting_arrays(SimConfig(POLYA, replicas=50, cap=500, seed=9))
    large = hitting_arrays(SimConfig(POLYA, replicas=200, cap=500, seed=9))
    np.testing.assert_array_equal(small[1], large[1][:50])


def test_censoring_monotone_in_cap():
    counts = []
    for cap in (10, 100, 1000):
        hits, times = hitting_arrays(SimConfig(POLYA, replicas=400, cap=cap, seed=2))
        counts.append(int((~hits).sum()))
        assert np.all(times[~hits] == cap)
    assert counts[0] >= counts[1] >= counts[2]


def test_workers_do_not_change_results():
    cfg = SimConfig(FRIEDMAN, 1, ((1, 0),), replicas=400, cap=10_000, seed=8)
    a = hitting_arrays(cfg, workers=1)
    b = hitting_arrays(cfg, workers=4)
    np.testing.assert_array_equal(a[0], b[0])
    np.testing.assert_array_equal(a[1], b[1])
    occ1 = empirical_return_frequency(cfg, 20, workers=1)
    occ4 = empirical_return_frequency(cfg, 20, workers=4)
    assert occ1 == occ4


def within(estimate, p, n, k=3.0):
    return abs(estimate - p) <= k * math.sqrt(p * (1 - p) / n)


def test_friedman_first_return_pmf():
    cfg = SimConfig(FRIEDMAN, 1, ((1, 0),), replicas=20_000, cap=10_000, seed=1)
    _, stats = run_replications(cfg)
    # from (1, 0) the walk is forced to +1, so H_0 = 2 iff the second draw is blue
    assert within(stats.pmf[2], 0.5, cfg.replicas)
    assert 1 not in stats.pmf


def test_polya_first_return_pmf():
    cfg = SimConfig(POLYA, 1, ((1, 1),), replicas=20_000, cap=10_000, seed=4)
    _, stats = run_replications(cfg)
    for n in (1, 2, 3):
        assert within(stats.pmf.get(2 * n, 0.0), float(polya_hitting_pmf(1, 1, 2 * n)),
                      cfg.replicas)


@pytest.mark.parametrize("scheme,starts,d", [
    (POLYA, (1, 1), 1), (POLYA, (1, 1), 2), (FRIEDMAN, (1, 0), 1), (COIN, (1, 1), 2),
])
def test_occupancy_matches_exact(scheme, starts, d):
    cfg = SimConfig(scheme, d, (starts,), replicas=20_000, cap=100, seed=3)
    freq = empirical_return_frequency(cfg, 8)
    for m in (2, 4, 8):
        p = float(ddim_return_prob(scheme, [starts] * d, d, m))
        assert within(freq[m], p, cfg.replicas, 4.0), (m, freq[m], p)


def test_friedman_draw_count_matches_eulerian():
    # W_3 from (1, 0): P(W_3 = 2) = A(3, 1) / 3! = 2/3 by the Eulerian law
    rng = np.random.default_rng(0)
    n, white = 30_000, 0
    for _ in range(n):
        walk = new_walk(1, FRIEDMAN, 1, 0)
        for _ in range(3):
            walk = step(walk, rng)
        white += walk.urns[0].white_draws == 2
    assert within(white / n, float(friedman_white_draw_pmf(3, 2)), n)


def test_stats_and_csv():
    cfg = SimConfig(POLYA, replicas=300, cap=50, seed=7)
    samples, stats = run_replications(cfg)
    assert stats.hits + stats.censored == cfg.replicas
    assert stats.censored > 0
    assert stats.median <= stats.q90 <= stats.q99 <= cfg.cap
    assert sum(stats.pmf.values()) == pytest.approx(stats.hits / cfg.replicas)
    buf = io.StringIO()
    samples_to_csv(samples, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "replica,outcome,time"
    assert len(lines) == cfg.replicas + 1
    assert lines[1].split(",")[0] == "0"


def test_polya_walk_escapes_with_probability_one_half():
    cfg = SimConfig(POLYA, 1, ((1, 1),), replicas=4000, cap=20_000, seed=13)
    hits, _ = hitting_arrays(cfg)
    # returns after the cap carry mass about 1/(2 * cap), negligible here
    assert within(hits.mean(), 0.5, cfg.replicas)
