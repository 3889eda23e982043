import numpy as np
import pytest

from empsup import BridgePath, argmax_abs, sample_bridge
from empsup.bridge import argmax_abs_rows, bridge_stream, sample_bridges
from empsup.harness import ks_distance
from empsup.limits import kolmogorov_cdf


@pytest.fixture(scope="module")
def paths():
    return sample_bridges(64, 100_000, master_seed=7)


def test_pinned_endpoints():
    for m in (2, 3, 64, 1001):
        p = sample_bridge(m, np.random.default_rng(m))
        assert p.nodes.shape == (m + 1,)
        assert p.nodes[0] == 0.0 and p.nodes[-1] == 0.0
        assert np.all(np.isfinite(p.nodes))


def test_rejects_small_m():
    with pytest.raises(ValueError):
        sample_bridge(1, np.random.default_rng(0))


def test_midpoint_moments(paths):
    mid = paths[:, 32]
    # E B(1/2) = 0, Var B(1/2) = 1/4
    assert abs(mid.mean()) <= 3 * 0.5 / np.sqrt(mid.size)
    assert mid.var() == pytest.approx(0.25, abs=0.01)


def test_streams_are_replayable():
    a = sample_bridges(32, 5, master_seed=11, start=3)
    b = sample_bridge(32, bridge_stream(11, 4)).nodes
    assert np.array_equal(a[1], b)


def test_argmax_degenerate_and_unique():
    assert argmax_abs(BridgePath(4, np.zeros(5))) == (0.0, 0.0)
    nodes = np.array([0.0, 0.1, -0.7, 0.3, 0.0])
    assert argmax_abs(BridgePath(4, nodes)) == (0.5, 0.7)


def test_argmax_ties_take_smallest_index():
    nodes = np.array([0.0, 0.4, -0.4, 0.0])
    assert argmax_abs(BridgePath(3, nodes)) == (1 / 3, 0.4)


def test_reflection_and_time_reversal():
    rng = np.random.default_rng(2)
    for _ in range(200):
        p = sample_bridge(50, rng)
        loc, val = argmax_abs(p)
        assert argmax_abs(BridgePath(50, -p.nodes)) == (loc, val)
        rloc, rval = argmax_abs(BridgePath(50, p.nodes[::-1].copy()))
        assert rval == val
        assert abs(rloc - (1 - loc)) <= 1 / 50 + 1e-15


def test_location_symmetry(paths):
    loc, _ = argmax_abs_rows(paths[:20_000])
    p = np.mean(loc <= 0.5)
    # the grid point 1/2 itself is included in the left half
    assert abs(p - 0.5) <= 3 * np.sqrt(0.25 / loc.size) + 1 / 64


@pytest.mark.slow
def test_sup_law_against_kolmogorov():
    nodes = sample_bridges(4096, 10_000, master_seed=99)
    _, val = argmax_abs_rows(nodes)
    assert ks_distance(val, kolmogorov_cdf) <= 0.03
