import collections
import itertools

import numpy as np
import pytest
from scipy.stats import chisquare

from lilrs import (
    ChannelParams,
    Subspace,
    SubspaceTuple,
    draw_dimension_partition,
    gaussian_binomial,
    is_reachable,
    num_subspace_tuples,
    reach_pair,
    sum_subspace_distance,
    transmit,
)
from lilrs.channel import ChannelError, rand_below
from lilrs.subspace import iter_subspaces


def make_rng(seed=0):
    return np.random.Generator(np.random.PCG64(seed))


# -- counting ---------------------------------------------------------------


def test_num_tuples_single_shot():
    for N, g, q in [(3, 1, 2), (4, 2, 3), (2, 0, 2)]:
        assert num_subspace_tuples(N, g, 1, q) == gaussian_binomial(N, g, q)


def test_num_tuples_examples():
    assert num_subspace_tuples(1, 1, 2, 2) == 2
    assert num_subspace_tuples(2, 1, 2, 2) == 6


def test_num_tuples_out_of_range():
    assert num_subspace_tuples(2, 5, 2, 2) == 0
    assert num_subspace_tuples(2, -1, 2, 2) == 0


def test_num_tuples_brute_force():
    """Count tuples by enumerating all subspace pairs with the right sum-dimension."""
    q, N, ell = 2, 2, 2
    for total in range(0, N * ell + 1):
        count = 0
        for d1 in range(min(N, total) + 1):
            d2 = total - d1
            if d2 > N:
                continue
            count += gaussian_binomial(N, d1, q) * gaussian_binomial(N, d2, q)
        assert num_subspace_tuples(N, total, ell, q) == count


# -- partition drawing ------------------------------------------------------------


def test_partition_single_shot():
    rng = make_rng()
    for _ in range(10):
        assert draw_dimension_partition(4, 3, 1, 2, rng) == (3,)


def test_partition_forced():
    rng = make_rng()
    for _ in range(10):
        assert draw_dimension_partition(1, 2, 2, 2, rng) == (1, 1)


def test_partition_sums_and_caps():
    rng = make_rng(5)
    for _ in range(200):
        p = draw_dimension_partition(3, 4, 3, 2, rng)
        assert sum(p) == 4
        assert all(0 <= g <= 3 for g in p)


def test_partition_frequencies_balanced():
    """For Nbar=1, gamma=1, ell=2 both compositions carry equal weight."""
    rng = make_rng(17)
    n = 100_000
    ones = sum(draw_dimension_partition(1, 1, 2, 2, rng)[0] for _ in range(n))
    p = 0.5
    sigma = (n * p * (1 - p)) ** 0.5
    assert abs(ones - n * p) < 3 * sigma


def test_partition_frequencies_weighted():
    """Partition marginals follow prod_i [N choose g_i]_q / total."""
    rng = make_rng(99)
    N, total_dim, ell, q = 2, 2, 2, 2
    n = 50_000
    counts = collections.Counter(
        draw_dimension_partition(N, total_dim, ell, q, rng) for _ in range(n)
    )
    total = num_subspace_tuples(N, total_dim, ell, q)
    for part, c in counts.items():
        expect = 1.0
        for g in part:
            expect *= gaussian_binomial(N, g, q)
        expect /= total
        sigma = (n * expect * (1 - expect)) ** 0.5
        assert abs(c - n * expect) < 4 * sigma


def test_rand_below_range_and_determinism():
    a = [rand_below(make_rng(3), 10**30) for _ in range(5)]
    b = [rand_below(make_rng(3), 10**30) for _ in range(5)]
    assert a[0] == b[0]
    assert all(0 <= v < 10**30 for v in a)


# -- transmit -------------------------------------------------------------------------


def _input_tuple(q=2, Nbar=3, ntbar=1, ell=2):
    shots = []
    for i in range(ell):
        rows = np.zeros((ntbar, Nbar), dtype=np.int64)
        for j in range(ntbar):
            rows[j, j] = 1
        shots.append(Subspace(q, Nbar, rows))
    return SubspaceTuple(shots)


def test_transmit_identity():
    V = _input_tuple()
    U, real = transmit(V, ChannelParams(3, 1, 2, 0, 0, seed=1))
    assert U == V
    assert sum_subspace_distance(U, V) == 0
    assert real.insertion_partition == (0, 0)


def test_transmit_distance_is_budget_sum():
    V = _input_tuple(q=3, Nbar=4, ntbar=2, ell=2)
    rng = make_rng(7)
    for gamma, delta in [(1, 0), (0, 1), (2, 1), (3, 2)]:
        U, real = transmit(V, ChannelParams(4, 2, 2, gamma, delta), rng)
        assert sum_subspace_distance(U, V) == gamma + delta
        assert sum(real.insertion_partition) == gamma
        assert sum(real.deletion_partition) == delta


def test_transmit_dim_partition_equation():
    V = _input_tuple(q=2, Nbar=4, ntbar=2, ell=3)
    rng = make_rng(11)
    for _ in range(20):
        U, real = transmit(V, ChannelParams(4, 2, 3, 2, 1), rng)
        expect = tuple(
            2 - d + g for g, d in zip(real.insertion_partition, real.deletion_partition)
        )
        assert U.dim_partition == expect


def test_transmit_determinism():
    V = _input_tuple(q=3, Nbar=4, ntbar=2, ell=2)
    U1, r1 = transmit(V, ChannelParams(4, 2, 2, 2, 1, seed=42))
    U2, r2 = transmit(V, ChannelParams(4, 2, 2, 2, 1, seed=42))
    assert U1 == U2
    assert r1.insertion_partition == r2.insertion_partition
    assert r1.kept == r2.kept and r1.errors == r2.errors


def test_transmit_error_spaces_disjoint():
    V = _input_tuple(q=2, Nbar=4, ntbar=2, ell=2)
    rng = make_rng(13)
    for _ in range(20):
        U, real = transmit(V, ChannelParams(4, 2, 2, 2, 1), rng)
        for shot, E in zip(V.shots, real.errors):
            assert shot.intersect(E).dim == 0


def test_transmit_infeasible_rejected():
    V = _input_tuple()
    with pytest.raises(ChannelError):
        transmit(V, ChannelParams(3, 1, 2, 5, 0, seed=0))  # gamma > ell*(N-nt) = 4
    with pytest.raises(ChannelError):
        transmit(V, ChannelParams(3, 1, 2, 0, 3, seed=0))  # delta > ell*nt = 2


def test_transmit_wrong_input_dim():
    V = _input_tuple(ntbar=1)
    with pytest.raises(ChannelError):
        transmit(V, ChannelParams(3, 2, 2, 0, 0, seed=0))


# -- reachability -----------------------------------------------------------------------


def test_reachable_self():
    V = _input_tuple()
    assert is_reachable(V, V, 0, 0)
    assert not is_reachable(V, V, 1, 0)


def test_reachable_implies_distance():
    rng = make_rng(3)
    V = _input_tuple(q=2, Nbar=4, ntbar=2, ell=2)
    for _ in range(30):
        gamma = int(rng.integers(0, 4))
        delta = int(rng.integers(0, 4))
        U, _ = transmit(V, ChannelParams(4, 2, 2, gamma, delta), rng)
        assert is_reachable(U, V, gamma, delta)
        assert sum_subspace_distance(U, V) == gamma + delta
        assert reach_pair(U, V) == (gamma, delta)


# -- per-shot error-space uniformity -----------------------------------------------------


def test_single_shot_error_uniform():
    """Nbar=2, ntbar=1, gamma=1: both admissible error lines occur half the time."""
    V = SubspaceTuple([Subspace(2, 2, [[1, 0]])])
    admissible = [
        E for E in iter_subspaces(2, 2, 1) if E.intersect(V.shots[0]).dim == 0
    ]
    assert len(admissible) == 2
    rng = make_rng(23)
    n = 100_000
    hits = collections.Counter()
    for _ in range(n):
        _, real = transmit(V, ChannelParams(2, 1, 1, 1, 0), rng)
        hits[real.errors[0]] += 1
    assert set(hits) == set(admissible)
    p = 0.5
    sigma = (n * p * (1 - p)) ** 0.5
    for c in hits.values():
        assert abs(c - n * p) < 3 * sigma


def test_realization_uniformity_chi_square_q3():
    """Full realization distribution is uniform (chi-square) on a small q=3 support."""
    V = SubspaceTuple([Subspace(3, 2, [[1, 0]]), Subspace(3, 2, [[1, 0]])])
    rng = make_rng(31)
    n = 100_000
    counts = collections.Counter()
    for _ in range(n):
        _, real = transmit(V, ChannelParams(2, 1, 2, 1, 1), rng)
        key = (
            real.insertion_partition,
            real.deletion_partition,
            tuple(s.basis.tobytes() for s in real.kept),
            tuple(s.basis.tobytes() for s in real.errors),
        )
        counts[key] += 1
    # support: insertion shot (2) x error line (3 per shot) x deletion shot (2) = 12
    assert len(counts) == 12
    assert chisquare(list(counts.values())).pvalue > 0.001
