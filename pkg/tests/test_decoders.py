import numpy as np
import pytest

from lilrs import (
    CodeSpec,
    FailureReason,
    ReceivedWord,
    SkewPolynomial,
    build_interpolation_matrix,
    build_lo_matrix,
    complementary_decode,
    complement,
    encode,
    heuristic_failure_bound,
    is_reachable,
    list_decode,
    lo_decode,
    reach_pair,
    root_find,
    solve_interpolation,
    strict_failure_bound,
    transmit,
    unique_decode,
)
from lilrs.decoders import (
    DecodingError,
    _annihilates_all,
    evaluate_interpolation_maps,
)
from lilrs.linalg import fq_times_field, rank
from lilrs.montecarlo import trial_rng


def channel_word(spec, gamma, delta, seed):
    rng = trial_rng(seed, gamma, delta, 0)
    msg = spec.random_message(rng)
    received, real = transmit(encode(spec, msg), spec.channel_params(gamma, delta), rng)
    return msg, ReceivedWord.from_subspace_tuple(spec, received), real


# -- Loidreau-Overbeck decoding matrix ------------------------------------------


def test_lo_matrix_shape(sim_spec):
    msg, rw, _ = channel_word(sim_spec, 6, 1, 1)
    L = build_lo_matrix(rw, 1)
    assert L.shape == (10, 11)


def test_lo_matrix_noiseless_rank(sim_spec, rng):
    cw = encode(sim_spec, sim_spec.random_message(rng))
    rw = ReceivedWord.from_subspace_tuple(sim_spec, cw)
    L = build_lo_matrix(rw, 0)
    assert rank(sim_spec.field, L) == rw.total_dim - 1


def test_lo_matrix_rank_invariant_under_basis_change(sim_spec, rng):
    """Recombining one shot's basis rows over F_q does not change the rank."""
    from lilrs.linalg import rank_q

    msg, rw, _ = channel_word(sim_spec, 3, 1, 5)
    base_rank = rank(sim_spec.field, build_lo_matrix(rw, 1))
    n0 = rw.shots[0].shape[0]
    q = sim_spec.field.q
    while True:
        W = rng.integers(0, q, size=(n0, n0), dtype=np.int64)
        if rank_q(W, q) == n0:
            break
    shots = [fq_times_field(sim_spec.field, W, rw.shots[0])] + list(rw.shots[1:])
    rw2 = ReceivedWord(sim_spec, shots)
    assert rank(sim_spec.field, build_lo_matrix(rw2, 1)) == base_rank


def test_lo_matrix_degenerate_rejected(sim_spec, rng):
    cw = encode(sim_spec, sim_spec.random_message(rng))
    rw = ReceivedWord.from_subspace_tuple(sim_spec, cw)
    with pytest.raises(DecodingError):
        build_lo_matrix(rw, 3)  # n_t - delta - k = 0


# -- LO decoding --------------------------------------------------------------------


def test_lo_noiseless(sim_spec, rng):
    msg = sim_spec.random_message(rng)
    rw = ReceivedWord.from_subspace_tuple(sim_spec, encode(sim_spec, msg))
    out = lo_decode(rw, 0)
    assert out.is_unique and out.message == msg


def test_lo_in_region_success(sim_spec):
    hits = 0
    for seed in range(20):
        msg, rw, _ = channel_word(sim_spec, 6, 1, seed)
        out = lo_decode(rw, 1)
        hits += out.is_unique and out.message == msg
    assert hits >= 18  # bound allows ~21% failures; typical rate is ~3%


def test_lo_beyond_region_fails_structurally(sim_spec):
    """gamma = gamma_max + 1 leaves a kernel of dimension >= 2 by row counting."""
    for seed in range(3):
        msg, rw, _ = channel_word(sim_spec, 7, 1, seed)
        out = lo_decode(rw, 1)
        assert out.is_failure and out.reason is FailureReason.KERNEL_TOO_LARGE


def test_lo_kernel_weight_and_noncorrupted_rows(sim_spec):
    """On a successful instance: per-shot kernel rank n_i - delta_i, and the
    transformed top rows lie in the intersection of sent and received spaces."""
    from lilrs.linalg import rank_q, right_kernel, inv_q, rref_q_with_ops
    from lilrs.subspace import expand_column_wise

    fld = sim_spec.field
    q = fld.q
    found = 0
    for seed in range(10):
        rng = trial_rng(seed, 4, 1, 1)
        msg = sim_spec.random_message(rng)
        sent = encode(sim_spec, msg)
        received, real = transmit(sent, sim_spec.channel_params(4, 1), rng)
        rw = ReceivedWord.from_subspace_tuple(sim_spec, received)
        if not lo_decode(rw, 1).is_unique:
            continue
        found += 1
        L = build_lo_matrix(rw, 1)
        h = right_kernel(fld, L)[0]
        pos = 0
        for i, M in enumerate(rw.shots):
            n_ri = M.shape[0]
            h_i = h[pos : pos + n_ri]
            pos += n_ri
            expect_rho = sim_spec.shot_dims[i] - real.deletion_partition[i]
            H = expand_column_wise(fld, h_i[None, :])
            assert rank_q(H, q) == expect_rho
            R, P = rref_q_with_ops(H.T, q)
            U_hat = fq_times_field(fld, inv_q(P, q).T, M)
            for mu in range(expect_rho):
                vec = sim_spec.lift_rows(i, U_hat[mu : mu + 1])[0]
                assert received.shots[i].contains(vec)
                assert sent.shots[i].contains(vec)
    assert found >= 8


# -- interpolation step ------------------------------------------------------------------


def test_interpolation_kernel_nonzero_at_threshold(sim_spec):
    for seed in range(5):
        msg, rw, _ = channel_word(sim_spec, 5, 1, seed)
        s, k = sim_spec.interleaving, sim_spec.dimension
        D = -(-(rw.total_dim + s * (k - 1) + 1) // (s + 1))
        basis = solve_interpolation(rw, D)
        assert basis.dim >= 1


def test_interpolation_dimension_bound_and_rank_nullity(sim_spec):
    for seed, gamma in [(0, 2), (1, 4), (2, 6)]:
        msg, rw, _ = channel_word(sim_spec, gamma, 1, seed)
        s, k = sim_spec.interleaving, sim_spec.dimension
        D = -(-(rw.total_dim + s * k) // (s + 1))
        R_I = build_interpolation_matrix(rw, D)
        basis = solve_interpolation(rw, D)
        assert basis.dim >= s * (D + 1) - s * k - gamma
        assert basis.dim == R_I.shape[1] - rank(sim_spec.field, R_I)


def test_interpolation_members_annihilate_maps(sim_spec):
    msg, rw, _ = channel_word(sim_spec, 6, 1, 3)
    s, k = sim_spec.interleaving, sim_spec.dimension
    D = -(-(rw.total_dim + s * k) // (s + 1))
    basis = solve_interpolation(rw, D)
    for member in basis.members():
        assert all(v == 0 for v in evaluate_interpolation_maps(rw, member))


# -- root finding ------------------------------------------------------------------------


def test_root_find_noiseless_exact(sim_spec, rng):
    msg = sim_spec.random_message(rng)
    rw = ReceivedWord.from_subspace_tuple(sim_spec, encode(sim_spec, msg))
    s, k = sim_spec.interleaving, sim_spec.dimension
    D = -(-(rw.total_dim + s * k) // (s + 1))
    basis = solve_interpolation(rw, D)
    roots = root_find(basis, sim_spec)
    assert roots == [msg]


def test_root_find_s1_at_most_one(tiny_spec):
    for seed in range(5):
        rng = trial_rng(seed, 1, 0, 0)
        msg = tiny_spec.random_message(rng)
        received, _ = transmit(
            encode(tiny_spec, msg), tiny_spec.channel_params(1, 0), rng
        )
        rw = ReceivedWord.from_subspace_tuple(tiny_spec, received)
        s, k = 1, 1
        D = -(-(rw.total_dim + s * (k - 1) + 1) // (s + 1))
        basis = solve_interpolation(rw, D)
        roots = root_find(basis, tiny_spec)
        assert len(roots) <= 1  # q^(m k (s-1)) = 1


def test_root_find_matches_brute_force_tiny(tiny_spec):
    """Root output equals {f : P = 0 for every basis member} over all messages."""
    msgs = list(tiny_spec.enumerate_messages())
    for seed in range(5):
        rng = trial_rng(seed, 1, 0, 1)
        msg = msgs[int(rng.integers(0, len(msgs)))]
        received, _ = transmit(
            encode(tiny_spec, msg), tiny_spec.channel_params(1, 0), rng
        )
        rw = ReceivedWord.from_subspace_tuple(tiny_spec, received)
        D = -(-(rw.total_dim + 1) // 2)
        basis = solve_interpolation(rw, D)
        roots = set(root_find(basis, tiny_spec))
        brute = {m for m in msgs if _annihilates_all(basis, m)}
        assert roots == brute


# -- list decoding --------------------------------------------------------------------------


def test_list_contains_transmitted_in_region(sim_spec):
    for seed, (gamma, delta) in enumerate([(6, 1), (3, 2), (9, 0)]):
        assert sim_spec.in_list_region(gamma, delta)
        msg, rw, _ = channel_word(sim_spec, gamma, delta, seed)
        out = list_decode(rw)
        assert out.is_list
        assert msg in out.messages
        assert len(out.messages) <= sim_spec.field.order ** (
            sim_spec.dimension * (sim_spec.interleaving - 1)
        )


def test_list_beyond_unique_region():
    """Interleaved single-shot code with k=1: lists stay enumerable past the
    probabilistic unique region, and the transmitted message is always listed."""
    spec = CodeSpec.standard(q=2, m=3, shots=1, interleaving=2, shot_dims=(3,), k=1)
    bound = spec.field.order ** (spec.dimension * (spec.interleaving - 1))
    listed = 0
    for seed in range(10):
        gamma, delta = 5, 0  # gamma + s*delta = 5 > s(n_t - k) = 4, < s(n_t - k + 1) = 6
        assert spec.in_list_region(gamma, delta) and not spec.in_unique_region(gamma, delta)
        rng = trial_rng(seed, gamma, delta, 0)
        msg = spec.random_message(rng)
        received, _ = transmit(encode(spec, msg), spec.channel_params(gamma, delta), rng)
        out = list_decode(ReceivedWord.from_subspace_tuple(spec, received))
        assert out.is_list
        assert msg in out.messages
        assert len(out.messages) <= bound
        listed += len(out.messages)
    assert listed >= 10


def test_list_cap_reports_ambiguous(sim_spec):
    """Past the unique region of the simulation code the algebraic root space is
    exponential; a tiny cap must surface RootFindingAmbiguous, a huge one may not."""
    msg, rw, _ = channel_word(sim_spec, 8, 1, 0)
    out = list_decode(rw, max_candidates=64)
    assert out.is_failure and out.reason is FailureReason.ROOT_FINDING_AMBIGUOUS


def test_list_decode_noiseless_single(tiny_spec, rng):
    msg = tiny_spec.random_message(rng)
    rw = ReceivedWord.from_subspace_tuple(tiny_spec, encode(tiny_spec, msg))
    out = list_decode(rw)
    assert out.is_list and list(out.messages) == [msg]


# -- unique decoding -------------------------------------------------------------------------


def test_unique_noiseless(sim_spec, rng):
    msg = sim_spec.random_message(rng)
    rw = ReceivedWord.from_subspace_tuple(sim_spec, encode(sim_spec, msg))
    out = unique_decode(rw)
    assert out.is_unique and out.message == msg


def test_lo_success_implies_unique_success(sim_spec):
    for seed in range(30):
        rng = trial_rng(seed, 0, 0, 2)
        delta = int(rng.integers(0, 3))
        gamma = int(rng.integers(0, sim_spec.max_insertions(delta) + 1))
        msg, rw, _ = channel_word(sim_spec, gamma, delta, seed + 100)
        lo = lo_decode(rw, delta)
        if lo.is_unique:
            uq = unique_decode(rw)
            assert uq.is_unique and uq.message == lo.message


def test_s1_decodes_with_unequal_dims():
    """s = 1 decoding works when the received sum-dimension differs from n_t."""
    spec = CodeSpec.standard(q=3, m=3, shots=2, interleaving=1, shot_dims=(3, 3), k=2)
    for seed in range(5):
        rng = trial_rng(seed, 2, 0, 3)
        msg = spec.random_message(rng)
        received, _ = transmit(encode(spec, msg), spec.channel_params(2, 0), rng)
        assert received.sum_dim == 8 != spec.total_dim
        out = unique_decode(ReceivedWord.from_subspace_tuple(spec, received))
        assert out.is_unique and out.message == msg


# -- failure bounds ----------------------------------------------------------------------------


def test_strict_bound_values(sim_spec):
    assert strict_failure_bound(sim_spec, 6, 1) == pytest.approx(0.2107, rel=2e-3)
    assert strict_failure_bound(sim_spec, 5, 1) == pytest.approx(7.8e-3, rel=2e-2)


def test_bounds_monotone_in_insertions(sim_spec):
    strict = [strict_failure_bound(sim_spec, g, 1) for g in range(0, 7)]
    assert all(a < b for a, b in zip(strict, strict[1:]))
    # the heuristic exponent is monotone only while the interpolation degree
    # D_u = ceil((n_r + s k)/(s + 1)) stays constant (gamma = 3, 4, 5 here)
    heur = [heuristic_failure_bound(sim_spec, g, 1) for g in (3, 4, 5)]
    assert heur[0] < heur[1] < heur[2]


def test_bounds_reject_outside_region(sim_spec):
    with pytest.raises(ValueError):
        strict_failure_bound(sim_spec, 7, 1)
    with pytest.raises(ValueError):
        heuristic_failure_bound(sim_spec, 7, 1)


def test_heuristic_bound_value(sim_spec):
    # gamma=6, delta=1: n_r=11, D_u=5, exponent 3*(5-3)-6+1 = 1
    from lilrs.subspace import kappa

    assert heuristic_failure_bound(sim_spec, 6, 1) == pytest.approx(
        kappa(3) * 3.0 ** (-3), rel=1e-9
    )


# -- complementary decoding -------------------------------------------------------------------


def test_complementary_noiseless(sim_spec, rng):
    msg = sim_spec.random_message(rng)
    dual_cw = complement(encode(sim_spec, msg))
    out = complementary_decode(dual_cw, sim_spec)
    assert out.is_unique and out.message == msg


def test_complementary_role_swap(sim_spec):
    """A (gamma, delta) channel on the dual word gives a primary-code instance
    reachable with delta insertions and gamma deletions."""
    for seed in range(5):
        rng = trial_rng(seed, 1, 6, 4)
        msg = sim_spec.random_message(rng)
        cw = encode(sim_spec, msg)
        received, _ = transmit(
            complement(cw), sim_spec.dual_channel_params(1, 6), rng
        )
        assert is_reachable(received.dual(), cw, 6, 1)
        out = complementary_decode(received, sim_spec)
        assert out.is_unique and out.message == msg


def test_complementary_recovers_dual_codeword(sim_spec):
    rng = trial_rng(0, 1, 6, 5)
    msg = sim_spec.random_message(rng)
    dual_cw = complement(encode(sim_spec, msg))
    received, _ = transmit(dual_cw, sim_spec.dual_channel_params(1, 6), rng)
    out = complementary_decode(received, sim_spec)
    assert out.is_unique
    assert complement(encode(sim_spec, out.message)) == dual_cw
