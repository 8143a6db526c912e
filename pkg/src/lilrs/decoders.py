"""Decoders for lifted interleaved linearized Reed-Solomon codes.

Two families are implemented, both beyond half the minimum distance:

* a Loidreau-Overbeck-like probabilistic unique decoder that splits the
  received bases into corrupted and non-corrupted parts via the kernel of a
  stacked Moore matrix, then Lagrange-interpolates the message polynomials;
* an interpolation-based decoder usable as a list decoder (enumerating the
  affine solution set of the root-finding system) or as a probabilistic
  unique decoder (full-rank root-finding system or declared failure).

All linear algebra is dense Gaussian elimination over F_{q^m}.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import reach_pair
from .code import CodeSpec, MessageVector, encode
from .field import ExtensionField
from .linalg import (
    fq_times_field,
    inv_q,
    right_kernel,
    rref_q_with_ops,
    solve_affine,
)
from .skew import (
    InterpolationError,
    SkewPolynomial,
    gen_op_eval,
    iterated_op_matrix,
    lagrange_interpolate,
)
from .subspace import Subspace, SubspaceTuple, expand_column_wise, kappa

__all__ = [
    "DecodingError",
    "ListSizeExceeded",
    "FailureReason",
    "DecodeOutcome",
    "ReceivedWord",
    "InterpolationBasis",
    "build_lo_matrix",
    "lo_decode",
    "build_interpolation_matrix",
    "solve_interpolation",
    "root_find",
    "list_decode",
    "unique_decode",
    "strict_failure_bound",
    "heuristic_failure_bound",
    "complementary_decode",
]

DEFAULT_LIST_CAP = 4096


class DecodingError(ValueError):
    pass


class ListSizeExceeded(DecodingError):
    """The affine root space is larger than the configured enumeration cap."""


class FailureReason(Enum):
    KERNEL_TOO_LARGE = "KernelTooLarge"
    INTERPOLATION_DEFICIENT = "InterpolationDeficient"
    ROOT_FINDING_AMBIGUOUS = "RootFindingAmbiguous"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class DecodeOutcome:
    """Either a unique message, a (duplicate-free) list of messages, or a failure."""

    kind: str
    messages: tuple[MessageVector, ...] = ()
    reason: FailureReason | None = None

    @classmethod
    def unique(cls, msg: MessageVector) -> "DecodeOutcome":
        return cls("unique", (msg,))

    @classmethod
    def list_of(cls, msgs) -> "DecodeOutcome":
        seen = []
        for m in msgs:
            if m not in seen:
                seen.append(m)
        return cls("list", tuple(seen))

    @classmethod
    def failure(cls, reason: FailureReason) -> "DecodeOutcome":
        return cls("failure", (), reason)

    @property
    def is_unique(self) -> bool:
        return self.kind == "unique"

    @property
    def is_list(self) -> bool:
        return self.kind == "list"

    @property
    def is_failure(self) -> bool:
        return self.kind == "failure"

    @property
    def message(self) -> MessageVector:
        if not self.is_unique:
            raise DecodingError(f"no unique message in outcome {self.kind}")
        return self.messages[0]

    @property
    def tag(self) -> str:
        if self.is_failure:
            return f"failure:{self.reason.value}"
        return self.kind


class ReceivedWord:
    """Received tuple in structured form: one (n_i x (s+1)) basis matrix per shot."""

    __slots__ = ("spec", "shots")

    def __init__(self, spec: CodeSpec, shots):
        self.spec = spec
        mats = []
        for i, M in enumerate(shots):
            M = np.asarray(M, dtype=np.int64).reshape(-1, spec.interleaving + 1)
            mats.append(M)
        if len(mats) != spec.num_shots:
            raise DecodingError("one basis matrix per shot required")
        self.shots = tuple(mats)

    @classmethod
    def from_subspace_tuple(cls, spec: CodeSpec, T: SubspaceTuple) -> "ReceivedWord":
        if T.ambient_partition != spec.packet_dims:
            raise DecodingError("ambient partition does not match the code")
        return cls(spec, [spec.unlift_rows(i, s.basis) for i, s in enumerate(T.shots)])

    def to_subspace_tuple(self) -> SubspaceTuple:
        spec = self.spec
        return SubspaceTuple(
            Subspace(spec.field.q, spec.packet_dims[i], spec.lift_rows(i, M))
            for i, M in enumerate(self.shots)
        )

    @property
    def dim_partition(self) -> tuple[int, ...]:
        return tuple(M.shape[0] for M in self.shots)

    @property
    def total_dim(self) -> int:
        return sum(M.shape[0] for M in self.shots)

    def column(self, j: int):
        """Concatenation of column j over all shots (j = 0 is the lifting column)."""
        return np.concatenate([M[:, j] for M in self.shots])

    def _per_column_reps(self):
        out = []
        for M, a in zip(self.shots, self.spec.reps):
            out.extend([a] * M.shape[0])
        return np.asarray(out, dtype=np.int64)


# -- Loidreau-Overbeck-like decoder ---------------------------------------------

def build_lo_matrix(rw: ReceivedWord, deletions: int):
    """Stacked Moore decoding matrix of shape ((s+1)(n_t - delta) - s k - 1) x n_r."""
    spec = rw.spec
    fld = spec.field
    s, k, nt = spec.interleaving, spec.dimension, spec.total_dim
    d_top = nt - deletions - 1
    d_bot = nt - deletions - k
    if d_top < 1 or d_bot < 1:
        raise DecodingError(
            f"degenerate decoding matrix: need n_t - delta - k >= 1, got {d_bot}"
        )
    a_col = rw._per_column_reps()
    blocks = [iterated_op_matrix(fld, rw.column(0), a_col, d_top)]
    for l in range(1, s + 1):
        blocks.append(iterated_op_matrix(fld, rw.column(l), a_col, d_bot))
    return np.vstack(blocks)


def lo_decode(rw: ReceivedWord, deletions: int) -> DecodeOutcome:
    """Loidreau-Overbeck-like probabilistic unique decoding.

    deletions is the total deletion budget of the channel instance; the
    per-shot deletion counts are recovered from the kernel vector.
    """
    spec = rw.spec
    fld = spec.field
    q = fld.q
    s, k, nt = spec.interleaving, spec.dimension, spec.total_dim

    L = build_lo_matrix(rw, deletions)
    kernel = right_kernel(fld, L)
    if kernel.shape[0] > 1:
        return DecodeOutcome.failure(FailureReason.KERNEL_TOO_LARGE)
    if kernel.shape[0] == 0:
        return DecodeOutcome.failure(FailureReason.INCONSISTENT)
    h = kernel[0]

    points = [[] for _ in range(s)]
    total_rank = 0
    pos = 0
    for i, M in enumerate(rw.shots):
        n_ri = M.shape[0]
        h_i = h[pos : pos + n_ri]
        pos += n_ri
        if n_ri == 0:
            continue
        H = expand_column_wise(fld, h_i[None, :])  # (m, n_ri)
        R, P = rref_q_with_ops(H.T, q)  # P @ H.T = R, zero rows of R at the bottom
        rho = int(np.count_nonzero(np.any(R != 0, axis=1)))
        total_rank += rho
        if rho > spec.shot_dims[i]:
            return DecodeOutcome.failure(FailureReason.INCONSISTENT)
        if rho == 0:
            continue
        # T = P.T zeroes the rightmost n_ri - rho entries of h_i; transform the basis
        T_inv = inv_q(P, q).T
        U_hat = fq_times_field(fld, T_inv, M)
        for mu in range(rho):
            xi_hat = int(U_hat[mu, 0])
            for l in range(s):
                points[l].append((xi_hat, int(U_hat[mu, l + 1]), spec.reps[i]))
    if total_rank != nt - deletions:
        return DecodeOutcome.failure(FailureReason.INCONSISTENT)

    polys = []
    for l in range(s):
        try:
            f_l = lagrange_interpolate(fld, points[l])
        except InterpolationError:
            return DecodeOutcome.failure(FailureReason.INCONSISTENT)
        if f_l.degree >= k:
            return DecodeOutcome.failure(FailureReason.INCONSISTENT)
        polys.append(f_l)
    msg = MessageVector(polys)

    # re-encoding sanity: the decoded codeword must be reachable with the claimed budgets
    insertions = rw.total_dim - (nt - deletions)
    if reach_pair(rw.to_subspace_tuple(), encode(spec, msg)) != (insertions, deletions):
        return DecodeOutcome.failure(FailureReason.INCONSISTENT)
    return DecodeOutcome.unique(msg)


# -- interpolation-based decoding --------------------------------------------------

@dataclass
class InterpolationBasis:
    """Basis of the right kernel of the interpolation matrix for degree bound D.

    Row r of coeffs holds (q_{0,0..D-1} | q_{1,0..D-k} | ... | q_{s,0..D-k}).
    """

    spec: CodeSpec
    degree_bound: int
    coeffs: np.ndarray

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def member(self, r: int) -> tuple[SkewPolynomial, ...]:
        spec, D = self.spec, self.degree_bound
        k = spec.dimension
        fld = spec.field
        row = self.coeffs[r]
        out = [SkewPolynomial(fld, row[:D])]
        w = D - k + 1
        for l in range(spec.interleaving):
            out.append(SkewPolynomial(fld, row[D + l * w : D + (l + 1) * w]))
        return tuple(out)

    def members(self):
        return [self.member(r) for r in range(self.dim)]


def build_interpolation_matrix(rw: ReceivedWord, degree_bound: int):
    """n_r x (D(s+1) - s(k-1)) matrix whose right kernel solves the interpolation problem."""
    spec = rw.spec
    fld = spec.field
    s, k = spec.interleaving, spec.dimension
    D = degree_bound
    if D < k:
        raise DecodingError(f"degree bound D={D} below the code dimension k={k}")
    a_col = rw._per_column_reps()
    blocks = [iterated_op_matrix(fld, rw.column(0), a_col, D).T]
    for l in range(1, s + 1):
        blocks.append(iterated_op_matrix(fld, rw.column(l), a_col, D - k + 1).T)
    return np.hstack(blocks)


def solve_interpolation(rw: ReceivedWord, degree_bound: int) -> InterpolationBasis:
    """Full right-kernel basis; raises if only the zero polynomial satisfies the system."""
    R_I = build_interpolation_matrix(rw, degree_bound)
    K = right_kernel(rw.spec.field, R_I)
    if K.shape[0] == 0:
        raise DecodingError("interpolation kernel is zero (outside the list region?)")
    return InterpolationBasis(rw.spec, degree_bound, K)


def evaluate_interpolation_maps(rw: ReceivedWord, member) -> list[int]:
    """All n_r evaluation-map values of one multivariate polynomial (should be zero)."""
    spec = rw.spec
    fld = spec.field
    out = []
    for i, M in enumerate(rw.shots):
        a = spec.reps[i]
        for row in M:
            v = gen_op_eval(fld, member[0], int(row[0]), a)
            for l in range(1, spec.interleaving + 1):
                v = fld.add(v, gen_op_eval(fld, member[l], int(row[l]), a))
            out.append(v)
    return out


def _root_finding_system(basis: InterpolationBasis):
    """Root-finding matrix Q_R (D d_I x s k) and right-hand side -q_0."""
    spec = basis.spec
    fld = spec.field
    s, k, D = spec.interleaving, spec.dimension, basis.degree_bound
    d_I = basis.dim
    w = D - k + 1
    q0 = basis.coeffs[:, :D]  # (d_I, D)
    qy = np.stack(
        [basis.coeffs[:, D + l * w : D + (l + 1) * w] for l in range(s)], axis=1
    )  # (d_I, s, w); entry [r, l, t] = q_{l+1, t}^{(r)}
    QR = np.zeros((D * d_I, s * k), dtype=np.int64)
    rhs = np.zeros(D * d_I, dtype=np.int64)
    for i in range(D):
        rhs[i * d_I : (i + 1) * d_I] = fld.vneg(fld.vsigma(q0[:, i], -i))
        lo = max(0, i - (D - k))
        hi = min(k - 1, i)
        for j in range(lo, hi + 1):
            t = i - j
            QR[i * d_I : (i + 1) * d_I, j * s : (j + 1) * s] = fld.vsigma(qy[:, :, t], -i)
    return QR, rhs


def _message_from_solution(spec: CodeSpec, y) -> MessageVector:
    """Undo the sigma twist: f_{l,j} = sigma^j(y_{l,j})."""
    fld = spec.field
    s, k = spec.interleaving, spec.dimension
    rows = np.zeros((s, k), dtype=np.int64)
    for j in range(k):
        for l in range(s):
            rows[l, j] = fld.sigma(int(y[j * s + l]), j)
    return MessageVector.from_coeffs(fld, rows)


def root_find(
    basis: InterpolationBasis, spec: CodeSpec, max_candidates: int = DEFAULT_LIST_CAP
) -> list[MessageVector]:
    """All message vectors annihilating every basis member, by affine enumeration.

    Raises ListSizeExceeded when the solution space is larger than the cap and
    DecodingError when the system is inconsistent.
    """
    fld = spec.field
    QR, rhs = _root_finding_system(basis)
    x, kern = solve_affine(fld, QR, rhs)
    if x is None:
        raise DecodingError("root-finding system is inconsistent")
    nu = kern.shape[0]
    count = fld.order ** nu
    if count > max_candidates:
        raise ListSizeExceeded(
            f"root space holds {count} candidates, cap is {max_candidates}"
        )
    out = []
    for combo in itertools.product(range(fld.order), repeat=nu):
        y = x
        for c, basis_vec in zip(combo, kern):
            if c:
                y = fld.vadd(y, fld.vmul(c, basis_vec))
        msg = _message_from_solution(spec, y)
        if _annihilates_all(basis, msg):
            out.append(msg)
    return out


def _annihilates_all(basis: InterpolationBasis, msg: MessageVector) -> bool:
    """Check P = Q_0 + sum_l Q_l f_l = 0 for every basis member."""
    for member in basis.members():
        P = member[0]
        for l, f_l in enumerate(msg.polys, start=1):
            P = P + member[l] * f_l
        if not P.is_zero():
            return False
    return True


def list_decode(rw: ReceivedWord, max_candidates: int = DEFAULT_LIST_CAP) -> DecodeOutcome:
    """List decoding: all messages whose codewords are reachable within the list region."""
    spec = rw.spec
    s, k = spec.interleaving, spec.dimension
    n_r = rw.total_dim
    D = max(k, -(-(n_r + s * (k - 1) + 1) // (s + 1)))
    try:
        basis = solve_interpolation(rw, D)
    except DecodingError:
        return DecodeOutcome.failure(FailureReason.INTERPOLATION_DEFICIENT)
    try:
        candidates = root_find(basis, spec, max_candidates)
    except ListSizeExceeded:
        return DecodeOutcome.failure(FailureReason.ROOT_FINDING_AMBIGUOUS)
    except DecodingError:
        return DecodeOutcome.failure(FailureReason.INCONSISTENT)
    received = rw.to_subspace_tuple()
    kept = [
        msg
        for msg in candidates
        if spec.in_list_region(*reach_pair(received, encode(spec, msg)))
    ]
    return DecodeOutcome.list_of(kept)


def unique_decode(rw: ReceivedWord) -> DecodeOutcome:
    """Interpolation-based probabilistic unique decoding with D = ceil((n_r + s k)/(s+1))."""
    spec = rw.spec
    s, k = spec.interleaving, spec.dimension
    n_r = rw.total_dim
    D = -(-(n_r + s * k) // (s + 1))
    if D < k:
        return DecodeOutcome.failure(FailureReason.INTERPOLATION_DEFICIENT)
    try:
        basis = solve_interpolation(rw, D)
    except DecodingError:
        return DecodeOutcome.failure(FailureReason.INTERPOLATION_DEFICIENT)
    if basis.dim < s:
        return DecodeOutcome.failure(FailureReason.INTERPOLATION_DEFICIENT)
    QR, rhs = _root_finding_system(basis)
    x, kern = solve_affine(spec.field, QR, rhs)
    if x is None:
        return DecodeOutcome.failure(FailureReason.INCONSISTENT)
    if kern.shape[0] > 0:
        return DecodeOutcome.failure(FailureReason.ROOT_FINDING_AMBIGUOUS)
    return DecodeOutcome.unique(_message_from_solution(spec, x))


# -- failure-probability bounds ------------------------------------------------

def _check_unique_region(spec: CodeSpec, insertions: int, deletions: int):
    if insertions < 0 or deletions < 0 or not spec.in_unique_region(insertions, deletions):
        raise ValueError(
            f"(insertions={insertions}, deletions={deletions}) outside the probabilistic "
            f"unique decoding region"
        )


def strict_failure_bound(spec: CodeSpec, insertions: int, deletions: int) -> float:
    """kappa_q^(ell+1) q^(-m (gamma_max - gamma + 1)) with gamma_max = s(n_t - delta - k)."""
    _check_unique_region(spec, insertions, deletions)
    gmax = spec.max_insertions(deletions)
    kq = kappa(spec.field.q)
    return kq ** (spec.num_shots + 1) * float(spec.field.q) ** (
        -spec.field.m * (gmax - insertions + 1)
    )


def heuristic_failure_bound(spec: CodeSpec, insertions: int, deletions: int) -> float:
    """kappa_q q^(-m (s (D_u - k) - gamma + 1)) under the uniform-coefficient heuristic."""
    _check_unique_region(spec, insertions, deletions)
    s, k = spec.interleaving, spec.dimension
    n_r = spec.total_dim - deletions + insertions
    D_u = -(-(n_r + s * k) // (s + 1))
    expo = s * (D_u - k) - insertions + 1
    return kappa(spec.field.q) * float(spec.field.q) ** (-spec.field.m * expo)


# -- complementary-code decoding ---------------------------------------------------

def complementary_decode(
    received_dual: SubspaceTuple,
    spec: CodeSpec,
    decoder: str = "unique",
    deletions: int | None = None,
    max_candidates: int = DEFAULT_LIST_CAP,
) -> DecodeOutcome:
    """Decode a corrupted complementary-code word by dualizing into the primary code.

    A channel that applies (gamma, delta) to a dual codeword turns, after
    dualization, into a primary-code instance with delta insertions and gamma
    deletions; the recovered dual codeword is complement(encode(message)).
    """
    received = received_dual.dual()
    rw = ReceivedWord.from_subspace_tuple(spec, received)
    if decoder == "unique":
        return unique_decode(rw)
    if decoder == "list":
        return list_decode(rw, max_candidates)
    if decoder == "lo":
        if deletions is None:
            raise DecodingError("the Loidreau-Overbeck path needs the deletion count")
        return lo_decode(rw, deletions)
    raise DecodingError(f"unknown decoder {decoder!r}")
