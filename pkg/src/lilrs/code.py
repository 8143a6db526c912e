"""Lifted interleaved linearized Reed-Solomon codes: parameters, encoding, metrics.

A codeword shot is the F_q rowspace of the matrix whose first column holds the
code locators and whose remaining s columns hold the operator evaluations of
the s message polynomials at those locators.  The ambient space of shot i is
F_q^(n_i + s*m); its first n_i coordinates are taken with respect to the
locator block itself, the remaining s blocks of m coordinates expand the
evaluation entries.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams
from .field import ExtensionField
from .linalg import rank_q, rref_q_with_ops
from .skew import (
    SkewError,
    SkewPolynomial,
    are_conjugate,
    conjugacy_representatives,
    gen_op_eval_vec,
)
from .subspace import Subspace, SubspaceTuple, expand_row_wise, kappa

__all__ = [
    "CodeError",
    "CodeSpec",
    "MessageVector",
    "CodeMetrics",
    "encode",
    "encode_basis",
    "code_metrics",
    "complement",
]


class CodeError(ValueError):
    pass


class MessageVector:
    """s skew polynomials of degree < k."""

    __slots__ = ("polys",)

    def __init__(self, polys):
        self.polys = tuple(polys)

    @classmethod
    def from_coeffs(cls, fld: ExtensionField, rows) -> "MessageVector":
        return cls(SkewPolynomial(fld, row) for row in rows)

    def coeff_matrix(self, k: int):
        return np.asarray([p.padded(k) for p in self.polys], dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, MessageVector) and self.polys == other.polys

    def __hash__(self):
        return hash(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        return f"MessageVector({[list(p.coeffs) for p in self.polys]})"


@dataclass(frozen=True)
class CodeSpec:
    """Full parameter set of one code; immutable and validated at construction."""

    field: ExtensionField
    interleaving: int                       # s
    reps: tuple[int, ...]                   # conjugacy representatives, one per shot
    locators: tuple[tuple[int, ...], ...]   # F_q-independent elements per shot
    dimension: int                          # k

    def __post_init__(self):
        fld = self.field
        object.__setattr__(self, "reps", tuple(int(a) for a in self.reps))
        object.__setattr__(
            self, "locators", tuple(tuple(int(b) for b in blk) for blk in self.locators)
        )
        if self.interleaving < 1:
            raise CodeError("interleaving order must be >= 1")
        if len(self.reps) != len(self.locators):
            raise CodeError("one conjugacy representative per shot required")
        ell = len(self.reps)
        if ell > fld.q - 1:
            raise CodeError(f"at most q-1={fld.q - 1} shots supported, got {ell}")
        for blk in self.locators:
            if not blk:
                raise CodeError("empty locator block")
            if len(blk) > fld.m:
                raise CodeError("locator block longer than extension degree")
            if rank_q(fld.digits(np.asarray(blk, dtype=np.int64)), fld.q) != len(blk):
                raise CodeError(f"locator block {blk} is F_q-linearly dependent")
        for i in range(ell):
            for j in range(i + 1, ell):
                if are_conjugate(fld, self.reps[i], self.reps[j]):
                    raise CodeError(
                        f"representatives {self.reps[i]} and {self.reps[j]} are sigma-conjugate"
                    )
        if not (1 <= self.dimension <= self.total_dim):
            raise CodeError(f"dimension k={self.dimension} outside 1..{self.total_dim}")
        # per-shot solve matrices for locator coordinates, built lazily
        object.__setattr__(self, "_lift_cache", {})

    # -- construction -------------------------------------------------------

    @classmethod
    def standard(cls, q, m, shots, interleaving, shot_dims, k, r=1, modulus=None):
        """Default construction: locators are the first polynomial-basis elements."""
        from .field import get_field

        fld = get_field(q, m, r=r, modulus=modulus)
        if isinstance(shot_dims, int):
            shot_dims = (shot_dims,) * shots
        shot_dims = tuple(shot_dims)
        if len(shot_dims) != shots:
            raise CodeError("one shot dimension per shot required")
        try:
            reps = conjugacy_representatives(fld, shots)
        except SkewError as exc:
            raise CodeError(str(exc)) from exc
        locators = tuple(
            tuple(fld.pow_int(fld.alpha, j) for j in range(n_i)) for n_i in shot_dims
        )
        return cls(fld, interleaving, tuple(reps), locators, k)

    # -- derived parameters ---------------------------------------------------

    @property
    def num_shots(self) -> int:
        return len(self.reps)

    @property
    def shot_dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.locators)

    @property
    def total_dim(self) -> int:
        return sum(len(b) for b in self.locators)

    @property
    def packet_dims(self) -> tuple[int, ...]:
        sm = self.interleaving * self.field.m
        return tuple(n + sm for n in self.shot_dims)

    @property
    def packet_total(self) -> int:
        return sum(self.packet_dims)

    def locator_vector(self):
        return np.asarray([b for blk in self.locators for b in blk], dtype=np.int64)

    # -- decoding regions -------------------------------------------------------

    def max_insertions(self, deletions: int) -> int:
        return self.interleaving * (self.total_dim - deletions - self.dimension)

    def in_list_region(self, insertions: int, deletions: int) -> bool:
        s = self.interleaving
        return insertions + s * deletions < s * (self.total_dim - self.dimension + 1)

    def in_unique_region(self, insertions: int, deletions: int) -> bool:
        s = self.interleaving
        return insertions + s * deletions <= s * (self.total_dim - self.dimension)

    # -- channel helpers --------------------------------------------------------

    def channel_params(self, insertions: int, deletions: int, seed=None) -> ChannelParams:
        dims = set(self.packet_dims)
        sdims = set(self.shot_dims)
        if len(dims) != 1 or len(sdims) != 1:
            raise CodeError("uniform channel sampling needs equal per-shot dimensions")
        return ChannelParams(
            ambient_dim=dims.pop(),
            input_dim=sdims.pop(),
            shots=self.num_shots,
            insertions=insertions,
            deletions=deletions,
            seed=seed,
        )

    def dual_channel_params(self, insertions: int, deletions: int, seed=None) -> ChannelParams:
        """Channel parameters for transmitting complementary-code words."""
        dims = set(self.packet_dims)
        sdims = set(self.shot_dims)
        if len(dims) != 1 or len(sdims) != 1:
            raise CodeError("uniform channel sampling needs equal per-shot dimensions")
        N = dims.pop()
        return ChannelParams(
            ambient_dim=N,
            input_dim=N - sdims.pop(),
            shots=self.num_shots,
            insertions=insertions,
            deletions=deletions,
            seed=seed,
        )

    # -- messages -----------------------------------------------------------------

    def random_message(self, rng) -> MessageVector:
        rows = rng.integers(
            0, self.field.order, size=(self.interleaving, self.dimension), dtype=np.int64
        )
        return MessageVector.from_coeffs(self.field, rows)

    def message_count(self) -> int:
        return self.field.order ** (self.interleaving * self.dimension)

    def enumerate_messages(self):
        coords = self.interleaving * self.dimension
        for tup in itertools.product(range(self.field.order), repeat=coords):
            rows = np.asarray(tup, dtype=np.int64).reshape(self.interleaving, self.dimension)
            yield MessageVector.from_coeffs(self.field, rows)

    def validate_message(self, msg: MessageVector):
        if len(msg.polys) != self.interleaving:
            raise CodeError("message must hold one polynomial per interleaving slot")
        for p in msg.polys:
            if p.field != self.field:
                raise CodeError("message polynomial over the wrong field")
            if p.degree >= self.dimension:
                raise CodeError(f"message degree {p.degree} exceeds k-1={self.dimension - 1}")

    # -- structured <-> ambient coordinates ----------------------------------------

    def _locator_maps(self, shot: int):
        """(B, S): digit matrix of the locator block and the coordinate solver.

        B is n_i x m over F_q with rows the expansions of the locators; for any
        xi in their span, digits(xi) @ S gives the coordinates with xi = coords
        applied to the block.
        """
        cache = self._lift_cache
        if shot not in cache:
            fld = self.field
            blk = np.asarray(self.locators[shot], dtype=np.int64)
            B = expand_row_wise(fld, blk[:, None])  # (n_i, m)
            R, P = rref_q_with_ops(B, fld.q)
            pivots = [int(np.argmax(R[i] != 0)) for i in range(B.shape[0])]
            sel = np.zeros((fld.m, len(pivots)), dtype=np.int64)
            for col, p in enumerate(pivots):
                sel[p, col] = 1
            cache[shot] = (B, (sel @ P) % fld.q)
        return cache[shot]

    def lift_rows(self, shot: int, structured) -> np.ndarray:
        """Map rows (xi, u_1..u_s) over F_{q^m} to ambient F_q rows of length N_i."""
        fld = self.field
        B, S = self._locator_maps(shot)
        M = np.atleast_2d(np.asarray(structured, dtype=np.int64))
        if M.size == 0:
            return np.zeros((0, self.packet_dims[shot]), dtype=np.int64)
        xi_digits = fld.digits(M[:, 0])
        coords = (xi_digits @ S) % fld.q
        if not np.array_equal((coords @ B) % fld.q, xi_digits):
            raise CodeError("first-column entry outside the locator span of the shot")
        rest = fld.digits(M[:, 1:]).reshape(M.shape[0], -1)
        return np.hstack([coords, rest])

    def unlift_rows(self, shot: int, ambient_rows) -> np.ndarray:
        """Inverse of lift_rows: ambient F_q rows back to structured rows over F_{q^m}."""
        fld = self.field
        B, _ = self._locator_maps(shot)
        A = np.atleast_2d(np.asarray(ambient_rows, dtype=np.int64)) % fld.q
        n_i = self.shot_dims[shot]
        s = self.interleaving
        xi = fld.compose((A[:, :n_i] @ B) % fld.q)
        rest = fld.compose(A[:, n_i:].reshape(A.shape[0], s, fld.m))
        return np.hstack([xi[:, None], rest])


def encode_basis(spec: CodeSpec, msg: MessageVector) -> list[np.ndarray]:
    """Structured basis matrices, one (n_i x (s+1)) matrix over F_{q^m} per shot."""
    spec.validate_message(msg)
    fld = spec.field
    out = []
    for i in range(spec.num_shots):
        beta = np.asarray(spec.locators[i], dtype=np.int64)
        cols = [beta]
        for p in msg.polys:
            cols.append(gen_op_eval_vec(fld, p, beta, spec.reps[i]))
        out.append(np.stack(cols, axis=1))
    return out


def encode(spec: CodeSpec, msg: MessageVector) -> SubspaceTuple:
    """Codeword subspace tuple; shot i has dimension n_i in ambient F_q^(n_i + s*m)."""
    fld = spec.field
    shots = []
    for i, structured in enumerate(encode_basis(spec, msg)):
        n_i = structured.shape[0]
        rest = fld.digits(structured[:, 1:]).reshape(n_i, -1)
        rows = np.hstack([np.eye(n_i, dtype=np.int64), rest])
        shots.append(Subspace._from_rref(fld.q, spec.packet_dims[i], rows))
    return SubspaceTuple(shots)


def complement(T: SubspaceTuple) -> SubspaceTuple:
    """Shot-wise dual; the complementary code of a LILRS code under this map."""
    return T.dual()


@dataclass(frozen=True)
class CodeMetrics:
    min_distance: int
    rate: float
    dual_rate: float
    normalized_weight: float
    normalized_distance: float
    singleton_rate_bound: float | None
    list_region: str
    unique_region: str


def code_metrics(spec: CodeSpec) -> CodeMetrics:
    s = spec.interleaving
    m = spec.field.m
    k = spec.dimension
    nt = spec.total_dim
    N = spec.packet_total
    denom = sum(n * (n + s * m) for n in spec.shot_dims)
    dual_denom = sum((Ni - n) * Ni for n, Ni in zip(spec.shot_dims, spec.packet_dims))
    equal_shots = len(set(spec.shot_dims)) == 1
    singleton = None
    if equal_shots:
        singleton = (
            spec.num_shots
            * (math.log(kappa(spec.field.q), spec.field.q) + s * m * k)
            / (nt * N)
        )
    return CodeMetrics(
        min_distance=2 * (nt - k + 1),
        rate=s * m * k / denom,
        dual_rate=s * m * k / dual_denom,
        normalized_weight=nt / N,
        normalized_distance=(nt - k + 1) / nt,
        singleton_rate_bound=singleton,
        list_region=f"insertions + {s}*deletions < {s * (nt - k + 1)}",
        unique_region=f"insertions + {s}*deletions <= {s * (nt - k)}",
    )
