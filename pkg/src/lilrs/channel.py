"""The ell-shot operator channel with exactly uniform realization sampling.

Dimension partitions for insertions and deletions are drawn by enumerative
coding: a partition's probability is proportional to the number of subspace
tuples it admits, so the induced tuple of deleted subspaces / error spaces is
uniform over the full realization set.  This requires equal per-shot ambient
and input dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import rank_q, rref_q
from .subspace import Subspace, SubspaceTuple, gaussian_binomial

__all__ = [
    "ChannelError",
    "ChannelParams",
    "ChannelRealization",
    "num_subspace_tuples",
    "draw_dimension_partition",
    "transmit",
    "is_reachable",
    "reach_pair",
    "rand_below",
]


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelParams:
    """Equal-per-shot channel parameters: ambient N, input dimension, shot count, budgets."""

    ambient_dim: int
    input_dim: int
    shots: int
    insertions: int
    deletions: int
    seed: int | None = None

    def validate(self):
        if self.input_dim < 0 or self.input_dim > self.ambient_dim:
            raise ChannelError("input dimension out of range")
        if not (0 <= self.deletions <= self.shots * self.input_dim):
            raise ChannelError(
                f"deletions={self.deletions} infeasible for {self.shots} shots of dim {self.input_dim}"
            )
        if not (0 <= self.insertions <= self.shots * (self.ambient_dim - self.input_dim)):
            raise ChannelError(
                f"insertions={self.insertions} infeasible for ambient slack "
                f"{self.ambient_dim - self.input_dim} per shot"
            )


@dataclass
class ChannelRealization:
    """One sampled channel instance: partitions plus the chosen subspaces per shot."""

    insertion_partition: tuple[int, ...]
    deletion_partition: tuple[int, ...]
    kept: tuple[Subspace, ...]
    errors: tuple[Subspace, ...]

    def to_json(self) -> dict:
        return {
            "insertion_partition": list(self.insertion_partition),
            "deletion_partition": list(self.deletion_partition),
            "kept": [s.to_json() for s in self.kept],
            "errors": [s.to_json() for s in self.errors],
        }


@lru_cache(maxsize=None)
def num_subspace_tuples(ambient_dim: int, total_dim: int, shots: int, q: int):
    """Number of shot-tuples of subspaces of F_q^ambient with sum-dimension total_dim."""
    if total_dim < 0 or total_dim > ambient_dim * shots:
        return 0
    if shots == 0:
        return 1 if total_dim == 0 else 0
    if shots == 1:
        return gaussian_binomial(ambient_dim, total_dim, q)
    lo = max(0, total_dim - (shots - 1) * ambient_dim)
    hi = min(ambient_dim, total_dim)
    return sum(
        gaussian_binomial(ambient_dim, g, q)
        * num_subspace_tuples(ambient_dim, total_dim - g, shots - 1, q)
        for g in range(lo, hi + 1)
    )


def rand_below(rng, n: int) -> int:
    """Uniform integer in [0, n) for arbitrary-precision n, from the given generator."""
    if n <= 0:
        raise ValueError("n must be positive")
    if n == 1:
        return 0
    k = (n - 1).bit_length()
    nbytes = (k + 7) // 8
    shift = 8 * nbytes - k
    while True:
        v = int.from_bytes(rng.bytes(nbytes), "big") >> shift
        if v < n:
            return v


def draw_dimension_partition(ambient_dim: int, total_dim: int, shots: int, q: int, rng):
    """Enumerative-coding walk: partition drawn with probability prod_i [N choose g_i]_q / total."""
    total = num_subspace_tuples(ambient_dim, total_dim, shots, q)
    if total == 0:
        raise ChannelError(
            f"no subspace tuple of sum-dimension {total_dim} in {shots} shots of F_q^{ambient_dim}"
        )
    index = 1 + rand_below(rng, total)
    partition = []
    rem = total_dim
    for i in range(1, shots + 1):
        left = shots - i
        lo = max(0, rem - left * ambient_dim)
        hi = min(ambient_dim, rem)
        cum = 0
        chosen = None
        for g in range(lo, hi + 1):
            rest = num_subspace_tuples(ambient_dim, rem - g, left, q)
            w = gaussian_binomial(ambient_dim, g, q) * rest
            if cum + w >= index:
                chosen = g
                # the block of size w splits into (subspace choice) x (rest index);
                # only the rest index steers the remaining shots
                index = (index - cum - 1) % rest + 1
                break
            cum += w
        if chosen is None:
            raise ChannelError("internal error in partition walk")
        partition.append(chosen)
        rem -= chosen
    return tuple(partition)


# -- random subspace draws (rejection; exactly uniform) ------------------------

def _random_full_rank(q: int, rows: int, cols: int, rng):
    if rows == 0:
        return np.zeros((0, cols), dtype=np.int64)
    while True:
        M = rng.integers(0, q, size=(rows, cols), dtype=np.int64)
        if rank_q(M, q) == rows:
            return M


def random_subspace_of(space: Subspace, dim: int, rng) -> Subspace:
    """Uniformly random dim-dimensional subspace of the given space."""
    if dim < 0 or dim > space.dim:
        raise ChannelError("requested dimension exceeds the space")
    if dim == space.dim:
        return space
    C = _random_full_rank(space.q, dim, space.dim, rng)
    return Subspace(space.q, space.ambient, (C @ space.basis) % space.q)


def random_error_space(q: int, ambient: int, avoid: Subspace, dim: int, rng) -> Subspace:
    """Uniformly random dim-dimensional space with trivial intersection against avoid."""
    if dim == 0:
        return Subspace.zero(q, ambient)
    if avoid.dim + dim > ambient:
        raise ChannelError("no disjoint error space of that dimension exists")
    while True:
        E = rng.integers(0, q, size=(dim, ambient), dtype=np.int64)
        stacked = np.vstack([avoid.basis, E])
        if rank_q(stacked, q) == avoid.dim + dim:
            return Subspace(q, ambient, E)


def transmit(V: SubspaceTuple, params: ChannelParams, rng=None):
    """Apply one uniformly random channel realization to the input tuple.

    Returns (received_tuple, realization).  The received shot is the direct sum
    of a uniformly chosen (input_dim - deletions_i)-dimensional subspace of the
    input shot and a uniformly chosen error space disjoint from it.
    """
    params.validate()
    if rng is None:
        if params.seed is None:
            raise ChannelError("either a generator or a seed is required")
        rng = np.random.Generator(np.random.PCG64(params.seed))
    if V.num_shots != params.shots:
        raise ChannelError("shot count mismatch")
    if any(s.ambient != params.ambient_dim for s in V.shots):
        raise ChannelError("ambient dimension mismatch")
    if any(s.dim != params.input_dim for s in V.shots):
        raise ChannelError("transmit requires constant shot dimension = input_dim")

    q = V.q
    gamma_part = draw_dimension_partition(
        params.ambient_dim - params.input_dim, params.insertions, params.shots, q, rng
    )
    delta_part = draw_dimension_partition(
        params.input_dim, params.deletions, params.shots, q, rng
    )

    kept = []
    errors = []
    received = []
    for shot, g_i, d_i in zip(V.shots, gamma_part, delta_part):
        H = random_subspace_of(shot, params.input_dim - d_i, rng)
        E = random_error_space(q, params.ambient_dim, shot, g_i, rng)
        kept.append(H)
        errors.append(E)
        if E.dim == 0:
            received.append(H)
        elif H.dim == 0:
            received.append(E)
        else:
            stacked = np.vstack([H.basis, E.basis])
            R, piv = rref_q(stacked, q)
            received.append(Subspace._from_rref(q, params.ambient_dim, R[: len(piv)]))

    realization = ChannelRealization(gamma_part, delta_part, tuple(kept), tuple(errors))
    return SubspaceTuple(received), realization


# -- reachability ---------------------------------------------------------------

def reach_pair(U: SubspaceTuple, V: SubspaceTuple) -> tuple[int, int]:
    """The unique (insertions, deletions) with which the channel maps V to U."""
    if U.ambient_partition != V.ambient_partition:
        raise ChannelError("ambient partitions do not match")
    gamma = 0
    delta = 0
    for u, v in zip(U.shots, V.shots):
        inter = u.intersect(v).dim
        delta += v.dim - inter
        gamma += u.dim - inter
    return gamma, delta


def is_reachable(U: SubspaceTuple, V: SubspaceTuple, insertions: int, deletions: int) -> bool:
    """True iff some realization with the given budgets maps input V to output U."""
    return reach_pair(U, V) == (insertions, deletions)
