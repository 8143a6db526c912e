"""F_q subspaces, subspace tuples, the sum-subspace metric and Gaussian binomials.

A subspace is stored by its reduced-row-echelon basis so that equal spaces
have identical representations; all tuple-level operators act shot-wise.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .field import ExtensionField
from .linalg import rref_q, right_kernel_q

__all__ = [
    "Subspace",
    "SubspaceTuple",
    "SubspaceError",
    "sum_subspace_distance",
    "expand_row_wise",
    "expand_column_wise",
    "gaussian_binomial",
    "kappa",
    "iter_vectors",
    "iter_subspaces",
]


class SubspaceError(ValueError):
    pass


def expand_row_wise(field: ExtensionField, M):
    """Replace each F_{q^m} entry by its m base-field coordinates along the row."""
    M = np.atleast_2d(np.asarray(M, dtype=np.int64))
    rows, cols = M.shape
    return field.digits(M).reshape(rows, cols * field.m)


def expand_column_wise(field: ExtensionField, M):
    """Replace each F_{q^m} entry by its m base-field coordinates down the column."""
    M = np.atleast_2d(np.asarray(M, dtype=np.int64))
    rows, cols = M.shape
    return field.digits(M).transpose(0, 2, 1).reshape(rows * field.m, cols)


class Subspace:
    """Subspace of F_q^N held as a canonical (RREF) basis matrix."""

    __slots__ = ("q", "ambient", "basis")

    def __init__(self, q: int, ambient: int, rows=None):
        self.q = q
        self.ambient = int(ambient)
        if rows is None:
            basis = np.zeros((0, self.ambient), dtype=np.int64)
        else:
            rows = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % q
            if rows.shape[1] != self.ambient and rows.size > 0:
                raise SubspaceError("row length does not match ambient dimension")
            if rows.size == 0:
                basis = np.zeros((0, self.ambient), dtype=np.int64)
            else:
                R, piv = rref_q(rows, q)
                basis = R[: len(piv)]
        self.basis = basis

    @classmethod
    def _from_rref(cls, q, ambient, basis):
        out = object.__new__(cls)
        out.q = q
        out.ambient = ambient
        out.basis = basis
        return out

    @classmethod
    def zero(cls, q, ambient):
        return cls(q, ambient)

    @classmethod
    def full(cls, q, ambient):
        return cls._from_rref(q, ambient, np.eye(ambient, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, vector) -> bool:
        v = np.asarray(vector, dtype=np.int64) % self.q
        if not np.any(v):
            return True
        stacked = np.vstack([self.basis, v[None, :]])
        R, piv = rref_q(stacked, self.q)
        return len(piv) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def sum_space(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.q, self.ambient, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return Subspace.zero(self.q, self.ambient)
        stacked = np.vstack([self.basis, other.basis])  # (a+b, N)
        # coefficient vectors (u | v) with u A + v B = 0 give intersection vectors u A
        K = right_kernel_q(stacked.T, self.q)
        if K.shape[0] == 0:
            return Subspace.zero(self.q, self.ambient)
        vecs = (K[:, :a] @ self.basis) % self.q
        return Subspace(self.q, self.ambient, vecs)

    def dual(self) -> "Subspace":
        """Orthogonal complement under the standard dot product."""
        if self.dim == 0:
            return Subspace.full(self.q, self.ambient)
        K = right_kernel_q(self.basis, self.q)
        return Subspace(self.q, self.ambient, K)

    def vectors(self):
        """All vectors of the space (small spaces only)."""
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            yield (np.asarray(coeffs, dtype=np.int64) @ self.basis) % self.q

    def _check(self, other):
        if self.q != other.q or self.ambient != other.ambient:
            raise SubspaceError("ambient spaces do not match")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.q == other.q
            and self.ambient == other.ambient
            and self.basis.shape == other.basis.shape
            and bool(np.all(self.basis == other.basis))
        )

    def __hash__(self):
        return hash((self.q, self.ambient, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(q={self.q}, ambient={self.ambient}, dim={self.dim})"

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "rows": self.dim,
            "basis": self.basis.tolist(),
        }

    @classmethod
    def from_json(cls, q: int, obj: dict) -> "Subspace":
        return cls(q, obj["ambient"], np.asarray(obj["basis"], dtype=np.int64).reshape(obj["rows"], obj["ambient"]) if obj["rows"] else None)


def subspace_distance(U: Subspace, V: Subspace) -> int:
    s = U.sum_space(V).dim
    return 2 * s - U.dim - V.dim


class SubspaceTuple:
    """Tuple of per-shot subspaces with a fixed ambient dimension partition."""

    __slots__ = ("shots",)

    def __init__(self, shots):
        shots = tuple(shots)
        if not shots:
            raise SubspaceError("empty tuple")
        q = shots[0].q
        if any(s.q != q for s in shots):
            raise SubspaceError("mixed base fields in tuple")
        self.shots = shots

    @property
    def q(self) -> int:
        return self.shots[0].q

    @property
    def num_shots(self) -> int:
        return len(self.shots)

    @property
    def ambient_partition(self) -> tuple[int, ...]:
        return tuple(s.ambient for s in self.shots)

    @property
    def dim_partition(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.shots)

    @property
    def sum_dim(self) -> int:
        return sum(s.dim for s in self.shots)

    def dual(self) -> "SubspaceTuple":
        return SubspaceTuple(s.dual() for s in self.shots)

    def intersect(self, other: "SubspaceTuple") -> "SubspaceTuple":
        self._check(other)
        return SubspaceTuple(a.intersect(b) for a, b in zip(self.shots, other.shots))

    def sum_space(self, other: "SubspaceTuple") -> "SubspaceTuple":
        self._check(other)
        return SubspaceTuple(a.sum_space(b) for a, b in zip(self.shots, other.shots))

    def distance(self, other: "SubspaceTuple") -> int:
        return sum_subspace_distance(self, other)

    def _check(self, other):
        if self.ambient_partition != other.ambient_partition:
            raise SubspaceError("ambient partitions do not match")

    def __eq__(self, other):
        return isinstance(other, SubspaceTuple) and self.shots == other.shots

    def __hash__(self):
        return hash(self.shots)

    def __repr__(self):
        return f"SubspaceTuple(dims={self.dim_partition}, ambient={self.ambient_partition})"

    def to_json(self) -> dict:
        return {"q": self.q, "shots": [s.to_json() for s in self.shots]}

    @classmethod
    def from_json(cls, obj: dict) -> "SubspaceTuple":
        q = obj["q"]
        return cls(Subspace.from_json(q, s) for s in obj["shots"])


def sum_subspace_distance(U: SubspaceTuple, V: SubspaceTuple) -> int:
    """Sum over shots of dim(U_i + V_i) - dim(U_i ^ V_i)."""
    if U.ambient_partition != V.ambient_partition:
        raise SubspaceError("ambient partitions do not match")
    return sum(subspace_distance(a, b) for a, b in zip(U.shots, V.shots))


# -- counting ------------------------------------------------------------------

def gaussian_binomial(N: int, l: int, q: int):
    """Number of l-dimensional subspaces of F_q^N, exact big integer."""
    if l < 0 or l > N:
        raise ValueError(f"l={l} out of range 0..{N}")
    num = 1
    den = 1
    for i in range(1, l + 1):
        num *= q ** (N - l + i) - 1
        den *= q ** i - 1
    return num // den


def kappa(q: int, terms: int | None = None) -> float:
    """Truncation of prod_{i>=1} (1 - q^-i)^(-1); auto-truncates below 1e-12 drift."""
    if terms is not None and terms < 1:
        raise ValueError("need at least one term")
    prod = 1.0
    i = 1
    while True:
        factor = 1.0 / (1.0 - q ** (-float(i)))
        prod *= factor
        if terms is not None:
            if i >= terms:
                return prod
        elif factor - 1.0 < 1e-13 or i >= 200:
            return prod
        i += 1


# -- exhaustive enumeration (test oracles, tiny parameters only) -----------------

def iter_vectors(q: int, N: int):
    for tup in itertools.product(range(q), repeat=N):
        yield np.asarray(tup, dtype=np.int64)


def iter_subspaces(q: int, N: int, d: int):
    """All d-dimensional subspaces of F_q^N, one canonical basis each."""
    if d == 0:
        yield Subspace.zero(q, N)
        return
    if d > N:
        return
    for pivots in itertools.combinations(range(N), d):
        free_pos = [
            (i, j)
            for i in range(d)
            for j in range(N)
            if j > pivots[i] and j not in pivots
        ]
        base = np.zeros((d, N), dtype=np.int64)
        for i, p in enumerate(pivots):
            base[i, p] = 1
        for vals in itertools.product(range(q), repeat=len(free_pos)):
            M = base.copy()
            for (i, j), v in zip(free_pos, vals):
                M[i, j] = v
            yield Subspace._from_rref(q, N, M)
