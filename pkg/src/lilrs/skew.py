"""Skew polynomials over F_{q^m} and the generalized operator evaluation.

The ring multiplication follows the twist rule x * a = sigma(a) * x.  The
operator b -> sigma(b) * a and its iterates replace ordinary powers when
evaluating, which makes evaluation F_q-linear per evaluation parameter a and
turns Vandermonde matrices into sigma-generalized Moore matrices.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .field import ExtensionField
from .linalg import rank_q, solve_affine

__all__ = [
    "SkewPolynomial",
    "EvalPoint",
    "SkewError",
    "InterpolationError",
    "op_apply",
    "op_power",
    "gen_op_eval",
    "gen_op_eval_vec",
    "skew_mul",
    "conjugacy_representatives",
    "are_conjugate",
    "iterated_op_matrix",
    "moore_matrix",
    "sum_rank_weight",
    "lagrange_interpolate",
]

NEG_INF = -math.inf


class SkewError(ValueError):
    pass


class InterpolationError(SkewError):
    """Interpolation system is singular (points violate the independence precondition)."""


class EvalPoint(NamedTuple):
    """Interpolation constraint: value c at point b with conjugacy representative rep."""

    b: int
    c: int
    rep: int


class SkewPolynomial:
    """Skew polynomial as a coefficient tuple, index i = coefficient of x^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtensionField, coeffs=()):
        cs = list(int(c) for c in coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    # -- structure ----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        return self.coeffs + (0,) * (length - len(self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, SkewPolynomial)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"SkewPolynomial({list(self.coeffs)})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPolynomial(
            f, (f.add(self.coefficient(i), other.coefficient(i)) for i in range(n))
        )

    def __neg__(self):
        f = self.field
        return SkewPolynomial(f, (f.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Skew product: (fg)_k = sum_{i+j=k} f_i sigma^i(g_j)."""
        f = self.field
        if self.is_zero() or other.is_zero():
            return SkewPolynomial.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, fi in enumerate(self.coeffs):
            if fi == 0:
                continue
            for j, gj in enumerate(other.coeffs):
                if gj == 0:
                    continue
                out[i + j] = f.add(out[i + j], f.mul(fi, f.sigma(gj, i)))
        return SkewPolynomial(f, out)

    def scale(self, c: int):
        """Left multiplication by the constant c."""
        f = self.field
        return SkewPolynomial(f, (f.mul(c, a) for a in self.coeffs))

    def times_x(self):
        """Left multiplication by x, using x * a = sigma(a) * x."""
        f = self.field
        return SkewPolynomial(f, (0,) + tuple(f.sigma(c) for c in self.coeffs))

    def evaluate(self, b: int, rep: int) -> int:
        return gen_op_eval(self.field, self.coeffs, b, rep)


# -- the operator and generalized evaluation --------------------------------

def op_apply(field: ExtensionField, a: int, b: int) -> int:
    """The basic operator: b -> sigma(b) * a."""
    return field.mul(field.sigma(b), a)


def op_power(field: ExtensionField, a: int, b: int, i: int) -> int:
    """i-fold operator power of b with parameter a; i = 0 returns b."""
    if i < 0:
        raise SkewError("operator power needs i >= 0")
    for _ in range(i):
        b = field.mul(field.sigma(b), a)
    return b


def gen_op_eval(field: ExtensionField, coeffs, b: int, a: int) -> int:
    """Generalized operator evaluation sum_i f_i * b^[i] with b^[i+1] = sigma(b^[i]) a."""
    if isinstance(coeffs, SkewPolynomial):
        coeffs = coeffs.coeffs
    acc = 0
    p = b
    for fi in coeffs:
        if fi:
            acc = field.add(acc, field.mul(fi, p))
        p = field.mul(field.sigma(p), a)
    return acc


def gen_op_eval_vec(field: ExtensionField, coeffs, bvec, a: int):
    """Vectorized gen_op_eval over an array of points (same parameter a)."""
    if isinstance(coeffs, SkewPolynomial):
        coeffs = coeffs.coeffs
    bvec = np.asarray(bvec, dtype=np.int64)
    acc = np.zeros_like(bvec)
    p = bvec
    for fi in coeffs:
        if fi:
            acc = field.vadd(acc, field.vmul(fi, p))
        p = field.vmul(field.vsigma(p), a)
    return acc


def skew_mul(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    return f * g


# -- conjugacy ----------------------------------------------------------------

def conjugacy_representatives(field: ExtensionField, ell: int) -> list[int]:
    """The first ell powers 1, alpha, ..., alpha^(ell-1); requires ell <= q - 1."""
    if ell < 1:
        raise SkewError("need at least one representative")
    if ell > field.q - 1:
        raise SkewError(
            f"F_{field.q}^{field.m} has at most q-1={field.q - 1} nonzero conjugacy classes, "
            f"requested {ell}"
        )
    return [field.pow_int(field.alpha, i) for i in range(ell)]


def are_conjugate(field: ExtensionField, a: int, b: int) -> bool:
    """Exhaustive test for b = sigma(c) * a * c^(-1) with some nonzero c."""
    if a == 0 or b == 0:
        return a == b
    for c in range(1, field.order):
        if field.mul(field.mul(field.sigma(c), a), field.inv(c)) == b:
            return True
    return False


# -- Moore matrices ------------------------------------------------------------

def iterated_op_matrix(field: ExtensionField, x, a_col, d: int):
    """d x n matrix whose row j is the j-th operator power of x, parameter per column."""
    x = np.asarray(x, dtype=np.int64)
    a_col = np.asarray(a_col, dtype=np.int64)
    M = np.empty((d, x.shape[0]), dtype=np.int64)
    row = x
    for j in range(d):
        M[j] = row
        if j + 1 < d:
            row = field.vmul(field.vsigma(row), a_col)
    return M


def _per_column_reps(partition, reps):
    out = []
    for n_i, a_i in zip(partition, reps):
        out.extend([a_i] * n_i)
    return np.asarray(out, dtype=np.int64)


def moore_matrix(field: ExtensionField, x, partition, reps, d: int):
    """sigma-generalized Moore matrix with block-wise evaluation parameters.

    x is the concatenation of the blocks given by partition; reps holds one
    conjugacy representative per block; row j applies the j-th operator power.
    """
    x = np.asarray(x, dtype=np.int64)
    partition = tuple(int(n) for n in partition)
    if sum(partition) != x.shape[0]:
        raise SkewError("partition does not match vector length")
    if len(partition) != len(reps):
        raise SkewError("one representative per block required")
    if d < 1:
        raise SkewError("need d >= 1")
    return iterated_op_matrix(field, x, _per_column_reps(partition, reps), d)


def sum_rank_weight(field: ExtensionField, x, partition) -> int:
    """Sum over blocks of the F_q-rank of the block's coordinate expansion."""
    x = np.asarray(x, dtype=np.int64)
    total = 0
    pos = 0
    for n_i in partition:
        block = x[pos : pos + n_i]
        pos += n_i
        if n_i:
            total += rank_q(field.digits(block), field.q)
    return total


# -- Lagrange interpolation ------------------------------------------------

def lagrange_interpolate(field: ExtensionField, points) -> SkewPolynomial:
    """Unique f with deg f < len(points) and f(b) = c (operator evaluation) per point.

    Within each representative group the b values must be F_q-linearly
    independent and the representatives pairwise sigma-distinct; a singular
    system signals a violated precondition.
    """
    pts = [EvalPoint(*p) for p in points]
    if not pts:
        raise InterpolationError("no interpolation points")
    n = len(pts)
    b = np.asarray([p.b for p in pts], dtype=np.int64)
    c = np.asarray([p.c for p in pts], dtype=np.int64)
    a_col = np.asarray([p.rep for p in pts], dtype=np.int64)
    A = iterated_op_matrix(field, b, a_col, n)  # A[j, p] = b_p^[j]
    x, kern = solve_affine(field, A.T, c)
    if x is None or kern.shape[0] != 0:
        raise InterpolationError("singular interpolation system (dependent points?)")
    return SkewPolynomial(field, x)
