"""Arithmetic in the extension field F_{q^m} with automorphism sigma(a) = a^(q^r).

Elements are encoded as integers in ``[0, q^m)``: the base-q digits of the
index are the coordinates in the polynomial basis ``1, x, x^2, ...`` of the
modulus.  All heavy operations work on numpy integer arrays of such indices,
backed by precomputed exp/log/automorphism tables, so matrix kernels over
F_{q^m} stay fast even from pure Python.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "ExtensionField",
    "FieldError",
    "BUILTIN_MODULI",
    "find_modulus",
]


class FieldError(ValueError):
    """Invalid field parameters (bad modulus, non-prime q, bad automorphism)."""


# Conway-style moduli (x is primitive) for the fields exercised by the tests.
# Coefficients are low-to-high, monic.
BUILTIN_MODULI = {
    (2, 2): (1, 1, 1),                      # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),                   # x^3 + x + 1
    (3, 2): (2, 2, 1),                      # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),                   # x^3 + 2x + 1
    (3, 8): (2, 2, 2, 0, 1, 2, 0, 0, 1),    # x^8 + 2x^5 + x^4 + 2x^2 + 2x + 2
}

# Full multiplication/addition lookup tables are built below this field order.
_TABLE_LIMIT = 1024


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- plain-list polynomial arithmetic over F_q, used only while bootstrapping

def _pol_mul_mod(a, b, mod, q):
    m = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % q
    for i in range(len(res) - 1, m - 1, -1):
        c = res[i]
        if c:
            for j in range(m + 1):
                res[i - m + j] = (res[i - m + j] - c * mod[j]) % q
    res = res[:m]
    res += [0] * (m - len(res))
    return res


def _pol_pow_mod(a, e, mod, q):
    m = len(mod) - 1
    r = [1] + [0] * (m - 1)
    b = list(a)
    while e:
        if e & 1:
            r = _pol_mul_mod(r, b, mod, q)
        b = _pol_mul_mod(b, b, mod, q)
        e >>= 1
    return r


def _is_irreducible(mod, q) -> bool:
    """Frobenius criterion: x^(q^m) = x mod f and x^(q^(m/p)) != x for p | m."""
    m = len(mod) - 1
    if m == 1:
        return True
    x = [0, 1] + [0] * (m - 2)

    def frob(e):
        cur = list(x)
        for _ in range(e):
            cur = _pol_pow_mod(cur, q, mod, q)
        return cur

    if frob(m) != x:
        return False
    for p in _prime_factors(m):
        if frob(m // p) == x:
            return False
    return True


def find_modulus(q: int, m: int) -> tuple[int, ...]:
    """Smallest (lexicographic in low-to-high digits) monic irreducible of degree m with primitive x."""
    if (q, m) in BUILTIN_MODULI:
        return BUILTIN_MODULI[(q, m)]
    n = q ** m - 1
    factors = _prime_factors(n)
    x = [0, 1] + [0] * (m - 2) if m >= 2 else [1]
    one = [1] + [0] * (m - 1)
    for idx in range(q ** m):
        digs = []
        v = idx
        for _ in range(m):
            digs.append(v % q)
            v //= q
        mod = tuple(digs) + (1,)
        if not _is_irreducible(mod, q):
            continue
        if m == 1:
            return mod
        if _pol_pow_mod(x, n, mod, q) != one:
            continue
        if all(_pol_pow_mod(x, n // p, mod, q) != one for p in factors):
            return mod
    raise FieldError(f"no primitive modulus found for q={q}, m={m}")


class ExtensionField:
    """F_{q^m} with the automorphism sigma(a) = a^(q^r), gcd(r, m) = 1."""

    def __init__(self, q: int, m: int, r: int = 1, modulus=None):
        if not _is_prime(q):
            raise FieldError(f"base field order q={q} must be prime")
        if m < 1:
            raise FieldError("extension degree m must be >= 1")
        if not (1 <= r <= m):
            raise FieldError(f"automorphism exponent r={r} outside 1..{m}")
        if math.gcd(r, m) != 1:
            raise FieldError(f"gcd(r, m) must be 1, got r={r}, m={m}")
        if modulus is None:
            modulus = find_modulus(q, m)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != m + 1 or modulus[m] != 1:
            raise FieldError("modulus must be monic of degree m")
        if not _is_irreducible(list(modulus), q):
            raise FieldError(f"modulus {modulus} is reducible over F_{q}")

        self.q = q
        self.m = m
        self.r = r
        self.modulus = modulus
        self.order = q ** m
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_tables(self):
        q, m, order = self.q, self.m, self.order
        pow_q = np.array([q ** i for i in range(m)], dtype=np.int64)
        idx = np.arange(order, dtype=np.int64)
        digits = np.empty((order, m), dtype=np.int64)
        v = idx.copy()
        for i in range(m):
            digits[:, i] = v % q
            v //= q
        self._digits = digits
        self._pow_q = pow_q

        alpha = self._find_primitive()
        self.alpha = alpha

        n = order - 1
        exp = np.empty(n, dtype=np.int64)
        cur = 1
        for i in range(n):
            exp[i] = cur
            cur = self._mul_bootstrap(cur, alpha)
        if cur != 1:
            raise FieldError("internal error: generator order mismatch")
        log = np.empty(order, dtype=np.int64)
        sentinel = 2 * n
        log[0] = sentinel
        log[exp] = np.arange(n, dtype=np.int64)
        exp_ext = np.zeros(2 * sentinel + 1, dtype=np.int64)
        exp_ext[:sentinel] = exp[np.arange(sentinel) % n]
        self._exp = exp
        self._log = log
        self._exp_ext = exp_ext
        self._n = n

        self._neg = self.compose((-digits) % q)
        inv = np.zeros(order, dtype=np.int64)
        inv[exp] = exp[(-np.arange(n)) % n]
        self._inv = inv

        # sigma^j for j = 0..m-1; sigma^j(exp[i]) = exp[(i * q^(r*j mod m)) % n]
        aut = np.empty((m, order), dtype=np.int64)
        for j in range(m):
            e = pow(q, (self.r * j) % m, n) if n > 1 else 1
            table = np.zeros(order, dtype=np.int64)
            table[exp] = exp[(np.arange(n) * e) % n]
            aut[j] = table
        self._aut = aut

        if order <= _TABLE_LIMIT:
            a = idx[:, None]
            b = idx[None, :]
            self._MUL = self._exp_ext[self._log[a] + self._log[b]]
            self._ADD = self.compose((digits[:, None, :] + digits[None, :, :]) % q)
            self._mul_rows = self._MUL.tolist()
            self._add_rows = self._ADD.tolist()
        else:
            self._MUL = None
            self._ADD = None
            self._mul_rows = None
            self._add_rows = None
        self._log_list = self._log.tolist()
        self._exp_ext_list = self._exp_ext.tolist()
        self._neg_list = self._neg.tolist()
        self._inv_list = self._inv.tolist()
        self._aut_lists = [row.tolist() for row in aut]

    def _mul_bootstrap(self, a: int, b: int) -> int:
        da = [int(x) for x in self._digits[a]]
        db = [int(x) for x in self._digits[b]]
        return int(np.dot(_pol_mul_mod(da, db, list(self.modulus), self.q), self._pow_q))

    def _order_of(self, a: int, factors) -> bool:
        """True iff a generates the multiplicative group."""
        n = self.order - 1

        def powm(base, e):
            r, b = 1, base
            while e:
                if e & 1:
                    r = self._mul_bootstrap(r, b)
                b = self._mul_bootstrap(b, b)
                e >>= 1
            return r

        if powm(a, n) != 1:
            return False
        return all(powm(a, n // p) != 1 for p in factors)

    def _find_primitive(self) -> int:
        if self.order == 2:
            return 1
        factors = _prime_factors(self.order - 1)
        x_idx = self.q if self.m > 1 else None
        if x_idx is not None and self._order_of(x_idx, factors):
            return x_idx
        for a in range(2, self.order):
            if self._order_of(a, factors):
                return a
        raise FieldError("no primitive element found (modulus not irreducible?)")

    # -- scalar operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_rows is not None:
            return self._add_rows[a][b]
        d = (self._digits[a] + self._digits[b]) % self.q
        return int(np.dot(d, self._pow_q))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_list[b])

    def neg(self, a: int) -> int:
        return self._neg_list[a]

    def mul(self, a: int, b: int) -> int:
        if self._mul_rows is not None:
            return self._mul_rows[a][b]
        return self._exp_ext_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of 0 in field")
        return self._inv_list[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow_int(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return int(self._exp[(self._log_list[a] * e) % self._n]) if self._n else 1

    def sigma(self, a: int, i: int = 1) -> int:
        """Apply sigma^i; negative i gives inverse automorphism powers."""
        return self._aut_lists[i % self.m][a]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        return self._n // math.gcd(self._n, self._log_list[a]) if self._n else 1

    # -- vectorised operations (numpy arrays of element indices) -----------

    def vadd(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self._ADD is not None:
            return self._ADD[A, B]
        d = (self._digits[A] + self._digits[B]) % self.q
        return d @ self._pow_q

    def vsub(self, A, B):
        return self.vadd(A, self._neg[np.asarray(B, dtype=np.int64)])

    def vneg(self, A):
        return self._neg[np.asarray(A, dtype=np.int64)]

    def vmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self._MUL is not None:
            return self._MUL[A, B]
        return self._exp_ext[self._log[A] + self._log[B]]

    def vsigma(self, A, i: int = 1):
        return self._aut[i % self.m][np.asarray(A, dtype=np.int64)]

    def vinv(self, A):
        A = np.asarray(A, dtype=np.int64)
        if np.any(A == 0):
            raise ZeroDivisionError("inversion of 0 in field")
        return self._inv[A]

    # -- coordinates --------------------------------------------------------

    def digits(self, A):
        """Base-field coordinate array, shape A.shape + (m,), digit i = coeff of x^i."""
        return self._digits[np.asarray(A, dtype=np.int64)]

    def compose(self, D):
        """Inverse of digits(): map coordinate arrays (last axis length m) to indices."""
        D = np.asarray(D, dtype=np.int64) % self.q
        return D @ self._pow_q

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self._digits[a])

    def from_coords(self, coords) -> int:
        return int(self.compose(np.asarray(list(coords), dtype=np.int64)))

    # -- misc ---------------------------------------------------------------

    def elements(self):
        return range(self.order)

    def random_element(self, rng, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.order))

    def random_array(self, rng, shape):
        return rng.integers(0, self.order, size=shape, dtype=np.int64)

    def to_config(self) -> dict:
        return {"q": self.q, "m": self.m, "r": self.r, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and (self.q, self.m, self.r, self.modulus)
            == (other.q, other.m, other.r, other.modulus)
        )

    def __hash__(self):
        return hash((self.q, self.m, self.r, self.modulus))

    def __repr__(self):
        return f"ExtensionField(q={self.q}, m={self.m}, r={self.r})"


_FIELD_CACHE: dict[tuple, ExtensionField] = {}


def get_field(q: int, m: int, r: int = 1, modulus=None) -> ExtensionField:
    """Memoised field constructor; table building is done once per parameter set."""
    key = (q, m, r, tuple(modulus) if modulus is not None else None)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = ExtensionField(q, m, r=r, modulus=modulus)
    return _FIELD_CACHE[key]
