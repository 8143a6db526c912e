import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lilrs import ExtensionField, FieldError, get_field
from lilrs.field import BUILTIN_MODULI, find_modulus


def test_builtin_moduli_build():
    for (q, m), mod in BUILTIN_MODULI.items():
        fld = get_field(q, m)
        assert fld.modulus == mod
        assert fld.element_order(fld.alpha) == q**m - 1


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        ExtensionField(2, 2, modulus=(0, 0, 1))  # x^2 = x*x


def test_non_prime_q_rejected():
    with pytest.raises(FieldError):
        ExtensionField(4, 2)


def test_bad_automorphism_exponent():
    with pytest.raises(FieldError):
        ExtensionField(2, 4, r=2)  # gcd(2, 4) != 1
    with pytest.raises(FieldError):
        ExtensionField(3, 3, r=5)


def test_find_modulus_other_field():
    mod = find_modulus(2, 4)
    fld = ExtensionField(2, 4, modulus=mod)
    assert fld.element_order(fld.alpha) == 15


def test_sigma_identity_and_frobenius(f4):
    # sigma^0 is the identity
    for a in f4.elements():
        assert f4.sigma(a, 0) == a
    # F_4 with alpha^2 = alpha + 1: sigma(alpha) = alpha^2 has coordinates (1, 1)
    assert f4.coords(f4.sigma(f4.alpha)) == (1, 1)


def test_sigma_order_m(f27):
    for a in f27.elements():
        assert f27.sigma(a, 3) == a


def test_sigma_inverse(f27):
    for a in f27.elements():
        assert f27.sigma(f27.sigma(a, 1), -1) == a
        assert f27.sigma(f27.sigma(a, -2), 2) == a


@pytest.mark.parametrize("params", [(2, 2), (3, 2), (3, 3)])
@given(data=st.data())
def test_sigma_is_field_automorphism(params, data):
    fld = get_field(*params)
    x = data.draw(st.integers(0, fld.order - 1))
    y = data.draw(st.integers(0, fld.order - 1))
    assert fld.sigma(fld.add(x, y)) == fld.add(fld.sigma(x), fld.sigma(y))
    assert fld.sigma(fld.mul(x, y)) == fld.mul(fld.sigma(x), fld.sigma(y))


def test_sigma_fixes_base_field(f9):
    for c in range(f9.q):
        assert f9.sigma(c) == c


def test_field_axioms_random(f27, rng):
    for _ in range(200):
        a = f27.random_element(rng)
        b = f27.random_element(rng)
        c = f27.random_element(rng)
        assert f27.mul(a, f27.add(b, c)) == f27.add(f27.mul(a, b), f27.mul(a, c))
        assert f27.mul(f27.mul(a, b), c) == f27.mul(a, f27.mul(b, c))
        if a:
            assert f27.mul(a, f27.inv(a)) == 1
        assert f27.add(a, f27.neg(a)) == 0


def test_vector_ops_match_scalars(f27, rng):
    A = f27.random_array(rng, 40)
    B = f27.random_array(rng, 40)
    assert all(int(x) == f27.add(int(a), int(b)) for x, a, b in zip(f27.vadd(A, B), A, B))
    assert all(int(x) == f27.mul(int(a), int(b)) for x, a, b in zip(f27.vmul(A, B), A, B))
    assert all(int(x) == f27.sub(int(a), int(b)) for x, a, b in zip(f27.vsub(A, B), A, B))
    assert all(int(x) == f27.sigma(int(a), 2) for x, a in zip(f27.vsigma(A, 2), A))


def test_vmul_broadcasts(f9, rng):
    col = f9.random_array(rng, (5, 1))
    row = f9.random_array(rng, (1, 7))
    out = f9.vmul(col, row)
    assert out.shape == (5, 7)
    assert int(out[2, 3]) == f9.mul(int(col[2, 0]), int(row[0, 3]))


def test_digits_compose_roundtrip(f27):
    idx = np.arange(f27.order)
    assert np.array_equal(f27.compose(f27.digits(idx)), idx)


def test_pow_int(f27):
    a = f27.alpha
    assert f27.pow_int(a, 0) == 1
    assert f27.pow_int(a, 26) == 1
    assert f27.pow_int(a, -1) == f27.inv(a)
    assert f27.pow_int(0, 3) == 0


def test_config_roundtrip(f27):
    cfg = f27.to_config()
    again = get_field(cfg["q"], cfg["m"], cfg["r"], tuple(cfg["modulus"]))
    assert again == f27


def test_large_field_builds():
    fld = get_field(3, 8)
    assert fld.order == 6561
    assert fld.element_order(fld.alpha) == 6560
    a = 1234
    assert fld.sigma(fld.sigma(a, 5), 3) == a  # sigma^8 = id
