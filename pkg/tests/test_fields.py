from __future__ import annotations

import galois
import numpy as np
import pytest

from recursive_mds.errors import DomainError, FieldMismatchError, ParameterError
from recursive_mds.fields import (
    DEFAULT_IRREDUCIBLES,
    PHOTON_IRREDUCIBLE,
    ExtensionSpec,
    FieldSpec,
    base_add,
    base_inv,
    base_mul,
    base_pow,
    discrete_log_table,
    embed,
    ext_add,
    ext_inv,
    ext_mul,
    ext_pow,
    extract_base,
    find_irreducible,
    find_primitive_nth_root,
    frobenius_base,
    has_order,
    in_base_field,
    multiplicative_order,
    powers,
)


def test_mul_reduces_modulo_irreducible(gf16: FieldSpec):
    """x · x^3 = x^4 = x + 1 over x^4 + x + 1."""
    assert int(base_mul(gf16.element(2), gf16.element(8))) == 3


def test_add_is_characteristic_two(gf16: FieldSpec):
    for v in range(16):
        a = gf16.element(v)
        assert int(base_add(a, a)) == 0


def test_inverse_of_every_nonzero_element(gf16: FieldSpec):
    for v in range(1, 16):
        a = gf16.element(v)
        assert int(base_mul(a, base_inv(a))) == 1
        assert base_pow(a, -1) == base_inv(a)


def test_inverse_of_zero(gf16: FieldSpec):
    with pytest.raises(DomainError):
        base_inv(gf16.zero)


def test_mixed_fields_are_rejected(gf8: FieldSpec, gf16: FieldSpec):
    with pytest.raises(FieldMismatchError):
        base_add(gf8.one, gf16.one)


@pytest.mark.parametrize("s, modulus", [(4, 0b10001), (4, 0b1011), (3, 0b1001)])
def test_bad_modulus(s: int, modulus: int):
    """x^4+1 is reducible, 0b1011 has the wrong degree, x^3+1 is reducible."""
    with pytest.raises(ParameterError):
        FieldSpec(s, modulus)


def test_default_moduli_are_valid():
    for s, modulus in DEFAULT_IRREDUCIBLES.items():
        assert FieldSpec.default(s).irreducible == modulus
    assert FieldSpec(8, PHOTON_IRREDUCIBLE).q == 256
    assert FieldSpec.default(9).irreducible.bit_length() == 10


def test_element_out_of_range(gf16: FieldSpec):
    with pytest.raises(ParameterError):
        gf16.element(16)


def test_frobenius(gf16: FieldSpec):
    assert int(frobenius_base(gf16.zero)) == 0
    assert int(frobenius_base(gf16.one)) == 1
    for v in range(16):
        a = gf16.element(v)
        b = a
        for _ in range(gf16.s):
            b = frobenius_base(b)
        assert b == a

    orbit = {2}
    a = frobenius_base(gf16.element(2))
    while int(a) != 2:
        orbit.add(int(a))
        a = frobenius_base(a)
    assert len(orbit) == 4


def test_frobenius_is_a_ring_homomorphism(gf16: FieldSpec, rng: np.random.Generator):
    for _ in range(50):
        a, b = (gf16.element(int(v)) for v in rng.integers(0, 16, size=2))
        assert frobenius_base(a + b) == frobenius_base(a) + frobenius_base(b)
        assert frobenius_base(a * b) == frobenius_base(a) * frobenius_base(b)


def test_multiplicative_order():
    assert multiplicative_order(16, 17) == 2
    assert multiplicative_order(16, 51) == 2
    assert multiplicative_order(16, 11) == 5
    assert multiplicative_order(4, 1) == 1


def test_find_irreducible_linear(gf16: FieldSpec):
    assert find_irreducible(gf16, 1, rng_seed=3) == galois.Poly([1, 0], field=gf16.field)


def test_find_irreducible_degree_two_has_no_root(gf16: FieldSpec):
    f = find_irreducible(gf16, 2, rng_seed=11)
    assert f.degree == 2
    assert np.count_nonzero(f(gf16.field.elements)) == 16


def test_find_irreducible_over_gf2():
    f = find_irreducible(FieldSpec.default(1), 8, rng_seed=5)
    assert f.degree == 8
    assert f.is_irreducible()
    assert f == find_irreducible(FieldSpec.default(1), 8, rng_seed=5)


def test_primitive_root_q_plus_one(gf16: FieldSpec):
    ext, alpha = find_primitive_nth_root(17, gf16, rng_seed=1)
    assert ext.m == 2
    assert has_order(alpha, 17)
    assert len({p.key() for p in powers(alpha, 17)}) == 17


def test_primitive_root_of_order_one(gf16: FieldSpec):
    ext, alpha = find_primitive_nth_root(1, gf16, rng_seed=0)
    assert ext.m == 1
    assert alpha == ext.one


def test_primitive_root_needs_odd_order(gf16: FieldSpec):
    with pytest.raises(ParameterError):
        find_primitive_nth_root(18, gf16, rng_seed=0)


def test_primitive_root_of_order_51(gf16: FieldSpec):
    ext, alpha = find_primitive_nth_root(51, gf16, rng_seed=2)
    assert ext.m == multiplicative_order(16, 51)
    assert has_order(alpha, 51)


def test_order_255_over_gf2():
    """A primitive element of GF(256) built as a degree 8 tower over GF(2)."""

    ext, gamma = find_primitive_nth_root(255, FieldSpec.default(1), rng_seed=4)
    assert ext.m == 8
    assert ext_pow(gamma, 255) == ext.one
    assert ext_pow(gamma, 85) != ext.one
    assert ext_pow(gamma, 51) != ext.one
    assert has_order(gamma, 255)
    assert has_order(ext_pow(gamma, 5), 51)


def test_has_order_edge_cases(gf16: FieldSpec):
    ext, alpha = find_primitive_nth_root(17, gf16, rng_seed=1)
    assert has_order(ext.one, 1)
    assert not has_order(ext.one, 17)
    with pytest.raises(ParameterError):
        has_order(alpha, 7)  # 7 does not divide 255
    with pytest.raises(ParameterError):
        has_order(ext.zero, 17)


def test_extension_field_axioms(gf16: FieldSpec, rng: np.random.Generator):
    ext, _ = find_primitive_nth_root(13, gf16, rng_seed=6)
    assert ext.m == 3
    for _ in range(30):
        a, b, c = (ext.random_element(rng) for _ in range(3))
        assert ext_mul(ext_mul(a, b), c) == ext_mul(a, ext_mul(b, c))
        assert ext_mul(a, ext_add(b, c)) == ext_add(ext_mul(a, b), ext_mul(a, c))
        assert ext_mul(a, b) == ext_mul(b, a)
        if not a.is_zero():
            assert ext_mul(a, ext_inv(a)) == ext.one
            assert ext_pow(a, ext.order - 1) == ext.one
            assert ext_pow(a, -2) == ext_inv(ext_mul(a, a))


def test_ext_inverse_of_zero(gf16: FieldSpec):
    ext, _ = find_primitive_nth_root(17, gf16, rng_seed=0)
    with pytest.raises(DomainError):
        ext_inv(ext.zero)


def test_embed_is_a_ring_homomorphism(gf16: FieldSpec, rng: np.random.Generator):
    ext, _ = find_primitive_nth_root(17, gf16, rng_seed=0)
    assert embed(gf16.zero, ext) == ext.zero
    assert embed(gf16.one, ext) == ext.one
    for _ in range(30):
        a, b = (gf16.element(int(v)) for v in rng.integers(0, 16, size=2))
        assert ext_add(embed(a, ext), embed(b, ext)) == embed(a + b, ext)
        assert ext_mul(embed(a, ext), embed(b, ext)) == embed(a * b, ext)


def test_embed_rejects_other_fields(gf8: FieldSpec, gf16: FieldSpec):
    ext, _ = find_primitive_nth_root(17, gf16, rng_seed=0)
    with pytest.raises(FieldMismatchError):
        embed(gf8.one, ext)


def test_in_base_field(gf16: FieldSpec, rng: np.random.Generator):
    ext, alpha = find_primitive_nth_root(255, gf16, rng_seed=9)
    a = gf16.element(7)
    assert in_base_field(embed(a, ext))
    assert extract_base(embed(a, ext)) == a
    assert not in_base_field(ext.theta)
    assert extract_base(ext.theta) is None
    # The norm of a generator lands in the base field.
    assert in_base_field(ext_pow(alpha, (ext.order - 1) // (gf16.q - 1)))
    for _ in range(30):
        x = ext.random_element(rng)
        assert in_base_field(x) == (ext_pow(x, gf16.q) == x)


def test_extension_rejects_reducible_modulus(gf16: FieldSpec):
    # X^2 + 1 = (X + 1)^2
    with pytest.raises(ParameterError):
        ExtensionSpec(gf16, (1, 0, 1))


def test_discrete_log_table(gf16: FieldSpec, photon_field: FieldSpec):
    table = discrete_log_table(gf16)
    assert table is not None
    assert table[1] == 0
    assert table[2] == 1
    assert table[3] == 4
    assert len(table) == 15
    assert discrete_log_table(photon_field) is None
