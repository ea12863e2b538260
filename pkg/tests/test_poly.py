from __future__ import annotations

import galois
import numpy as np
import pytest

from recursive_mds.bch import closed_windows
from recursive_mds.errors import DomainError, FieldMismatchError, InvariantViolation
from recursive_mds.fields import FieldSpec, base_pow, ext_inv, ext_mul, ext_pow, find_primitive_nth_root, powers
from recursive_mds.poly import (
    Polynomial,
    coerce_to_base,
    embed_poly,
    exact_div,
    frobenius_poly,
    is_palindromic,
    mul_linear,
    poly_add,
    poly_divrem,
    poly_mul,
    product_of_linear_factors,
    reciprocal,
)

from conftest import K8_S4_POLY


@pytest.fixture
def gf2() -> FieldSpec:
    return FieldSpec.default(1)


def _random_poly(spec: FieldSpec, degree: int, rng: np.random.Generator) -> Polynomial:
    coeffs = [int(v) for v in rng.integers(0, spec.q, size=degree)] + [int(rng.integers(1, spec.q))]
    return Polynomial.from_ints(coeffs, spec)


def test_trailing_zeros_are_stripped(gf16: FieldSpec):
    p = Polynomial.from_ints((3, 1, 0, 0), gf16)
    assert p.degree == 1
    assert p.to_ints() == (3, 1)
    assert Polynomial.from_ints((0, 0), gf16).is_zero()
    assert Polynomial.zero(gf16).degree == -1


def test_zero_has_no_leading_coefficient(gf16: FieldSpec):
    with pytest.raises(DomainError):
        Polynomial.zero(gf16).leading


def test_cyclic_generator_divides_x7_minus_1(gf2: FieldSpec):
    """1 + X^2 + X^3 generates a cyclic code of length 7."""

    x7_minus_1 = Polynomial.from_ints((1, 0, 0, 0, 0, 0, 0, 1), gf2)
    g = Polynomial.from_ints((1, 0, 1, 1), gf2)
    quot, rem = poly_divrem(x7_minus_1, g)
    assert rem.is_zero()
    assert quot.degree == 4
    assert poly_mul(quot, g) == x7_minus_1


def test_divrem_recombines(gf16: FieldSpec, rng: np.random.Generator):
    for _ in range(40):
        a = _random_poly(gf16, int(rng.integers(0, 9)), rng)
        b = _random_poly(gf16, int(rng.integers(0, 5)), rng)
        quot, rem = poly_divrem(a, b)
        assert rem.degree < b.degree
        assert poly_add(poly_mul(quot, b), rem) == a


def test_divide_by_zero(gf16: FieldSpec):
    with pytest.raises(DomainError):
        poly_divrem(Polynomial.one(gf16), Polynomial.zero(gf16))


def test_mixed_fields_are_rejected(gf8: FieldSpec, gf16: FieldSpec):
    with pytest.raises(FieldMismatchError):
        poly_add(Polynomial.one(gf8), Polynomial.one(gf16))


def test_exact_div(gf16: FieldSpec, rng: np.random.Generator):
    for _ in range(20):
        a = _random_poly(gf16, 4, rng)
        b = _random_poly(gf16, 3, rng)
        assert exact_div(poly_mul(a, b), b) == a
        # Monic linear divisors take the synthetic path.
        root = gf16.element(int(rng.integers(0, 16)))
        assert exact_div(mul_linear(a, root), Polynomial.linear(root, gf16)) == a


def test_exact_div_with_remainder(gf16: FieldSpec):
    a = Polynomial.from_ints((1, 0, 1), gf16)  # X^2 + 1 = (X + 1)^2
    with pytest.raises(InvariantViolation):
        exact_div(a, Polynomial.from_ints((2, 1), gf16))
    with pytest.raises(InvariantViolation):
        exact_div(a, Polynomial.from_ints((1, 1, 1), gf16))


def test_product_of_linear_factors_edge_cases(gf16: FieldSpec):
    assert product_of_linear_factors([], gf16) == Polynomial.one(gf16)
    r = gf16.element(7)
    assert product_of_linear_factors([r], gf16) == Polynomial.from_ints((7, 1), gf16)


def test_product_matches_galois(gf16: FieldSpec, rng: np.random.Generator):
    roots = [gf16.element(int(v)) for v in rng.integers(0, 16, size=6)]
    p = product_of_linear_factors(roots, gf16)
    expected = galois.Poly.Roots(gf16.field([int(r) for r in roots]))
    assert p.to_galois() == expected
    for r in roots:
        assert int(p.evaluate(r)) == 0


def test_sliding_window_update(gf16: FieldSpec):
    """Multiplying by the entering root and dividing by the leaving one gives the next window."""

    ext, beta = find_primitive_nth_root(51, gf16, rng_seed=3)
    n, k = 51, 5
    pows = powers(beta, n)
    g = product_of_linear_factors((pows[e % n] for e in range(-1, k - 1)), ext)
    for ell in range(n):
        g = mul_linear(g, pows[(ell + k - 1) % n])
        g = exact_div(g, Polynomial.linear(pows[(ell - 1) % n], ext))
        assert g == product_of_linear_factors((pows[(ell + j) % n] for j in range(k)), ext)


def test_conjugate_pair_coerces(gf16: FieldSpec):
    """(X - β)(X - β^-1) lies in GF(16)[X] when β has order 17, since β^16 = β^-1."""

    ext, beta = find_primitive_nth_root(17, gf16, rng_seed=0)
    pair = product_of_linear_factors([beta, ext_inv(beta)], ext)
    coerced = coerce_to_base(pair)
    assert coerced is not None
    assert coerced.degree == 2
    assert coerced.coefficient(0) == gf16.one
    assert coerce_to_base(Polynomial.linear(beta, ext)) is None


def test_closed_and_open_root_sets(gf16: FieldSpec):
    ext, beta = find_primitive_nth_root(17, gf16, rng_seed=5)
    closed = product_of_linear_factors((ext_pow(beta, e) for e in range(-2, 3)), ext)
    assert coerce_to_base(closed) is not None
    opened = product_of_linear_factors((ext_pow(beta, e) for e in range(0, 5)), ext)
    assert coerce_to_base(opened) is None


def test_embed_then_coerce(gf16: FieldSpec, rng: np.random.Generator):
    ext, _ = find_primitive_nth_root(17, gf16, rng_seed=0)
    p = _random_poly(gf16, 6, rng)
    assert coerce_to_base(embed_poly(p, ext)) == p
    with pytest.raises(FieldMismatchError):
        coerce_to_base(p)  # type: ignore[arg-type]


def test_window_over_gf256_gives_the_k8_polynomial(gf16: FieldSpec):
    """Some element of order 17, which is a power of an element of order 255, has
    β^5, ..., β^12 as the roots of the known k=8 polynomial over GF(16)."""

    ext, gamma = find_primitive_nth_root(255, gf16, rng_seed=1)
    target = Polynomial.from_ints(K8_S4_POLY, gf16)
    matches = []
    for i in range(255):
        beta = ext_pow(gamma, 15 * i)
        window = product_of_linear_factors((ext_pow(beta, e) for e in range(5, 13)), ext)
        if coerce_to_base(window) == target:
            matches.append(i)
    assert matches
    assert is_palindromic(target)
    # No window of eight consecutive powers of an element of order 255 is stable under x -> x^16.
    assert closed_windows(16, 255, 8) == []


def test_window_roots_are_roots(gf16: FieldSpec):
    ext, beta = find_primitive_nth_root(17, gf16, rng_seed=2)
    g = product_of_linear_factors((ext_pow(beta, e) for e in range(5, 13)), ext)
    coerced = coerce_to_base(g)
    assert coerced is not None
    roots = [ext_pow(beta, e) for e in range(5, 13)]
    for r in roots:
        assert embed_poly(coerced, ext).evaluate(r).is_zero()
    assert ext_mul(roots[0], roots[-1]) == ext_pow(beta, 17)


def test_reciprocal(gf16: FieldSpec):
    p = Polynomial.from_ints((3, 5, 1), gf16)
    assert reciprocal(p).to_ints() == (1, 5, 3)
    with pytest.raises(DomainError):
        reciprocal(Polynomial.from_ints((0, 1), gf16))


def test_palindromic(gf16: FieldSpec):
    assert is_palindromic(Polynomial.from_ints(K8_S4_POLY, gf16))
    assert not is_palindromic(Polynomial.from_ints((2, 1, 1), gf16))
    assert not is_palindromic(Polynomial.zero(gf16))


def test_frobenius_poly(gf16: FieldSpec):
    p = Polynomial.from_ints((2, 3, 1), gf16)
    image = frobenius_poly(p)
    assert image.to_ints() == tuple(int(base_pow(gf16.element(c), 2)) for c in (2, 3, 1))
    for _ in range(3):
        image = frobenius_poly(image)
    assert image == p


def test_galois_round_trip(gf16: FieldSpec):
    p = Polynomial.from_ints((1, 0, 9, 4), gf16)
    assert Polynomial.from_galois(p.to_galois(), gf16) == p
    with pytest.raises(FieldMismatchError):
        Polynomial.from_galois(galois.Poly([1, 1]), gf16)
