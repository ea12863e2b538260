"""Module for dense univariate polynomials over a base field or a tower extension.

A `Polynomial` is an immutable value: a tuple of coefficients, constant term
first, with no trailing zeros, together with the field it lives over. Every
operation returns a new value.

Over the base field this is deliberately thin: heavy lifting (irreducibility,
modular powers) is done by `galois.Poly`, and `to_galois` / `from_galois`
convert between the two."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from dataclasses import dataclass
from typing import Generic, Hashable, Iterable, Sequence, TypeVar
import logging

# Library imports
import galois

# Local imports
from recursive_mds.errors import DomainError, FieldMismatchError, InvariantViolation, ParameterError
from recursive_mds.fields import (
    ExtElement,
    ExtensionSpec,
    FieldContext,
    FieldElement,
    FieldSpec,
    embed,
    extract_base,
    frobenius_base,
)

__all__ = [
    "Polynomial",
    "poly_add",
    "poly_mul",
    "poly_divrem",
    "exact_div",
    "product_of_linear_factors",
    "mul_linear",
    "reciprocal",
    "is_palindromic",
    "coerce_to_base",
    "embed_poly",
    "frobenius_poly",
]

log = logging.getLogger(__name__)

E = TypeVar("E")


@dataclass(frozen=True, eq=False)
class Polynomial(Generic[E]):
    """Σ coeffs[i]·X^i over `ring`. The zero polynomial has no coefficients."""

    coeffs: tuple[E, ...]
    ring: FieldContext[E]

    def __post_init__(self) -> None:

        coeffs = tuple(self.coeffs)
        end = len(coeffs)
        while end > 0 and self.ring.is_zero(coeffs[end - 1]):
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    # ~ Constructors ~ #

    @classmethod
    def one(cls, ring: FieldContext[E]) -> Polynomial[E]:
        return cls((ring.one,), ring)

    @classmethod
    def zero(cls, ring: FieldContext[E]) -> Polynomial[E]:
        return cls((), ring)

    @classmethod
    def linear(cls, root: E, ring: FieldContext[E]) -> Polynomial[E]:
        """X - root, which is X + root in characteristic 2."""
        return cls((root, ring.one), ring)

    @staticmethod
    def from_ints(values: Sequence[int], spec: FieldSpec) -> Polynomial[FieldElement]:
        """Base field polynomial from integer-encoded coefficients, constant term first."""
        return Polynomial(tuple(spec.element(v) for v in values), spec)

    @staticmethod
    def from_galois(p: galois.Poly, spec: FieldSpec) -> Polynomial[FieldElement]:
        if type(p.coeffs) is not spec.field:
            raise FieldMismatchError(f"Polynomial over {p.field.name} is not over GF(2^{spec.s}).")
        coeffs = p.coefficients(order="asc")
        return Polynomial(tuple(coeffs[i] for i in range(coeffs.size)), spec)

    # ~ Accessors ~ #

    @property
    def degree(self) -> int:
        "Degree, -1 for the zero polynomial."
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.ring.key(self.coeffs[-1]) == self.ring.key(self.ring.one)

    @property
    def leading(self) -> E:
        if not self.coeffs:
            raise DomainError("The zero polynomial has no leading coefficient.")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> E:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def key(self) -> tuple[Hashable, ...]:
        return tuple(self.ring.key(c) for c in self.coeffs)

    def to_ints(self) -> tuple[int, ...]:
        """Integer-encoded coefficients, constant term first. Base field polynomials only."""

        if not isinstance(self.ring, FieldSpec):
            raise FieldMismatchError("Only base field polynomials have an integer encoding.")
        return tuple(int(c) for c in self.coeffs)  # type: ignore[call-overload]

    def to_galois(self) -> galois.Poly:
        """Convert a base field polynomial to `galois.Poly`."""

        if not isinstance(self.ring, FieldSpec):
            raise FieldMismatchError("Only base field polynomials convert to galois.Poly.")
        return galois.Poly(list(self.to_ints()) or [0], field=self.ring.field, order="asc")

    def evaluate(self, x: E) -> E:
        """Horner evaluation."""

        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = self.ring.add(self.ring.mul(acc, x), c)
        return acc

    def monic(self) -> Polynomial[E]:
        inv = self.ring.inv(self.leading)
        return Polynomial(tuple(self.ring.mul(c, inv) for c in self.coeffs), self.ring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.key() == other.key()  # type: ignore[reportUnknownMemberType]

    def __hash__(self) -> int:
        return hash((self.ring, self.key()))

    def __repr__(self) -> str:
        body = ", ".join(self.ring.format(c) for c in self.coeffs)
        return f"Polynomial([{body}])"


def _check_same_ring(a: Polynomial[E], b: Polynomial[E]) -> None:
    if a.ring != b.ring:
        raise FieldMismatchError("Polynomials are defined over different fields.")


def poly_add(a: Polynomial[E], b: Polynomial[E]) -> Polynomial[E]:
    _check_same_ring(a, b)
    ring = a.ring
    size = max(len(a.coeffs), len(b.coeffs))
    return Polynomial(tuple(ring.add(a.coefficient(i), b.coefficient(i)) for i in range(size)), ring)


def poly_mul(a: Polynomial[E], b: Polynomial[E]) -> Polynomial[E]:
    _check_same_ring(a, b)
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Polynomial.zero(ring)
    out = [ring.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if ring.is_zero(x):
            continue
        for j, y in enumerate(b.coeffs):
            out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return Polynomial(tuple(out), ring)


def poly_divrem(a: Polynomial[E], b: Polynomial[E]) -> tuple[Polynomial[E], Polynomial[E]]:
    """Long division: returns (quotient, remainder) with a = quotient·b + remainder."""

    _check_same_ring(a, b)
    if b.is_zero():
        raise DomainError("Division by the zero polynomial.")
    ring = a.ring
    if a.degree < b.degree:
        return Polynomial.zero(ring), a

    rem = list(a.coeffs)
    lead_inv = ring.inv(b.leading)
    db = b.degree
    quot = [ring.zero] * (a.degree - db + 1)
    for shift in range(a.degree - db, -1, -1):
        top = rem[shift + db]
        if ring.is_zero(top):
            continue
        factor = ring.mul(top, lead_inv)
        quot[shift] = factor
        for j, c in enumerate(b.coeffs):
            # Subtraction is addition in characteristic 2.
            rem[shift + j] = ring.add(rem[shift + j], ring.mul(factor, c))
    return Polynomial(tuple(quot), ring), Polynomial(tuple(rem[:db]), ring)


def exact_div(a: Polynomial[E], b: Polynomial[E]) -> Polynomial[E]:
    """a / b when b divides a.

    Raises:
        InvariantViolation: If the remainder is not zero.
    """

    _check_same_ring(a, b)
    if b.degree == 1 and b.is_monic() and a.degree >= 1:
        return _divide_by_linear(a, b.coeffs[0])
    quot, rem = poly_divrem(a, b)
    if not rem.is_zero():
        log.error(f"func exact_div: {b} does not divide {a}.")
        raise InvariantViolation(f"Exact division left a nonzero remainder {rem}.")
    return quot


def _divide_by_linear(a: Polynomial[E], root: E) -> Polynomial[E]:
    # Synthetic division by X + root.
    ring = a.ring
    n = a.degree
    quot: list[E] = [ring.zero] * n
    carry = ring.zero
    for i in range(n, 0, -1):
        carry = ring.add(a.coeffs[i], ring.mul(carry, root))
        quot[i - 1] = carry
    remainder = ring.add(a.coeffs[0], ring.mul(carry, root))
    if not ring.is_zero(remainder):
        log.error(f"func exact_div: X + {ring.format(root)} does not divide {a}.")
        raise InvariantViolation(f"Exact division by a linear factor left remainder {ring.format(remainder)}.")
    return Polynomial(tuple(quot), ring)


def product_of_linear_factors(roots: Iterable[E], ring: FieldContext[E]) -> Polynomial[E]:
    """∏ (X - r) over the given roots. Monic, of degree len(roots)."""

    coeffs: list[E] = [ring.one]
    for r in roots:
        _mul_linear_in_place(coeffs, r, ring)
    return Polynomial(tuple(coeffs), ring)


def mul_linear(p: Polynomial[E], root: E) -> Polynomial[E]:
    """p·(X - root) without going through the general product."""

    coeffs = list(p.coeffs)
    if not coeffs:
        return p
    _mul_linear_in_place(coeffs, root, p.ring)
    return Polynomial(tuple(coeffs), p.ring)


def _mul_linear_in_place(coeffs: list[E], root: E, ring: FieldContext[E]) -> None:
    coeffs.append(ring.zero)
    for i in range(len(coeffs) - 1, 0, -1):
        coeffs[i] = ring.add(coeffs[i - 1], ring.mul(coeffs[i], root))
    coeffs[0] = ring.mul(coeffs[0], root)


def reciprocal(p: Polynomial[E]) -> Polynomial[E]:
    """X^deg·p(1/X), i.e. the coefficient vector reversed.

    Raises:
        DomainError: If p(0) = 0.
    """

    if p.is_zero() or p.ring.is_zero(p.coeffs[0]):
        raise DomainError("The reciprocal of a polynomial with zero constant term is not defined.")
    return Polynomial(tuple(reversed(p.coeffs)), p.ring)


def is_palindromic(p: Polynomial[E]) -> bool:
    keys = p.key()
    return bool(keys) and keys == keys[::-1]


def coerce_to_base(p: Polynomial[ExtElement]) -> Polynomial[FieldElement] | None:
    """The base field polynomial p is the embedding of, or None if a coefficient lies outside GF(q)."""

    if not isinstance(p.ring, ExtensionSpec):
        raise FieldMismatchError("coerce_to_base expects a polynomial over an extension field.")
    out: list[FieldElement] = []
    for c in p.coeffs:
        base = extract_base(c)
        if base is None:
            return None
        out.append(base)
    return Polynomial(tuple(out), p.ring.base)


def embed_poly(p: Polynomial[FieldElement], ext: ExtensionSpec) -> Polynomial[ExtElement]:
    if p.ring != ext.base:
        raise FieldMismatchError("The polynomial is not over the base field of the extension.")
    return Polynomial(tuple(embed(c, ext) for c in p.coeffs), ext)


def frobenius_poly(g: Polynomial[FieldElement]) -> Polynomial[FieldElement]:
    """Square every coefficient."""

    if not isinstance(g.ring, FieldSpec):
        raise ParameterError("frobenius_poly expects a base field polynomial.")
    return Polynomial(tuple(frobenius_base(c) for c in g.coeffs), g.ring)
