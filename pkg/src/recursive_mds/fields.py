"""Module for finite field arithmetic.

Base fields GF(2^s) are `galois` field classes. Their elements are 0-d galois
arrays whose integer value is the bitvector of polynomial coefficients, low bit
first, so 2 is x and 0x13 is x^4+x+1. This is the convention the Photon matrix
entries are written in.

Extensions GF(q^m) are towers GF(q)[θ]/(f): an element is the vector of its m
coordinates over GF(q). Deciding whether an extension element lies in GF(q) is
then a structural check (all coordinates above the constant one are zero)."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Hashable, Protocol, Sequence, TypeVar
import logging

if TYPE_CHECKING:
    import rich.repr

# Library imports
import galois
import numpy as np

# Local imports
from recursive_mds.config import get_settings
from recursive_mds.errors import DomainError, FieldMismatchError, ParameterError

__all__ = [
    "FieldElement",
    "FieldContext",
    "FieldSpec",
    "ExtensionSpec",
    "ExtElement",
    "DEFAULT_IRREDUCIBLES",
    "PHOTON_IRREDUCIBLE",
    "base_add",
    "base_mul",
    "base_inv",
    "base_pow",
    "frobenius_base",
    "ext_add",
    "ext_mul",
    "ext_inv",
    "ext_pow",
    "embed",
    "in_base_field",
    "extract_base",
    "has_order",
    "multiplicative_order",
    "find_irreducible",
    "find_primitive_nth_root",
    "powers",
    "discrete_log_table",
]

log = logging.getLogger(__name__)

FieldElement = galois.FieldArray
"A 0-d galois array. Its class is the field it belongs to."

E = TypeVar("E")

DEFAULT_IRREDUCIBLES: dict[int, int] = {
    1: 0b11,  #          x + 1
    2: 0b111,  #         x^2 + x + 1
    3: 0b1011,  #        x^3 + x + 1
    4: 0b10011,  #       x^4 + x + 1
    5: 0b100101,  #      x^5 + x^2 + 1
    6: 0b1000011,  #     x^6 + x + 1
    7: 0b10000011,  #    x^7 + x + 1
    8: 0x11D,  #         x^8 + x^4 + x^3 + x^2 + 1
}
"""Default modulus per symbol size. Larger s fall back to the lexicographically
first primitive polynomial."""

PHOTON_IRREDUCIBLE = 0x11B
"x^8 + x^4 + x^3 + x + 1, the AES/Photon modulus. x is not primitive for it."


class FieldContext(Protocol[E]):
    """What polynomials and matrices need from a field, base or extension."""

    @property
    def zero(self) -> E: ...

    @property
    def one(self) -> E: ...

    def add(self, a: E, b: E) -> E: ...

    def mul(self, a: E, b: E) -> E: ...

    def inv(self, a: E) -> E: ...

    def is_zero(self, a: E) -> bool: ...

    def key(self, a: E) -> Hashable: ...

    def format(self, a: E) -> str: ...


@lru_cache(maxsize=None)
def _galois_field(s: int, irreducible: int) -> type[galois.FieldArray]:
    # One class per (s, modulus) so that elements built from equal specs stay compatible.
    if s == 1:
        return galois.GF(2)
    return galois.GF(2**s, irreducible_poly=irreducible)


#######################
# ~ Base field GF(q) ~ #
#######################


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^s) defined by an irreducible polynomial over GF(2), given as a bitvector."""

    s: int
    irreducible: int

    def __post_init__(self) -> None:

        max_s = get_settings().max_symbol_bits
        if not 1 <= self.s <= max_s:
            raise ParameterError(f"Symbol size s={self.s} is outside the supported range [1, {max_s}].")
        if self.irreducible.bit_length() != self.s + 1:
            raise ParameterError(
                f"Modulus {self.irreducible:#x} does not have degree {self.s} "
                f"(degree is {self.irreducible.bit_length() - 1})."
            )
        if not galois.Poly.Int(self.irreducible).is_irreducible():
            raise ParameterError(f"Modulus {self.irreducible:#x} is not irreducible over GF(2).")

    @classmethod
    def default(cls, s: int) -> FieldSpec:
        """The default field for symbol size s."""

        if s in DEFAULT_IRREDUCIBLES:
            return cls(s, DEFAULT_IRREDUCIBLES[s])
        if s < 1:
            raise ParameterError(f"Symbol size must be positive, got s={s}.")
        return cls(s, int(galois.primitive_poly(2, s)))

    @property
    def q(self) -> int:
        return 1 << self.s

    @cached_property
    def field(self) -> type[galois.FieldArray]:
        """The galois field class."""
        return _galois_field(self.s, self.irreducible)

    @property
    def zero(self) -> FieldElement:
        return self.field(0)

    @property
    def one(self) -> FieldElement:
        return self.field(1)

    def element(self, value: int) -> FieldElement:
        """Build an element from its bitvector encoding."""

        if not 0 <= value < self.q:
            raise ParameterError(f"Value {value:#x} is not an element of GF(2^{self.s}).")
        return self.field(value)

    def elements(self, values: Sequence[int]) -> galois.FieldArray:
        """Build a 1-d array of elements."""

        for value in values:
            if not 0 <= value < self.q:
                raise ParameterError(f"Value {value:#x} is not an element of GF(2^{self.s}).")
        return self.field(list(values))

    # ~ FieldContext ~ #

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a + b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a * b

    def inv(self, a: FieldElement) -> FieldElement:
        return base_inv(a)

    def is_zero(self, a: FieldElement) -> bool:
        return int(a) == 0

    def key(self, a: FieldElement) -> int:
        return int(a)

    def format(self, a: FieldElement) -> str:
        return f"{int(a):#x}"

    def __rich_repr__(self) -> rich.repr.Result:
        yield "s", self.s
        yield "irreducible", f"{self.irreducible:#x}"


def _check_same_field(a: FieldElement, b: FieldElement) -> None:
    if type(a) is not type(b):
        raise FieldMismatchError(f"Operands belong to different fields: {type(a).name} and {type(b).name}.")


def base_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    return a + b


def base_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same_field(a, b)
    return a * b


def base_inv(a: FieldElement) -> FieldElement:
    if int(a) == 0:
        raise DomainError("Zero has no multiplicative inverse.")
    return np.reciprocal(a)


def base_pow(a: FieldElement, e: int) -> FieldElement:
    """a^e; negative exponents go through the inverse."""

    if e < 0:
        return base_inv(a) ** (-e)
    return a**e


def frobenius_base(a: FieldElement) -> FieldElement:
    """a -> a^2. Applying it s times is the identity on GF(2^s)."""
    return a**2


#############################
# ~ Tower extension GF(q^m) ~ #
#############################


@dataclass(frozen=True)
class ExtensionSpec:
    """GF(q^m) = GF(q)[θ]/(f) for a monic irreducible f of degree m over the base field.

    `modulus_coeffs` are the coefficients of f as integers, constant term first."""

    base: FieldSpec
    modulus_coeffs: tuple[int, ...]

    def __post_init__(self) -> None:

        coeffs = self.modulus_coeffs
        if len(coeffs) < 2:
            raise ParameterError("The extension modulus must have degree at least 1.")
        if coeffs[-1] != 1:
            raise ParameterError("The extension modulus must be monic.")
        if any(not 0 <= c < self.base.q for c in coeffs):
            raise ParameterError("The extension modulus has coefficients outside the base field.")
        if not self.modulus.is_irreducible():
            raise ParameterError(f"The extension modulus {self.modulus} is not irreducible over GF({self.base.q}).")

    @classmethod
    def from_poly(cls, base: FieldSpec, modulus: galois.Poly) -> ExtensionSpec:
        return cls(base, tuple(int(c) for c in modulus.coefficients(order="asc")))

    @property
    def m(self) -> int:
        return len(self.modulus_coeffs) - 1

    @property
    def order(self) -> int:
        "Number of elements, q^m."
        return self.base.q**self.m

    @cached_property
    def modulus(self) -> galois.Poly:
        """The modulus as a galois polynomial over the base field."""
        return galois.Poly(list(self.modulus_coeffs), field=self.base.field, order="asc")

    @cached_property
    def _reduction(self) -> galois.FieldArray:
        # Row j holds the coordinates of θ^(m+j) mod f, for j = 0..m-2.
        m = self.m
        rows = [
            (galois.Poly.Degrees([m + j], field=self.base.field) % self.modulus).coefficients(m, order="asc")
            for j in range(m - 1)
        ]
        if not rows:
            return self.base.field.Zeros((0, m))
        return self.base.field(np.stack(rows))

    def reduce(self, coeffs: galois.FieldArray) -> galois.FieldArray:
        """Reduce a coordinate vector of length <= 2m-1 modulo f."""

        m = self.m
        if coeffs.size <= m:
            out = self.base.field.Zeros(m)
            out[: coeffs.size] = coeffs
            return out
        high = coeffs[m:]
        return coeffs[:m] + high @ self._reduction[: high.size]

    def element(self, coeffs: Sequence[int]) -> ExtElement:
        """Build an element from its m coordinates, given as integers."""

        if len(coeffs) != self.m:
            raise ParameterError(f"Expected {self.m} coordinates, got {len(coeffs)}.")
        return ExtElement(self.base.elements(coeffs), self)

    def random_element(self, rng: np.random.Generator) -> ExtElement:
        values = rng.integers(0, self.base.q, size=self.m)
        return ExtElement(self.base.field([int(v) for v in values]), self)

    @property
    def zero(self) -> ExtElement:
        return ExtElement(self.base.field.Zeros(self.m), self)

    @property
    def one(self) -> ExtElement:
        coeffs = self.base.field.Zeros(self.m)
        coeffs[0] = 1
        return ExtElement(coeffs, self)

    @property
    def theta(self) -> ExtElement:
        """The adjoined root θ of the modulus."""

        if self.m == 1:
            # f = X + c, so θ = c.
            return embed(self.base.element(self.modulus_coeffs[0]), self)
        coeffs = self.base.field.Zeros(self.m)
        coeffs[1] = 1
        return ExtElement(coeffs, self)

    # ~ FieldContext ~ #

    def add(self, a: ExtElement, b: ExtElement) -> ExtElement:
        return ext_add(a, b)

    def mul(self, a: ExtElement, b: ExtElement) -> ExtElement:
        return ext_mul(a, b)

    def inv(self, a: ExtElement) -> ExtElement:
        return ext_inv(a)

    def is_zero(self, a: ExtElement) -> bool:
        return a.is_zero()

    def key(self, a: ExtElement) -> tuple[int, ...]:
        return a.key()

    def format(self, a: ExtElement) -> str:
        return ",".join(f"{int(c):#x}" for c in a.coeffs)

    def __rich_repr__(self) -> rich.repr.Result:
        yield "base", self.base
        yield "modulus", str(self.modulus)


@dataclass(frozen=True, eq=False)
class ExtElement:
    """Σ coeffs[i]·θ^i in a tower extension."""

    coeffs: galois.FieldArray
    spec: ExtensionSpec

    def __post_init__(self) -> None:

        if self.coeffs.shape != (self.spec.m,):
            raise ParameterError(f"Expected {self.spec.m} coordinates, got shape {self.coeffs.shape}.")
        if type(self.coeffs) is not self.spec.base.field:
            raise FieldMismatchError("Coordinates do not belong to the base field of the extension.")

    def key(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return int(np.count_nonzero(self.coeffs)) == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.spec == other.spec and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.spec, self.key()))

    def __repr__(self) -> str:
        return f"ExtElement({self.spec.format(self)})"


def _check_same_extension(a: ExtElement, b: ExtElement) -> None:
    if a.spec != b.spec:
        raise FieldMismatchError("Operands belong to different extensions.")


def _as_poly(a: ExtElement) -> galois.Poly:
    return galois.Poly(a.coeffs, order="asc")


def _from_poly(p: galois.Poly, spec: ExtensionSpec) -> ExtElement:
    return ExtElement(p.coefficients(spec.m, order="asc"), spec)


def ext_add(a: ExtElement, b: ExtElement) -> ExtElement:
    _check_same_extension(a, b)
    return ExtElement(a.coeffs + b.coeffs, a.spec)


def ext_mul(a: ExtElement, b: ExtElement) -> ExtElement:
    _check_same_extension(a, b)
    return ExtElement(a.spec.reduce(np.convolve(a.coeffs, b.coeffs)), a.spec)


def ext_inv(a: ExtElement) -> ExtElement:
    if a.is_zero():
        raise DomainError("Zero has no multiplicative inverse.")
    gcd, s, _ = galois.egcd(_as_poly(a), a.spec.modulus)
    if gcd.degree != 0:
        # Only possible if the modulus is reducible, which ExtensionSpec rejects.
        raise DomainError(f"Element {a} is not invertible modulo {a.spec.modulus}.")
    return _from_poly(s % a.spec.modulus, a.spec)


def ext_pow(a: ExtElement, e: int) -> ExtElement:
    """a^e by modular exponentiation of the coordinate polynomial."""

    if e < 0:
        a = ext_inv(a)
        e = -e
    if e == 0:
        return a.spec.one
    return _from_poly(pow(_as_poly(a), e, a.spec.modulus), a.spec)


def embed(a: FieldElement, ext: ExtensionSpec) -> ExtElement:
    """Map a base field element into the extension."""

    if type(a) is not ext.base.field:
        raise FieldMismatchError(f"Element of {type(a).name} cannot be embedded into an extension of {ext.base}.")
    coeffs = ext.base.field.Zeros(ext.m)
    coeffs[0] = a
    return ExtElement(coeffs, ext)


def in_base_field(a: ExtElement) -> bool:
    """True iff every coordinate above the constant one is zero (equivalently a^q = a)."""
    return int(np.count_nonzero(a.coeffs[1:])) == 0


def extract_base(a: ExtElement) -> FieldElement | None:
    """The base field element `a` is the embedding of, or None."""

    if not in_base_field(a):
        return None
    return a.coeffs[0]


def multiplicative_order(q: int, n: int) -> int:
    """Smallest m >= 1 with q^m = 1 mod n. Requires gcd(q, n) = 1."""

    if n < 1:
        raise ParameterError(f"Modulus must be positive, got {n}.")
    if n == 1:
        return 1
    if np.gcd(q, n) != 1:
        raise ParameterError(f"{q} is not invertible modulo {n}.")
    m, x = 1, q % n
    while x != 1:
        x = (x * q) % n
        m += 1
    return m


def has_order(a: ExtElement, n: int) -> bool:
    """True iff the multiplicative order of `a` is exactly n."""

    if a.is_zero():
        raise ParameterError("Zero has no multiplicative order.")
    if n < 1:
        raise ParameterError(f"Order must be positive, got {n}.")
    group_order = a.spec.order - 1
    if group_order % n != 0:
        raise ParameterError(f"{n} does not divide the group order {group_order}.")

    one = a.spec.one
    if ext_pow(a, n) != one:
        return False
    if n == 1:
        return True
    primes, _ = galois.factors(n)
    return all(ext_pow(a, n // p) != one for p in primes)


def find_irreducible(base: FieldSpec, m: int, rng_seed: int) -> galois.Poly:
    """A random monic irreducible polynomial of degree m over the base field.

    Deterministic given the seed. For m = 1 this is always X."""

    if m < 1:
        raise ParameterError(f"Degree must be positive, got m={m}.")
    if m == 1:
        return galois.Poly([1, 0], field=base.field)

    rng = np.random.default_rng(rng_seed)
    trials = 0
    while True:
        trials += 1
        tail = [int(c) for c in rng.integers(0, base.q, size=m)]
        if tail[0] == 0:
            continue
        candidate = galois.Poly(tail + [1], field=base.field, order="asc")
        if candidate.is_irreducible():
            log.debug(f"func find_irreducible: degree {m} over GF({base.q}) found after {trials} trials.")
            return candidate


def find_primitive_nth_root(
    n: int,
    base: FieldSpec,
    rng_seed: int,
    max_extension_bits: int | None = None,
) -> tuple[ExtensionSpec, ExtElement]:
    """Build the smallest extension GF(q^m) holding n-th roots of unity and return one of order n.

    Args:
        n: The order wanted. Must be odd.
        base: The base field GF(q).
        rng_seed: Seed for the extension modulus and the candidate generator.
        max_extension_bits: Refuse extensions with s*m above this. None disables the check.
    Raises:
        ParameterError: If n is even, or the extension is larger than allowed.
    """

    if n < 1 or n % 2 == 0:
        raise ParameterError(f"Roots of unity of order {n} do not exist in characteristic 2 (n must be odd).")
    m = multiplicative_order(base.q, n)
    if max_extension_bits is not None and base.s * m > max_extension_bits:
        raise ParameterError(
            f"Roots of order {n} live in GF(2^{base.s * m}), above the limit of {max_extension_bits} bits."
        )

    rng = np.random.default_rng([rng_seed, n])
    modulus = find_irreducible(base, m, rng_seed=int(rng.integers(1 << 62)))
    ext = ExtensionSpec.from_poly(base, modulus)
    if n == 1:
        return ext, ext.one

    cofactor = (ext.order - 1) // n
    while True:
        gamma = ext.random_element(rng)
        if gamma.is_zero():
            continue
        alpha = ext_pow(gamma, cofactor)
        if has_order(alpha, n):
            log.debug(f"func find_primitive_nth_root: order {n} root found in GF({base.q}^{m}).")
            return ext, alpha


def powers(a: ExtElement, count: int) -> list[ExtElement]:
    """[a^0, a^1, ..., a^(count-1)]."""

    out: list[ExtElement] = []
    current = a.spec.one
    for _ in range(count):
        out.append(current)
        current = ext_mul(current, a)
    return out


def discrete_log_table(spec: FieldSpec) -> dict[int, int] | None:
    """Map each nonzero element (as an integer) to its log in base x.

    Returns None when x is not primitive for the modulus, e.g. 0x11B."""

    alpha = spec.one if spec.s == 1 else spec.element(2)
    if int(alpha.multiplicative_order()) != spec.q - 1:
        return None
    table = alpha ** np.arange(spec.q - 1)
    return {int(v): i for i, v in enumerate(table)}
