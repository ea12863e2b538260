"""Shared fixtures."""

from __future__ import annotations
from typing import Iterator

import numpy as np
import pytest

from recursive_mds.config import set_settings
from recursive_mds.fields import PHOTON_IRREDUCIBLE, FieldSpec

# x^8 + x^4 + x^3 + x^2 + 1, the default modulus for s = 8.
GF256_MODULUS = 0x11D

# 1 + a^3 X + a^4 X^2 + a^12 X^3 + a^8 X^4 + a^12 X^5 + a^4 X^6 + a^3 X^7 + X^8 over GF(16)/x^4+x+1,
# with a^3 = 0x8, a^4 = 0x3, a^8 = 0x5, a^12 = 0xF.
K8_S4_POLY = (1, 8, 3, 15, 5, 15, 3, 8, 1)

PHOTON_COEFFS = (1, 2, 1, 4)
PHOTON_MATRIX = [
    [1, 2, 1, 4],
    [4, 9, 6, 17],
    [17, 38, 24, 66],
    [66, 149, 100, 11],
]


@pytest.fixture(autouse=True)
def fresh_settings() -> Iterator[None]:
    """Every test starts from the default settings (plus environment)."""
    set_settings(None)
    yield
    set_settings(None)


@pytest.fixture
def gf4() -> FieldSpec:
    return FieldSpec.default(2)


@pytest.fixture
def gf8() -> FieldSpec:
    return FieldSpec.default(3)


@pytest.fixture
def gf16() -> FieldSpec:
    return FieldSpec.default(4)


@pytest.fixture
def gf32() -> FieldSpec:
    return FieldSpec.default(5)


@pytest.fixture
def gf256() -> FieldSpec:
    return FieldSpec(8, GF256_MODULUS)


@pytest.fixture
def photon_field() -> FieldSpec:
    return FieldSpec(8, PHOTON_IRREDUCIBLE)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)
