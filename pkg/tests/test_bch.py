from __future__ import annotations

from dataclasses import replace

import numpy as np
import pytest

from recursive_mds import bch
from recursive_mds.bch import (
    SearchParams,
    SolutionRecord,
    closed_windows,
    direct_construct,
    direct_construct_all,
    search,
    shortened_generator,
    verify_solution,
)
from recursive_mds.config import Settings, set_settings
from recursive_mds.errors import ParameterError
from recursive_mds.fields import FieldSpec
from recursive_mds.linalg import companion_matrix, is_mds, mat_pow, min_distance_bruteforce
from recursive_mds.poly import Polynomial, is_palindromic


@pytest.mark.parametrize(
    "kwargs",
    [
        {"k": 0, "s": 4},
        {"k": 9, "s": 4},  # 2k+1 > q+1
        {"k": 4, "s": 4, "z_range": (2,)},
        {"k": 4, "s": 4, "z_range": (11,)},
        {"k": 4, "s": 4, "strategy": "guess"},
        {"k": 4, "s": 4, "workers": 0},
        {"k": 4, "s": 4, "modulus": 0b10001},
    ],
)
def test_search_params_validation(kwargs: dict[str, object]):
    with pytest.raises(ParameterError):
        SearchParams(**kwargs)  # type: ignore[arg-type]


def test_default_z_range():
    assert SearchParams(k=4, s=4).zs == (1, 3, 5, 7, 9)
    assert SearchParams(k=8, s=4).zs == (1,)
    assert SearchParams(k=4, s=4, z_range=(3, 1, 3)).zs == (1, 3)


def test_closed_windows():
    # Around (q+1)/2 for even k and around 0 for odd k when n = q+1.
    assert closed_windows(16, 17, 8) == [5]
    assert closed_windows(16, 17, 3) == [16]
    assert closed_windows(8, 9, 4) == [3]
    # q = 1 mod n: every window is closed.
    assert closed_windows(8, 7, 3) == list(range(7))
    assert closed_windows(16, 11, 4) == []


@pytest.mark.parametrize("k, s", [(2, 2), (3, 3), (4, 3), (5, 4), (8, 4), (16, 5), (7, 6), (16, 8)])
def test_direct_construct_is_palindromic_and_mds(k: int, s: int):
    rec = direct_construct(k, s)
    assert rec.k == k
    assert rec.n == (1 << s) + 1
    assert rec.symmetric
    assert rec.regular
    assert rec.g == rec.g[::-1]
    # A palindrome of degree k has at most ceil(k/2) free coefficients besides the ends.
    assert len(set(rec.g[1:-1])) <= (k + 1) // 2
    if k <= 8:
        assert verify_solution(rec).ok


def test_direct_construct_odd_k_window():
    rec = direct_construct(3, 3)
    assert rec.z == 3
    assert rec.ell == 8  # the window {-1, 0, 1} mod 9


@pytest.mark.slow
def test_direct_construct_k12_exhaustive_minors():
    rec = direct_construct(12, 5)
    M = mat_pow(companion_matrix(rec.companion()), 12)
    verdict = is_mds(M, mode="exhaustive")
    assert verdict.is_mds
    assert verdict.mode == "exhaustive"


def test_direct_construct_rejects_large_k():
    with pytest.raises(ParameterError):
        direct_construct(9, 4)
    with pytest.raises(ParameterError):
        direct_construct(0, 4)


def test_direct_construct_all():
    records = direct_construct_all(8, 4)
    assert len(records) == 8
    assert [r.g for r in records] == sorted(r.g for r in records)
    assert all(r.symmetric for r in records)


_DIRECT_GRID = [
    pytest.param(k, s, marks=[pytest.mark.slow] if s >= 7 else [])
    for s in range(1, 9)
    for k in range(1, min(16, 1 << (s - 1)) + 1)
]


@pytest.mark.parametrize("k, s", _DIRECT_GRID)
def test_every_direct_construction_is_palindromic(k: int, s: int):
    records = direct_construct_all(k, s)
    assert records
    for rec in records:
        assert is_palindromic(rec.polynomial())
        assert rec.symmetric


def test_search_k4_s3():
    records = search(SearchParams(k=4, s=3))
    assert len(records) == 3
    assert all(r.z == 1 and r.n == 9 for r in records)


def test_search_k4_s4():
    records = search(SearchParams(k=4, s=4))
    assert len(records) == 68
    assert sum(1 for r in records if r.regular) == 12
    assert [r.g for r in records] == sorted(r.g for r in records)
    assert len({r.g for r in records}) == 68


def test_search_k8_s4():
    records = search(SearchParams(k=8, s=4))
    assert len(records) == 8
    assert all(r.symmetric and r.regular for r in records)


def test_search_trivial_k1_over_gf2():
    records = search(SearchParams(k=1, s=1))
    assert [r.g for r in records] == [(1, 1)]


@pytest.mark.parametrize("k, s", [(4, 4), (3, 3), (8, 4), (2, 2)])
def test_direct_construction_is_found_by_search(k: int, s: int):
    found = {r.g for r in search(SearchParams(k=k, s=s))}
    assert {r.g for r in direct_construct_all(k, s)} <= found


def test_filters():
    records = search(SearchParams(k=4, s=4))
    regular = search(SearchParams(k=4, s=4, regular_only=True))
    symmetric = search(SearchParams(k=4, s=4, symmetric_only=True))
    assert [r.g for r in regular] == [r.g for r in records if r.regular]
    assert [r.g for r in symmetric] == [r.g for r in records if r.symmetric]


def test_search_classify_fills_class_ids():
    records = search(SearchParams(k=4, s=3, classify=True))
    assert {r.class_id for r in records} == {0}


@pytest.mark.parametrize("k, s", [(3, 3), (4, 4), (2, 3)])
def test_strategies_agree(k: int, s: int):
    results = {
        strategy: [r.g for r in search(SearchParams(k=k, s=s, strategy=strategy))]
        for strategy in ("cyclotomic", "incremental", "scratch")
    }
    assert results["cyclotomic"] == results["incremental"] == results["scratch"]


def test_extension_cap_refuses_solvable_lengths():
    set_settings(Settings(max_extension_bits=4))
    # n = 17 needs GF(16^2) and has a closed window of size 4;
    # n = 11 needs GF(16^5) but has none, so it is skipped.
    with pytest.raises(ParameterError):
        search(SearchParams(k=4, s=4, strategy="incremental"))
    assert search(SearchParams(k=4, s=4, z_range=(3,), strategy="scratch")) == []


def test_search_is_seed_independent():
    a = search(SearchParams(k=4, s=4, rng_seed=0))
    b = search(SearchParams(k=4, s=4, rng_seed=7))
    assert [r.g for r in a] == [r.g for r in b]
    assert [r.z for r in a] == [r.z for r in b]


def test_search_is_worker_independent():
    a = search(SearchParams(k=4, s=4, workers=1))
    b = search(SearchParams(k=4, s=4, workers=3))
    assert [(r.g, r.z, r.ell) for r in a] == [(r.g, r.z, r.ell) for r in b]


def test_shortened_generator_length_7():
    """g = 1 + X^2 + X^3, shortened once: [C^3 | I]."""

    gf2 = FieldSpec.default(1)
    g = Polynomial.from_ints((1, 0, 1, 1), gf2)
    G = shortened_generator(g, 3, 1)
    assert G[:, :3].tolist() == [[1, 0, 1], [1, 1, 1], [1, 1, 0]]
    assert np.array_equal(G[:, 3:], gf2.field.Identity(3))
    C = companion_matrix(SolutionRecord.build((1, 0, 1, 1), gf2, 1).companion())
    assert np.array_equal(G[:, :3], mat_pow(C, 3))


def test_shortened_generator_rejects_non_divisors():
    gf2 = FieldSpec.default(1)
    with pytest.raises(ParameterError):
        shortened_generator(Polynomial.from_ints((1, 1, 1, 1), gf2), 3, 1)
    with pytest.raises(ParameterError):
        shortened_generator(Polynomial.from_ints((1, 0, 1, 1), gf2), 4, 1)


def test_shortened_code_has_distance_k_plus_1():
    for rec in search(SearchParams(k=3, s=3))[:5]:
        G = shortened_generator(rec.polynomial(), rec.k, rec.z)
        assert np.array_equal(G[:, :3], mat_pow(companion_matrix(rec.companion()), 3))
        assert min_distance_bruteforce(G) == 4


@pytest.mark.parametrize("k, s", [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)])
def test_mds_iff_distance_k_plus_1(k: int, s: int):
    for rec in search(SearchParams(k=k, s=s)):
        M = mat_pow(companion_matrix(rec.companion()), k)
        G = rec.field.field.Zeros((k, 2 * k))
        G[:, :k] = M
        G[:, k:] = rec.field.field.Identity(k)
        assert is_mds(M).is_mds
        assert min_distance_bruteforce(G) == k + 1


def test_every_search_result_verifies():
    for rec in search(SearchParams(k=4, s=4)):
        verdict = verify_solution(rec)
        assert verdict.ok, verdict.discrepancies
        assert verdict.coerces
        assert verdict.matches_provenance


def test_tampered_record_fails():
    rec = search(SearchParams(k=4, s=4))[0]
    g = list(rec.g)
    g[1] ^= 1
    tampered = SolutionRecord.build(g, rec.field, rec.z, rec.beta, rec.ell)
    verdict = verify_solution(tampered)
    assert verdict.status == "failed"
    assert verdict.matches_provenance is False
    assert verdict.discrepancies


def test_wrong_flags_fail():
    rec = search(SearchParams(k=4, s=4))[0]
    verdict = verify_solution(replace(rec, symmetric=not rec.symmetric))
    assert verdict.status == "failed"


def test_record_without_provenance():
    rec = replace(search(SearchParams(k=4, s=4))[0], beta=None)
    verdict = verify_solution(rec)
    assert verdict.ok
    assert verdict.coerces is None
    assert verdict.matches_provenance is None


def test_non_mds_record_without_provenance(gf16: FieldSpec):
    rec = SolutionRecord.build((1, 0, 0, 0, 1), gf16, 1)
    verdict = verify_solution(rec)
    assert verdict.status == "failed"
    assert verdict.mds.is_not_mds


def test_large_k_is_unverified_above_the_cap():
    rec = direct_construct(8, 4)
    verdict = verify_solution(rec, cap=4)
    # Provenance stands in for the minors above the cap; none are scanned.
    assert verdict.mds.minors_checked == 0
    assert verdict.status == "unverified"
    assert verdict.coerces and verdict.matches_provenance


def test_record_above_the_cap_skips_the_minor_scan(monkeypatch: pytest.MonkeyPatch):
    def no_minors(*args: object, **kwargs: object) -> None:
        raise AssertionError("minors should not be scanned above the cap")

    monkeypatch.setattr(bch, "is_mds", no_minors)
    records = search(SearchParams(k=16, s=5))
    assert len(records) == 10
    verdicts = [verify_solution(rec) for rec in records]
    assert {v.status for v in verdicts} == {"unverified"}
    assert all(v.coerces and v.matches_provenance for v in verdicts)


def test_record_without_provenance_above_the_cap_is_sampled():
    rec = replace(direct_construct(8, 4), beta=None)
    verdict = verify_solution(rec, cap=4)
    assert verdict.mds.mode == "sampled"
    assert verdict.status == "unverified"


@pytest.mark.parametrize("z", [7, 9])
def test_record_with_inconsistent_z_fails(z: int):
    # Neither 17 nor 19 divides the order of the extension the root was found in.
    rec = next(r for r in search(SearchParams(k=4, s=4)) if r.z == z)
    verdict = verify_solution(replace(rec, z=z + 2))
    assert verdict.status == "failed"
    assert verdict.coerces is False
    assert any("inconsistent with z" in d for d in verdict.discrepancies)
