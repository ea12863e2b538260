"""Module for recursive MDS matrices built from shortened BCH codes.

A monic g(X) of degree k whose roots are k consecutive powers β^ℓ, ..., β^(ℓ+k-1)
of an element of odd order n = 2k+z generates a BCH code of length n with
designed distance k+1. When g has all its coefficients in GF(q) that code is MDS,
and shortening it on z positions leaves a [2k, k] MDS code whose systematic
generator is [C^k | I] for the companion matrix C of g.

`search` enumerates every such g for given k and s. `direct_construct` builds
one symmetric solution without searching."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import TYPE_CHECKING, Iterator, Literal, Sequence
import logging

if TYPE_CHECKING:
    import rich.repr

# Library imports
import galois

# Local imports
from recursive_mds.config import get_settings
from recursive_mds.errors import DomainError, InvariantViolation, ParameterError
from recursive_mds.fields import (
    ExtElement,
    ExtensionSpec,
    FieldElement,
    FieldSpec,
    ext_pow,
    find_primitive_nth_root,
    has_order,
    multiplicative_order,
    powers,
)
from recursive_mds.linalg import CompanionSpec, MdsVerdict, companion_matrix, is_mds, mat_pow
from recursive_mds.poly import (
    Polynomial,
    coerce_to_base,
    exact_div,
    mul_linear,
    product_of_linear_factors,
)
from recursive_mds.progress import SearchProgress, progress_hub

__all__ = [
    "Strategy",
    "BetaDescriptor",
    "SearchParams",
    "SolutionRecord",
    "SolutionVerdict",
    "closed_windows",
    "direct_construct",
    "direct_construct_all",
    "search",
    "shortened_generator",
    "verify_solution",
]

log = logging.getLogger(__name__)

Strategy = Literal["cyclotomic", "incremental", "scratch"]
STRATEGIES: tuple[Strategy, ...] = ("cyclotomic", "incremental", "scratch")


@dataclass(frozen=True)
class BetaDescriptor:
    """Where β lives and how it was obtained: β = α^exponent in GF(q)[θ]/(ext_modulus).

    All values are integer encodings, so a record can be re-checked without
    repeating root discovery."""

    ext_modulus: tuple[int, ...]
    "Coefficients of the extension modulus, constant term first."
    alpha: tuple[int, ...]
    "Coordinates of the primitive root α over the base field."
    exponent: int

    def extension(self, base: FieldSpec) -> ExtensionSpec:
        return ExtensionSpec(base, self.ext_modulus)

    def beta(self, base: FieldSpec) -> ExtElement:
        ext = self.extension(base)
        return ext_pow(ext.element(self.alpha), self.exponent)


@dataclass(frozen=True)
class SearchParams:
    """Parameters of `search`.

    `z_range` defaults to every odd z with 2k+z <= q+1. `modulus` selects the
    base field modulus (default: `FieldSpec.default(s)`)."""

    k: int
    s: int
    z_range: tuple[int, ...] | None = None
    rng_seed: int = 0
    modulus: int | None = None
    regular_only: bool = False
    symmetric_only: bool = False
    classify: bool = False
    strategy: Strategy = "cyclotomic"
    workers: int = 1

    def __post_init__(self) -> None:

        if self.k < 1:
            raise ParameterError(f"k must be positive, got k={self.k}.")
        q = self.field.q
        if 2 * self.k + 1 > q + 1:
            raise ParameterError(f"No odd length 2k+z <= q+1 exists for k={self.k}, q={q}.")
        for z in self.zs:
            if z < 1 or z % 2 == 0:
                raise ParameterError(f"z must be a positive odd integer, got z={z}.")
            if 2 * self.k + z > q + 1:
                raise ParameterError(f"2k+z = {2 * self.k + z} exceeds q+1 = {q + 1}.")
        if self.strategy not in STRATEGIES:
            raise ParameterError(f"Unknown strategy {self.strategy!r}; expected one of {STRATEGIES}.")
        if self.workers < 1:
            raise ParameterError(f"workers must be positive, got {self.workers}.")

    @property
    def field(self) -> FieldSpec:
        if self.modulus is None:
            return FieldSpec.default(self.s)
        return FieldSpec(self.s, self.modulus)

    @property
    def zs(self) -> tuple[int, ...]:
        if self.z_range is not None:
            return tuple(sorted(set(self.z_range)))
        return tuple(range(1, (1 << self.s) + 2 - 2 * self.k, 2))


@dataclass(frozen=True)
class SolutionRecord:
    """One polynomial g whose companion matrix C gives an MDS matrix C^k.

    `g` holds the integer-encoded coefficients c_0, ..., c_k (so g[-1] == 1)."""

    g: tuple[int, ...]
    field: FieldSpec
    z: int
    beta: BetaDescriptor | None
    ell: int
    regular: bool
    symmetric: bool
    class_id: int | None = None

    @classmethod
    def build(
        cls,
        g: Sequence[int],
        field: FieldSpec,
        z: int,
        beta: BetaDescriptor | None = None,
        ell: int = 0,
    ) -> SolutionRecord:
        """Fill in the flags from the coefficients."""

        g = tuple(g)
        return cls(
            g=g,
            field=field,
            z=z,
            beta=beta,
            ell=ell,
            regular=g[0] == 1,
            symmetric=g == g[::-1],
        )

    @property
    def k(self) -> int:
        return len(self.g) - 1

    @property
    def n(self) -> int:
        "Length of the unshortened code."
        return 2 * self.k + self.z

    def polynomial(self) -> Polynomial[FieldElement]:
        return Polynomial.from_ints(self.g, self.field)

    def companion(self) -> CompanionSpec:
        return CompanionSpec(self.g[:-1], self.field)

    def __rich_repr__(self) -> rich.repr.Result:
        yield "g", tuple(f"{c:#x}" for c in self.g)
        yield "z", self.z
        yield "ell", self.ell
        yield "regular", self.regular
        yield "symmetric", self.symmetric
        yield "class_id", self.class_id, None


@dataclass(frozen=True)
class SolutionVerdict:
    """Outcome of `verify_solution`. `status` is "verified", "failed" or "unverified"."""

    status: Literal["verified", "failed", "unverified"]
    mds: MdsVerdict
    coerces: bool | None
    "Whether the recomputed window product lies in GF(q)[X]; None without provenance."
    matches_provenance: bool | None
    discrepancies: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == "verified"


##################
# ~ Window logic ~ #
##################


def closed_windows(q: int, n: int, k: int) -> list[int]:
    """Starting positions ℓ in [0, n) whose window {ℓ, ..., ℓ+k-1} mod n is closed under e -> q·e mod n.

    A window product lies in GF(q)[X] exactly when its root set is stable under
    r -> r^q, i.e. when its exponent set is closed in this sense. Multiplying the
    window by a unit i mod n preserves closure, so the answer does not depend on
    which root of order n is used."""

    out: list[int] = []
    for ell in range(n):
        window = {(ell + j) % n for j in range(k)}
        if all((q * e) % n in window for e in window):
            out.append(ell)
    return out


def _cyclotomic_cosets(exponents: Sequence[int], q: int, n: int) -> list[tuple[int, ...]]:
    # Partition a closed exponent set into q-cyclotomic cosets.
    seen: set[int] = set()
    cosets: list[tuple[int, ...]] = []
    for e in sorted(exponents):
        if e in seen:
            continue
        coset: list[int] = []
        x = e
        while x not in coset:
            coset.append(x)
            x = (x * q) % n
        seen.update(coset)
        cosets.append(tuple(coset))
    return cosets


def _base_ints(p: Polynomial[ExtElement]) -> tuple[int, ...] | None:
    coerced = coerce_to_base(p)
    return None if coerced is None else coerced.to_ints()


@dataclass(frozen=True)
class _Hit:
    g: tuple[int, ...]
    ext_modulus: tuple[int, ...]
    alpha: tuple[int, ...]
    exponent: int
    ell: int


@dataclass(frozen=True)
class _SearchTask:
    k: int
    s: int
    irreducible: int
    z: int
    seed: int
    strategy: Strategy
    max_extension_bits: int


def _search_length(task: _SearchTask) -> tuple[int, list[_Hit]]:
    """All coercible windows for one z, in (i, ℓ) order. Runs in worker processes."""

    base = FieldSpec(task.s, task.irreducible)
    k, q = task.k, base.q
    n = 2 * k + task.z
    windows = closed_windows(q, n, k)

    if task.strategy == "cyclotomic":
        if not windows:
            log.debug(f"func _search_length: n={n} has no closed window.")
            return task.z, []
        ext, alpha = find_primitive_nth_root(n, base, task.seed)
        return task.z, list(_cyclotomic_hits(k, n, ext, alpha, windows))

    if base.s * multiplicative_order(q, n) > task.max_extension_bits:
        if not windows:
            log.debug(f"func _search_length: n={n} skipped, too large and no closed window.")
            return task.z, []
        raise ParameterError(
            f"Length n={n} has solutions but needs an extension above {task.max_extension_bits} bits; "
            f"raise RECURSIVE_MDS_MAX_EXTENSION_BITS or use the cyclotomic strategy."
        )
    ext, alpha = find_primitive_nth_root(n, base, task.seed, task.max_extension_bits)
    return task.z, list(_window_hits(k, n, ext, alpha, incremental=task.strategy == "incremental"))


def _cyclotomic_hits(
    k: int, n: int, ext: ExtensionSpec, alpha: ExtElement, windows: list[int]
) -> Iterator[_Hit]:

    q = ext.base.q
    alpha_pows = powers(alpha, n)
    ext_modulus, alpha_key = ext.modulus_coeffs, alpha.key()
    minimal: dict[tuple[int, ...], galois.Poly] = {}
    seen: set[frozenset[int]] = set()

    for i in range(1, n):
        if gcd(i, n) != 1:
            continue
        for ell in windows:
            exponents = frozenset((i * (ell + j)) % n for j in range(k))
            if exponents in seen:
                continue
            seen.add(exponents)
            g = galois.Poly.One(ext.base.field)
            for coset in _cyclotomic_cosets(sorted(exponents), q, n):
                if coset not in minimal:
                    factor = _base_ints(product_of_linear_factors((alpha_pows[e] for e in coset), ext))
                    if factor is None:
                        raise InvariantViolation(f"Conjugate product over coset {coset} is not in GF(q)[X].")
                    minimal[coset] = galois.Poly(list(factor), field=ext.base.field, order="asc")
                g = g * minimal[coset]
            coeffs = tuple(int(c) for c in g.coefficients(k + 1, order="asc"))
            yield _Hit(coeffs, ext_modulus, alpha_key, i, ell)


def _window_hits(k: int, n: int, ext: ExtensionSpec, alpha: ExtElement, incremental: bool) -> Iterator[_Hit]:

    alpha_pows = powers(alpha, n)
    ext_modulus, alpha_key = ext.modulus_coeffs, alpha.key()

    for i in range(n):
        beta = alpha_pows[i]
        if not has_order(beta, n):
            continue
        beta_pows = [alpha_pows[(i * e) % n] for e in range(n)]

        if incremental:
            # Start from the window {-1, ..., k-2}; each step shifts it by one.
            g = product_of_linear_factors((beta_pows[e % n] for e in range(-1, k - 1)), ext)
        for ell in range(n):
            if incremental:
                g = mul_linear(g, beta_pows[(ell + k - 1) % n])
                g = exact_div(g, Polynomial.linear(beta_pows[(ell - 1) % n], ext))
            else:
                g = product_of_linear_factors((beta_pows[(ell + j) % n] for j in range(k)), ext)
            coeffs = _base_ints(g)
            if coeffs is not None:
                yield _Hit(coeffs, ext_modulus, alpha_key, i, ell)


##############
# ~ Search ~ #
##############


def search(params: SearchParams) -> list[SolutionRecord]:
    """Every monic g of degree k over GF(q) that is a window product for some odd n = 2k+z <= q+1.

    Loops over z ascending, then over the roots β = α^i of order n, then over the
    window start ℓ. The same g is kept once, with the provenance of its first
    occurrence. The result is sorted by coefficient vector and is identical for
    every seed, worker count and strategy."""

    base = params.field
    settings = get_settings()
    zs = params.zs
    tasks = [
        _SearchTask(
            k=params.k,
            s=params.s,
            irreducible=base.irreducible,
            z=z,
            seed=params.rng_seed,
            strategy=params.strategy,
            max_extension_bits=settings.max_extension_bits,
        )
        for z in zs
    ]
    log.debug(f"func search: k={params.k} s={params.s} over {len(zs)} values of z, strategy={params.strategy}.")

    found: dict[tuple[int, ...], SolutionRecord] = {}
    for done, (z, hits) in enumerate(_run_tasks(tasks, params.workers), start=1):
        for hit in hits:
            if hit.g in found:
                continue
            beta = BetaDescriptor(hit.ext_modulus, hit.alpha, hit.exponent)
            found[hit.g] = SolutionRecord.build(hit.g, base, z, beta, hit.ell)
        progress_hub.publish_search(SearchProgress(params.k, params.s, z, len(hits), done, len(zs)))

    records = [found[g] for g in sorted(found)]
    if params.regular_only:
        records = [r for r in records if r.regular]
    if params.symmetric_only:
        records = [r for r in records if r.symmetric]
    if params.classify:
        from recursive_mds.classify import classify_set

        records, _, _ = classify_set(records)
    log.debug(f"func search: {len(records)} solutions.")
    return records


def _run_tasks(tasks: list[_SearchTask], workers: int) -> Iterator[tuple[int, list[_Hit]]]:
    # Results come back in task order whatever the schedule.
    if workers == 1 or len(tasks) < 2:
        for task in tasks:
            yield _search_length(task)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_search_length, tasks)


########################
# ~ Direct construction ~ #
########################


def _direct_exponents(k: int, q: int) -> list[int]:
    if k % 2 == 0:
        return list(range((q - k) // 2 + 1, (q + k) // 2 + 1))
    half = (k - 1) // 2
    return list(range(-half, half + 1))


def _check_direct_params(k: int, base: FieldSpec) -> None:
    if k < 1 or 2 * k > base.q:
        raise ParameterError(f"Direct construction needs 1 <= k <= q/2, got k={k}, q={base.q}.")


def _direct_record(k: int, base: FieldSpec, ext: ExtensionSpec, alpha: ExtElement, i: int) -> SolutionRecord:

    q = base.q
    n = q + 1
    beta = ext_pow(alpha, i)
    exponents = _direct_exponents(k, q)
    g = product_of_linear_factors((ext_pow(beta, e) for e in exponents), ext)
    coeffs = _base_ints(g)
    if coeffs is None:
        raise InvariantViolation(f"Direct construction for k={k}, q={q} did not land in GF(q)[X].")
    descriptor = BetaDescriptor(ext.modulus_coeffs, alpha.key(), i)
    return SolutionRecord.build(coeffs, base, n - 2 * k, descriptor, exponents[0] % n)


def direct_construct(k: int, s: int, seed: int = 0, modulus: int | None = None) -> SolutionRecord:
    """A palindromic solution from k consecutive powers of some β of order q+1.

    Even k uses the exponents grouped around (q+1)/2, odd k the ones grouped around 0.
    Both sets are stable under e -> -e = q·e mod q+1, which is why the product
    lies in GF(q)[X] and is palindromic."""

    base = FieldSpec.default(s) if modulus is None else FieldSpec(s, modulus)
    _check_direct_params(k, base)
    ext, alpha = find_primitive_nth_root(base.q + 1, base, seed)
    record = _direct_record(k, base, ext, alpha, 1)
    log.debug(f"func direct_construct: k={k} s={s} -> {record.g}.")
    return record


def direct_construct_all(k: int, s: int, seed: int = 0, modulus: int | None = None) -> list[SolutionRecord]:
    """The direct construction for every β of order q+1, deduplicated and sorted."""

    base = FieldSpec.default(s) if modulus is None else FieldSpec(s, modulus)
    _check_direct_params(k, base)
    n = base.q + 1
    ext, alpha = find_primitive_nth_root(n, base, seed)
    found: dict[tuple[int, ...], SolutionRecord] = {}
    for i in range(1, n):
        if gcd(i, n) != 1:
            continue
        record = _direct_record(k, base, ext, alpha, i)
        found.setdefault(record.g, record)
    return [found[g] for g in sorted(found)]


##################
# ~ Verification ~ #
##################


def shortened_generator(g: Polynomial[FieldElement], k: int, z: int) -> galois.FieldArray:
    """Systematic generator of the cyclic code of length 2k+z generated by g, shortened on z positions.

    Row i is (X^(k+i) mod g | e_i), so the left k×k block is C^k.

    Raises:
        ParameterError: If g is not monic of degree k or does not divide X^(2k+z) - 1.
    """

    if not isinstance(g.ring, FieldSpec):
        raise ParameterError("shortened_generator expects a base field polynomial.")
    if g.degree != k or not g.is_monic():
        raise ParameterError(f"{g} is not monic of degree {k}.")
    field_cls = g.ring.field
    gp = g.to_galois()
    n = 2 * k + z
    if (galois.Poly.Degrees([n, 0], field=field_cls) % gp).nonzero_coeffs.size > 0:
        raise ParameterError(f"{g} does not divide X^{n} - 1; it does not generate a cyclic code of length {n}.")

    G = field_cls.Zeros((k, 2 * k))
    for i in range(k):
        remainder = galois.Poly.Degrees([k + i], field=field_cls) % gp
        G[i, :k] = remainder.coefficients(k, order="asc")
        G[i, k + i] = 1
    return G


def verify_solution(rec: SolutionRecord, *, cap: int | None = None) -> SolutionVerdict:
    """Re-derive a record from its provenance and check its minors.

    Three checks must agree: the window product recomputed from (β, ℓ) equals g,
    that product lies in GF(q)[X], and C^k is MDS. Records without provenance get
    the minor check only.

    Above the exhaustive cap, a record with provenance skips the minors: a window
    of k consecutive powers that lies in GF(q)[X] already forces distance k+1, so
    the verdict is "unverified" unless a provenance check fails. Records without
    provenance fall back to sampled minors."""

    discrepancies: list[str] = []
    base = rec.field
    k = rec.k
    cap = get_settings().exhaustive_mds_cap if cap is None else cap

    coerces: bool | None = None
    matches: bool | None = None
    if rec.beta is not None:
        try:
            beta = rec.beta.beta(base)
            n = rec.n
            if not has_order(beta, n):
                discrepancies.append(f"provenance: β does not have order n={n}")
            window = product_of_linear_factors((ext_pow(beta, rec.ell + j) for j in range(k)), beta.spec)
        except (ParameterError, DomainError) as e:
            coerces, matches = False, False
            discrepancies.append(f"provenance: β order inconsistent with z={rec.z} ({e})")
        else:
            recomputed = _base_ints(window)
            coerces = recomputed is not None
            matches = recomputed == rec.g
            if not coerces:
                discrepancies.append(f"provenance: window ℓ={rec.ell} of β does not lie in GF({base.q})[X]")
            elif not matches:
                discrepancies.append(f"polynomial: recorded g {rec.g} differs from window product {recomputed}")

    if rec.g[-1] != 1 or rec.g[0] == 0:
        discrepancies.append("polynomial: g must be monic with a nonzero constant term")
    if (rec.regular, rec.symmetric) != (rec.g[0] == 1, rec.g == rec.g[::-1]):
        discrepancies.append("flags: regular/symmetric flags do not match g")

    if k > cap and rec.beta is not None:
        mds = MdsVerdict("unverified", "exhaustive", 0)
    else:
        mds = is_mds(mat_pow(companion_matrix(rec.companion()), k), "auto", cap=cap)
    if mds.is_not_mds:
        discrepancies.append(f"minors: singular submatrix at {mds.witness}")

    if discrepancies:
        for d in discrepancies:
            log.warning(f"func verify_solution: {d}")
        status: Literal["verified", "failed", "unverified"] = "failed"
    elif mds.is_mds:
        status = "verified"
    else:
        status = "unverified"
    return SolutionVerdict(status, mds, coerces, matches, tuple(discrepancies))
