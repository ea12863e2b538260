"""Module for brute-force ground truth.

`exhaustive_companion_search` tries every companion matrix of size k over GF(q)
and keeps those whose k-th power is MDS. `bch_definition_oracle` builds a BCH
generator the textbook way, as the lcm of minimal polynomials. Neither goes
through the window products of the bch module; they share only field and
matrix arithmetic with it."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterator
import json
import logging
import time

if TYPE_CHECKING:
    import rich.repr

# Library imports
import galois
import numpy as np

# Local imports
from recursive_mds.config import get_settings
from recursive_mds.errors import BudgetExceededError, FieldMismatchError, ParameterError
from recursive_mds.fields import ExtElement, FieldElement, FieldSpec, ext_pow
from recursive_mds.linalg import is_mds
from recursive_mds.poly import Polynomial, coerce_to_base, poly_mul
from recursive_mds.progress import OracleProgress, progress_hub

__all__ = [
    "OracleReport",
    "ConjectureCheck",
    "exhaustive_companion_search",
    "minimal_polynomial",
    "bch_definition_oracle",
    "conjecture_check",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleReport:
    """Result of an exhaustive companion scan.

    `mds_polynomials` are full coefficient tuples (c_0, ..., c_{k-1}, 1), ascending."""

    k: int
    s: int
    modulus: int
    mds_polynomials: tuple[tuple[int, ...], ...]
    candidates_tested: int
    "Candidates scanned, including the singular ones skipped. q^k once complete."
    singular_skipped: int
    wall_time: float

    @property
    def complete(self) -> bool:
        return self.candidates_tested == (1 << self.s) ** self.k

    def __rich_repr__(self) -> rich.repr.Result:
        yield "k", self.k
        yield "s", self.s
        yield "solutions", len(self.mds_polynomials)
        yield "candidates_tested", self.candidates_tested


@dataclass
class _Checkpoint:
    k: int
    s: int
    modulus: int
    next_index: int
    candidates_tested: int
    singular_skipped: int
    solutions: list[list[int]]

    @classmethod
    def load(cls, path: Path) -> _Checkpoint:
        try:
            data = json.loads(path.read_text())
            return cls(**data)
        except (OSError, ValueError, TypeError) as e:
            raise ParameterError(f"Checkpoint file {path} is not readable.") from e

    def save(self, path: Path) -> None:
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(asdict(self)))
        tmp.replace(path)


@dataclass(frozen=True)
class _Chunk:
    k: int
    s: int
    modulus: int
    start: int
    stop: int
    cap: int


def _candidates(chunk: _Chunk, q: int) -> np.ndarray:
    # Row r holds (c_0, ..., c_{k-1}) of candidate start + r; c_0 is the most significant digit.
    idx = np.arange(chunk.start, chunk.stop, dtype=np.int64)
    place_values = q ** np.arange(chunk.k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // place_values) % q


def _companion_powers(coeffs: galois.FieldArray, k: int) -> galois.FieldArray:
    """C^k for a batch of companion matrices, one per row of `coeffs`.

    Column j of C^k is e_j pushed through the LFSR k times."""

    field = type(coeffs)
    batch = coeffs.shape[0]
    out = field.Zeros((batch, k, k))
    for j in range(k):
        state = field.Zeros((batch, k))
        state[:, j] = 1
        for _ in range(k):
            feedback = (coeffs * state).sum(axis=1)
            shifted = field.Zeros((batch, k))
            shifted[:, :-1] = state[:, 1:]
            shifted[:, -1] = feedback
            state = shifted
        out[:, :, j] = state
    return out


def _scan_chunk(chunk: _Chunk) -> tuple[int, int, list[tuple[int, ...]]]:
    """Scan one chunk. Returns (tested, singular_skipped, solutions). Runs in worker processes."""

    spec = FieldSpec(chunk.s, chunk.modulus)
    digits = _candidates(chunk, spec.q)
    tested = int(digits.shape[0])
    regular_rows = digits[:, 0] != 0
    skipped = tested - int(regular_rows.sum())
    digits = digits[regular_rows]
    if digits.shape[0] == 0:
        return tested, skipped, []

    powers = _companion_powers(spec.field(digits), chunk.k)
    # Any zero entry is a singular 1x1 minor.
    no_zero_entry = np.all(powers.view(np.ndarray) != 0, axis=(1, 2))
    solutions: list[tuple[int, ...]] = []
    for row in np.flatnonzero(no_zero_entry):
        if is_mds(powers[row], "exhaustive", cap=chunk.cap).is_mds:
            solutions.append(tuple(int(c) for c in digits[row]) + (1,))
    return tested, skipped, solutions


def _run_chunks(chunks: list[_Chunk], workers: int) -> Iterator[tuple[int, int, list[tuple[int, ...]]]]:
    if workers == 1 or len(chunks) < 2:
        for chunk in chunks:
            yield _scan_chunk(chunk)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_scan_chunk, chunks)


def exhaustive_companion_search(
    k: int,
    s: int,
    *,
    modulus: int | None = None,
    workers: int = 1,
    budget: int | None = None,
    cap: int | None = None,
    checkpoint: Path | None = None,
    chunk_size: int | None = None,
) -> OracleReport:
    """Every (c_0, ..., c_{k-1}) whose companion matrix C has an MDS k-th power.

    Candidates are scanned in lexicographic order of their integer encodings, in
    chunks of `chunk_size` (default: the checkpoint interval setting). After each
    chunk the progress hub is notified and, if `checkpoint` is given, the counters
    are written to it; an existing checkpoint for the same parameters is resumed.

    Raises:
        BudgetExceededError: If q^k is above the candidate budget.
        ParameterError: If k is above the exhaustive MDS cap.
    """

    settings = get_settings()
    spec = FieldSpec.default(s) if modulus is None else FieldSpec(s, modulus)
    budget = settings.oracle_budget if budget is None else budget
    cap = settings.exhaustive_mds_cap if cap is None else cap
    chunk_size = settings.oracle_checkpoint_interval if chunk_size is None else chunk_size
    if k < 1:
        raise ParameterError(f"k must be positive, got k={k}.")
    if k > cap:
        raise ParameterError(f"k={k} is above the exhaustive MDS cap {cap}.")
    total = spec.q**k
    if total > budget:
        raise BudgetExceededError(f"Exhaustive scan of k={k}, s={s}", required=total, budget=budget)

    state = _Checkpoint(k, s, spec.irreducible, 0, 0, 0, [])
    if checkpoint is not None and checkpoint.exists():
        loaded = _Checkpoint.load(checkpoint)
        if (loaded.k, loaded.s, loaded.modulus) != (k, s, spec.irreducible):
            raise ParameterError(f"Checkpoint {checkpoint} belongs to another run (k={loaded.k}, s={loaded.s}).")
        state = loaded
        log.info(f"func exhaustive_companion_search: resuming at candidate {state.next_index} of {total}.")

    started = time.perf_counter()
    chunks = [
        _Chunk(k, s, spec.irreducible, start, min(start + chunk_size, total), cap)
        for start in range(state.next_index, total, chunk_size)
    ]
    for chunk, (tested, skipped, solutions) in zip(chunks, _run_chunks(chunks, workers)):
        state.next_index = chunk.stop
        state.candidates_tested += tested
        state.singular_skipped += skipped
        state.solutions.extend(list(sol) for sol in solutions)
        if checkpoint is not None:
            state.save(checkpoint)
        progress_hub.publish_oracle(
            OracleProgress(k, s, state.next_index, total, state.candidates_tested, len(state.solutions))
        )

    wall_time = time.perf_counter() - started
    report = OracleReport(
        k=k,
        s=s,
        modulus=spec.irreducible,
        mds_polynomials=tuple(sorted(tuple(sol) for sol in state.solutions)),
        candidates_tested=state.candidates_tested,
        singular_skipped=state.singular_skipped,
        wall_time=wall_time,
    )
    log.debug(f"func exhaustive_companion_search: {len(report.mds_polynomials)} MDS of {total} candidates.")
    return report


def minimal_polynomial(a: ExtElement, base: FieldSpec) -> Polynomial[FieldElement]:
    """∏ (X - a^(q^j)) over the distinct conjugates of a."""

    if a.spec.base != base:
        raise FieldMismatchError("The element does not lie in an extension of the given base field.")
    if a.is_zero():
        raise ParameterError("minimal_polynomial expects a nonzero element.")
    ext = a.spec
    conjugates = [a]
    current = ext_pow(a, base.q)
    while current != a:
        conjugates.append(current)
        current = ext_pow(current, base.q)

    product = Polynomial.one(ext)
    for c in conjugates:
        product = poly_mul(product, Polynomial.linear(c, ext))
    coerced = coerce_to_base(product)
    if coerced is None:
        raise ParameterError(f"The conjugates of {a} do not give a polynomial over GF({base.q}).")
    return coerced


def bch_definition_oracle(beta: ExtElement, ell: int, d: int) -> Polynomial[FieldElement]:
    """lcm of the minimal polynomials of β^ℓ, ..., β^(ℓ+d-2): the BCH generator of designed distance d."""

    if beta.is_zero():
        raise ParameterError("bch_definition_oracle expects a nonzero β.")
    if d < 2:
        raise ParameterError(f"Designed distance must be at least 2, got d={d}.")
    base = beta.spec.base
    factors = [minimal_polynomial(ext_pow(beta, ell + j), base).to_galois() for j in range(d - 1)]
    return Polynomial.from_galois(galois.lcm(*factors), base)


@dataclass(frozen=True)
class ConjectureCheck:
    bch: tuple[tuple[int, ...], ...]
    oracle: tuple[tuple[int, ...], ...]

    @property
    def bch_subset_of_oracle(self) -> bool:
        return set(self.bch) <= set(self.oracle)

    @property
    def equal(self) -> bool:
        return self.bch == self.oracle


def conjecture_check(k: int, s: int, *, modulus: int | None = None, workers: int = 1) -> ConjectureCheck:
    """Compare the BCH search with the exhaustive scan.

    Every BCH solution must be found by the scan. When 2k = q the two sets are
    expected to be equal; any difference is logged as an error."""

    from recursive_mds.bch import SearchParams, search

    records = search(SearchParams(k=k, s=s, modulus=modulus, workers=workers))
    report = exhaustive_companion_search(k, s, modulus=modulus, workers=workers)
    check = ConjectureCheck(tuple(r.g for r in records), report.mds_polynomials)
    if not check.bch_subset_of_oracle:
        log.error(f"func conjecture_check: BCH solutions missing from the exhaustive scan for k={k}, s={s}.")
    elif 2 * k == 1 << s and not check.equal:
        extra = sorted(set(check.oracle) - set(check.bch))
        log.error(f"func conjecture_check: {len(extra)} MDS companions outside the BCH family, e.g. {extra[:3]}.")
    return check
