"""Module for companion matrices and MDS verification.

Matrices are 2-d galois arrays over the base field. A square matrix is MDS when
every square submatrix is nonsingular, which is what `is_mds` checks.

Exhaustive verification computes all minors of one size at once from the minors
of the size below, by expansion along the first row of each row subset. Signs
vanish in characteristic 2, so for R = (r0, R') and C = (c_0, ..., c_{i-1}):

    det M[R, C] = Σ_t M[r0, c_t] · det M[R', C without c_t]

which turns the whole enumeration into a handful of vectorized gathers per size."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, Literal, Sequence
import logging

if TYPE_CHECKING:
    import rich.repr

# Library imports
import galois
import numpy as np

# Local imports
from recursive_mds.config import get_settings
from recursive_mds.errors import BudgetExceededError, DomainError, FieldMismatchError, ParameterError
from recursive_mds.fields import FieldElement, FieldSpec, base_inv
from recursive_mds.poly import Polynomial, is_palindromic

__all__ = [
    "CompanionSpec",
    "MdsVerdict",
    "VerificationMode",
    "Direction",
    "companion_matrix",
    "mat_pow",
    "determinant",
    "is_mds",
    "lfsr_clock",
    "companion_inverse",
    "apply_diffusion",
    "apply_inverse_by_reversal",
    "min_distance_bruteforce",
    "branch_number",
    "transpose",
]

log = logging.getLogger(__name__)

VerificationMode = Literal["exhaustive", "sampled", "auto"]
Direction = Literal["forward", "inverse"]


@dataclass(frozen=True)
class CompanionSpec:
    """Coefficients (c_0, ..., c_{k-1}) of the monic g(X) = X^k + c_{k-1}X^{k-1} + ... + c_0.

    Coefficients are integer-encoded elements of `field`."""

    coeffs: tuple[int, ...]
    field: FieldSpec

    def __post_init__(self) -> None:

        if len(self.coeffs) < 1:
            raise ParameterError("A companion matrix needs at least one coefficient.")
        for c in self.coeffs:
            if not 0 <= c < self.field.q:
                raise ParameterError(f"Coefficient {c:#x} is not an element of GF(2^{self.field.s}).")

    @classmethod
    def from_polynomial(cls, g: Polynomial[FieldElement]) -> CompanionSpec:
        if not isinstance(g.ring, FieldSpec):
            raise FieldMismatchError("Companion matrices are built from base field polynomials.")
        if g.degree < 1 or not g.is_monic():
            raise ParameterError(f"{g} is not monic of positive degree.")
        return cls(g.to_ints()[:-1], g.ring)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def regular(self) -> bool:
        "Constant term 1: the inverse reuses the same coefficients."
        return self.coeffs[0] == 1

    def vector(self) -> galois.FieldArray:
        return self.field.elements(self.coeffs)

    def polynomial(self) -> Polynomial[FieldElement]:
        return Polynomial.from_ints(self.coeffs + (1,), self.field)

    def __rich_repr__(self) -> rich.repr.Result:
        yield "coeffs", tuple(f"{c:#x}" for c in self.coeffs)
        yield "field", self.field


@dataclass(frozen=True)
class MdsVerdict:
    """Outcome of `is_mds`.

    `witness` is the (row set, column set) of the first singular submatrix found,
    in (size, rows, columns) lexicographic order."""

    status: Literal["mds", "not_mds", "unverified"]
    mode: Literal["exhaustive", "sampled"]
    minors_checked: int
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    @property
    def is_mds(self) -> bool:
        return self.status == "mds"

    @property
    def is_not_mds(self) -> bool:
        return self.status == "not_mds"

    def __rich_repr__(self) -> rich.repr.Result:
        yield "status", self.status
        yield "mode", self.mode
        yield "minors_checked", self.minors_checked
        yield "witness", self.witness, None


def _require_square(M: galois.FieldArray) -> int:
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ParameterError(f"Expected a non-empty square matrix, got shape {M.shape}.")
    return int(M.shape[0])


def companion_matrix(spec: CompanionSpec) -> galois.FieldArray:
    """Ones on the superdiagonal, (c_0, ..., c_{k-1}) in the last row."""

    k = spec.k
    C = spec.field.field.Zeros((k, k))
    for i in range(k - 1):
        C[i, i + 1] = 1
    C[k - 1, :] = spec.vector()
    return C


def mat_pow(M: galois.FieldArray, e: int) -> galois.FieldArray:
    """M^e by square-and-multiply. M^0 is the identity."""

    k = _require_square(M)
    if e < 0:
        raise ParameterError(f"Exponent must be non-negative, got {e}.")
    result = type(M).Identity(k)
    base = M
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def determinant(M: galois.FieldArray) -> FieldElement:
    _require_square(M)
    return np.linalg.det(M)


def transpose(M: galois.FieldArray) -> galois.FieldArray:
    return M.T.copy()


@dataclass(frozen=True)
class _ExpansionIndex:
    # Gathers that express the size-i minors in terms of the size-(i-1) ones.
    first_rows: np.ndarray  # r0 of every row subset, shape (nR,)
    rest_rows: np.ndarray  # index of R' among the (i-1)-subsets, shape (nR,)
    cols: np.ndarray  # c_t of every column subset, shape (nC, i)
    rest_cols: np.ndarray  # index of C without c_t among the (i-1)-subsets, shape (nC, i)


@lru_cache(maxsize=None)
def _expansion_index(k: int, i: int) -> _ExpansionIndex:

    smaller = {c: n for n, c in enumerate(combinations(range(k), i - 1))}
    subsets = list(combinations(range(k), i))
    first_rows = np.array([r[0] for r in subsets], dtype=np.int64)
    rest_rows = np.array([smaller[r[1:]] for r in subsets], dtype=np.int64)
    cols = np.array(subsets, dtype=np.int64).reshape(len(subsets), i)
    rest_cols = np.array(
        [[smaller[c[:t] + c[t + 1 :]] for t in range(i)] for c in subsets], dtype=np.int64
    ).reshape(len(subsets), i)
    return _ExpansionIndex(first_rows, rest_rows, cols, rest_cols)


def _first_zero(
    minors: galois.FieldArray, k: int, size: int
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:

    zeros = np.argwhere(np.asarray(minors) == 0)
    if zeros.size == 0:
        return None
    row_idx, col_idx = (int(v) for v in zeros[0])
    subsets = list(combinations(range(k), size))
    return subsets[row_idx], subsets[col_idx]


def _is_mds_exhaustive(M: galois.FieldArray, k: int) -> MdsVerdict:

    checked = 0
    minors = M.copy()  # size 1: the entries themselves, rows and columns indexed by 1-subsets
    for size in range(1, k + 1):
        if size > 1:
            idx = _expansion_index(k, size)
            new = type(M).Zeros((idx.first_rows.size, idx.cols.shape[0]))
            for t in range(size):
                entries = M[np.ix_(idx.first_rows, idx.cols[:, t])]
                sub = minors[np.ix_(idx.rest_rows, idx.rest_cols[:, t])]
                new += entries * sub
            minors = new
        checked += int(minors.size)
        witness = _first_zero(minors, k, size)
        if witness is not None:
            log.debug(f"func is_mds: singular {size}x{size} submatrix at {witness}.")
            return MdsVerdict("not_mds", "exhaustive", checked, witness)
    return MdsVerdict("mds", "exhaustive", checked)


def _is_mds_sampled(M: galois.FieldArray, k: int, budget: int, seed: int) -> MdsVerdict:

    witness = _first_zero(M, k, 1)
    if witness is not None:
        return MdsVerdict("not_mds", "sampled", k * k, witness)
    checked = k * k
    full = tuple(range(k))
    checked += 1
    if np.linalg.det(M) == 0:
        return MdsVerdict("not_mds", "sampled", checked, (full, full))
    if k > 2:
        rng = np.random.default_rng(seed)
        for _ in range(budget):
            size = int(rng.integers(2, k))
            rows = tuple(sorted(int(r) for r in rng.choice(k, size=size, replace=False)))
            cols = tuple(sorted(int(c) for c in rng.choice(k, size=size, replace=False)))
            checked += 1
            if np.linalg.det(M[np.ix_(rows, cols)]) == 0:
                return MdsVerdict("not_mds", "sampled", checked, (rows, cols))
    return MdsVerdict("unverified", "sampled", checked)


def is_mds(
    M: galois.FieldArray,
    mode: VerificationMode = "auto",
    budget: int | None = None,
    *,
    cap: int | None = None,
    seed: int = 0,
) -> MdsVerdict:
    """Check that every square submatrix of M is nonsingular.

    Args:
        M: Square matrix over GF(q).
        mode: "exhaustive" checks every minor, refusing (unverified) above the cap.
            "sampled" checks all entries, the determinant and `budget` random minors;
            it can prove a matrix is not MDS but never that it is. "auto" is
            exhaustive within the cap and sampled above it.
        budget: Random minors for sampled mode. Defaults to the settings value.
        cap: Largest k verified exhaustively. Defaults to the settings value.
        seed: Seed of the sampled mode.
    """

    k = _require_square(M)
    settings = get_settings()
    cap = settings.exhaustive_mds_cap if cap is None else cap
    budget = settings.sampled_minor_budget if budget is None else budget

    if mode == "auto":
        mode = "exhaustive" if k <= cap else "sampled"
    if mode == "exhaustive":
        if k > cap:
            log.warning(f"func is_mds: k={k} is above the exhaustive cap {cap}; result is unverified.")
            return MdsVerdict("unverified", "exhaustive", 0)
        return _is_mds_exhaustive(M, k)
    if mode == "sampled":
        return _is_mds_sampled(M, k, budget, seed)
    raise ParameterError(f"Unknown verification mode {mode!r}.")


def _state_vector(state: Sequence[int] | galois.FieldArray, spec: CompanionSpec) -> galois.FieldArray:

    if isinstance(state, galois.FieldArray):
        if type(state) is not spec.field.field:
            raise FieldMismatchError("The state vector is not over the field of the companion matrix.")
        x = state.copy()
    else:
        x = spec.field.elements(list(state))
    if x.shape != (spec.k,):
        raise ParameterError(f"Expected a state of length {spec.k}, got shape {x.shape}.")
    return x


def lfsr_clock(state: Sequence[int] | galois.FieldArray, spec: CompanionSpec, times: int) -> galois.FieldArray:
    """Clock the LFSR of the companion matrix: x -> (x_1, ..., x_{k-1}, c·x), `times` times.

    Equal to C^times · x."""

    if times < 0:
        raise ParameterError(f"Cannot clock a negative number of times ({times}).")
    x = _state_vector(state, spec)
    c = spec.vector()
    for _ in range(times):
        feedback = (c * x).sum()
        x[:-1] = x[1:].copy()
        x[-1] = feedback
    return x


def companion_inverse(spec: CompanionSpec) -> galois.FieldArray:
    """C^-1: first row c_0^-1·(c_1, ..., c_{k-1}, 1), identity shifted down below it.

    Raises:
        DomainError: If c_0 = 0.
    """

    if spec.coeffs[0] == 0:
        raise DomainError("The companion matrix is singular (c_0 = 0).")
    k = spec.k
    field = spec.field.field
    inv_c0 = base_inv(field(spec.coeffs[0]))
    inverse = field.Zeros((k, k))
    inverse[0, :] = field(list(spec.coeffs[1:]) + [1]) * inv_c0
    for i in range(1, k):
        inverse[i, i - 1] = 1
    return inverse


def apply_diffusion(
    spec: CompanionSpec, x: Sequence[int] | galois.FieldArray, direction: Direction = "forward"
) -> galois.FieldArray:
    """C^k·x (forward) or C^-k·x (inverse)."""

    if direction == "forward":
        return lfsr_clock(x, spec, spec.k)
    if direction == "inverse":
        return mat_pow(companion_inverse(spec), spec.k) @ _state_vector(x, spec)
    raise ParameterError(f"Unknown direction {direction!r}.")


def apply_inverse_by_reversal(spec: CompanionSpec, y: Sequence[int] | galois.FieldArray) -> galois.FieldArray:
    """C^-k·y computed with the forward LFSR on reversed symbols.

    Valid for palindromic g only, where C^-1 = J·C·J with J the reversal."""

    if not is_palindromic(spec.polynomial()):
        raise ParameterError("Inversion by reversal needs a palindromic polynomial.")
    reversed_input = _state_vector(y, spec)[::-1].copy()
    return lfsr_clock(reversed_input, spec, spec.k)[::-1].copy()


def min_distance_bruteforce(G: galois.FieldArray, budget: int | None = None) -> int:
    """Minimum Hamming weight over all nonzero codewords x·G.

    Raises:
        BudgetExceededError: If q^k messages exceed the budget.
    """

    if G.ndim != 2 or G.shape[0] == 0:
        raise ParameterError(f"Expected a non-empty generator matrix, got shape {G.shape}.")
    k, n = (int(d) for d in G.shape)
    q = int(type(G).order)
    budget = get_settings().distance_budget if budget is None else budget
    total = q**k
    if total > budget:
        raise BudgetExceededError("Too many codewords to enumerate", required=total, budget=budget)

    place_values = q ** np.arange(k, dtype=np.int64)
    best = n
    chunk = 1 << 16
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        messages = type(G)((idx[:, None] // place_values) % q)
        weights = np.count_nonzero(np.asarray(messages @ G), axis=1)
        best = min(best, int(weights.min()))
    log.debug(f"func min_distance_bruteforce: d={best} over {total - 1} codewords.")
    return best


def branch_number(M: galois.FieldArray, budget: int | None = None) -> int:
    """min over x != 0 of wt(x) + wt(M·x). Equals k+1 exactly for MDS matrices."""

    k = _require_square(M)
    G = type(M).Zeros((k, 2 * k))
    G[:, :k] = type(M).Identity(k)
    G[:, k:] = M.T
    return min_distance_bruteforce(G, budget)
