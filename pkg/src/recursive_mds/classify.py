"""Module for grouping solutions into Frobenius classes.

Squaring every coefficient of g maps solutions to solutions (the Frobenius
automorphism of GF(2^s) preserves nonsingularity of every minor). The orbits of
that map partition a solution set; each orbit has a size dividing s and is
represented by its smallest member."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Iterable, NamedTuple
import logging

if TYPE_CHECKING:
    import rich.repr
    from recursive_mds.bch import SolutionRecord

# Local imports
from recursive_mds.errors import FieldMismatchError
from recursive_mds.fields import FieldElement, FieldSpec
from recursive_mds.linalg import CompanionSpec, companion_matrix, is_mds, mat_pow
from recursive_mds.poly import Polynomial, frobenius_poly

__all__ = [
    "SolutionClass",
    "ClassCounts",
    "Classification",
    "frobenius_orbit",
    "classify_set",
    "mds_preserved_under_frobenius",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolutionClass:
    """One Frobenius orbit of solutions. Polynomials are integer coefficient tuples, constant term first."""

    class_id: int
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    "Members of the orbit present in the classified set, ascending."
    orbit_size: int
    all_regular: bool
    all_symmetric: bool
    reciprocal_class_id: int | None = None
    "Class of the monic reciprocal X^k·g(1/X)/g(0), when it is in the set."

    def __rich_repr__(self) -> rich.repr.Result:
        yield "class_id", self.class_id
        yield "representative", tuple(f"{c:#x}" for c in self.representative)
        yield "orbit_size", self.orbit_size
        yield "members", len(self.members)


@dataclass(frozen=True)
class ClassCounts:
    total: int = 0
    classes: int = 0
    regular: int = 0
    symmetric: int = 0
    short_orbits: int = 0
    "Classes whose orbit is smaller than s."


class Classification(NamedTuple):
    records: list[SolutionRecord]  # sorted, with class_id filled in
    classes: list[SolutionClass]
    counts: ClassCounts


def frobenius_orbit(g: Polynomial[FieldElement], s: int | None = None) -> list[Polynomial[FieldElement]]:
    """Distinct images of g under 0, 1, ..., s-1 coefficient squarings, starting with g itself."""

    if not isinstance(g.ring, FieldSpec):
        raise FieldMismatchError("frobenius_orbit expects a base field polynomial.")
    s = g.ring.s if s is None else s
    orbit = [g]
    current = frobenius_poly(g)
    for _ in range(s - 1):
        if current == g:
            break
        orbit.append(current)
        current = frobenius_poly(current)
    return orbit


def _orbit_ints(g: tuple[int, ...], field: FieldSpec) -> list[tuple[int, ...]]:
    return [p.to_ints() for p in frobenius_orbit(Polynomial.from_ints(g, field), field.s)]


def _monic_reciprocal(g: tuple[int, ...], field: FieldSpec) -> tuple[int, ...]:
    reversed_coeffs = field.elements(g[::-1])
    return tuple(int(c) for c in reversed_coeffs / reversed_coeffs[-1])


def classify_set(solutions: Iterable[SolutionRecord]) -> Classification:
    """Partition solutions into Frobenius orbits.

    Classes are numbered from 0 in ascending order of their representative, and
    every record gets the id of its class. Counts cover the whole input."""

    records = sorted(solutions, key=lambda r: r.g)
    if not records:
        return Classification([], [], ClassCounts())
    field = records[0].field
    s = field.s

    by_rep: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    orbit_size: dict[tuple[int, ...], int] = {}
    rep_of: dict[tuple[int, ...], tuple[int, ...]] = {}
    for rec in records:
        if rec.g in rep_of:
            continue
        orbit = _orbit_ints(rec.g, field)
        rep = min(orbit)
        orbit_size[rep] = len(orbit)
        for member in orbit:
            rep_of[member] = rep
        by_rep.setdefault(rep, [])

    present = {rec.g for rec in records}
    for member, rep in rep_of.items():
        if member in present:
            by_rep[rep].append(member)

    class_ids = {rep: i for i, rep in enumerate(sorted(by_rep))}
    flags = {rec.g: (rec.regular, rec.symmetric) for rec in records}
    classes: list[SolutionClass] = []
    short = 0
    for rep, class_id in class_ids.items():
        members = tuple(sorted(by_rep[rep]))
        size = orbit_size[rep]
        if size < s:
            short += 1
            log.warning(f"func classify_set: class {class_id} has an orbit of size {size} < s={s}.")
        if len(members) != size:
            log.debug(f"func classify_set: class {class_id} has {len(members)} of its {size} orbit members.")
        reciprocal = _monic_reciprocal(rep, field) if rep[0] != 0 else None
        reciprocal_rep = rep_of.get(reciprocal) if reciprocal is not None else None
        classes.append(
            SolutionClass(
                class_id=class_id,
                representative=rep,
                members=members,
                orbit_size=size,
                all_regular=all(flags[m][0] for m in members),
                all_symmetric=all(flags[m][1] for m in members),
                reciprocal_class_id=class_ids.get(reciprocal_rep) if reciprocal_rep is not None else None,
            )
        )
    classes.sort(key=lambda c: c.class_id)

    annotated = [replace(rec, class_id=class_ids[rep_of[rec.g]]) for rec in records]
    counts = ClassCounts(
        total=len(records),
        classes=len(classes),
        regular=sum(1 for r in records if r.regular),
        symmetric=sum(1 for r in records if r.symmetric),
        short_orbits=short,
    )
    log.debug(f"func classify_set: {counts}")
    return Classification(annotated, classes, counts)


def mds_preserved_under_frobenius(g: Polynomial[FieldElement], *, cap: int | None = None) -> bool | None:
    """True iff the companion k-th power of every orbit member is MDS.

    Returns None when some member could not be verified exhaustively (k above the cap)."""

    unverified = False
    for member in frobenius_orbit(g):
        spec = CompanionSpec.from_polynomial(member)
        verdict = is_mds(mat_pow(companion_matrix(spec), spec.k), "exhaustive", cap=cap)
        if verdict.is_not_mds:
            return False
        if not verdict.is_mds:
            unverified = True
    return None if unverified else True
