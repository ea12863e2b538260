"""Module for text and JSON formats.

Base field elements are written as hexadecimal bitvectors (0x13 is x^4+x+1).
Input also accepts decimal integers and powers of the field generator x, written
`a`, `a^3`, `a^-1`, and sums of those such as `a^202+1`.

JSON reports are built from plain dicts in a fixed key order. Everything that
depends on the seed, the worker count or the clock goes to the `metadata` object
or, for provenance, is only included on request, so the rest of a report is
byte-identical across runs."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from typing import Any, Mapping, Sequence
import json
import logging
import re

# Library imports
import galois

# Local imports
from recursive_mds.bch import BetaDescriptor, SolutionRecord
from recursive_mds.classify import ClassCounts, SolutionClass
from recursive_mds.errors import ParameterError
from recursive_mds.fields import FieldSpec, base_pow
from recursive_mds.oracle import OracleReport

__all__ = [
    "format_element",
    "parse_element",
    "parse_coefficients",
    "format_polynomial",
    "format_matrix",
    "record_to_dict",
    "record_from_dict",
    "class_to_dict",
    "search_report",
    "oracle_report",
    "dumps",
]

log = logging.getLogger(__name__)

_POWER = re.compile(r"^(?:a|α|x)(?:\^(-?\d+))?$")


def format_element(value: int, log_table: Mapping[int, int] | None = None) -> str:
    """Hex by default; `a^i` when a discrete log table is given."""

    if log_table is None:
        return f"{value:#x}"
    if value == 0:
        return "0"
    exponent = log_table[value]
    return "1" if exponent == 0 else ("a" if exponent == 1 else f"a^{exponent}")


def _parse_term(term: str, spec: FieldSpec) -> int:

    match = _POWER.match(term)
    if match is not None:
        exponent = int(match.group(1)) if match.group(1) is not None else 1
        generator = spec.one if spec.s == 1 else spec.element(2)
        return int(base_pow(generator, exponent))
    try:
        value = int(term, 0)
    except ValueError as e:
        raise ParameterError(f"Cannot parse {term!r} as a field element.") from e
    return int(spec.element(value))


def parse_element(text: str, spec: FieldSpec) -> int:
    """Parse one element. Terms joined with '+' are added in the field."""

    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ParameterError("Empty field element.")
    value = 0
    for term in cleaned.split("+"):
        if not term:
            raise ParameterError(f"Cannot parse {text!r} as a field element.")
        value ^= _parse_term(term, spec)
    return value


def parse_coefficients(text: str, spec: FieldSpec) -> tuple[int, ...]:
    """Parse a comma-separated coefficient list, e.g. "(1, a^3, a, a^3)" or "1,2,1,4"."""

    cleaned = text.strip().strip("()[]")
    if not cleaned:
        raise ParameterError("Empty coefficient list.")
    return tuple(parse_element(part, spec) for part in cleaned.split(","))


def format_polynomial(coeffs: Sequence[int], log_table: Mapping[int, int] | None = None) -> str:
    "Comma-separated coefficients, constant term first."
    return ",".join(format_element(c, log_table) for c in coeffs)


def format_matrix(M: galois.FieldArray, log_table: Mapping[int, int] | None = None) -> list[list[str]]:
    return [[format_element(int(v), log_table) for v in row] for row in M.tolist()]


#####################
# ~ JSON documents ~ #
#####################


def _field_header(spec: FieldSpec) -> dict[str, Any]:
    return {"s": spec.s, "field_modulus_hex": f"{spec.irreducible:#x}"}


def record_to_dict(rec: SolutionRecord, *, provenance: bool = False) -> dict[str, Any]:
    out: dict[str, Any] = {"k": rec.k, **_field_header(rec.field), "z": rec.z}
    if provenance and rec.beta is not None:
        out["beta"] = {
            "ext_modulus": [f"{c:#x}" for c in rec.beta.ext_modulus],
            "alpha": [f"{c:#x}" for c in rec.beta.alpha],
            "exponent": rec.beta.exponent,
        }
        out["ell"] = rec.ell
    out["g_coeffs_hex"] = [f"{c:#x}" for c in rec.g]
    out["regular"] = rec.regular
    out["symmetric"] = rec.symmetric
    out["class_id"] = rec.class_id
    return out


def record_from_dict(data: Mapping[str, Any]) -> SolutionRecord:
    """Inverse of `record_to_dict`. Provenance is restored when present."""

    try:
        spec = FieldSpec(int(data["s"]), int(data["field_modulus_hex"], 16))
        g = tuple(int(c, 16) for c in data["g_coeffs_hex"])
        beta = None
        if "beta" in data:
            beta = BetaDescriptor(
                ext_modulus=tuple(int(c, 16) for c in data["beta"]["ext_modulus"]),
                alpha=tuple(int(c, 16) for c in data["beta"]["alpha"]),
                exponent=int(data["beta"]["exponent"]),
            )
        record = SolutionRecord.build(g, spec, int(data["z"]), beta, int(data.get("ell", 0)))
    except (KeyError, TypeError, ValueError) as e:
        raise ParameterError(f"Malformed solution record: {e}") from e
    if len(g) != int(data["k"]) + 1:
        raise ParameterError(f"Record declares k={data['k']} but has {len(g)} coefficients.")
    return record


def class_to_dict(cls: SolutionClass) -> dict[str, Any]:
    return {
        "class_id": cls.class_id,
        "representative_hex": [f"{c:#x}" for c in cls.representative],
        "orbit_size": cls.orbit_size,
        "members": len(cls.members),
        "all_regular": cls.all_regular,
        "all_symmetric": cls.all_symmetric,
        "reciprocal_class_id": cls.reciprocal_class_id,
    }


def search_report(
    k: int,
    spec: FieldSpec,
    records: Sequence[SolutionRecord],
    classes: Sequence[SolutionClass],
    counts: ClassCounts,
    metadata: Mapping[str, Any],
    *,
    provenance: bool = False,
) -> dict[str, Any]:
    return {
        "k": k,
        **_field_header(spec),
        "summary": {
            "num_solutions": counts.total,
            "num_classes": counts.classes,
            "num_regular": counts.regular,
            "num_symmetric": counts.symmetric,
            "short_orbits": counts.short_orbits,
        },
        "solutions": [record_to_dict(r, provenance=provenance) for r in records],
        "classes": [class_to_dict(c) for c in classes],
        "metadata": dict(metadata),
    }


def oracle_report(report: OracleReport, metadata: Mapping[str, Any]) -> dict[str, Any]:
    spec = FieldSpec(report.s, report.modulus)
    return {
        "k": report.k,
        **_field_header(spec),
        "summary": {
            "num_solutions": len(report.mds_polynomials),
            "candidates_tested": report.candidates_tested,
            "singular_skipped": report.singular_skipped,
            "complete": report.complete,
        },
        "solutions": [[f"{c:#x}" for c in g] for g in report.mds_polynomials],
        "metadata": {"wall_time": report.wall_time, **metadata},
    }


def dumps(document: Mapping[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
