"""Command-line front end.

```
recursive-mds construct --k 8 --s 4
recursive-mds search --k 4 --s 4 --threads 4
recursive-mds verify --s 8 --field-poly 0x11B --coeffs 1,2,1,4
recursive-mds apply --s 8 --field-poly 0x11B --coeffs 1,2,1,4 --input 1,0,0,0
recursive-mds oracle --k 4 --s 3 --compare
recursive-mds classify --input report.json
```

Machine-readable output goes to stdout (or `--output`), logs go to stderr.
Exit codes: 0 success / MDS, 1 not MDS or failed verification, 2 usage error,
3 unverified."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

# Python imports
from __future__ import annotations
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence
import argparse
import json
import logging
import sys
import time

# Library imports
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

# Local imports
from recursive_mds import bch, classify, formats, linalg, oracle
from recursive_mds.errors import InvariantViolation, MdsError, ParameterError
from recursive_mds.fields import FieldSpec, discrete_log_table
from recursive_mds.progress import OracleProgress, SearchProgress, progress_hub

__all__ = [
    "RunConfig",
    "EXIT_OK",
    "EXIT_NOT_MDS",
    "EXIT_USAGE",
    "EXIT_UNVERIFIED",
    "main",
]

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_MDS = 1
EXIT_USAGE = 2
EXIT_UNVERIFIED = 3

COMMANDS = ("construct", "search", "verify", "apply", "oracle", "classify")


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line options."""

    command: str
    k: int | None = None
    s: int | None = None
    modulus: int | None = None
    z_range: tuple[int, ...] | None = None
    seed: int = 0
    output: Path | None = None
    format: str = "json"
    regular_only: bool = False
    symmetric_only: bool = False
    no_verify: bool = False
    threads: int = 1
    provenance: bool = False
    log_alpha: bool = False
    strategy: str = "cyclotomic"
    all_betas: bool = False
    coeffs: str | None = None
    input_vector: str | None = None
    direction: str = "forward"
    mode: str = "auto"
    checkpoint: Path | None = None
    compare: bool = False
    input_path: Path | None = None
    verbose: int = 0

    def __post_init__(self) -> None:

        if self.command not in COMMANDS:
            raise ParameterError(f"Unknown command {self.command!r}.")
        if self.k is not None and self.k < 1:
            raise ParameterError(f"--k must be positive, got {self.k}.")
        if self.s is not None and not 1 <= self.s <= 16:
            raise ParameterError(f"--s must be in [1, 16], got {self.s}.")
        if self.threads < 1:
            raise ParameterError(f"--threads must be positive, got {self.threads}.")

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> RunConfig:
        values = {name: getattr(ns, name) for name in cls.__dataclass_fields__ if hasattr(ns, name)}
        return cls(**values)

    @property
    def field(self) -> FieldSpec:
        """The base field, with the modulus override checked for irreducibility."""

        if self.s is None:
            raise ParameterError("--s is required for this command.")
        if self.modulus is None:
            return FieldSpec.default(self.s)
        return FieldSpec(self.s, self.modulus)

    def require_k(self) -> int:
        if self.k is None:
            raise ParameterError("--k is required for this command.")
        return self.k


############
# ~ Parser ~ #
############


def _int_auto(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e


def _z_list(text: str) -> tuple[int, ...]:
    """Comma-separated values of z; a range such as 1-9 expands to its odd members."""

    values: list[int] = []
    for part in text.split(","):
        if "-" in part:
            low, high = (int(v) for v in part.split("-", 1))
            values.extend(z for z in range(low, high + 1) if z % 2 == 1)
        else:
            values.append(int(part))
    return tuple(values)


def build_parser() -> argparse.ArgumentParser:

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging on stderr (-v, -vv).")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", type=Path, default=None, help="Write the report here instead of stdout.")
    common.add_argument("--log-alpha", action="store_true", help="Render elements as powers of x.")

    field_opts = argparse.ArgumentParser(add_help=False)
    field_opts.add_argument("--s", type=int, required=True, help="Symbol size in bits, q = 2^s.")
    field_opts.add_argument(
        "--field-poly", dest="modulus", type=_int_auto, default=None, help="Modulus bitvector, e.g. 0x11B."
    )

    k_opt = argparse.ArgumentParser(add_help=False)
    k_opt.add_argument("--k", type=int, required=True, help="Matrix size.")

    parser = argparse.ArgumentParser(
        prog="recursive-mds", description="Recursive MDS matrices from shortened BCH codes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common, field_opts, k_opt], help="Direct construction.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all", dest="all_betas", action="store_true", help="Construct for every β of order q+1.")
    p.add_argument("--provenance", action="store_true")

    p = sub.add_parser("search", parents=[common, field_opts, k_opt], help="Enumerate every BCH solution.")
    p.add_argument("--z", dest="z_range", type=_z_list, default=None, help='Values of z, e.g. "1,3" or "1-9".')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--regular-only", action="store_true")
    p.add_argument("--symmetric-only", action="store_true")
    p.add_argument("--no-verify", action="store_true", help="Skip re-deriving and checking every solution.")
    p.add_argument("--provenance", action="store_true", help="Include β and ℓ (seed dependent).")
    p.add_argument("--strategy", choices=bch.STRATEGIES, default="cyclotomic")

    p = sub.add_parser("verify", parents=[common, field_opts], help="Check that C^k is MDS.")
    p.add_argument("--coeffs", required=True, help="c_0, ..., c_{k-1}, e.g. 1,2,1,4 or 1,a^3,a^-1,a^3.")
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")

    p = sub.add_parser("apply", parents=[common, field_opts], help="Apply the diffusion C^k or its inverse.")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--input", dest="input_vector", required=True, help="Input symbols x_0, ..., x_{k-1}.")
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")

    p = sub.add_parser("oracle", parents=[common, field_opts, k_opt], help="Exhaustive companion scan.")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--checkpoint", type=Path, default=None, help="Resume from / save progress to this file.")
    p.add_argument("--compare", action="store_true", help="Also run the BCH search and compare.")

    p = sub.add_parser("classify", parents=[common], help="Frobenius classes of a search report.")
    p.add_argument("--input", dest="input_path", type=Path, default=None, help="A JSON report from `search`.")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--field-poly", dest="modulus", type=_int_auto, default=None)
    p.add_argument("--threads", type=int, default=1)

    return parser


############
# ~ Output ~ #
############


class _Output:
    """Collects the report and writes it as JSON or as rich tables."""

    def __init__(self, cfg: RunConfig, console: Console) -> None:
        self.cfg = cfg
        self.console = console
        self.log_table: dict[int, int] | None = None
        if cfg.log_alpha and cfg.s is not None:
            self.log_table = discrete_log_table(cfg.field)
            if self.log_table is None:
                log.warning(f"func _Output: x is not primitive modulo {cfg.field.irreducible:#x}; using hex.")

    def element(self, value: int) -> str:
        return formats.format_element(value, self.log_table)

    def emit(self, document: Mapping[str, Any], tables: Sequence[Table] = ()) -> None:

        if self.cfg.format == "json":
            text = formats.dumps(document)
            if self.cfg.output is not None:
                self.cfg.output.write_text(text)
            else:
                sys.stdout.write(text)
            return
        console = self.console
        if self.cfg.output is not None:
            console = Console(file=self.cfg.output.open("w"), width=200)
        for table in tables:
            console.print(table)
        if self.cfg.output is not None:
            console.file.close()


def _summary_table(title: str, rows: Mapping[str, Any]) -> Table:
    table = Table(title=title)
    table.add_column("Counter")
    table.add_column("Value", justify="right")
    for key, value in rows.items():
        table.add_row(key, str(value))
    return table


def _solutions_table(out: _Output, records: Sequence[bch.SolutionRecord]) -> Table:
    table = Table(title="Solutions")
    for column in ("class", "z", "g (c_0 .. c_k)", "regular", "symmetric"):
        table.add_column(column)
    for r in records:
        table.add_row(
            "" if r.class_id is None else str(r.class_id),
            str(r.z),
            ", ".join(out.element(c) for c in r.g),
            "yes" if r.regular else "",
            "yes" if r.symmetric else "",
        )
    return table


def _matrix_table(out: _Output, title: str, M: Any) -> Table:
    table = Table(title=title, show_header=False)
    rows = M.tolist()
    for _ in rows[0]:
        table.add_column(justify="right")
    for row in rows:
        table.add_row(*(out.element(int(v)) for v in row))
    return table


def _exit_for(verdict: linalg.MdsVerdict) -> int:
    if verdict.is_mds:
        return EXIT_OK
    if verdict.is_not_mds:
        return EXIT_NOT_MDS
    return EXIT_UNVERIFIED


def _verdict_dict(verdict: linalg.MdsVerdict) -> dict[str, Any]:
    witness = None
    if verdict.witness is not None:
        witness = {"rows": list(verdict.witness[0]), "cols": list(verdict.witness[1])}
    return {"status": verdict.status, "mode": verdict.mode, "minors_checked": verdict.minors_checked, "witness": witness}


##############
# ~ Commands ~ #
##############


def cmd_construct(cfg: RunConfig, out: _Output) -> int:

    k = cfg.require_k()
    field = cfg.field
    if cfg.all_betas:
        records = bch.direct_construct_all(k, field.s, cfg.seed, field.irreducible)
    else:
        records = [bch.direct_construct(k, field.s, cfg.seed, field.irreducible)]

    exit_code = EXIT_OK
    entries: list[dict[str, Any]] = []
    tables: list[Table] = []
    for rec in records:
        spec = rec.companion()
        M = linalg.mat_pow(linalg.companion_matrix(spec), k)
        verdict = linalg.is_mds(M)
        if verdict.is_not_mds:
            log.error(f"func cmd_construct: direct construction produced a non-MDS matrix {rec.g}.")
        exit_code = max(exit_code, _exit_for(verdict))
        entries.append(
            {
                "solution": formats.record_to_dict(rec, provenance=cfg.provenance),
                "companion_last_row": [out.element(c) for c in spec.coeffs],
                "matrix": formats.format_matrix(M, out.log_table),
                "verdict": _verdict_dict(verdict),
            }
        )
        tables.append(_solutions_table(out, [rec]))
        tables.append(_matrix_table(out, f"M = C^{k} ({verdict.status})", M))

    out.emit({"k": k, "s": field.s, "field_modulus_hex": f"{field.irreducible:#x}", "constructions": entries}, tables)
    return exit_code


def _classified_report(
    cfg: RunConfig, out: _Output, k: int, field: FieldSpec, records: list[bch.SolutionRecord], metadata: dict[str, Any]
) -> int:

    classified = classify.classify_set(records)
    document = formats.search_report(
        k, field, classified.records, classified.classes, classified.counts, metadata, provenance=cfg.provenance
    )
    counts = classified.counts
    summary = {
        "solutions": counts.total,
        "classes": counts.classes,
        "regular": counts.regular,
        "symmetric": counts.symmetric,
    }
    out.emit(document, [_summary_table(f"k={k}, s={field.s}", summary), _solutions_table(out, classified.records)])
    return EXIT_OK


def cmd_search(cfg: RunConfig, out: _Output) -> int:

    k = cfg.require_k()
    field = cfg.field
    params = bch.SearchParams(
        k=k,
        s=field.s,
        z_range=cfg.z_range,
        rng_seed=cfg.seed,
        modulus=cfg.modulus,
        regular_only=cfg.regular_only,
        symmetric_only=cfg.symmetric_only,
        strategy=cfg.strategy,  # type: ignore[arg-type]
        workers=cfg.threads,
    )
    started = time.perf_counter()
    records = bch.search(params)
    wall_time = time.perf_counter() - started

    failed = unverified = 0
    if not cfg.no_verify:
        for rec in records:
            verdict = bch.verify_solution(rec)
            if verdict.status == "failed":
                failed += 1
            elif verdict.status == "unverified":
                unverified += 1
    if failed:
        log.error(f"func cmd_search: {failed} solutions failed verification.")
    if unverified:
        log.info(f"func cmd_search: {unverified} solutions above the minor cap rest on their provenance.")

    metadata = {"wall_time": wall_time, "seed": cfg.seed, "workers": cfg.threads, "strategy": cfg.strategy}
    _classified_report(cfg, out, k, field, records, metadata)
    return EXIT_NOT_MDS if failed else EXIT_OK


def _companion_from_cfg(cfg: RunConfig) -> linalg.CompanionSpec:
    if cfg.coeffs is None:
        raise ParameterError("--coeffs is required for this command.")
    field = cfg.field
    return linalg.CompanionSpec(formats.parse_coefficients(cfg.coeffs, field), field)


def cmd_verify(cfg: RunConfig, out: _Output) -> int:

    spec = _companion_from_cfg(cfg)
    M = linalg.mat_pow(linalg.companion_matrix(spec), spec.k)
    verdict = linalg.is_mds(M, cfg.mode)  # type: ignore[arg-type]
    document = {
        "k": spec.k,
        "s": spec.field.s,
        "field_modulus_hex": f"{spec.field.irreducible:#x}",
        "coeffs_hex": [f"{c:#x}" for c in spec.coeffs],
        "matrix": formats.format_matrix(M, out.log_table),
        "verdict": _verdict_dict(verdict),
    }
    out.emit(document, [_matrix_table(out, f"M = C^{spec.k} ({verdict.status})", M)])
    return _exit_for(verdict)


def cmd_apply(cfg: RunConfig, out: _Output) -> int:

    spec = _companion_from_cfg(cfg)
    if cfg.input_vector is None:
        raise ParameterError("--input is required for this command.")
    x = formats.parse_coefficients(cfg.input_vector, spec.field)
    if len(x) != spec.k:
        raise ParameterError(f"--input has {len(x)} symbols, expected k={spec.k}.")
    y = linalg.apply_diffusion(spec, x, cfg.direction)  # type: ignore[arg-type]
    values = [int(v) for v in y.tolist()]
    document = {
        "k": spec.k,
        "direction": cfg.direction,
        "input_hex": [f"{v:#x}" for v in x],
        "output_hex": [f"{v:#x}" for v in values],
    }
    table = Table(title=f"{cfg.direction} diffusion")
    table.add_column("input")
    table.add_column("output")
    for a, b in zip(x, values):
        table.add_row(out.element(a), out.element(b))
    out.emit(document, [table])
    return EXIT_OK


def cmd_oracle(cfg: RunConfig, out: _Output) -> int:

    k = cfg.require_k()
    field = cfg.field
    report = oracle.exhaustive_companion_search(
        k, field.s, modulus=field.irreducible, workers=cfg.threads, checkpoint=cfg.checkpoint
    )
    metadata: dict[str, Any] = {"workers": cfg.threads}
    document = formats.oracle_report(report, metadata)
    exit_code = EXIT_OK
    if cfg.compare:
        check = oracle.conjecture_check(k, field.s, modulus=field.irreducible, workers=cfg.threads)
        document["comparison"] = {
            "bch_solutions": len(check.bch),
            "bch_subset_of_oracle": check.bch_subset_of_oracle,
            "equal": check.equal,
        }
        if not check.bch_subset_of_oracle:
            exit_code = EXIT_NOT_MDS
    summary = {
        "solutions": len(report.mds_polynomials),
        "candidates tested": report.candidates_tested,
        "singular skipped": report.singular_skipped,
    }
    out.emit(document, [_summary_table(f"oracle k={k}, s={field.s}", summary)])
    return exit_code


def cmd_classify(cfg: RunConfig, out: _Output) -> int:

    if cfg.input_path is not None:
        try:
            data = json.loads(cfg.input_path.read_text())
        except (OSError, ValueError) as e:
            raise ParameterError(f"Cannot read report {cfg.input_path}: {e}") from e
        records = [formats.record_from_dict(d) for d in data.get("solutions", [])]
        if not records:
            raise ParameterError(f"Report {cfg.input_path} has no solutions.")
        field = records[0].field
        k = records[0].k
        metadata: dict[str, Any] = {"source": str(cfg.input_path)}
    else:
        k = cfg.require_k()
        field = cfg.field
        records = bch.search(bch.SearchParams(k=k, s=field.s, modulus=cfg.modulus, workers=cfg.threads))
        metadata = {"workers": cfg.threads}
    return _classified_report(cfg, out, k, field, records, metadata)


_COMMANDS: dict[str, Callable[[RunConfig, _Output], int]] = {
    "construct": cmd_construct,
    "search": cmd_search,
    "verify": cmd_verify,
    "apply": cmd_apply,
    "oracle": cmd_oracle,
    "classify": cmd_classify,
}


#############
# ~ Logging ~ #
#############


def setup_logging(verbose: int) -> None:

    level = logging.WARNING if verbose == 0 else (logging.INFO if verbose == 1 else logging.DEBUG)
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)


def _log_search_progress(event: SearchProgress) -> None:
    log.info(f"search k={event.k} s={event.s}: z={event.z} done ({event.z_done}/{event.z_total}).")


def _log_oracle_progress(event: OracleProgress) -> None:
    log.info(f"oracle k={event.k} s={event.s}: {event.next_index}/{event.total}, {event.solutions_found} found.")


def main(argv: Sequence[str] | None = None) -> int:

    parser = build_parser()
    ns = parser.parse_args(argv)
    setup_logging(ns.verbose)

    try:
        cfg = RunConfig.from_namespace(ns)
        out = _Output(cfg, Console())
    except MdsError as e:
        log.error(str(e))
        return EXIT_USAGE

    if cfg.verbose:
        progress_hub.signal_search_progress.subscribe(_log_search_progress)
        progress_hub.signal_oracle_progress.subscribe(_log_oracle_progress)
    try:
        return _COMMANDS[cfg.command](cfg, out)
    except InvariantViolation as e:
        log.error(f"Internal error: {e}")
        return EXIT_NOT_MDS
    except MdsError as e:
        log.error(str(e))
        return EXIT_USAGE
    finally:
        if cfg.verbose:
            progress_hub.signal_search_progress.unsubscribe(_log_search_progress)
            progress_hub.signal_oracle_progress.unsubscribe(_log_oracle_progress)


if __name__ == "__main__":
    sys.exit(main())
