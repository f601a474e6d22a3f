"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 the input was unusable.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ckdual.abgroup import OwnershipError, element_order, quotient_by
from ckdual.classify import (
    KDatum,
    NotReciprocalForm,
    classify,
    kdatum_of_sheet,
    kp_iso,
    prop22_check,
    reciprocal_kdatum,
    w_case_report,
)
from ckdual.fock import (
    FockReport,
    HeadroomError,
    SamplingDepthError,
    spectral_gap_check,
    verify_lemma56,
    verify_oainf,
    verify_thm57,
    verify_toeplitz,
)
from ckdual.io import InputError, bundled, format_matrix, parse_matrix, read_kdatum, read_matrix
from ckdual.ktheory import (
    AdmissibilityError,
    TruncationTooSmall,
    build_Ak,
    build_AT,
    build_hatA,
    build_hatAinfty,
    build_tildeAinfty,
    check_admissible,
    invariant_sheet,
    verify_duality_sheet,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

EMIT_TARGETS = ("hatA", "AT", "Ak", "tildeAinf", "hatAinf")
SUITES = ("toeplitz", "oainf", "reciprocal", "lemma56", "gap", "all")
# smallest depth at which each suite has a nonempty headroom-safe subspace
MIN_DEPTH = {"toeplitz": 2, "oainf": 3, "reciprocal": 6, "lemma56": 6, "gap": 2}
MIN_EXTRA = {"oainf": 1, "reciprocal": 3, "lemma56": 3, "gap": 1, "toeplitz": 1}


@dataclass(frozen=True)
class RunConfig:
    command: str
    paths: tuple[str, ...]
    emit: str | None = None
    extra: int = 3
    depth: int = 8
    size: int | None = None
    samples: int = 1000
    tol: Fraction = Fraction(0)
    fmt: str = "table"
    suite: str = "all"
    out: str | None = None

    def __post_init__(self):
        for name in ("extra", "depth", "samples"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name} must be positive")
        if self.size is not None and self.size < 1:
            raise InputError("--size must be positive")
        if self.tol < 0:
            raise InputError("--tol must be nonnegative")


def _emit(text: str = "") -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _table(rows: list[list[str]], header: list[str]) -> str:
    cols = [header] + rows
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    line = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return "\n".join([line(header), line(["-" * w for w in widths])] + [line(r) for r in rows]) + "\n"


def _load_adjacency(path: str):
    return check_admissible(read_matrix(path))


# ---------------------------------------------------------------- commands


def cmd_invariants(cfg: RunConfig) -> int:
    adj = _load_adjacency(cfg.paths[0])
    sheet = invariant_sheet(adj)
    report = verify_duality_sheet(adj, sheet)
    if cfg.fmt == "json":
        _emit(json.dumps({"sheet": sheet.to_dict(), "checks": report.checks, "ok": report.ok}, indent=2))
    else:
        d = sheet.to_dict()
        rows = [[k, str(v) if not isinstance(v, dict) else json.dumps(v)] for k, v in d.items() if not k.endswith("_group")]
        rows += [[f"check: {k}", "pass" if v else "FAIL"] for k, v in report.checks.items()]
        _emit(_table(rows, ["quantity", "value"]))
    return EXIT_OK if report.ok else EXIT_FAIL


def _datum_payload(d: KDatum) -> dict:
    return dict(d.to_dict(), text=str(d), verdict=classify(d))


def cmd_reciprocal(cfg: RunConfig) -> int:
    d = reciprocal_kdatum(invariant_sheet(_load_adjacency(cfg.paths[0])))
    if cfg.fmt == "json":
        _emit(json.dumps(d.to_dict(), indent=2))
    else:
        _emit(_table([["K0", str(d.k0)], ["unit", str(d.unit)], ["K1", str(d.k1)], ["verdict", classify(d)]],
                     ["reciprocal dual", "value"]))
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    d = read_kdatum(cfg.paths[0])
    verdict = classify(d)
    payload = {"datum": str(d), "verdict": verdict}
    if verdict == "reciprocal-CK-form":
        w = w_case_report(d)
        payload["w"] = w.w
        payload["dual_of"] = {"K0": str(w.k0), "K1": str(w.k1)}
    if cfg.fmt == "json":
        _emit(json.dumps(payload, indent=2))
    else:
        rows = [["datum", payload["datum"]], ["verdict", verdict]]
        if "w" in payload:
            rows += [["w", str(payload["w"])], ["O_A with K0", payload["dual_of"]["K0"]], ["O_A with K1", payload["dual_of"]["K1"]]]
        _emit(_table(rows, ["classify", "value"]))
    return EXIT_OK


def _load_second(path: str):
    """A K-datum JSON file or a matrix file; returns ``(datum, sheet or None)``."""
    text = Path(path).read_text() if Path(path).exists() else None
    if text is None:
        raise InputError(f"cannot read {path}")
    if text.lstrip().startswith("{") and '"k0"' in text:
        return read_kdatum(path), None
    sheet = invariant_sheet(check_admissible(parse_matrix(text)))
    return kdatum_of_sheet(sheet), sheet


def cmd_compare(cfg: RunConfig) -> int:
    sheet_a = invariant_sheet(_load_adjacency(cfg.paths[0]))
    d, sheet_b = _load_second(cfg.paths[1])
    rep = prop22_check(sheet_a, d, sheet_b)
    iso = kp_iso(reciprocal_kdatum(sheet_a), d)
    payload = dict(rep.to_dict(), kp_iso=iso, reciprocal=str(reciprocal_kdatum(sheet_a)), candidate=str(d))
    if cfg.fmt == "json":
        _emit(json.dumps(payload, indent=2))
    else:
        rows = [[k, json.dumps(v) if isinstance(v, dict) else str(v)] for k, v in payload.items()]
        _emit(_table(rows, ["compare", "value"]))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_emit(cfg: RunConfig) -> int:
    adj = _load_adjacency(cfg.paths[0])
    target = cfg.emit
    if target in ("tildeAinf", "hatAinf") and cfg.size is None:
        raise InputError(f"--emit {target} needs --size m")
    M = {
        "hatA": lambda: build_hatA(adj),
        "AT": lambda: build_AT(adj),
        "Ak": lambda: build_Ak(adj, cfg.extra),
        "tildeAinf": lambda: build_tildeAinfty(adj, cfg.size),
        "hatAinf": lambda: build_hatAinfty(adj, cfg.size),
    }[target]()
    zero_one = set(M.entries) <= {0, 1}
    text = format_matrix(M, "text" if cfg.fmt == "table" and zero_one else "json")
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        _emit(text)
    return EXIT_OK


def run_fock(A, suite: str, k: int, L: int, samples: int = 1000, tol=0) -> list[FockReport]:
    """Run one suite (or all) and return the reports; raises :class:`HeadroomError` when ``L`` is too small."""
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    need_L = max(MIN_DEPTH[s] for s in names)
    if L < need_L:
        raise HeadroomError(f"suite {suite!r} needs --depth L >= {need_L} (got L={L})")
    need_k = max(MIN_EXTRA[s] for s in names)
    if k < need_k:
        raise HeadroomError(f"suite {suite!r} needs --extra k >= {need_k} (got k={k})")
    out = []
    for s in names:
        if s == "toeplitz":
            out.append(verify_toeplitz(A, L))
        elif s == "oainf":
            out.append(verify_oainf(A, k, L))
        elif s == "reciprocal":
            out.append(verify_thm57(A, k, L))
        elif s == "lemma56":
            out.append(verify_lemma56(A, k, L))
        elif s == "gap":
            out.append(spectral_gap_check(A, k, L, samples=samples, tol=tol).records())
    return out


def cmd_fock(cfg: RunConfig) -> int:
    adj = _load_adjacency(cfg.paths[0])
    reports = run_fock(adj, cfg.suite, cfg.extra, cfg.depth, cfg.samples, cfg.tol)
    records = [r for rep in reports for r in rep.to_list()]
    if cfg.fmt == "json":
        _emit(json.dumps(records, indent=2))
    else:
        rows = [[r["suite"], r["relation"], ",".join(map(str, r["indices"])), str(r["headroom"]), r["status"]
                 + ("" if "boundary_fails" not in r else (" (control ok)" if r["boundary_fails"] else " (control FAILED)"))]
                for r in records]
        _emit(_table(rows, ["suite", "relation", "indices", "h", "status"]))
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_FAIL


# ---------------------------------------------------------------- bundled examples


def _example_rows() -> list[dict]:
    cases = [("Ex.1", "all_ones_2.txt", None)]
    cases += [(f"Ex.2 N={n}", f"all_ones_{n + 1}.txt", n) for n in range(2, 6)]
    cases += [("Ex.3", "example3.txt", None)]
    rows = []
    for label, name, n in cases:
        A = check_admissible(bundled(name))
        sheet = invariant_sheet(A)
        d = reciprocal_kdatum(sheet)
        verdict = classify(d)
        checks = {"duality": verify_duality_sheet(A, sheet).ok, "verdict": verdict == "reciprocal-CK-form"}
        w = w_case_report(d)
        checks["reconstructs O_A"] = w.k0 == sheet.k0 and w.k1 == sheet.k1
        quotient = quotient_by(d.unit)
        detail = f"quotient {quotient}"
        if label == "Ex.1":
            o2 = kdatum_of_sheet(sheet)
            rec = KDatum(w.k0, w.k0.zero(), w.k1)
            checks["kp_iso(O_2, reconstruction)"] = kp_iso(o2, rec)
            checks["datum (Z, 1, 0)"] = d.k0 == sheet.exts1 and str(d.k0) == "Z" and element_order(d.unit) == float("inf")
        elif n is not None:
            checks["quotient Z/N"] = str(quotient) == f"Z/{n}" and str(d.k0) == "Z" and d.k1.is_trivial
        else:
            checks["iota = 0, K1 = 0"] = d.unit.is_zero and d.k1.is_trivial
            checks["hatA transcription"] = build_hatA(A) == bundled("example3_hatA.txt")
        fock = run_fock(A, "toeplitz", 3, 4) + run_fock(A, "oainf", 3, 4)
        fock_ok = all(r.ok for r in fock)
        rows.append({
            "example": label,
            "matrix": name,
            "K0": str(sheet.k0),
            "K1": str(sheet.k1),
            "Ext_s^1": str(d.k0),
            "iota": str(d.unit),
            "Ext_s^0": str(d.k1),
            "verdict": verdict,
            "detail": detail,
            "fock": "pass" if fock_ok else "FAIL",
            "status": "pass" if all(checks.values()) and fock_ok else "FAIL",
            "checks": checks,
        })
    return rows


EXAMPLE_COLUMNS = ["example", "matrix", "K0", "K1", "Ext_s^1", "iota", "Ext_s^0", "verdict", "detail", "fock", "status"]


def examples_table() -> tuple[str, bool]:
    rows = _example_rows()
    text = _table([[r[c] for c in EXAMPLE_COLUMNS] for r in rows], EXAMPLE_COLUMNS)
    return text, all(r["status"] == "pass" for r in rows)


def cmd_examples(cfg: RunConfig) -> int:
    if cfg.fmt == "json":
        rows = _example_rows()
        _emit(json.dumps(rows, indent=2))
        ok = all(r["status"] == "pass" for r in rows)
    else:
        text, ok = examples_table()
        _emit(text)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ckdual", description="Invariants and Fock-space checks for Cuntz-Krieger algebras and their reciprocal duals.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="table", dest="fmt")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="full invariant sheet and duality checks")
    s.add_argument("matrix")
    s = sub.add_parser("reciprocal", parents=[common], help="K-datum of the reciprocal dual")
    s.add_argument("matrix")
    s = sub.add_parser("classify", parents=[common], help="classify a K-datum file")
    s.add_argument("kdatum")
    s = sub.add_parser("compare", parents=[common], help="is the second input the reciprocal dual of the first")
    s.add_argument("matrix")
    s.add_argument("other", help="K-datum JSON file or matrix file")
    s = sub.add_parser("emit", parents=[common], help="write a derived matrix")
    s.add_argument("matrix")
    s.add_argument("--emit", choices=EMIT_TARGETS, required=True)
    s.add_argument("--extra", type=int, default=3, help="k for Ak")
    s.add_argument("--size", type=int, help="m for the infinite-matrix truncations")
    s.add_argument("--out", help="write here instead of stdout")
    s = sub.add_parser("fock", parents=[common], help="exact relation checks in truncated Fock space")
    s.add_argument("matrix", help="the matrix A; reciprocal suites build on its transpose internally")
    s.add_argument("--suite", choices=SUITES, default="all")
    s.add_argument("--extra", type=int, default=3)
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--tol", type=Fraction, default=Fraction(0))
    sub.add_parser("examples", parents=[common], help="run the bundled worked examples")
    return p


COMMANDS = {
    "invariants": cmd_invariants,
    "reciprocal": cmd_reciprocal,
    "classify": cmd_classify,
    "compare": cmd_compare,
    "emit": cmd_emit,
    "fock": cmd_fock,
    "examples": cmd_examples,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    paths = tuple(getattr(args, a) for a in ("matrix", "kdatum", "other") if getattr(args, a, None))
    try:
        cfg = RunConfig(
            command=args.command,
            paths=paths,
            emit=getattr(args, "emit", None),
            extra=getattr(args, "extra", 3),
            depth=getattr(args, "depth", 8),
            size=getattr(args, "size", None),
            samples=getattr(args, "samples", 1000),
            tol=getattr(args, "tol", Fraction(0)),
            fmt=args.fmt,
            suite=getattr(args, "suite", "all"),
            out=getattr(args, "out", None),
        )
        return COMMANDS[args.command](cfg)
    except AdmissibilityError as exc:
        print(f"error: inadmissible matrix ({type(exc).__name__}): {exc}", file=sys.stderr)
    except (InputError, TruncationTooSmall, HeadroomError, SamplingDepthError, NotReciprocalForm, OwnershipError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
