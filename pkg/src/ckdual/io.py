"""Reading and writing matrix and K-datum files.

Matrices are either JSON ``{"n": N, "rows": [[...], ...]}`` or plain text
with one row per line of contiguous ``0``/``1`` characters. K-data are
JSON in the shape produced by :meth:`ckdual.classify.KDatum.to_dict`.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from ckdual.classify import KDatum
from ckdual.intlinalg import IntMatrix

__all__ = [
    "InputError",
    "parse_matrix",
    "read_matrix",
    "format_matrix",
    "write_matrix",
    "read_kdatum",
    "bundled",
    "bundled_sha256",
    "BUNDLED",
]

BUNDLED = (
    "all_ones_2.txt",
    "all_ones_3.txt",
    "all_ones_4.txt",
    "all_ones_5.txt",
    "all_ones_6.txt",
    "example3.txt",
    "example3_hatA.txt",
)


class InputError(ValueError):
    """Unreadable or malformed input file."""


def parse_matrix(text: str) -> IntMatrix:
    stripped = text.strip()
    if not stripped:
        raise InputError("empty matrix file")
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            rows = data["rows"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise InputError(f"bad JSON matrix: {exc}") from exc
        if "n" in data and data["n"] != len(rows):
            raise InputError(f"'n' is {data['n']} but {len(rows)} rows are given")
        try:
            return IntMatrix.from_rows(rows)
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
    lines = [ln.strip() for ln in stripped.splitlines() if ln.strip()]
    for ln in lines:
        if set(ln) - {"0", "1"}:
            raise InputError(f"text rows must be 0/1 characters, got {ln!r}")
    try:
        return IntMatrix.from_rows([[int(c) for c in ln] for ln in lines])
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def read_matrix(path) -> IntMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_matrix(text)


def format_matrix(M: IntMatrix, fmt: str = "json") -> str:
    """Render in a matrix file format; ``text`` only works for 0/1 entries."""
    if fmt == "text":
        if any(x not in (0, 1) for x in M.entries):
            raise ValueError("text format holds only 0/1 entries")
        return "\n".join("".join(str(x) for x in row) for row in M.to_lists()) + "\n"
    return json.dumps({"n": M.rows, "rows": M.to_lists()}) + "\n"


def write_matrix(M: IntMatrix, path, fmt: str = "json") -> None:
    Path(path).write_text(format_matrix(M, fmt))


def read_kdatum(path) -> KDatum:
    try:
        data = json.loads(Path(path).read_text())
        return KDatum.from_dict(data)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad K-datum file {path}: {exc}") from exc


def _data_file(name: str):
    return resources.files("ckdual").joinpath("data", name)


def bundled(name: str) -> IntMatrix:
    """A matrix shipped with the package, by file name."""
    if name not in BUNDLED:
        raise InputError(f"no bundled matrix {name!r}")
    return parse_matrix(_data_file(name).read_text())


def bundled_sha256(name: str) -> str:
    return hashlib.sha256(_data_file(name).read_bytes()).hexdigest()
