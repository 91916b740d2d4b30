"""Reading and writing the shared matrix formats.

Text: first line ``rows cols``, then one line of space-separated integers
per row.  Blank lines and ``#`` comments are ignored.
JSON: ``{"rows": r, "cols": c, "data": [[...], ...]}``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .exactmat import DimensionError, ExactMatrix


def parse_text(text: str) -> ExactMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError("first line must be 'rows cols'")
    nrows, ncols = int(header[0]), int(header[1])
    body = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    if len(body) != nrows or any(len(r) != ncols for r in body):
        raise DimensionError(f"matrix body does not match header {nrows} {ncols}")
    if ncols == 0:
        return ExactMatrix.zeros(nrows, 0)
    return ExactMatrix(body)


def format_text(M: ExactMatrix) -> str:
    out = [f"{M.rows} {M.cols}"]
    out.extend(" ".join(str(x) for x in M.row(i)) for i in range(M.rows))
    return "\n".join(out) + "\n"


def to_json_obj(M: ExactMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "data": M.tolist()}


def from_json_obj(obj: dict) -> ExactMatrix:
    nrows, ncols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != nrows or any(len(r) != ncols for r in data):
        raise DimensionError("JSON matrix data does not match rows/cols")
    if ncols == 0:
        return ExactMatrix.zeros(nrows, 0)
    return ExactMatrix(data)


def parse(text: str) -> ExactMatrix:
    """Parse either format, sniffing JSON by its leading brace."""
    if text.lstrip().startswith("{"):
        return from_json_obj(json.loads(text))
    return parse_text(text)


def read_matrix(path) -> ExactMatrix:
    return parse(Path(path).read_text())


def write_matrix(M: ExactMatrix, path, fmt: str = "text") -> None:
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(to_json_obj(M)) + "\n")
    else:
        path.write_text(format_text(M))
