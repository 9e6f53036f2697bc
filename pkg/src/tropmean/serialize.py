"""JSON and CSV formats for points, matrices, results and certificates.

Rationals travel as strings, "p/q" or plain "p" for integers, so no reader
ever sees a rounded value.  Decimal literals in input files are converted
exactly (0.2 becomes 1/5, not the nearest binary float).  Minus infinity in
matrix entries is encoded as JSON null.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

from .certify import Certificate, QuadraticPiece, piece_for
from .core import SampleSet, TorusPoint, as_rational, canonicalize
from .errors import ParseError
from .frechet import FrechetResult
from .polytrope import NEG_INF, PolytropeMatrix, TropicalScalar


def format_rational(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def point_to_json(p: TorusPoint) -> list[str]:
    return [format_rational(c) for c in p]


def point_from_json(data: Any) -> TorusPoint:
    if not isinstance(data, list) or len(data) < 2:
        raise ParseError("a point must be a list of at least two coordinates")
    return canonicalize([_coord(v) for v in data])


def matrix_to_json(c: PolytropeMatrix) -> dict[str, Any]:
    entries: list[list[str | None]] = []
    for i in range(c.n):
        row: list[str | None] = []
        for j in range(c.n):
            v = c.entries[i][j]
            row.append(None if v == NEG_INF else format_rational(v))
        entries.append(row)
    return {"n": c.n, "entries": entries}


def matrix_from_json(data: Any) -> PolytropeMatrix:
    if not isinstance(data, dict) or "entries" not in data:
        raise ParseError("matrix JSON must be an object with an 'entries' key")
    entries = data["entries"]
    n = data.get("n", len(entries))
    if not isinstance(entries, list) or len(entries) != n:
        raise ParseError("matrix entry rows do not match declared size")
    rows: list[list[TropicalScalar]] = []
    for raw in entries:
        if not isinstance(raw, list) or len(raw) != n:
            raise ParseError("matrix rows must all have length n")
        rows.append([NEG_INF if v is None else _coord(v) for v in raw])
    return PolytropeMatrix.from_rows(rows)


def certificate_to_json(cert: Certificate) -> dict[str, Any]:
    """Certificate as a self-contained proof document.

    Sample and coordinate indices are 1-based here, matching how such
    proofs are written out by hand; in-memory objects stay 0-based.
    """
    weights = []
    for j, entries in enumerate(cert.weights):
        pieces = [
            {
                "i": piece.i + 1,
                "k": piece.k + 1,
                "c": format_rational(piece.c),
                "w": format_rational(w),
            }
            for piece, w in entries
        ]
        weights.append({"sample": j + 1, "pieces": pieces})
    return {"c_star": format_rational(cert.c_star), "weights": weights}


def certificate_from_json(data: Any, sample: SampleSet) -> Certificate:
    if not isinstance(data, dict) or "c_star" not in data or "weights" not in data:
        raise ParseError("certificate JSON needs 'c_star' and 'weights'")
    groups = data["weights"]
    if not isinstance(groups, list) or len(groups) != sample.m:
        raise ParseError("certificate must carry one weight group per sample")
    by_sample: list[tuple[tuple[QuadraticPiece, Fraction], ...]] = []
    for j, group in enumerate(groups):
        if not isinstance(group, dict) or group.get("sample") != j + 1:
            raise ParseError(f"weight group {j} must declare sample {j + 1}")
        entries = []
        for item in group.get("pieces", []):
            piece = piece_for(sample, j, int(item["i"]) - 1, int(item["k"]) - 1)
            if piece.c != _coord(item["c"]):
                raise ParseError(
                    f"piece constant mismatch in sample {j + 1}: {item['c']!r}"
                )
            entries.append((piece, _coord(item["w"])))
        by_sample.append(tuple(entries))
    return Certificate(c_star=_coord(data["c_star"]), weights=tuple(by_sample))


def result_to_json(result: FrechetResult) -> dict[str, Any]:
    from .polytrope import pseudovertices, tropical_vertices

    mat = result.fm_polytrope
    out: dict[str, Any] = {
        "mean": point_to_json(result.mean),
        "distances": [format_rational(d) for d in result.distances],
        "min_sum": format_rational(result.min_sum),
        "fm_polytrope": matrix_to_json(mat),
        "exact": result.exact,
        "tropical_vertices": [point_to_json(v) for v in tropical_vertices(mat)],
        "pseudovertices": [point_to_json(v) for v in pseudovertices(mat)],
    }
    if result.certificate is not None:
        out["certificate"] = certificate_to_json(result.certificate)
    return out


def load_points(text: str) -> tuple[SampleSet, dict[str, Any]]:
    """Parse an input document, JSON first, headerless CSV as fallback.

    JSON: {"points": [[...], ...], "options": {...}} with coordinates as
    "p/q" strings, integers, or decimal literals.  CSV: one point per row.
    Returns the sample plus the (possibly empty) options block.
    """
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            doc = json.loads(text, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        if isinstance(doc, list):
            doc = {"points": doc}
        if not isinstance(doc, dict) or "points" not in doc:
            raise ParseError("JSON input must carry a 'points' array")
        raw = doc["points"]
        options = doc.get("options", {})
        if not isinstance(raw, list) or not raw:
            raise ParseError("'points' must be a nonempty array")
        rows = []
        for idx, row in enumerate(raw):
            if not isinstance(row, list):
                raise ParseError(f"point {idx} is not an array")
            rows.append([_coord(v) for v in row])
    else:
        options = {}
        rows = []
        for lineno, record in enumerate(csv.reader(io.StringIO(text)), start=1):
            if not record or all(not cell.strip() for cell in record):
                continue
            try:
                rows.append([_coord(cell.strip()) for cell in record])
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
        if not rows:
            raise ParseError("no data rows found")
    try:
        sample = SampleSet.from_rows(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return sample, options if isinstance(options, dict) else {}


def _coord(value: Any) -> Fraction:
    """One coordinate from a JSON scalar or CSV cell, exactly."""
    if isinstance(value, bool):
        raise ParseError("booleans are not coordinates")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        # Floats only appear when a caller bypassed parse_float; refuse
        # rather than guess which decimal was meant.
        raise ParseError(f"refusing inexact float {value!r}; write it as a string")
    raise ParseError(f"cannot read coordinate {value!r}")
