"""Matrix file formats: JSON documents and CSV tables.

The JSON schema is {"n": int, "labels": [str], "upper": [[i, j, value]]}
with 1-based indices and values given as integers, decimals, or exact
fraction strings like "1/7". CSV files carry an order line followed by the
full n x n matrix. Parsing then serializing reproduces the matrix exactly.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from ..errors import ParseError
from ..pcm import Pcm, upper_pairs, validate_pcm


def parse_value(token) -> float:
    """Parse an entry given as a number or a fraction string."""
    if isinstance(token, (int, float)):
        if isinstance(token, bool):
            raise ParseError(f"not a matrix entry: {token!r}")
        return float(token)
    text = str(token).strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return float(Fraction(num.strip()) / Fraction(den.strip()))
        return float(Fraction(text)) if "." not in text and "e" not in text.lower() else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse matrix entry {token!r}") from exc


def format_value(x: float) -> str:
    """Render an entry so that parse_value(format_value(x)) == x."""
    if x >= 1.0 and math.isclose(x, round(x), rel_tol=0, abs_tol=1e-12):
        return str(int(round(x)))
    recip = 1.0 / x
    if math.isclose(recip, round(recip), rel_tol=0, abs_tol=1e-9) and round(recip) != 0:
        k = int(round(recip))
        if float(Fraction(1, k)) == x:
            return f"1/{k}"
    return repr(x)


def parse_json_document(text: str):
    """Parse a JSON matrix document. Returns (Pcm, labels or None)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or not (
        "upper" in doc or "rows" in doc
    ):
        raise ParseError('document must contain "n" and "upper" (or "rows")')
    n = doc["n"]
    if not isinstance(n, int):
        raise ParseError('"n" must be an integer')
    labels = doc.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != n
                or not all(isinstance(s, str) for s in labels)):
            raise ParseError('"labels" must list one string per alternative')
        labels = tuple(labels)
    if "upper" not in doc:
        rows = doc["rows"]
        if not (isinstance(rows, list) and len(rows) == n
                and all(isinstance(r, list) and len(r) == n for r in rows)):
            raise ParseError(f'"rows" must be an {n}x{n} table')
        a = np.array([[parse_value(v) for v in row] for row in rows])
        return validate_pcm(a), labels
    upper = {}
    for item in doc["upper"]:
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise ParseError(f'bad "upper" item: {item!r}')
        i, j, raw = item
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            raise ParseError(f"indices must satisfy 1 <= i < j <= n: {item!r}")
        key = (i - 1, j - 1)
        if key in upper:
            raise ParseError(f"duplicate entry for ({i}, {j})")
        upper[key] = parse_value(raw)
    missing = [p for p in upper_pairs(n) if p not in upper]
    if missing:
        i, j = missing[0]
        raise ParseError(f"missing entry for ({i + 1}, {j + 1})")
    a = np.ones((n, n))
    for (i, j), v in upper.items():
        a[i, j] = v
        a[j, i] = 1.0 / v
    return validate_pcm(a), labels


def serialize_json_document(pcm: Pcm, labels=None) -> str:
    doc = {
        "n": pcm.n,
        "upper": [
            [i + 1, j + 1, format_value(float(pcm.a[i, j]))]
            for (i, j) in upper_pairs(pcm.n)
        ],
    }
    if labels is not None:
        doc["labels"] = list(labels)
    return json.dumps(doc, indent=2) + "\n"


def parse_csv_document(text: str):
    """Parse the CSV format: an order line then the full matrix."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError(f"first line must be the order, got {lines[0]!r}") from exc
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        cells = [c for c in ln.split(",")]
        if len(cells) != n:
            raise ParseError(f"expected {n} entries per row, got {len(cells)}")
        rows.append([parse_value(c) for c in cells])
    return validate_pcm(np.array(rows)), None


def serialize_csv_document(pcm: Pcm) -> str:
    lines = [str(pcm.n)]
    for i in range(pcm.n):
        lines.append(",".join(format_value(float(v)) for v in pcm.a[i]))
    return "\n".join(lines) + "\n"


def parse_document(text: str):
    """Dispatch on content: JSON object or CSV table."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json_document(text)
    return parse_csv_document(text)


def load_matrix(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_document(text)
