"""Input parsing and serialization: matrix CSV, edge lists, graph6 autodetect.

Matrix files are CSV with cells that are real (`a`) or complex
(`a+bi` / `a-bi`) literals. Graph files are either a graph6 string or an
edge list (first line the order, then one `u v` pair per line); the two are
told apart by content, never by a flag.
"""

from __future__ import annotations

from typing import Union

import numpy as np

from .cmatrix import CMatrix
from .errors import BadComplexLiteral, RaggedRows
from .graphs import Graph, parse_graph6


def parse_complex_literal(cell: str) -> complex:
    s = cell.strip()
    if not s:
        raise BadComplexLiteral("empty cell")
    if s.endswith(("i", "I")):
        body = s[:-1]
        split = -1
        for idx in range(len(body) - 1, 0, -1):
            if body[idx] in "+-" and body[idx - 1] not in "eE":
                split = idx
                break
        if split < 0:
            raise BadComplexLiteral(
                f"{cell!r}: complex cells need the a+bi / a-bi form"
            )
        re_str, im_str = body[:split], body[split:]
        try:
            return complex(float(re_str), float(im_str))
        except ValueError:
            raise BadComplexLiteral(f"cannot parse complex literal {cell!r}") from None
    try:
        return complex(float(s), 0.0)
    except ValueError:
        raise BadComplexLiteral(f"cannot parse literal {cell!r}") from None


def parse_matrix_file(text: str) -> CMatrix:
    """CSV of real/complex literals with uniform row lengths."""
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        rows.append([parse_complex_literal(c) for c in line.split(",")])
    if not rows:
        raise BadComplexLiteral("no matrix rows found")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise RaggedRows(f"row {i} has {len(row)} cells, expected {width}")
    return CMatrix.from_rows(rows)


def _format_float(x: float) -> str:
    return repr(float(x))


def format_matrix_csv(m: CMatrix) -> str:
    lines = []
    for row in m.data:
        cells = []
        for z in row:
            if z.imag == 0.0:
                cells.append(_format_float(z.real))
            else:
                sign = "+" if z.imag >= 0 else "-"
                cells.append(f"{_format_float(z.real)}{sign}{_format_float(abs(z.imag))}i")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in (l.strip() for l in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty edge list")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"edge list must start with the order, got {lines[0]!r}") from None
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"edge line must be 'u v', got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edge_list(n, edges)


def _looks_like_graph6(text: str) -> bool:
    lines = [ln for ln in (l.strip() for l in text.splitlines()) if ln]
    if len(lines) != 1:
        return False
    token = lines[0]
    if token.startswith(">>graph6<<"):
        token = token[len(">>graph6<<"):]
    return bool(token) and all(63 <= ord(ch) <= 126 for ch in token)


def load_subject(text: str) -> Union[Graph, CMatrix]:
    """Autodetect graph6 / edge list / matrix CSV content.

    Commas mean CSV. A single line in the graph6 character range is graph6.
    A leading bare integer starts an edge list. Anything else is tried as a
    one-cell-per-line matrix (covers literals like `1+1i`).
    """
    if "," in text:
        return parse_matrix_file(text)
    if _looks_like_graph6(text):
        return parse_graph6(text)
    lines = [ln for ln in (l.strip() for l in text.splitlines()) if ln]
    if lines:
        try:
            int(lines[0])
            return parse_edge_list(text)
        except ValueError:
            pass
    return parse_matrix_file(text)
