"""Read and write parity-check matrices in the LDPC community's alist format.

Layout (MacKay convention): first line ``n m`` (columns then rows), second
line max column / row degrees, then per-column and per-row degree lists,
then 1-based adjacency lists, column nodes first. Writers commonly pad
adjacency lines with zeros up to the max degree; the reader accepts both
padded and unpadded files.
"""

from __future__ import annotations

from .gf2 import SparseBinaryMatrix


def write_alist(H: SparseBinaryMatrix, path) -> None:
    col_deg = H.col_weights()
    row_deg = H.row_weights()
    max_col = int(col_deg.max()) if H.cols else 0
    max_row = int(row_deg.max()) if H.rows else 0
    lines = [f"{H.cols} {H.rows}", f"{max_col} {max_row}"]
    lines.append(" ".join(str(int(d)) for d in col_deg))
    lines.append(" ".join(str(int(d)) for d in row_deg))
    for c in range(H.cols):
        entries = [str(int(r) + 1) for r in H.col_support[c]]
        entries += ["0"] * (max_col - len(entries))
        lines.append(" ".join(entries))
    for r in range(H.rows):
        entries = [str(int(c) + 1) for c in H.row_support[r]]
        entries += ["0"] * (max_row - len(entries))
        lines.append(" ".join(entries))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_alist(path) -> SparseBinaryMatrix:
    # blank lines are meaningful: a zero-degree node writes an empty one
    with open(path) as fh:
        tokens_per_line = [line.split() for line in fh]
    if len(tokens_per_line) < 4 or not tokens_per_line[0]:
        raise ValueError("alist file too short")
    n, m = int(tokens_per_line[0][0]), int(tokens_per_line[0][1])
    col_deg = [int(t) for t in tokens_per_line[2]]
    row_deg = [int(t) for t in tokens_per_line[3]]
    if len(col_deg) != n or len(row_deg) != m:
        raise ValueError("alist degree lists do not match dimensions")
    body = tokens_per_line[4:]
    if len(body) < n + m:
        raise ValueError("alist adjacency lists truncated")
    row_support: list[list[int]] = [[] for _ in range(m)]
    for c in range(n):
        entries = [int(t) for t in body[c] if int(t) != 0]
        if len(entries) != col_deg[c]:
            raise ValueError(f"column {c}: degree {len(entries)} != declared {col_deg[c]}")
        for r1 in entries:
            if not (1 <= r1 <= m):
                raise ValueError(f"column {c}: row index {r1} out of range")
            row_support[r1 - 1].append(c)
    H = SparseBinaryMatrix(m, n, row_support)
    # cross-check against the row-side lists
    for r in range(m):
        entries = sorted(int(t) - 1 for t in body[n + r] if int(t) != 0)
        if entries != [int(c) for c in H.row_support[r]]:
            raise ValueError(f"row {r}: adjacency lists disagree between views")
    return H
