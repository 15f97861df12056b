"""GF(2) linear algebra for LDPC codes.

Holds the sparse parity-check matrix H and its Tanner adjacency, derives a
generator matrix G with G.H^T = 0 over GF(2), and provides encoding,
syndrome computation, Tanner-graph girth, and alist file I/O.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AlistError",
    "ParityCheckMatrix",
    "GeneratorMatrix",
    "load_alist",
    "save_alist",
    "derive_generator",
    "encode",
    "syndrome",
    "girth",
]


class AlistError(ValueError):
    """Malformed alist file; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ParityCheckMatrix:
    """Sparse GF(2) parity-check matrix with Tanner adjacency.

    ``chk_cols[j]`` lists the variable (column) indices connected to check
    (row) j; ``var_rows[i]`` lists the check indices connected to variable i.
    Both use 0-based indices, sorted and duplicate-free. Every variable must
    participate in at least one check. Instances are immutable after
    construction and safe to share across workers.
    """

    def __init__(self, r: int, m: int, chk_cols: list[list[int]]):
        if r < 0 or m <= 0:
            raise ValueError(f"invalid dimensions ({r}, {m})")
        if len(chk_cols) != r:
            raise ValueError(f"expected {r} row lists, got {len(chk_cols)}")
        rows = []
        var_rows: list[list[int]] = [[] for _ in range(m)]
        for j, cols in enumerate(chk_cols):
            cols = sorted(int(i) for i in cols)
            for a, b in zip(cols, cols[1:]):
                if a == b:
                    raise ValueError(f"duplicate column index {a} in row {j}")
            if cols and (cols[0] < 0 or cols[-1] >= m):
                bad = cols[0] if cols[0] < 0 else cols[-1]
                raise ValueError(f"column index {bad} out of range in row {j}")
            rows.append(cols)
            for i in cols:
                var_rows[i].append(j)
        for i, checks in enumerate(var_rows):
            if not checks:
                raise ValueError(f"variable {i} participates in no check")
        self.r = r
        self.m = m
        self.chk_cols = rows
        self.var_rows = var_rows
        # Flat CSR-style edge arrays (row-major edge order) used by the
        # decoder kernels and the vectorized syndrome.
        degrees = [len(c) for c in rows]
        self.row_ptr = np.concatenate(([0], np.cumsum(degrees))).astype(np.int32)
        self.edge_col = np.array(
            [i for cols in rows for i in cols], dtype=np.int32
        )
        self.edge_row = np.repeat(
            np.arange(r, dtype=np.int32), degrees
        ) if r else np.zeros(0, dtype=np.int32)
        self.n_edges = int(self.edge_col.size)

    @property
    def label(self) -> str:
        return f"H({self.r},{self.m})"

    @classmethod
    def from_dense(cls, array) -> "ParityCheckMatrix":
        a = np.asarray(array)
        r, m = a.shape
        return cls(r, m, [list(np.flatnonzero(a[j] % 2)) for j in range(r)])

    def dense(self) -> np.ndarray:
        h = np.zeros((self.r, self.m), dtype=np.uint8)
        for j, cols in enumerate(self.chk_cols):
            h[j, cols] = 1
        return h

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ParityCheckMatrix)
            and self.r == other.r
            and self.m == other.m
            and self.chk_cols == other.chk_cols
        )

    def __repr__(self) -> str:
        return f"ParityCheckMatrix({self.label}, {self.n_edges} edges)"


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Dense k x m GF(2) generator with recorded systematic positions.

    Reading a codeword at ``systematic_cols`` recovers the information word.
    ``dropped_rows`` lists parity-check rows that were linearly dependent on
    earlier ones and therefore ignored while deriving the generator.
    """

    k: int
    m: int
    bits: np.ndarray
    systematic_cols: np.ndarray
    dropped_rows: tuple[int, ...] = field(default=())

    @property
    def rate(self) -> float:
        return self.k / self.m


def _parse_int_line(tokens: list[str], line_no: int, expect: int | None = None):
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise AlistError(line_no, f"expected integers, got {tokens!r}") from None
    if expect is not None and len(values) != expect:
        raise AlistError(line_no, f"expected {expect} integers, got {len(values)}")
    return values


def load_alist(path) -> ParityCheckMatrix:
    """Read a parity-check matrix from an alist text file.

    Layout: "m r" header (columns then rows), maximum column/row weights,
    per-column weights, per-row weights, then one line of 1-based row
    indices per column and one line of 1-based column indices per row.
    Zero-padded index lines are tolerated on read.
    """
    with open(path) as fh:
        raw = fh.read().splitlines()
    lines = [(no + 1, ln.split()) for no, ln in enumerate(raw) if ln.split()]

    def header(idx: int):
        if idx >= len(lines):
            raise AlistError(len(raw) or 1, "truncated file: missing header lines")
        return lines[idx]

    no, tok = header(0)
    m, r = _parse_int_line(tok, no, expect=2)
    if m <= 0 or r <= 0:
        raise AlistError(no, f"invalid dimensions ({m}, {r})")
    no, tok = header(1)
    _parse_int_line(tok, no, expect=2)  # max weights, informational only
    no, tok = header(2)
    col_weights = _parse_int_line(tok, no, expect=m)
    no, tok = header(3)
    row_weights = _parse_int_line(tok, no, expect=r)

    if len(lines) < 4 + m + r:
        raise AlistError(lines[-1][0], f"truncated file: expected {4 + m + r} lines")

    var_rows = []
    for i in range(m):
        no, tok = lines[4 + i]
        entries = [v for v in _parse_int_line(tok, no) if v != 0]
        for v in entries:
            if not 1 <= v <= r:
                raise AlistError(no, f"row index {v} out of range for r={r}")
        if len(entries) != col_weights[i]:
            raise AlistError(
                no, f"column {i + 1} lists {len(entries)} entries, weight says {col_weights[i]}"
            )
        var_rows.append(sorted(v - 1 for v in entries))

    chk_cols = []
    for j in range(r):
        no, tok = lines[4 + m + j]
        entries = [v for v in _parse_int_line(tok, no) if v != 0]
        for v in entries:
            if not 1 <= v <= m:
                raise AlistError(no, f"column index {v} out of range for m={m}")
        if len(entries) != row_weights[j]:
            raise AlistError(
                no, f"row {j + 1} lists {len(entries)} entries, weight says {row_weights[j]}"
            )
        chk_cols.append(sorted(v - 1 for v in entries))

    # Both adjacency sections describe the same edge set.
    from_rows = [[] for _ in range(m)]
    for j, cols in enumerate(chk_cols):
        for i in cols:
            from_rows[i].append(j)
    for i in range(m):
        if from_rows[i] != var_rows[i]:
            raise AlistError(
                lines[4 + i][0], f"column {i + 1} adjacency inconsistent with row lists"
            )

    try:
        return ParityCheckMatrix(r, m, chk_cols)
    except ValueError as exc:
        raise AlistError(1, str(exc)) from None


def save_alist(h: ParityCheckMatrix, path) -> None:
    """Write ``h`` in alist format (1-based indices, unpadded)."""
    col_w = [len(h.var_rows[i]) for i in range(h.m)]
    row_w = [len(h.chk_cols[j]) for j in range(h.r)]
    out = [
        f"{h.m} {h.r}",
        f"{max(col_w)} {max(row_w)}",
        " ".join(map(str, col_w)),
        " ".join(map(str, row_w)),
    ]
    # Empty adjacency lists get a single 0 token (stripped on read) so the
    # file never contains blank lines.
    out += [" ".join(str(j + 1) for j in h.var_rows[i]) or "0" for i in range(h.m)]
    out += [" ".join(str(i + 1) for i in h.chk_cols[j]) or "0" for j in range(h.r)]
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")


def derive_generator(h: ParityCheckMatrix) -> GeneratorMatrix:
    """Derive G with G.H^T = 0 by GF(2) Gaussian elimination.

    Rows of H that are linear combinations of earlier rows are dropped (and
    reported) so the remaining system has full rank; the code dimension is
    k = m - rank(H). The information word is readable at the recorded
    systematic column positions, which keeps codewords aligned with H's
    column order.
    """
    dense = h.dense()
    basis: list[np.ndarray] = []  # reduced rows, one pivot column each
    pivots: list[int] = []
    dropped: list[int] = []
    for j in range(h.r):
        row = dense[j].copy()
        for p, v in zip(pivots, basis):
            if row[p]:
                row ^= v
        nz = np.flatnonzero(row)
        if nz.size == 0:
            dropped.append(j)
        else:
            basis.append(row)
            pivots.append(int(nz[0]))
    rank = len(pivots)
    k = h.m - rank
    if k == 0:
        raise ValueError(f"degenerate code: rank({h.label}) = {h.m}, dimension 0")

    # Back-substitute so every pivot column appears in exactly one row.
    order = np.argsort(pivots)
    basis = [basis[t] for t in order]
    pivots = [pivots[t] for t in order]
    for a in range(rank - 1, -1, -1):
        for b in range(a):
            if basis[b][pivots[a]]:
                basis[b] ^= basis[a]

    pivot_set = set(pivots)
    free_cols = np.array([c for c in range(h.m) if c not in pivot_set], dtype=np.int64)
    g = np.zeros((k, h.m), dtype=np.uint8)
    for t, f in enumerate(free_cols):
        g[t, f] = 1
        for p, v in zip(pivots, basis):
            g[t, p] = v[f]
    return GeneratorMatrix(
        k=k, m=h.m, bits=g, systematic_cols=free_cols, dropped_rows=tuple(dropped)
    )


def encode(d: np.ndarray, g: GeneratorMatrix) -> np.ndarray:
    """Encode an information word: C = D.G over GF(2)."""
    d = np.asarray(d, dtype=np.uint8)
    if d.shape != (g.k,):
        raise ValueError(f"information word has length {d.shape}, expected ({g.k},)")
    selected = g.bits[d != 0]
    if selected.shape[0] == 0:
        return np.zeros(g.m, dtype=np.uint8)
    return np.bitwise_xor.reduce(selected, axis=0)


def syndrome(c: np.ndarray, h: ParityCheckMatrix) -> np.ndarray:
    """Compute C.H^T over GF(2); all-zero certifies a codeword."""
    c = np.asarray(c, dtype=np.uint8)
    if c.shape != (h.m,):
        raise ValueError(f"word has length {c.shape}, expected ({h.m},)")
    s = np.zeros(h.r, dtype=np.int64)
    np.add.at(s, h.edge_row, c[h.edge_col].astype(np.int64))
    return (s & 1).astype(np.uint8)


def girth(h: ParityCheckMatrix) -> int | None:
    """Length of the shortest Tanner-graph cycle, or None if acyclic.

    For each edge (variable i, check j) we BFS from i to j in the graph
    with that edge removed; the shortest such path plus one is the shortest
    cycle through the edge. Always even when finite (bipartite graph).
    """
    best = None
    for i in range(h.m):
        for j in h.var_rows[i]:
            # dist[] over variables (even depth) and checks (odd depth);
            # checks are offset by m in the visited map.
            limit = best - 1 if best is not None else None
            dist = {i: 0}
            queue = deque([(i, True, 0)])
            found = None
            while queue:
                node, is_var, d = queue.popleft()
                if limit is not None and d >= limit:
                    break
                if is_var:
                    for jj in h.var_rows[node]:
                        if node == i and jj == j:
                            continue  # the removed edge
                        key = h.m + jj
                        if key not in dist:
                            if jj == j:
                                found = d + 1
                                queue.clear()
                                break
                            dist[key] = d + 1
                            queue.append((jj, False, d + 1))
                else:
                    for ii in h.chk_cols[node]:
                        if ii not in dist:
                            dist[ii] = d + 1
                            queue.append((ii, True, d + 1))
            if found is not None:
                cycle = found + 1
                if best is None or cycle < best:
                    best = cycle
                if best == 4:
                    return best  # bipartite minimum, cannot improve
    return best
