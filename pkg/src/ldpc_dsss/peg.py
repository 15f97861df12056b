"""Progressive edge growth construction of parity-check matrices.

Edges are placed one variable at a time; each new edge goes to the check
node whose current distance from the variable is largest (unreachable
checks count as infinitely deep), which greedily maximizes local girth.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .code import ParityCheckMatrix

__all__ = ["peg_construct"]

_UNREACHED = -1


def _check_depths(v: int, var_rows, chk_cols, r: int) -> np.ndarray:
    """BFS distances from variable v to every check in the current graph."""
    depth = np.full(r, _UNREACHED, dtype=np.int64)
    seen_var = {v}
    queue = deque([(v, 0)])
    while queue:
        node, d = queue.popleft()
        for j in var_rows[node]:
            if depth[j] == _UNREACHED:
                depth[j] = d + 1
                for u in chk_cols[j]:
                    if u not in seen_var:
                        seen_var.add(u)
                        queue.append((u, d + 2))
    return depth


def peg_construct(m: int, r: int, column_degrees, seed: int = 0) -> ParityCheckMatrix:
    """Build an r x m parity-check matrix with the requested column degrees.

    Candidate checks are ranked by BFS depth from the variable (deepest
    first), then by lowest current check degree; remaining ties go to the
    earliest check in a seed-derived permutation, so identical inputs and
    seed reproduce the matrix bit for bit.
    """
    if isinstance(column_degrees, (int, np.integer)):
        degrees = [int(column_degrees)] * m
    else:
        degrees = [int(d) for d in column_degrees]
    if len(degrees) != m:
        raise ValueError(f"expected {m} column degrees, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        raise ValueError("column degrees must be >= 1")
    if any(d > r for d in degrees):
        raise ValueError(f"infeasible degree request: degree exceeds {r} checks")

    rng = np.random.default_rng(seed)
    chk_cols: list[list[int]] = [[] for _ in range(r)]
    var_rows: list[list[int]] = [[] for _ in range(m)]
    chk_deg = np.zeros(r, dtype=np.int64)

    for v in range(m):
        for _ in range(degrees[v]):
            depth = _check_depths(v, var_rows, chk_cols, r)
            taken = set(var_rows[v])
            best_j = -1
            best_key = None
            for j in rng.permutation(r):
                if j in taken:
                    continue
                d = depth[j]
                key = (np.inf if d == _UNREACHED else d, -chk_deg[j])
                if best_key is None or key > best_key:
                    best_key = key
                    best_j = int(j)
            if best_j < 0:
                raise ValueError(f"infeasible degree request at variable {v}")
            var_rows[v].append(best_j)
            chk_cols[best_j].append(v)
            chk_deg[best_j] += 1

    return ParityCheckMatrix(r, m, chk_cols)
