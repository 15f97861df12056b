"""Direct-sequence spreading keyed by parity-check matrix columns.

Both link ends regenerate the chip sequence from (H, rule), so the code
matrix doubles as the shared key material: no separate sequence needs to be
distributed. Despreading averages each group of G_p chips, which shrinks
chip-level noise variance by the processing gain while keeping symbol
amplitude at +/-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import ParityCheckMatrix

MODES = ("xor", "not")

__all__ = ["MODES", "SpreadingRule", "SpreadingSequence", "derive_sequence", "spread", "despread"]


@dataclass(frozen=True)
class SpreadingRule:
    """How to turn H columns into a chip sequence.

    mode "xor": XOR one or more columns together; mode "not": complement a
    single column. ``columns`` holds 0-based column indices. ``pg`` is the
    processing gain (chips per symbol); columns shorter than ``pg`` are
    cyclically tiled, longer ones truncated.
    """

    mode: str
    columns: tuple[int, ...]
    pg: int

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown spreading mode {self.mode!r}; expected 'xor' or 'not'")
        cols = tuple(int(c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise ValueError("at least one column index is required")
        if len(set(cols)) != len(cols):
            raise ValueError(f"column indices must be distinct, got {cols}")
        if any(c < 0 for c in cols):
            raise ValueError(f"column indices must be non-negative, got {cols}")
        if self.mode == "not" and len(cols) != 1:
            raise ValueError(f"'not' mode takes exactly one column, got {len(cols)}")
        if self.pg < 1:
            raise ValueError(f"processing gain must be at least 1, got {self.pg}")


@dataclass(frozen=True, eq=False)
class SpreadingSequence:
    """Chip vector in {+1,-1}^pg together with the rule that produced it.

    ``rule`` is None for sequences built directly from chips (the unspread
    baseline uses a flat all-(+1) sequence with no key material).
    """

    chips: np.ndarray
    rule: SpreadingRule | None

    @property
    def pg(self) -> int:
        return self.rule.pg if self.rule is not None else int(self.chips.size)

    @classmethod
    def flat(cls, pg: int) -> "SpreadingSequence":
        """All-(+1) sequence: spreading becomes chip repetition."""
        if pg < 1:
            raise ValueError(f"processing gain must be at least 1, got {pg}")
        chips = np.ones(pg, dtype=np.float64)
        chips.setflags(write=False)
        return cls(chips, None)


def derive_sequence(h: ParityCheckMatrix, rule: SpreadingRule) -> SpreadingSequence:
    """Build the chip sequence for (H, rule); pure, so both ends agree.

    The selected columns are combined into one bit column of length r,
    extended or truncated to pg bits, then mapped 0 -> +1, 1 -> -1. In xor
    mode a combination whose full-length XOR is the zero vector is rejected:
    it carries no key material.
    """
    bad = [c for c in rule.columns if c >= h.m]
    if bad:
        raise ValueError(f"column index {bad[0]} out of range for {h.label}")
    bits = np.zeros(h.r, dtype=np.uint8)
    for c in rule.columns:
        col = np.zeros(h.r, dtype=np.uint8)
        col[list(h.var_rows[c])] = 1
        bits ^= col
    if rule.mode == "not":
        bits ^= 1
    elif not bits.any():
        raise ValueError("degenerate sequence, choose different columns or not-column mode")
    if rule.pg <= h.r:
        bits = bits[: rule.pg]
    else:
        bits = np.resize(bits, rule.pg)  # cyclic tiling
    chips = 1.0 - 2.0 * bits.astype(np.float64)
    chips.setflags(write=False)
    return SpreadingSequence(chips, rule)


def spread(symbols, seq: SpreadingSequence) -> np.ndarray:
    """Expand each symbol into pg chips: chip[t*pg + u] = symbol[t] * c[u]."""
    x = np.asarray(symbols, dtype=np.float64)
    return np.multiply.outer(x, seq.chips).ravel()


def despread(chips, seq: SpreadingSequence) -> np.ndarray:
    """Correlate chips against the sequence and average each pg-group.

    Written so that despread(spread(x)) == x holds exactly for any real x:
    the first chip product anchors each group and only the (exactly zero on
    a clean round trip) deviations from it are averaged.
    """
    x = np.asarray(chips, dtype=np.float64)
    gp = seq.pg
    if x.ndim != 1 or x.size % gp:
        raise ValueError(f"chip vector length {x.size} is not a multiple of pg={gp}")
    prods = x.reshape(-1, gp) * seq.chips
    base = prods[:, 0]
    return base + (prods - base[:, None]).sum(axis=1) / gp
