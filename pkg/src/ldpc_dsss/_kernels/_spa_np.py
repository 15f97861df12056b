"""Vectorized numpy implementation of the sum-product decoding loop.

Per-row leave-one-out quantities are computed on a (checks x max_degree)
rectangle with neutral padding, using exclusive prefix/suffix scans, so no
message is ever divided out (which would fail at saturated or zero values).
"""

from __future__ import annotations

import numpy as np

FORM_TANH = 0
FORM_SIGNMAG = 1

ATANH_EPS = 1e-15

__all__ = ["FORM_TANH", "FORM_SIGNMAG", "ATANH_EPS", "build_plan", "check_pass", "decode_loop"]


def build_plan(row_ptr: np.ndarray, edge_col: np.ndarray):
    """Rectangle of edge ids per check row plus its validity mask."""
    deg = np.diff(row_ptr)
    r = deg.size
    max_deg = int(deg.max()) if r else 0
    mask = np.arange(max_deg)[None, :] < deg[:, None]
    rect = np.zeros((r, max_deg), dtype=np.int64)
    rect[mask] = np.arange(edge_col.size)
    return rect, mask


def _excl_prefix_suffix_prod(a: np.ndarray):
    n = a.shape[1]
    left = np.ones((a.shape[0], n + 1))
    left[:, 1:] = np.cumprod(a, axis=1)
    right = np.ones((a.shape[0], n + 1))
    right[:, :-1] = np.cumprod(a[:, ::-1], axis=1)[:, ::-1]
    return left[:, :-1], right[:, 1:]


def _excl_prefix_suffix_sum(a: np.ndarray):
    n = a.shape[1]
    left = np.zeros((a.shape[0], n + 1))
    left[:, 1:] = np.cumsum(a, axis=1)
    right = np.zeros((a.shape[0], n + 1))
    right[:, :-1] = np.cumsum(a[:, ::-1], axis=1)[:, ::-1]
    return left[:, :-1], right[:, 1:]


def check_pass(lq: np.ndarray, rect: np.ndarray, mask: np.ndarray, form: int, clamp: float) -> np.ndarray:
    """Check-to-variable messages for every edge, from variable-to-check ones."""
    if form == FORM_TANH:
        t = np.where(mask, np.tanh(0.5 * lq[rect]), 1.0)
        left, right = _excl_prefix_suffix_prod(t)
        x = np.clip(left * right, -1.0 + ATANH_EPS, 1.0 - ATANH_EPS)
        e_rect = 2.0 * np.arctanh(x)
    elif form == FORM_SIGNMAG:
        lq_rect = lq[rect]
        with np.errstate(divide="ignore"):
            logt = np.log(np.tanh(0.5 * np.abs(lq_rect)))  # -inf at erasures
        logt = np.where(mask, logt, 0.0)
        sign = np.where(mask & (lq_rect < 0), -1.0, 1.0)
        ls, rs = _excl_prefix_suffix_sum(logt)
        sp, ss = _excl_prefix_suffix_prod(sign)
        mag = np.minimum(np.exp(ls + rs), 1.0 - ATANH_EPS)
        e_rect = (sp * ss) * 2.0 * np.arctanh(mag)
    else:
        raise ValueError(f"unknown check-update form code {form}")
    return np.clip(e_rect, -clamp, clamp)[mask]


def decode_loop(
    row_ptr: np.ndarray,
    edge_col: np.ndarray,
    channel_llr: np.ndarray,
    max_iter: int,
    form: int,
    clamp: float,
    stop_on_convergence: bool = True,
):
    """Flooding sum-product iterations until zero syndrome or ``max_iter``.

    Returns (hard bits, converged, iterations used, total LLRs). Iteration 0
    is the syndrome test on the hard decision of the raw channel LLRs.
    """
    m = channel_llr.size
    rect, mask = build_plan(row_ptr, edge_col)
    lc = np.clip(np.asarray(channel_llr, dtype=np.float64), -clamp, clamp)

    def syndrome_ok(bits):
        rows = np.where(mask, bits[edge_col][rect], 0)
        return not np.bitwise_xor.reduce(rows, axis=1).any()

    totals = lc.copy()
    bits = (totals < 0).astype(np.uint8)
    converged = syndrome_ok(bits)
    if converged and stop_on_convergence:
        return bits, True, 0, totals

    lq = lc[edge_col]
    iterations = 0
    for it in range(1, max_iter + 1):
        e_msg = check_pass(lq, rect, mask, form, clamp)
        totals = lc + np.bincount(edge_col, weights=e_msg, minlength=m)
        bits = (totals < 0).astype(np.uint8)
        converged = syndrome_ok(bits)
        iterations = it
        if converged and stop_on_convergence:
            break
        if it < max_iter:
            lq = np.clip(totals[edge_col] - e_msg, -clamp, clamp)
    return bits, converged, iterations, totals
