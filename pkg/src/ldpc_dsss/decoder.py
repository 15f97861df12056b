"""Sum-product decoding of LDPC codes from channel log-likelihood ratios.

Two check-node update forms are provided: the tanh product and the
sign-magnitude split (sign product times a log-domain magnitude sum). Both
are exposed as scalar operations here and as array kernels under
``_kernels``; :func:`decode` dispatches to the fastest installed kernel.

Conventions, applied uniformly:

- An LLR is log[p(bit=0)/p(bit=1)]: positive means bit 0.
- Channel LLRs and all messages are clamped to ±38, past which tanh
  saturates to exactly +/-1 in double precision and atanh would blow up.
- atanh arguments are clipped to magnitude 1 - 1e-15.
- A total LLR of exactly zero decides bit 0.
- Flooding schedule; the syndrome is tested on the hard decision of the raw
  channel LLRs before the first iteration (a clean word costs 0 iterations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels import _spa_np
from .code import ParityCheckMatrix, syndrome

LLR_CLAMP = 38.0
ATANH_EPS = _kernels.ATANH_EPS

_FORM_CODES = {"tanh": _kernels.FORM_TANH, "signmag": _kernels.FORM_SIGNMAG}

__all__ = [
    "LLR_CLAMP",
    "ATANH_EPS",
    "DecodeResult",
    "DecoderWorkspace",
    "llr_to_prob",
    "prob_ext",
    "check_update_tanh",
    "check_update_signmag",
    "init_channel_llr",
    "variable_update",
    "total_llr",
    "hard_decision",
    "decode",
]


def llr_to_prob(l: float) -> tuple[float, float]:
    """Split an LLR into (p0, p1) with p0 + p1 = 1."""
    if l >= 0:
        e = math.exp(-l)
        return 1.0 / (1.0 + e), e / (1.0 + e)
    e = math.exp(l)
    return e / (1.0 + e), 1.0 / (1.0 + e)


def prob_ext(p_inputs) -> float:
    """Probability that an odd number of the given bits is 1.

    Excluding the target edge from the inputs is the caller's job.
    """
    prod = 1.0
    for p in p_inputs:
        prod *= 1.0 - 2.0 * p
    return 0.5 - 0.5 * prod


def _clamped(x: float, bound: float) -> float:
    return bound if x > bound else (-bound if x < -bound else x)


def check_update_tanh(incoming, clamp: float = LLR_CLAMP) -> float:
    """Check-to-variable message from the other edges' messages."""
    prod = 1.0
    for l in incoming:
        prod *= math.tanh(0.5 * l)
    prod = _clamped(prod, 1.0 - ATANH_EPS)
    return _clamped(2.0 * math.atanh(prod), clamp)


def check_update_signmag(incoming, clamp: float = LLR_CLAMP) -> float:
    """Same contract as check_update_tanh, via sign product and log-magnitude sum."""
    sign = 1.0
    logsum = 0.0
    for l in incoming:
        if l < 0:
            sign = -sign
        t = math.tanh(0.5 * abs(l))
        logsum = -math.inf if t == 0.0 else logsum + math.log(t)
    mag = min(math.exp(logsum), 1.0 - ATANH_EPS)
    return _clamped(sign * 2.0 * math.atanh(mag), clamp)


def init_channel_llr(y: float, n0: float) -> float:
    """LLR of one received BPSK sample under AWGN with spectral density n0."""
    if n0 <= 0:
        raise ValueError(f"noise spectral density must be positive, got {n0}")
    return -4.0 * y / n0


def variable_update(e_incoming, l_i: float, clamp: float = LLR_CLAMP) -> float:
    """Variable-to-check message: channel LLR plus the other checks' messages."""
    return _clamped(l_i + sum(e_incoming), clamp)


def total_llr(e_all, l_i: float) -> float:
    return l_i + sum(e_all)


def hard_decision(l_total: float) -> int:
    return 1 if l_total < 0 else 0


@dataclass(frozen=True, eq=False)
class DecodeResult:
    """Outcome of one decode: bits, convergence, iteration count, total LLRs."""

    bits: np.ndarray
    converged: bool  # true iff the returned bits have zero syndrome
    iterations: int
    totals: np.ndarray


class DecoderWorkspace:
    """Explicit message-passing state for one decode, stepped pass by pass.

    Holds one slot per edge of H for each message direction, plus the channel
    and total LLRs. :func:`decode` runs the same schedule through a flat
    kernel instead; this object exists for decodes that need the
    intermediate messages (tests, diagnostics, schedule experiments).
    """

    def __init__(
        self,
        h: ParityCheckMatrix,
        max_iterations: int = 100,
        form: str = "tanh",
        clamp: float = LLR_CLAMP,
    ):
        if form not in _FORM_CODES:
            raise ValueError(f"unknown check-update form {form!r}; expected 'tanh' or 'signmag'")
        self.h = h
        self.max_iterations = int(max_iterations)
        self.form = form
        self.clamp = float(clamp)
        self._rect, self._mask = _spa_np.build_plan(h.row_ptr, h.edge_col)
        self.channel_llrs = np.zeros(h.m)
        self.v_msgs = np.zeros(h.n_edges)  # variable-to-check, one per edge
        self.e_msgs = np.zeros(h.n_edges)  # check-to-variable, one per edge
        self.totals = np.zeros(h.m)
        self.iteration = 0

    def init(self, channel_llr: np.ndarray) -> None:
        """Load clamped channel LLRs and seed every edge message from them."""
        l = np.asarray(channel_llr, dtype=np.float64)
        if l.shape != (self.h.m,):
            raise ValueError(f"expected {self.h.m} channel LLRs, got shape {l.shape}")
        self.channel_llrs = np.clip(l, -self.clamp, self.clamp)
        self.v_msgs = self.channel_llrs[self.h.edge_col]
        self.e_msgs = np.zeros(self.h.n_edges)
        self.totals = self.channel_llrs.copy()
        self.iteration = 0

    def check_pass(self) -> None:
        self.e_msgs = _spa_np.check_pass(
            self.v_msgs, self._rect, self._mask, _FORM_CODES[self.form], self.clamp
        )

    def update_totals(self) -> None:
        self.totals = self.channel_llrs + np.bincount(
            self.h.edge_col, weights=self.e_msgs, minlength=self.h.m
        )

    def variable_pass(self) -> None:
        self.v_msgs = np.clip(
            self.totals[self.h.edge_col] - self.e_msgs, -self.clamp, self.clamp
        )

    def decisions(self) -> np.ndarray:
        return (self.totals < 0).astype(np.uint8)

    def syndrome_ok(self) -> bool:
        return not syndrome(self.decisions(), self.h).any()

    def step(self) -> bool:
        """One full iteration (check pass then totals); returns syndrome test."""
        self.check_pass()
        self.update_totals()
        self.iteration += 1
        return self.syndrome_ok()

    def run(self, channel_llr: np.ndarray, stop_on_convergence: bool = True) -> DecodeResult:
        """Full decode with this workspace's schedule; mirrors :func:`decode`."""
        self.init(channel_llr)
        converged = self.syndrome_ok()
        if not (converged and stop_on_convergence):
            for _ in range(self.max_iterations):
                converged = self.step()
                if converged and stop_on_convergence:
                    break
                if self.iteration < self.max_iterations:
                    self.variable_pass()
        return DecodeResult(self.decisions(), converged, self.iteration, self.totals.copy())


def decode(
    channel_llr,
    h: ParityCheckMatrix,
    max_iter: int = 100,
    form: str = "tanh",
    clamp: float = LLR_CLAMP,
    stop_on_convergence: bool = True,
    backend: str | None = None,
) -> DecodeResult:
    """Sum-product decode of one word of channel LLRs against H.

    Runs flooding iterations until the hard decision has zero syndrome or
    ``max_iter`` is reached. ``form`` selects the check-node update ("tanh"
    or "signmag"). ``stop_on_convergence=False`` forces all ``max_iter``
    iterations regardless of the syndrome, which keeps message trajectories
    comparable across runs. ``backend`` picks the kernel ("compiled",
    "numpy", or None for the best available).
    """
    l = np.ascontiguousarray(channel_llr, dtype=np.float64)
    if l.shape != (h.m,):
        raise ValueError(f"expected {h.m} channel LLRs for {h.label}, got shape {l.shape}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    if form not in _FORM_CODES:
        raise ValueError(f"unknown check-update form {form!r}; expected 'tanh' or 'signmag'")
    loop = _kernels.get_decode_loop(backend)
    bits, converged, iterations, totals = loop(
        h.row_ptr, h.edge_col, l, int(max_iter), _FORM_CODES[form], float(clamp),
        stop_on_convergence,
    )
    return DecodeResult(np.asarray(bits, dtype=np.uint8), bool(converged), int(iterations), totals)
