"""LDPC-coded direct-sequence spread-spectrum link simulator and codec.

The parity-check matrix plays a double role here: it defines the error
correcting code and seeds the spreading sequence, so transmitter and
receiver derive the chip pattern from the shared code instead of
distributing a separate key.

Layout: :mod:`code` (GF(2) codebook and alist I/O), :mod:`peg`
(progressive edge-growth construction), :mod:`decoder` (sum-product
decoding over compiled or numpy kernels), :mod:`spread` (chip-level
spreading), :mod:`channel` (BPSK + AWGN), :mod:`sim` (Monte Carlo sweeps),
:mod:`cli` (command-line front end).
"""

from ._kernels import DEFAULT_BACKEND, HAVE_COMPILED, available_backends
from .channel import (
    ChannelParams,
    awgn,
    ber_bpsk_uncoded_theory,
    bpsk_modulate,
    chip_n0,
    symbol_llr,
)
from .code import (
    AlistError,
    GeneratorMatrix,
    ParityCheckMatrix,
    derive_generator,
    encode,
    girth,
    load_alist,
    save_alist,
    syndrome,
)
from .decoder import (
    LLR_CLAMP,
    DecodeResult,
    DecoderWorkspace,
    check_update_signmag,
    check_update_tanh,
    decode,
    hard_decision,
    init_channel_llr,
    llr_to_prob,
    prob_ext,
    total_llr,
    variable_update,
)
from .peg import peg_construct
from .sim import (
    CSV_COLUMNS,
    FrameRecord,
    PointRecord,
    SimConfig,
    SweepResult,
    emit_plot_data,
    run_frame,
    run_sweep,
    write_csv,
)
from .spread import SpreadingRule, SpreadingSequence, derive_sequence, despread, spread

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DEFAULT_BACKEND",
    "HAVE_COMPILED",
    "available_backends",
    "AlistError",
    "ParityCheckMatrix",
    "GeneratorMatrix",
    "load_alist",
    "save_alist",
    "derive_generator",
    "encode",
    "syndrome",
    "girth",
    "peg_construct",
    "LLR_CLAMP",
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
    "SpreadingRule",
    "SpreadingSequence",
    "derive_sequence",
    "spread",
    "despread",
    "ChannelParams",
    "chip_n0",
    "bpsk_modulate",
    "awgn",
    "symbol_llr",
    "ber_bpsk_uncoded_theory",
    "CSV_COLUMNS",
    "SimConfig",
    "FrameRecord",
    "PointRecord",
    "SweepResult",
    "run_frame",
    "run_sweep",
    "write_csv",
    "emit_plot_data",
]
