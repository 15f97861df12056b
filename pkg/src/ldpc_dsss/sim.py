"""Monte Carlo link simulator: encode, spread, AWGN, despread, decode.

Every frame draws its data and noise from RNG substreams keyed by
(seed, processing gain, SNR point, frame index), so results are
bit-reproducible for a fixed config no matter how many workers run the
frames or in what order they finish. Stopping decisions happen only at
fixed batch boundaries (batches of ``runs`` frames) for the same reason.

Counts are pooled per sweep point: BER is total errors over total
information bits, never an average of per-run ratios. Errors are counted on
the systematic (information) positions only.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelParams, awgn, bpsk_modulate, chip_n0, symbol_llr
from .code import GeneratorMatrix, ParityCheckMatrix, encode
from .decoder import LLR_CLAMP, decode
from .spread import SpreadingRule, SpreadingSequence, derive_sequence, despread, spread

CSV_COLUMNS = (
    "snr_db",
    "snr_ref",
    "pg",
    "frames",
    "info_bits",
    "bit_errors",
    "frame_errors",
    "ber",
    "fer",
    "avg_iters",
    "seed",
)

__all__ = [
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


@dataclass(frozen=True)
class SimConfig:
    """Everything one sweep needs; immutable and safe to ship to workers.

    ``spread_cols`` is 0-based here (the CLI converts from its 1-based
    flag). ``snr_points=()`` with ``noiseless=True`` runs a single exact
    channel point. ``uncoded=True`` sends ``block_len`` raw bits per frame
    with no code; ``h``/``g`` may then be omitted.
    """

    h: ParityCheckMatrix | None = None
    g: GeneratorMatrix | None = None
    h_source: str = "none"
    uncoded: bool = False
    block_len: int = 1024
    spread_mode: str = "xor"
    spread_cols: tuple[int, ...] = (0, 1)
    pgs: tuple[int, ...] = (1,)
    snr_points: tuple[float, ...] = ()
    snr_spec: str = ""
    snr_ref: str = "chip"
    noiseless: bool = False
    max_iter: int = 100
    form: str = "tanh"
    runs: int = 50  # frames per stopping-rule batch; also the minimum frame count
    min_errors: int = 500
    max_frames: int = 10000
    seed: int = 0
    all_zero: bool = False
    out: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "pgs", tuple(sorted(int(p) for p in set(self.pgs))))
        object.__setattr__(self, "snr_points", tuple(sorted(float(s) for s in self.snr_points)))
        object.__setattr__(self, "spread_cols", tuple(int(c) for c in self.spread_cols))
        if not self.pgs or self.pgs[0] < 1:
            raise ValueError(f"processing gains must be >= 1, got {self.pgs}")
        if not self.noiseless and not self.snr_points:
            raise ValueError("SNR sweep is empty and noiseless mode is off")
        if self.runs < 1:
            raise ValueError(f"runs must be at least 1, got {self.runs}")
        if self.max_frames < self.runs:
            raise ValueError(f"max_frames {self.max_frames} is below the minimum frame count {self.runs}")
        if self.min_errors < 0:
            raise ValueError(f"min_errors must be non-negative, got {self.min_errors}")
        if self.uncoded:
            if self.block_len < 1:
                raise ValueError(f"block_len must be at least 1, got {self.block_len}")
        elif self.h is None or self.g is None:
            raise ValueError("coded simulation needs both H and a generator")
        if not self.snr_spec:
            object.__setattr__(
                self, "snr_spec",
                "noiseless" if self.noiseless else ",".join(f"{s:g}" for s in self.snr_points),
            )

    @property
    def rate(self) -> float:
        return 1.0 if self.uncoded else self.g.rate

    @property
    def info_len(self) -> int:
        return self.block_len if self.uncoded else self.g.k

    def echo_items(self) -> list[tuple[str, str]]:
        """Config as sorted (key, value) strings; identifies a run in CSV comments.

        Output paths and worker counts are deliberately not part of the echo:
        neither affects the simulated numbers.
        """
        cols_1based = ",".join(str(c + 1) for c in self.spread_cols)
        items = {
            "all_zero": str(self.all_zero),
            "block_len": str(self.block_len) if self.uncoded else "n/a",
            "form": self.form,
            "h_source": self.h_source,
            "max_frames": str(self.max_frames),
            "max_iter": str(self.max_iter),
            "min_errors": str(self.min_errors),
            "noiseless": str(self.noiseless),
            "pg": ",".join(str(p) for p in self.pgs),
            "runs": str(self.runs),
            "seed": str(self.seed),
            "snr_db": self.snr_spec,
            "snr_ref": self.snr_ref,
            "spread_cols": cols_1based,
            "spread_mode": self.spread_mode,
            "uncoded": str(self.uncoded),
        }
        return sorted(items.items())


@dataclass(frozen=True)
class FrameRecord:
    info_bits: int
    bit_errors: int
    iterations: int
    converged: bool


@dataclass(frozen=True)
class PointRecord:
    """Pooled counts for one (processing gain, SNR) sweep point."""

    pg: int
    snr_db: float | None  # None in noiseless mode
    frames: int
    info_bits: int
    bit_errors: int
    frame_errors: int
    iter_sum: int
    elapsed_s: float = 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / self.info_bits if self.info_bits else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def avg_iters(self) -> float:
        return self.iter_sum / self.frames if self.frames else 0.0


@dataclass(frozen=True)
class SweepResult:
    config: SimConfig
    points: tuple[PointRecord, ...] = field(default=())


def _snr_key(snr_db: float | None) -> int:
    """Integer substream key for an SNR point (millidecibel resolution)."""
    if snr_db is None:
        return 0
    key = round(snr_db * 1000.0) + (1 << 20)
    if key < 0:
        raise ValueError(f"snr_db {snr_db} is out of the supported range")
    return key


def _sequence_for(config: SimConfig, pg: int) -> SpreadingSequence:
    if config.h is None:
        return SpreadingSequence.flat(pg)
    rule = SpreadingRule(config.spread_mode, config.spread_cols, pg)
    return derive_sequence(config.h, rule)


def run_frame(config: SimConfig, snr_db: float | None, frame_index: int, pg: int | None = None) -> FrameRecord:
    """Simulate one frame at one sweep point and count information-bit errors.

    Deterministic in (config, snr_db, frame_index, pg): the data and noise
    substreams are derived from them alone.
    """
    pg = config.pgs[0] if pg is None else int(pg)
    seq = _sequence_for(config, pg)
    key = (pg, _snr_key(snr_db), int(frame_index))
    data_rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=key + (0,)))

    k = config.info_len
    if config.all_zero:
        d = np.zeros(k, dtype=np.uint8)
    else:
        d = data_rng.integers(0, 2, size=k, dtype=np.uint8)
    coded = d if config.uncoded else encode(d, config.g)

    chips = spread(bpsk_modulate(coded), seq)
    if snr_db is None:
        chip_snr_db = None
    else:
        n0 = chip_n0(snr_db, config.snr_ref, pg, config.rate)
        chip_snr_db = -10.0 * math.log10(n0)
    params = ChannelParams(chip_snr_db, config.seed, key + (1,))
    y = despread(awgn(chips, params), seq)

    if config.uncoded:
        decided = (y > 0).astype(np.uint8)
        iterations, converged = 0, True
    else:
        if params.noiseless:
            llr = -LLR_CLAMP * y
        else:
            llr = symbol_llr(y, params.n0 / pg)
        result = decode(llr, config.h, config.max_iter, config.form)
        decided = result.bits[config.g.systematic_cols]
        iterations, converged = result.iterations, result.converged
    bit_errors = int(np.count_nonzero(decided != d))
    return FrameRecord(k, bit_errors, iterations, converged)


def _run_batch(config: SimConfig, pg: int, snr_db: float | None, start: int, count: int):
    info = errs = ferr = isum = 0
    for f in range(start, start + count):
        rec = run_frame(config, snr_db, f, pg)
        info += rec.info_bits
        errs += rec.bit_errors
        ferr += 1 if rec.bit_errors else 0
        isum += rec.iterations
    return info, errs, ferr, isum


_WORKER_CONFIG: SimConfig | None = None


def _worker_init(config: SimConfig) -> None:
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _worker_batch(args):
    pg, snr_db, start, count = args
    return _run_batch(_WORKER_CONFIG, pg, snr_db, start, count)


def run_sweep(config: SimConfig, workers: int = 1) -> SweepResult:
    """Run the full (pg x SNR) grid until each point hits its stopping rule.

    Per point: frames run in batches of ``runs``; after each complete batch
    the point stops once ``min_errors`` bit errors are pooled or
    ``max_frames`` is reached. Batch boundaries are where the only
    data-dependent decisions happen, so the frame set per point is a pure
    function of the config and the result does not depend on ``workers``.
    """
    executor = None
    points = []
    try:
        if workers > 1:
            executor = ProcessPoolExecutor(
                max_workers=workers, initializer=_worker_init, initargs=(config,)
            )
        snr_list: list[float | None] = [None] if config.noiseless else list(config.snr_points)
        for pg in config.pgs:
            for snr_db in snr_list:
                t0 = time.perf_counter()
                frames = info = errs = ferr = isum = 0
                while frames < config.max_frames:
                    batch = min(config.runs, config.max_frames - frames)
                    if executor is None:
                        parts = [_run_batch(config, pg, snr_db, frames, batch)]
                    else:
                        chunk = -(-batch // workers)
                        jobs = [
                            (pg, snr_db, frames + off, min(chunk, batch - off))
                            for off in range(0, batch, chunk)
                        ]
                        parts = list(executor.map(_worker_batch, jobs))
                    for p_info, p_errs, p_ferr, p_isum in parts:
                        info += p_info
                        errs += p_errs
                        ferr += p_ferr
                        isum += p_isum
                    frames += batch
                    if errs >= config.min_errors:
                        break
                points.append(
                    PointRecord(pg, snr_db, frames, info, errs, ferr, isum,
                                time.perf_counter() - t0)
                )
    finally:
        if executor is not None:
            executor.shutdown()
    return SweepResult(config, tuple(points))


def _fmt_snr(snr_db: float | None) -> str:
    return "inf" if snr_db is None else f"{snr_db:g}"


def write_csv(result: SweepResult, path) -> None:
    """One row per (pg, SNR) point, preceded by the config echo as comments.

    Byte-deterministic for a fixed config: wall time and worker count are
    kept out on purpose.
    """
    config = result.config
    lines = [f"# {k} = {v}" for k, v in config.echo_items()]
    lines.append(",".join(CSV_COLUMNS))
    for p in result.points:
        lines.append(
            ",".join(
                (
                    _fmt_snr(p.snr_db),
                    config.snr_ref,
                    str(p.pg),
                    str(p.frames),
                    str(p.info_bits),
                    str(p.bit_errors),
                    str(p.frame_errors),
                    f"{p.ber:.6g}",
                    f"{p.fer:.6g}",
                    f"{p.avg_iters:.6g}",
                    str(config.seed),
                )
            )
        )
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def emit_plot_data(result: SweepResult, path) -> None:
    """Columnar BER series per processing gain over the shared SNR axis.

    Zero or missing BERs become empty cells so the file feeds a log-scale
    plot directly.
    """
    pgs = sorted({p.pg for p in result.points})
    snrs = sorted({p.snr_db for p in result.points}, key=lambda s: math.inf if s is None else s)
    table = {(p.pg, p.snr_db): p.ber for p in result.points}
    lines = ["snr_db," + ",".join(f"ber_pg{g}" for g in pgs)]
    for s in snrs:
        cells = [_fmt_snr(s)]
        for g in pgs:
            ber = table.get((g, s))
            cells.append(f"{ber:.6g}" if ber else "")
        lines.append(",".join(cells))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
