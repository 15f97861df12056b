"""Command-line front end.

Subcommands: construct (PEG graph to alist file), girth, encode, decode
(single-shot file operations), and simulate (Monte Carlo BER/FER sweeps
with CSV and plot-data output).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .code import derive_generator, encode, girth, load_alist, save_alist
from .decoder import decode
from .peg import peg_construct
from .sim import SimConfig, emit_plot_data, run_sweep, write_csv

__all__ = ["main", "build_parser"]


def _parse_peg(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"--peg wants 'm,r,degree' (columns, checks, column degree), got {text!r}")
    m, r, deg = (int(p) for p in parts)
    return m, r, deg


def _parse_snr(text: str) -> tuple[float, ...]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"--snr-db wants 'start:step:stop' or a single value, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError(f"--snr-db step must be positive, got {step:g}")
        if stop < start:
            raise ValueError(f"--snr-db stop {stop:g} is below start {start:g}")
        count = int((stop - start) / step + 1e-9) + 1
        return tuple(start + i * step for i in range(count))
    return (float(text),)


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"{flag} wants a comma-separated integer list, got {text!r}") from None


def _read_lines(path: str) -> list[str]:
    fh = sys.stdin if path == "-" else open(path)
    try:
        return [line.strip() for line in fh if line.strip()]
    finally:
        if fh is not sys.stdin:
            fh.close()


def _read_bits(path: str) -> np.ndarray:
    values = []
    for line in _read_lines(path):
        if line not in ("0", "1"):
            raise ValueError(f"expected one bit (0 or 1) per line, got {line!r}")
        values.append(int(line))
    return np.array(values, dtype=np.uint8)


def _write_lines(path: str, lines) -> None:
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldpc-dsss",
        description="LDPC-coded direct-sequence spread-spectrum link simulator",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="grow a parity-check matrix and save it as alist")
    p.add_argument("--peg", required=True, metavar="m,r,degree",
                   help="columns, checks, and per-column degree for the edge-growth build")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="alist output path")

    p = sub.add_parser("girth", help="shortest Tanner-graph cycle of an alist matrix")
    p.add_argument("--matrix", required=True, help="alist input path")

    p = sub.add_parser("encode", help="encode one information word from a bit file")
    p.add_argument("--matrix", required=True, help="alist input path")
    p.add_argument("--in", dest="infile", default="-", help="info bits, one per line (default stdin)")
    p.add_argument("--out", default="-", help="codeword bits, one per line (default stdout)")

    p = sub.add_parser("decode", help="decode one word of channel LLRs from a file")
    p.add_argument("--matrix", required=True, help="alist input path")
    p.add_argument("--in", dest="infile", default="-", help="LLRs, one float per line (default stdin)")
    p.add_argument("--out", default="-", help="decoded bits, one per line (default stdout)")
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--form", choices=("tanh", "signmag"), default="tanh")

    p = sub.add_parser("simulate", help="Monte Carlo BER/FER sweep over SNR and processing gain")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="alist input path")
    src.add_argument("--peg", metavar="m,r,degree", help="construct the code in place")
    src.add_argument("--uncoded", action="store_true", help="raw BPSK baseline, no code")
    p.add_argument("--block-len", type=int, default=1024, help="frame size in uncoded mode")
    p.add_argument("--pg", default="1", metavar="N[,N...]", help="processing gains to sweep")
    p.add_argument("--spread-mode", choices=("xor", "not"), default="xor")
    p.add_argument("--spread-cols", default="1,2", metavar="LIST",
                   help="1-based H columns defining the chip sequence")
    p.add_argument("--snr-db", metavar="a:b:c", help="SNR sweep start:step:stop, or one value")
    p.add_argument("--snr-ref", choices=("chip", "ebn0"), default="chip",
                   help="chip: per-chip Es/N0 (default); ebn0: per-information-bit")
    p.add_argument("--noiseless", action="store_true", help="exact channel, no noise")
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--form", choices=("tanh", "signmag"), default="tanh")
    p.add_argument("--runs", type=int, default=50, help="frames per stopping-rule batch (and minimum)")
    p.add_argument("--min-errors", type=int, default=500,
                   help="stop a point once this many bit errors are pooled (0: exactly one batch)")
    p.add_argument("--max-frames", type=int, default=10000, help="hard frame cap per point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all-zero", action="store_true", help="send all-zero data instead of random")
    p.add_argument("--workers", type=int, default=1, help="parallel frame workers")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--plot-data", help="columnar BER-vs-SNR series output path")
    return parser


def _cmd_construct(args) -> int:
    m, r, deg = _parse_peg(args.peg)
    h = peg_construct(m, r, deg, seed=args.seed)
    save_alist(h, args.out)
    print(f"{h.label}: {h.n_edges} edges -> {args.out}")
    return 0


def _cmd_girth(args) -> int:
    g = girth(load_alist(args.matrix))
    print("acyclic" if g is None else g)
    return 0


def _cmd_encode(args) -> int:
    h = load_alist(args.matrix)
    gen = derive_generator(h)
    d = _read_bits(args.infile)
    c = encode(d, gen)
    _write_lines(args.out, (str(b) for b in c))
    return 0


def _cmd_decode(args) -> int:
    h = load_alist(args.matrix)
    llrs = np.array([float(v) for v in _read_lines(args.infile)])
    result = decode(llrs, h, max_iter=args.max_iter, form=args.form)
    _write_lines(args.out, (str(b) for b in result.bits))
    status = "converged" if result.converged else "not converged"
    print(f"{status} after {result.iterations} iterations", file=sys.stderr)
    return 0


def _cmd_simulate(args) -> int:
    if args.snr_db is None and not args.noiseless:
        raise ValueError("either --snr-db or --noiseless is required")
    h = gen = None
    if args.matrix:
        h = load_alist(args.matrix)
        h_source = args.matrix
    elif args.peg:
        m, r, deg = _parse_peg(args.peg)
        h = peg_construct(m, r, deg, seed=args.seed)
        h_source = f"peg:{m},{r},{deg}"
    else:
        h_source = "uncoded"
    if not args.uncoded:
        gen = derive_generator(h)

    cols = _parse_int_list(args.spread_cols, "--spread-cols")
    if any(c < 1 for c in cols):
        raise ValueError(f"--spread-cols indices are 1-based, got {args.spread_cols!r}")
    config = SimConfig(
        h=h,
        g=gen,
        h_source=h_source,
        uncoded=args.uncoded,
        block_len=args.block_len,
        spread_mode=args.spread_mode,
        spread_cols=tuple(c - 1 for c in cols),
        pgs=_parse_int_list(args.pg, "--pg"),
        snr_points=() if args.snr_db is None else _parse_snr(args.snr_db),
        snr_spec=args.snr_db or "",
        snr_ref=args.snr_ref,
        noiseless=args.noiseless,
        max_iter=args.max_iter,
        form=args.form,
        runs=args.runs,
        min_errors=args.min_errors,
        max_frames=args.max_frames,
        seed=args.seed,
        all_zero=args.all_zero,
        out=args.out,
    )
    result = run_sweep(config, workers=args.workers)
    for p in result.points:
        snr = "inf" if p.snr_db is None else f"{p.snr_db:g}"
        print(
            f"pg={p.pg} snr_db={snr}: ber={p.ber:.6g} fer={p.fer:.6g} "
            f"frames={p.frames} bit_errors={p.bit_errors} avg_iters={p.avg_iters:.3g}"
        )
    if args.out:
        write_csv(result, args.out)
    if args.plot_data:
        emit_plot_data(result, args.plot_data)
    return 0


_HANDLERS = {
    "construct": _cmd_construct,
    "girth": _cmd_girth,
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "simulate": _cmd_simulate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:  # AlistError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
