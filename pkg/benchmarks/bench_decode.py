"""Decode throughput: compiled kernel vs the numpy fallback.

Runs the same noisy frames through both backends, checks they agree
bit-for-bit, and reports frames per second.

    python3 benchmarks/bench_decode.py --frames 400 --snr-db 1.0
"""

import argparse
import time

import numpy as np

import ldpc_dsss as ld


def make_frames(h, g, n_frames, snr_db, seed):
    frames = []
    for i in range(n_frames):
        rng = np.random.default_rng((seed, i))
        d = rng.integers(0, 2, size=g.k, dtype=np.uint8)
        x = ld.bpsk_modulate(ld.encode(d, g))
        params = ld.ChannelParams(snr_db, seed, (i, 1))
        y = ld.awgn(x, params)
        frames.append(ld.symbol_llr(y, params.n0))
    return frames


def run(backend, h, frames, max_iter):
    results = []
    t0 = time.perf_counter()
    for llr in frames:
        results.append(ld.decode(llr, h, max_iter=max_iter, backend=backend))
    return time.perf_counter() - t0, results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--frames", type=int, default=400)
    ap.add_argument("--snr-db", type=float, default=1.0, help="symbol SNR, mid-waterfall by default")
    ap.add_argument("--max-iter", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    h = ld.peg_construct(256, 128, 3, seed=1)
    g = ld.derive_generator(h)
    frames = make_frames(h, g, args.frames, args.snr_db, args.seed)
    print(f"{h.label}, {args.frames} frames at {args.snr_db:g} dB, max {args.max_iter} iterations")
    print(f"available backends: {', '.join(ld.available_backends())}")

    timings = {}
    outputs = {}
    for backend in ld.available_backends():
        run(backend, h, frames[: min(20, len(frames))], args.max_iter)  # warm-up
        elapsed, results = run(backend, h, frames, args.max_iter)
        timings[backend] = elapsed
        outputs[backend] = results
        iters = sum(r.iterations for r in results)
        print(
            f"  {backend:9s} {args.frames / elapsed:9.1f} frames/s "
            f"({elapsed:.3f}s total, {iters} decoder iterations)"
        )

    if len(outputs) == 2:
        pairs = zip(outputs["numpy"], outputs["compiled"])
        agree = all(
            np.array_equal(a.bits, b.bits) and a.iterations == b.iterations for a, b in pairs
        )
        print(f"  backends agree on every frame: {agree}")
        print(f"  speedup: {timings['numpy'] / timings['compiled']:.1f}x")


if __name__ == "__main__":
    main()
