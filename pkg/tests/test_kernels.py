"""Backend parity: the compiled and numpy decoding loops must agree."""

import numpy as np
import pytest

import ldpc_dsss as ld
from ldpc_dsss import _kernels

needs_compiled = pytest.mark.skipif(
    not _kernels.HAVE_COMPILED, reason="compiled kernel not built"
)


def test_default_backend_is_listed():
    assert _kernels.DEFAULT_BACKEND in _kernels.available_backends()
    assert "numpy" in _kernels.available_backends()


def test_unknown_backend_rejected():
    with pytest.raises(ValueError, match="backend"):
        _kernels.get_decode_loop("fortran")


def test_numpy_loop_always_available():
    assert _kernels.get_decode_loop("numpy") is not None


@needs_compiled
def test_compiled_loop_available():
    assert _kernels.get_decode_loop("compiled") is not None


@needs_compiled
@pytest.mark.parametrize("form", ["tanh", "signmag"])
@pytest.mark.parametrize("stop", [True, False])
def test_backends_agree_small(h_ref, form, stop):
    rng = np.random.default_rng(21)
    for _ in range(40):
        llr = rng.normal(0, 2.5, h_ref.m)
        a = ld.decode(llr, h_ref, max_iter=12, form=form,
                      stop_on_convergence=stop, backend="compiled")
        b = ld.decode(llr, h_ref, max_iter=12, form=form,
                      stop_on_convergence=stop, backend="numpy")
        assert np.array_equal(a.bits, b.bits)
        assert a.converged == b.converged
        assert a.iterations == b.iterations
        assert np.allclose(a.totals, b.totals, atol=1e-9)


@needs_compiled
def test_backends_agree_session_code(code_256):
    h, g = code_256
    rng = np.random.default_rng(22)
    for _ in range(10):
        c = ld.encode(rng.integers(0, 2, g.k, dtype=np.uint8), g)
        y = (2.0 * c - 1.0) + rng.normal(0, 0.8, h.m)
        llr = -4.0 * y / (2 * 0.64)
        a = ld.decode(llr, h, backend="compiled")
        b = ld.decode(llr, h, backend="numpy")
        assert np.array_equal(a.bits, b.bits)
        assert (a.converged, a.iterations) == (b.converged, b.iterations)
        assert np.allclose(a.totals, b.totals, atol=1e-9)


@needs_compiled
@pytest.mark.parametrize("form", ["tanh", "signmag"])
def test_backends_agree_on_erasures_and_saturation(h_ref, form):
    cases = [
        np.zeros(h_ref.m),
        np.full(h_ref.m, 38.0),
        np.concatenate([np.zeros(5), np.full(5, -38.0)]),
        np.array([0.0, 1e9, -1e9, 0.3, -0.3, 0.0, 5.0, -5.0, 0.1, -0.1]),
    ]
    for llr in cases:
        a = ld.decode(llr, h_ref, max_iter=10, form=form, backend="compiled")
        b = ld.decode(llr, h_ref, max_iter=10, form=form, backend="numpy")
        assert np.array_equal(a.bits, b.bits)
        assert (a.converged, a.iterations) == (b.converged, b.iterations)
        assert np.allclose(a.totals, b.totals, atol=1e-9)


def test_numpy_loop_handles_irregular_rows():
    # Mixed check degrees exercise the padded-rectangle bookkeeping.
    h = ld.ParityCheckMatrix(3, 7, [[0, 1, 2, 3, 4, 5, 6], [0, 1], [2, 3, 4]])
    rng = np.random.default_rng(23)
    llr = rng.normal(0, 2, h.m)
    res = ld.decode(llr, h, max_iter=10, backend="numpy")
    assert res.bits.shape == (7,)
    assert np.isfinite(res.totals).all()


def test_rectangle_plan_masks_padding():
    from ldpc_dsss._kernels import _spa_np

    h = ld.ParityCheckMatrix(3, 7, [[0, 1, 2, 3, 4, 5, 6], [0, 1], [2, 3, 4]])
    rect, mask = _spa_np.build_plan(h.row_ptr, h.edge_col)
    assert rect.shape == (3, 7) and mask.shape == (3, 7)
    assert mask.sum() == h.n_edges
    assert list(rect[mask]) == list(range(h.n_edges))
