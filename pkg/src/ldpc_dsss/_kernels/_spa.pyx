# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""C implementation of the sum-product decoding loop.

Mirrors the numpy fallback exactly: flooding schedule, leave-one-out via
exclusive prefix/suffix scans per check row, clamped messages, syndrome test
before the first iteration and after every check/variable pass.
"""

from libc.math cimport atanh, exp, fabs, log, tanh

import numpy as np

cdef int _FORM_TANH_C = 0

FORM_TANH = 0
FORM_SIGNMAG = 1

cdef double ATANH_EPS = 1e-15


cdef inline double _clip(double x, double bound) noexcept nogil:
    if x > bound:
        return bound
    if x < -bound:
        return -bound
    return x


def decode_loop(row_ptr_obj, edge_col_obj, channel_llr_obj,
                int max_iter, int form, double clamp,
                bint stop_on_convergence=True):
    """Run sum-product iterations; return (bits, converged, iterations, totals)."""
    cdef int[::1] row_ptr = np.ascontiguousarray(row_ptr_obj, dtype=np.int32)
    cdef int[::1] edge_col = np.ascontiguousarray(edge_col_obj, dtype=np.int32)
    cdef double[::1] lc_in = np.ascontiguousarray(channel_llr_obj, dtype=np.float64)

    cdef Py_ssize_t r = row_ptr.shape[0] - 1
    cdef Py_ssize_t m = lc_in.shape[0]
    cdef Py_ssize_t n_edges = edge_col.shape[0]
    cdef Py_ssize_t j, u, a, d, max_deg = 0
    for j in range(r):
        d = row_ptr[j + 1] - row_ptr[j]
        if d > max_deg:
            max_deg = d

    lc_arr = np.empty(m, dtype=np.float64)
    totals_arr = np.empty(m, dtype=np.float64)
    bits_arr = np.empty(m, dtype=np.uint8)
    cdef double[::1] lc = lc_arr
    cdef double[::1] totals = totals_arr
    cdef unsigned char[::1] bits = bits_arr
    cdef double[::1] lq = np.empty(n_edges, dtype=np.float64)
    cdef double[::1] emsg = np.zeros(n_edges, dtype=np.float64)
    cdef double[::1] work = np.empty(max_deg, dtype=np.float64)
    cdef double[::1] sgn = np.empty(max_deg, dtype=np.float64)
    cdef double[::1] pre = np.empty(max_deg + 1, dtype=np.float64)
    cdef double[::1] suf = np.empty(max_deg + 1, dtype=np.float64)
    cdef double[::1] pre_s = np.empty(max_deg + 1, dtype=np.float64)
    cdef double[::1] suf_s = np.empty(max_deg + 1, dtype=np.float64)

    cdef Py_ssize_t i, it, iterations = 0
    cdef double x, e
    cdef int parity
    cdef bint converged

    with nogil:
        for i in range(m):
            lc[i] = _clip(lc_in[i], clamp)
            totals[i] = lc[i]
            bits[i] = 1 if totals[i] < 0.0 else 0

        converged = True
        for j in range(r):
            parity = 0
            for u in range(row_ptr[j], row_ptr[j + 1]):
                parity ^= bits[edge_col[u]]
            if parity:
                converged = False
                break

        if not (converged and stop_on_convergence):
            for i in range(n_edges):
                lq[i] = lc[edge_col[i]]

            for it in range(1, max_iter + 1):
                iterations = it
                for j in range(r):
                    a = row_ptr[j]
                    d = row_ptr[j + 1] - a
                    if form == _FORM_TANH_C:
                        for u in range(d):
                            work[u] = tanh(0.5 * lq[a + u])
                        pre[0] = 1.0
                        for u in range(d):
                            pre[u + 1] = pre[u] * work[u]
                        suf[d] = 1.0
                        for u in range(d - 1, -1, -1):
                            suf[u] = suf[u + 1] * work[u]
                        for u in range(d):
                            x = pre[u] * suf[u + 1]
                            x = _clip(x, 1.0 - ATANH_EPS)
                            emsg[a + u] = _clip(2.0 * atanh(x), clamp)
                    else:
                        for u in range(d):
                            x = lq[a + u]
                            sgn[u] = -1.0 if x < 0.0 else 1.0
                            work[u] = log(tanh(0.5 * fabs(x)))  # -inf at zero
                        pre[0] = 0.0
                        pre_s[0] = 1.0
                        for u in range(d):
                            pre[u + 1] = pre[u] + work[u]
                            pre_s[u + 1] = pre_s[u] * sgn[u]
                        suf[d] = 0.0
                        suf_s[d] = 1.0
                        for u in range(d - 1, -1, -1):
                            suf[u] = suf[u + 1] + work[u]
                            suf_s[u] = suf_s[u + 1] * sgn[u]
                        for u in range(d):
                            x = exp(pre[u] + suf[u + 1])
                            if x > 1.0 - ATANH_EPS:
                                x = 1.0 - ATANH_EPS
                            e = pre_s[u] * suf_s[u + 1] * 2.0 * atanh(x)
                            emsg[a + u] = _clip(e, clamp)

                for i in range(m):
                    totals[i] = lc[i]
                for i in range(n_edges):
                    totals[edge_col[i]] += emsg[i]
                for i in range(m):
                    bits[i] = 1 if totals[i] < 0.0 else 0

                converged = True
                for j in range(r):
                    parity = 0
                    for u in range(row_ptr[j], row_ptr[j + 1]):
                        parity ^= bits[edge_col[u]]
                    if parity:
                        converged = False
                        break

                if converged and stop_on_convergence:
                    break
                if it < max_iter:
                    for i in range(n_edges):
                        lq[i] = _clip(totals[edge_col[i]] - emsg[i], clamp)

    return bits_arr, bool(converged), int(iterations), totals_arr
