# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled successive cancellation list decoding kernels.

Same contract and tree layout as ``pyfallback.py``; see that module for the
layout description. Hot loops run without the GIL.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, isinf, log1p
from libc.string cimport memcpy

BACKEND = "compiled"

DEF ROLE_FROZEN = 0
DEF ROLE_ACTIVE = 1
DEF ROLE_KNOWN = 2

cdef double INF = float("inf")


cdef inline double _boxplus(double a, double b) nogil:
    # log-domain form of 2*atanh(tanh(a/2)*tanh(b/2)); well conditioned for
    # large arguments where the tanh product rounds to within an ulp of 1
    cdef double u, mx
    if isinf(a):
        return b if a > 0 else -b
    if isinf(b):
        return a if b > 0 else -a
    if a == 0.0 or b == 0.0:
        return 0.0
    u = a + b
    mx = a if a > b else b
    return (u if u > 0 else 0.0) + log1p(exp(-fabs(u))) - mx - log1p(exp(-fabs(a - b)))


cdef inline double _add_llr(double a, double b) nogil:
    if isinf(a) and isinf(b) and ((a > 0) != (b > 0)):
        return 0.0
    return a + b


cdef inline double _softplus(double x) nogil:
    if x == INF:
        return INF
    if x == -INF:
        return 0.0
    if x > 0:
        return x + log1p(exp(-x))
    return log1p(exp(x))


cdef inline double _penalty(double lam, int decision) nogil:
    return _softplus(lam if decision else -lam)


cdef inline void _refresh_row(double* lrow, unsigned char* c0, long* off,
                              int phi, int n, int nlen) nogil:
    cdef int first, d, half, j
    cdef long src, dst
    cdef double a, b
    if phi == 0:
        first = 1
    else:
        first = n
        j = phi
        while (j & 1) == 0:
            first -= 1
            j >>= 1
    for d in range(first, n + 1):
        half = nlen >> d
        src = off[d - 1]
        dst = off[d]
        if (phi >> (n - d)) & 1:
            for j in range(half):
                a = -lrow[src + j] if c0[dst + j] else lrow[src + j]
                lrow[dst + j] = _add_llr(a, lrow[src + half + j])
        else:
            for j in range(half):
                lrow[dst + j] = _boxplus(lrow[src + j], lrow[src + half + j])


cdef inline void _commit_row(unsigned char* c0, unsigned char* c1, long* off,
                             int phi, int n, int nlen, unsigned char beta) nogil:
    cdef int d = n
    cdef int pos = phi
    cdef int half, j
    cdef long src, dst
    cdef unsigned char* slots[2]
    slots[0] = c0
    slots[1] = c1
    slots[pos & 1][off[n]] = beta
    while d > 0 and (pos & 1):
        half = nlen >> d
        src = off[d]
        d -= 1
        pos >>= 1
        dst = off[d]
        for j in range(half):
            slots[pos & 1][dst + j] = c0[src + j] ^ c1[src + j]
            slots[pos & 1][dst + half + j] = c1[src + j]


def decode_block(cnp.ndarray[cnp.float64_t, ndim=2] chan_llrs,
                 cnp.ndarray[cnp.int8_t, ndim=1] roles,
                 cnp.ndarray[cnp.uint8_t, ndim=2] known_vals,
                 cnp.ndarray[cnp.float64_t, ndim=1] seed_metrics,
                 int list_cap):
    cdef int p0 = chan_llrs.shape[0]
    cdef int nlen = chan_llrs.shape[1]
    cdef int n = 0
    while (1 << n) < nlen:
        n += 1
    if (1 << n) != nlen:
        raise ValueError("block length must be a power of two")
    if p0 > list_cap:
        raise ValueError("more seed paths than the list cap")

    cdef long tree = 2 * nlen - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off_arr = np.empty(n + 1, dtype=np.int64)
    cdef int d
    for d in range(n + 1):
        off_arr[d] = 2 * nlen - ((2 * nlen) >> d)
    cdef long* off = <long*> off_arr.data

    lmem_a = np.zeros((list_cap, tree), dtype=np.float64)
    lmem_b = np.zeros((list_cap, tree), dtype=np.float64)
    cmem_a = np.zeros((list_cap, 2 * tree), dtype=np.uint8)
    cmem_b = np.zeros((list_cap, 2 * tree), dtype=np.uint8)
    dec_a = np.zeros((list_cap, nlen), dtype=np.uint8)
    dec_b = np.zeros((list_cap, nlen), dtype=np.uint8)
    val_a = np.zeros((list_cap, nlen), dtype=np.uint8)
    val_b = np.zeros((list_cap, nlen), dtype=np.uint8)
    par_a = np.zeros(list_cap, dtype=np.int64)
    par_b = np.zeros(list_cap, dtype=np.int64)
    met = np.zeros(list_cap, dtype=np.float64)

    cdef double[:, ::1] la = lmem_a, lb = lmem_b
    cdef unsigned char[:, ::1] ca = cmem_a, cb = cmem_b
    cdef unsigned char[:, ::1] da = dec_a, db = dec_b
    cdef unsigned char[:, ::1] va = val_a, vb = val_b
    cdef long[::1] pa = par_a, pb = par_b
    cdef double[::1] metrics = met
    cdef double[:, ::1] chan = chan_llrs
    cdef signed char[::1] rl = roles.astype(np.int8)
    cdef unsigned char[:, ::1] kv = known_vals

    cdef cnp.ndarray[cnp.float64_t, ndim=1] cand_arr = np.zeros(2 * list_cap, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ord_arr = np.zeros(2 * list_cap, dtype=np.int64)
    cdef double* cand = <double*> cand_arr.data
    cdef long* order = <long*> ord_arr.data
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] beta_arr = np.zeros(list_cap, dtype=np.uint8)
    cdef unsigned char* beta = <unsigned char*> beta_arr.data

    cdef int p, phi, ncand, nsurv, i, j, srcp, role
    cdef long key
    cdef double lam, kval
    cdef int npaths = p0

    with nogil:
        for p in range(p0):
            memcpy(&la[p, 0], &chan[p, 0], nlen * sizeof(double))
            for j in range(nlen):
                va[p, j] = kv[p, j]
            metrics[p] = seed_metrics[p]
            pa[p] = p

    for phi in range(nlen):
        role = rl[phi]
        with nogil:
            for p in range(npaths):
                _refresh_row(&la[p, 0], &ca[p, 0], off, phi, n, nlen)
            if role == ROLE_ACTIVE:
                ncand = 2 * npaths
                for p in range(npaths):
                    lam = la[p, off[n]]
                    cand[2 * p] = _add_llr(metrics[p], _penalty(lam, 0))
                    cand[2 * p + 1] = _add_llr(metrics[p], _penalty(lam, 1))
                # stable insertion sort of candidate indices by metric
                for i in range(ncand):
                    key = i
                    j = i
                    while j > 0 and cand[order[j - 1]] > cand[key]:
                        order[j] = order[j - 1]
                        j -= 1
                    order[j] = key
                nsurv = ncand if ncand < list_cap else list_cap
                for i in range(nsurv):
                    srcp = <int> (order[i] >> 1)
                    beta[i] = <unsigned char> (order[i] & 1)
                    memcpy(&lb[i, 0], &la[srcp, 0], tree * sizeof(double))
                    memcpy(&cb[i, 0], &ca[srcp, 0], 2 * tree)
                    memcpy(&db[i, 0], &da[srcp, 0], nlen)
                    memcpy(&vb[i, 0], &va[srcp, 0], nlen)
                    pb[i] = pa[srcp]
                    db[i, phi] = beta[i]
                for i in range(nsurv):
                    metrics[i] = cand[order[i]]
            else:
                for p in range(npaths):
                    lam = la[p, off[n]]
                    beta[p] = 0 if role == ROLE_FROZEN else va[p, phi]
                    metrics[p] = _add_llr(metrics[p], _penalty(lam, beta[p]))
                    da[p, phi] = beta[p]
        if role == ROLE_ACTIVE:
            la, lb = lb, la
            ca, cb = cb, ca
            da, db = db, da
            va, vb = vb, va
            pa, pb = pb, pa
            npaths = nsurv
        with nogil:
            for p in range(npaths):
                _commit_row(&ca[p, 0], &ca[p, tree], off, phi, n, nlen, beta[p])

    final = np.argsort(np.asarray(metrics)[:npaths], kind="stable")
    decisions = np.asarray(da)[:npaths][final].copy()
    out_metrics = np.asarray(metrics)[:npaths][final].copy()
    parents = np.asarray(pa)[:npaths][final].copy()
    return decisions, out_metrics, parents


def genie_leaf_llrs(cnp.ndarray[cnp.float64_t, ndim=1] chan_llrs,
                    cnp.ndarray[cnp.uint8_t, ndim=1] forced_u):
    cdef int nlen = chan_llrs.shape[0]
    cdef int n = 0
    while (1 << n) < nlen:
        n += 1
    if (1 << n) != nlen:
        raise ValueError("block length must be a power of two")
    cdef long tree = 2 * nlen - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off_arr = np.empty(n + 1, dtype=np.int64)
    cdef int d
    for d in range(n + 1):
        off_arr[d] = 2 * nlen - ((2 * nlen) >> d)
    cdef long* off = <long*> off_arr.data

    lrow_arr = np.zeros(tree, dtype=np.float64)
    crow_arr = np.zeros(2 * tree, dtype=np.uint8)
    out_arr = np.zeros(nlen, dtype=np.float64)
    cdef double[::1] lrow = lrow_arr
    cdef unsigned char[::1] crow = crow_arr
    cdef double[::1] out = out_arr
    cdef double[::1] chan = chan_llrs
    cdef unsigned char[::1] forced = forced_u
    cdef int phi

    with nogil:
        for phi in range(nlen):
            lrow[phi] = chan[phi]
        for phi in range(nlen):
            _refresh_row(&lrow[0], &crow[0], off, phi, n, nlen)
            out[phi] = lrow[off[n]]
            _commit_row(&crow[0], &crow[tree], off, phi, n, nlen, forced[phi])
    return out_arr
