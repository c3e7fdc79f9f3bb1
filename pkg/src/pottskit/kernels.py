"""Enumeration kernels.

Every exact state sum in the package reduces to one integer histogram: for
each spin state, the bitmask of edges whose endpoints agree.  Weights are
applied afterwards in exact arithmetic, so the kernels only ever count.

Two interchangeable backends produce identical integers:

* ``numba``  compiled loops (default when numba imports);
* ``numpy``  vectorised blocks, selected with ``POTTSKIT_BACKEND=numpy``.

``POTTSKIT_THREADS`` caps the numba thread pool.
"""

import os
import warnings

import numpy as np

MAX_HIST_EDGES = 24
_BLOCK = 1 << 16

warnings.filterwarnings("ignore", message=".*TBB.*")

try:
    import numba
    from numba import njit, prange
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def backend():
    want = os.environ.get("POTTSKIT_BACKEND", "numba").lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"unknown POTTSKIT_BACKEND {want!r}")
    if want == "numba" and not HAVE_NUMBA:
        return "numpy"
    return want


def _threads():
    cap = os.environ.get("POTTSKIT_THREADS")
    if cap and HAVE_NUMBA:
        numba.set_num_threads(max(1, min(int(cap), numba.config.NUMBA_NUM_THREADS)))
    return numba.get_num_threads() if HAVE_NUMBA else 1


# numba ---------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _hist_range(n, spins0, free, us, ws, start, stop, hist):
        # odometer over the free vertices, starting at state index `start`
        spins = spins0.copy()
        nf = free.shape[0]
        idx = start
        for i in range(nf):
            spins[free[i]] = idx % n
            idx //= n
        ne = us.shape[0]
        for s in range(start, stop):
            m = 0
            for j in range(ne):
                if spins[us[j]] == spins[ws[j]]:
                    m |= 1 << j
            hist[m] += 1
            i = 0
            while i < nf:
                x = free[i]
                spins[x] += 1
                if spins[x] < n:
                    break
                spins[x] = 0
                i += 1

    @njit(cache=True, parallel=True)
    def _hist_parallel(n, spins0, free, us, ws, total, nchunks, nbins):
        rows = np.zeros((nchunks, nbins), dtype=np.int64)
        step = (total + nchunks - 1) // nchunks
        for c in prange(nchunks):
            lo = c * step
            hi = min(total, lo + step)
            if lo < hi:
                _hist_range(n, spins0, free, us, ws, lo, hi, rows[c])
        return rows.sum(axis=0)

    @njit(cache=True, nogil=True)
    def _flow_range(n, tails, heads, nv, nowhere_zero, start, stop):
        ne = tails.shape[0]
        f = np.zeros(ne, dtype=np.int64)
        idx = start
        for i in range(ne):
            f[i] = idx % n
            idx //= n
        net = np.zeros(nv, dtype=np.int64)
        count = 0
        for s in range(start, stop):
            ok = True
            if nowhere_zero:
                for j in range(ne):
                    if f[j] == 0:
                        ok = False
                        break
            if ok:
                for x in range(nv):
                    net[x] = 0
                for j in range(ne):
                    net[heads[j]] += f[j]
                    net[tails[j]] -= f[j]
                for x in range(nv):
                    if net[x] % n != 0:
                        ok = False
                        break
            if ok:
                count += 1
            i = 0
            while i < ne:
                f[i] += 1
                if f[i] < n:
                    break
                f[i] = 0
                i += 1
        return count

    @njit(cache=True, parallel=True)
    def _flow_parallel(n, tails, heads, nv, nowhere_zero, total, nchunks):
        out = np.zeros(nchunks, dtype=np.int64)
        step = (total + nchunks - 1) // nchunks
        for c in prange(nchunks):
            lo = c * step
            hi = min(total, lo + step)
            if lo < hi:
                out[c] = _flow_range(n, tails, heads, nv, nowhere_zero, lo, hi)
        return out.sum()


# numpy ---------------------------------------------------------------------

def _digits(idx, n, width):
    out = np.empty((idx.shape[0], width), dtype=np.int64)
    rest = idx.copy()
    for i in range(width):
        out[:, i] = rest % n
        rest //= n
    return out


def _hist_numpy(n, spins0, free, us, ws, total, nbins):
    hist = np.zeros(nbins, dtype=np.int64)
    weights = (np.int64(1) << np.arange(us.shape[0], dtype=np.int64))
    for lo in range(0, total, _BLOCK):
        idx = np.arange(lo, min(total, lo + _BLOCK), dtype=np.int64)
        spins = np.broadcast_to(spins0, (idx.shape[0], spins0.shape[0])).copy()
        if free.shape[0]:
            spins[:, free] = _digits(idx, n, free.shape[0])
        agree = spins[:, us] == spins[:, ws]
        masks = agree.astype(np.int64) @ weights if us.shape[0] else np.zeros(idx.shape[0], np.int64)
        hist += np.bincount(masks, minlength=nbins)
    return hist


def _flow_numpy(n, tails, heads, nv, nowhere_zero, total):
    count = 0
    for lo in range(0, total, _BLOCK):
        idx = np.arange(lo, min(total, lo + _BLOCK), dtype=np.int64)
        f = _digits(idx, n, tails.shape[0])
        net = np.zeros((idx.shape[0], nv), dtype=np.int64)
        for j in range(tails.shape[0]):
            net[:, heads[j]] += f[:, j]
            net[:, tails[j]] -= f[:, j]
        ok = np.all(net % n == 0, axis=1)
        if nowhere_zero:
            ok &= np.all(f != 0, axis=1)
        count += int(ok.sum())
    return count


# public --------------------------------------------------------------------

def agreement_histogram(n, num_vertices, pairs, fixed=None):
    """Counts of spin states by agreement mask.

    ``hist[m]`` is the number of states ``V -> Z_n`` (with the vertices in
    ``fixed`` pinned to the given values) whose set of edges with equal
    endpoint spins is exactly the bitmask ``m``.  Loops are always in the
    mask.  Returns an int64 array of length ``2^len(pairs)``.
    """
    ne = len(pairs)
    if ne > MAX_HIST_EDGES:
        raise ValueError(f"{ne} edges exceed the histogram limit {MAX_HIST_EDGES}")
    fixed = dict(fixed or {})
    spins0 = np.zeros(num_vertices, dtype=np.int64)
    for x, a in fixed.items():
        spins0[x] = a
    free = np.array([x for x in range(num_vertices) if x not in fixed], dtype=np.int64)
    us = np.array([p[0] for p in pairs], dtype=np.int64)
    ws = np.array([p[1] for p in pairs], dtype=np.int64)
    total = n ** free.shape[0]
    nbins = 1 << ne
    if backend() == "numpy":
        return _hist_numpy(n, spins0, free, us, ws, total, nbins)
    threads = _threads()
    if total >= (1 << 15) and threads > 1 and nbins <= (1 << 16):
        return _hist_parallel(n, spins0, free, us, ws, total, threads * 4, nbins)
    hist = np.zeros(nbins, dtype=np.int64)
    _hist_range(n, spins0, free, us, ws, 0, total, hist)
    return hist


def count_flows(n, num_vertices, pairs, nowhere_zero, reverse=False):
    """Number of ``Z_n``-flows for the orientation smaller id -> larger id
    (or the opposite when ``reverse``)."""
    tails = np.array([min(u, w) for u, w in pairs], dtype=np.int64)
    heads = np.array([max(u, w) for u, w in pairs], dtype=np.int64)
    if reverse:
        tails, heads = heads, tails
    total = n ** len(pairs)
    if backend() == "numpy":
        return _flow_numpy(n, tails, heads, num_vertices, nowhere_zero, total)
    threads = _threads()
    if total >= (1 << 15) and threads > 1:
        return int(_flow_parallel(n, tails, heads, num_vertices, nowhere_zero, total, threads * 4))
    return int(_flow_range(n, tails, heads, num_vertices, nowhere_zero, 0, total))
