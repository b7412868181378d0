"""Modular matrix kernels: numba-compiled with a pure numpy fallback.

The backend is picked once at import time from ``COMMJORDAN_BACKEND``
(``numba`` or ``numpy``). ``numba`` is the default and silently degrades to
``numpy`` when numba cannot be imported. Both implementations are always
importable under explicit names so the benchmark can compare them.

All kernels take int64 arrays with entries in ``[0, q)`` and require
``q < 2**31`` so a single product fits in int64.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKEND",
    "matmul_mod",
    "rank_mod",
    "matmul_mod_numpy",
    "rank_mod_numpy",
    "matmul_mod_numba",
    "rank_mod_numba",
    "HAVE_NUMBA",
]

_INT64_MAX = np.iinfo(np.int64).max


def matmul_mod_numpy(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    # Split the inner dimension so partial sums never overflow int64.
    inner = a.shape[1]
    chunk = max(1, _INT64_MAX // ((q - 1) ** 2 or 1))
    if chunk >= inner:
        return (a @ b) % q
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for lo in range(0, inner, chunk):
        out = (out + (a[:, lo : lo + chunk] @ b[lo : lo + chunk]) % q) % q
    return out


def rank_mod_numpy(a: np.ndarray, q: int) -> int:
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), q - 2, q)
        a[r, c:] = a[r, c:] * inv % q
        below = a[r + 1 :, c]
        if below.any():
            a[r + 1 :, c:] = (a[r + 1 :, c:] - np.outer(below, a[r, c:]) % q) % q
        r += 1
    return r


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @njit(cache=True)
    def _inv_mod(x, q):
        t, new_t = 0, 1
        r, new_r = q, x % q
        while new_r != 0:
            quo = r // new_r
            t, new_t = new_t, t - quo * new_t
            r, new_r = new_r, r - quo * new_r
        return t % q

    @njit(cache=True)
    def matmul_mod_numba(a, b, q):
        n, m = a.shape
        p = b.shape[1]
        # Reduce only when the next product could overflow the accumulator.
        chunk = max(1, (_INT64_MAX - q) // ((q - 1) * (q - 1)))
        out = np.zeros((n, p), dtype=np.int64)
        for i in range(n):
            pending = 0
            for k in range(m):
                aik = a[i, k]
                if aik == 0:
                    continue
                if pending == chunk:
                    for j in range(p):
                        out[i, j] %= q
                    pending = 0
                for j in range(p):
                    out[i, j] += aik * b[k, j]
                pending += 1
            for j in range(p):
                out[i, j] %= q
        return out

    @njit(cache=True)
    def rank_mod_numba(a, q):
        a = a.copy()
        rows, cols = a.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inv_mod(a[r, c], q)
            for j in range(c, cols):
                a[r, j] = a[r, j] * inv % q
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % q
            r += 1
        return r

else:  # pragma: no cover
    matmul_mod_numba = matmul_mod_numpy
    rank_mod_numba = rank_mod_numpy


BACKEND = os.environ.get("COMMJORDAN_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"COMMJORDAN_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")
if BACKEND == "numba" and not HAVE_NUMBA:  # pragma: no cover
    BACKEND = "numpy"

if BACKEND == "numba":
    matmul_mod = matmul_mod_numba
    rank_mod = rank_mod_numba
else:
    matmul_mod = matmul_mod_numpy
    rank_mod = rank_mod_numpy
