"""
Dense integer kernels for the Hecke algebra hot loops.

A resolved word is stored as an integer array ``coef[w, k, a]``: the
coefficient of T_w * q^(k - offset) * X^a * Y^(d - a).  Right multiplication
by g_i, g_i^-1 or h_i = X g_i + Y g_i^-1 permutes and shifts slices of this
array.  Every kernel exists twice: explicit loops compiled with numba, and a
vectorized numpy version.  Set ``PSEUDOHOMFLY_DISABLE_NUMBA=1`` to force the
numpy path.  Object arrays (Python ints) always take the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

KIND_POS, KIND_NEG, KIND_PSEUDO = 0, 1, 2


def _flag_disabled() -> bool:
    return os.environ.get("PSEUDOHOMFLY_DISABLE_NUMBA", "").lower() in ("1", "true", "yes", "on")


USE_NUMBA = numba is not None and not _flag_disabled()


def right_mul_numpy(coef: np.ndarray, mul: np.ndarray, up: np.ndarray, i: int, kind: int) -> np.ndarray:
    out = np.zeros_like(coef)
    t = mul[:, i]
    asc = np.nonzero(up[:, i])[0]
    desc = np.nonzero(~up[:, i])[0]
    if kind != KIND_NEG:
        if kind == KIND_PSEUDO:
            g = np.zeros_like(coef)
            g[:, :, 1:] = coef[:, :, :-1]
        else:
            g = coef
        out[t[asc]] += g[asc]
        out[desc] -= g[desc]
        out[desc, 1:] += g[desc, :-1]
        out[t[desc], 1:] += g[desc, :-1]
    if kind != KIND_POS:
        out[t[asc], :-1] += coef[asc, 1:]
        out[asc, :-1] += coef[asc, 1:]
        out[asc] -= coef[asc]
        out[t[desc]] += coef[desc]
    return out


def contract_numpy(coef: np.ndarray, table: np.ndarray) -> np.ndarray:
    """out[k + j, m, a] = sum_w coef[w, k, a] * table[w, j, m]."""
    n_perm, nq, nd = coef.shape
    _, nt, nz = table.shape
    out = np.zeros((nq + nt - 1, nz, nd), dtype=np.result_type(coef, table))
    for j in range(nt):
        # (nq, nd, nz) -> (nq, nz, nd)
        out[j : j + nq] += np.tensordot(coef, table[:, j, :], axes=([0], [0])).transpose(0, 2, 1)
    return out


def _right_mul_loops(coef, mul, up, i, kind):
    n_perm, nq, nd = coef.shape
    out = np.zeros_like(coef)
    for w in range(n_perm):
        t = mul[w, i]
        asc = up[w, i]
        for k in range(nq):
            for a in range(nd):
                c = coef[w, k, a]
                if c == 0:
                    continue
                if kind != 1:
                    b = a + 1 if kind == 2 else a
                    if asc:
                        out[t, k, b] += c
                    else:
                        out[w, k, b] -= c
                        out[w, k + 1, b] += c
                        out[t, k + 1, b] += c
                if kind != 0:
                    if asc:
                        out[t, k - 1, a] += c
                        out[w, k - 1, a] += c
                        out[w, k, a] -= c
                    else:
                        out[t, k, a] += c
    return out


def _contract_loops(coef, table):
    n_perm, nq, nd = coef.shape
    nt = table.shape[1]
    nz = table.shape[2]
    out = np.zeros((nq + nt - 1, nz, nd), dtype=np.int64)
    for w in range(n_perm):
        for k in range(nq):
            for a in range(nd):
                c = coef[w, k, a]
                if c == 0:
                    continue
                for j in range(nt):
                    for m in range(nz):
                        v = table[w, j, m]
                        if v != 0:
                            out[k + j, m, a] += c * v
    return out


if numba is not None:
    right_mul_numba = numba.njit(cache=True)(_right_mul_loops)
    contract_numba = numba.njit(cache=True)(_contract_loops)
else:  # pragma: no cover
    right_mul_numba = contract_numba = None


def right_mul(coef: np.ndarray, mul: np.ndarray, up: np.ndarray, i: int, kind: int) -> np.ndarray:
    if USE_NUMBA and coef.dtype == np.int64:
        return right_mul_numba(coef, mul, up, i, kind)
    return right_mul_numpy(coef, mul, up, i, kind)


def contract(coef: np.ndarray, table: np.ndarray) -> np.ndarray:
    if USE_NUMBA and coef.dtype == np.int64 and table.dtype == np.int64:
        return contract_numba(coef, table)
    return contract_numpy(coef, table)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
