"""
Dense fast path for T_n = tr_n o rho_{X,Y}.

Coefficients of a resolved word live in Z[q, q^-1, X, Y], homogeneous of
degree d(w) in (X, Y), so the whole computation runs on integer arrays (see
``_kernels``).  The basis traces tr_n(T_w) are polynomials in q and z and are
tabulated once per n.  The result is converted back to an ``ExtScalar`` at
the end.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .braid_words import PseudoWord
from .coeff_ring import ExtScalar, MultiPoly, Q, RationalFn

# Beyond this the n! tables cost more than they save; callers use the sparse engine.
MAX_DENSE_STRANDS = 7

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class PermTables:
    n: int
    perms: np.ndarray  # (n!, n) one-line notation, lex order
    mul: np.ndarray  # mul[w, i] = index of w * s_{i+1}
    up: np.ndarray  # up[w, i] = length(w s_{i+1}) > length(w)
    length: np.ndarray
    index: dict

    @property
    def size(self) -> int:
        return len(self.perms)


@lru_cache(maxsize=None)
def perm_tables(n: int) -> PermTables:
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {p: k for k, p in enumerate(perms)}
    gens = max(n - 1, 1)
    mul = np.zeros((len(perms), gens), dtype=np.int64)
    up = np.zeros((len(perms), gens), dtype=np.bool_)
    length = np.zeros(len(perms), dtype=np.int64)
    for k, p in enumerate(perms):
        length[k] = sum(1 for a in range(n) for b in range(a + 1, n) if p[a] > p[b])
        for i in range(n - 1):
            s = list(p)
            s[i], s[i + 1] = s[i + 1], s[i]
            mul[k, i] = index[tuple(s)]
            up[k, i] = p[i] < p[i + 1]
    return PermTables(n, np.array(perms, dtype=np.int64).reshape(len(perms), n), mul, up, length, index)


@lru_cache(maxsize=None)
def trace_table(n: int) -> np.ndarray:
    """table[w, j, m] = coefficient of q^j z^m in tr_n(T_w)."""
    if n == 1:
        return np.ones((1, 1, 1), dtype=np.int64)
    prev = trace_table(n - 1)
    small = perm_tables(n - 1)
    tabs = perm_tables(n)
    nq = n * (n - 1) // 2 + 1
    out = np.zeros((tabs.size, nq, n), dtype=np.int64)
    for k, p in enumerate(tabs.index):
        j = p.index(n) + 1
        v = tuple(x for x in p if x != n)
        vk = small.index[v]
        if j == n:
            src = prev[vk]
            out[k, : src.shape[0], : src.shape[1]] = src
            continue
        # tr(T_v g_{n-1} g_{n-2} ... g_j) = z tr(T_v g_{n-2} ... g_j)
        steps = n - 1 - j
        coef = np.zeros((small.size, steps + 1, 1), dtype=np.int64)
        coef[vk, 0, 0] = 1
        for i in range(n - 2, j - 1, -1):
            coef = _kernels.right_mul(coef, small.mul, small.up, i - 1, _kernels.KIND_POS)
        inner = _kernels.contract(coef, prev)[:, :, 0]
        out[k, : inner.shape[0], 1 : 1 + inner.shape[1]] = inner
    return out


@dataclass
class DenseElement:
    """rho(w) as an array, with q exponent ``k - offset`` and X degree ``a``."""

    n: int
    coef: np.ndarray
    offset: int
    d: int


def _coefficient_bound(w: PseudoWord) -> int:
    # each classical letter at most triples the l1 norm, each pseudo letter multiplies it by 6
    return 3 ** (len(w) - w.d) * 6**w.d


def dense_resolve(w: PseudoWord, dtype=None) -> DenseElement:
    n = w.strands
    if n > MAX_DENSE_STRANDS:
        raise ValueError(f"dense path supports at most {MAX_DENSE_STRANDS} strands")
    tabs = perm_tables(n)
    pos = sum(1 for let in w.letters if not let.is_pseudo and let.sign == 1)
    neg = sum(1 for let in w.letters if not let.is_pseudo and let.sign == -1)
    d = w.d
    offset = neg + d
    if dtype is None:
        trace_max = int(np.abs(trace_table(n)).sum(axis=(1, 2)).max())
        dtype = np.int64 if _coefficient_bound(w) * trace_max < _INT64_SAFE else object
    coef = np.zeros((tabs.size, offset + pos + d + 1, d + 1), dtype=dtype)
    coef[0, offset, 0] = 1  # identity is index 0 in lex order
    for let in w.letters:
        if let.is_pseudo:
            kind = _kernels.KIND_PSEUDO
        else:
            kind = _kernels.KIND_POS if let.sign == 1 else _kernels.KIND_NEG
        coef = _kernels.right_mul(coef, tabs.mul, tabs.up, let.index - 1, kind)
    return DenseElement(n, coef, offset, d)


def dense_trace_array(elem: DenseElement) -> np.ndarray:
    table = trace_table(elem.n)
    if elem.coef.dtype == object:
        table = table.astype(object)
    return _kernels.contract(elem.coef, table)


def array_to_scalar(arr: np.ndarray, offset: int, d: int) -> ExtScalar:
    """Sum of arr[k, m, a] q^(k - offset) z^m X^a Y^(d - a) as an ExtScalar."""
    terms = {}
    for k, m, a in zip(*np.nonzero(arr)):
        terms[(int(k), int(m), int(a), d - int(a))] = int(arr[k, m, a])
    return ExtScalar(RationalFn(MultiPoly(terms), Q**offset))


def dense_induced_trace(w: PseudoWord) -> ExtScalar:
    elem = dense_resolve(w)
    return array_to_scalar(dense_trace_array(elem), elem.offset, elem.d)


def warm_up() -> None:
    """Compile and cache the kernels once (no-op cost on the numpy path)."""
    from .braid_words import parse_word

    dense_induced_trace(parse_word("1 -1 p1 2 p2", 3))
