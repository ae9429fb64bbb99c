import os
import random
import subprocess
import sys

import numpy as np
import pytest

from pseudohomfly import _kernels, dense
from pseudohomfly.braid_words import parse_word, random_word
from pseudohomfly.coeff_ring import ExtScalar, MultiPoly
from pseudohomfly.hecke import HeckeElement, Permutation, basis_trace, ocneanu_trace
from pseudohomfly.invariant import induced_trace, resolve


def random_coef(rng, size, nq, nd, dtype=np.int64):
    """Random data leaving the edge q slots and the top X slot empty for the shifts."""
    out = np.zeros((size, nq, nd), dtype=dtype)
    out[:, 1:-1, :-1] = rng.integers(-5, 6, size=(size, nq - 2, nd - 1))
    return out


@pytest.mark.skipif(_kernels.numba is None, reason="numba not installed")
class TestKernelAgreement:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("kind", [_kernels.KIND_POS, _kernels.KIND_NEG, _kernels.KIND_PSEUDO])
    def test_right_mul(self, n, kind):
        tabs = dense.perm_tables(n)
        rng = np.random.default_rng(n * 10 + kind)
        coef = random_coef(rng, tabs.size, 4, 3)
        for i in range(n - 1):
            a = _kernels.right_mul_numpy(coef, tabs.mul, tabs.up, i, kind)
            b = _kernels.right_mul_numba(coef, tabs.mul, tabs.up, i, kind)
            np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_contract(self, n):
        rng = np.random.default_rng(n)
        coef = random_coef(rng, dense.perm_tables(n).size, 5, 3)
        table = dense.trace_table(n)
        np.testing.assert_array_equal(_kernels.contract_numpy(coef, table), _kernels.contract_numba(coef, table))


class TestTables:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_trace_table_matches_exact(self, n):
        tabs = dense.perm_tables(n)
        table = dense.trace_table(n)
        for k, p in enumerate(tabs.index):
            terms = {(j, m, 0, 0): int(table[k, j, m]) for j, m in zip(*np.nonzero(table[k]))}
            assert ExtScalar(MultiPoly(terms)) == basis_trace(Permutation(p))

    def test_identity_first(self):
        assert tuple(dense.perm_tables(4).perms[0]) == (1, 2, 3, 4)


class TestDenseAgainstExact:
    @pytest.mark.parametrize("text", ["", "p1", "1 p1", "1 1 1", "-1", "p1 p1 -1", "1 -2 p1 p2 -1"])
    def test_examples(self, text):
        w = parse_word(text)
        assert induced_trace(w, "dense") == induced_trace(w, "exact")

    def test_random(self):
        rng = random.Random(23)
        for _ in range(60):
            w = random_word(rng.randint(1, 5), rng.randint(0, 10), 4, rng)
            assert induced_trace(w, "dense") == induced_trace(w, "exact")

    def test_resolved_coefficients(self):
        w = parse_word("1 p2 -1 p1", 3)
        elem = dense.dense_resolve(w)
        tabs = dense.perm_tables(3)
        exact = resolve(w)
        rebuilt = {}
        for k, j, a in zip(*np.nonzero(elem.coef)):
            perm = Permutation(tuple(int(x) for x in tabs.perms[k]))
            mono = np.zeros((j + 1, 1, elem.d + 1), dtype=np.int64)
            mono[j, 0, a] = elem.coef[k, j, a]
            term = dense.array_to_scalar(mono, elem.offset, elem.d)
            rebuilt[perm] = rebuilt.get(perm, ExtScalar(0)) + term
        assert HeckeElement(3, rebuilt) == exact

    def test_object_dtype(self):
        w = parse_word("1 1 p1 -2 p2 p2 1", 3)
        elem = dense.dense_resolve(w, dtype=object)
        assert elem.coef.dtype == object
        value = dense.array_to_scalar(dense.dense_trace_array(elem), elem.offset, elem.d)
        assert value == ocneanu_trace(resolve(w))

    def test_overflow_guard_switches_dtype(self):
        w = parse_word(" ".join(["p1"] * 30))
        assert dense.dense_resolve(w).coef.dtype == object
        assert dense.dense_resolve(parse_word("p1 p1")).coef.dtype == np.int64

    def test_large_n_uses_exact(self):
        w = parse_word("1 p7", 8)
        assert induced_trace(w, "dense") == induced_trace(w, "exact")
        with pytest.raises(ValueError):
            dense.dense_resolve(w)


def test_env_flag_disables_numba():
    code = "from pseudohomfly import _kernels; print(_kernels.backend_name())"
    env = dict(os.environ, PSEUDOHOMFLY_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
