"""
The HOMFLYPT-type invariant P of pseudo links.

P(closure of alpha) = A^(n-1) B^e(alpha) C^d(alpha) T_n(alpha), where
T_n = tr_n o rho_{X,Y} and rho_{X,Y} sends p_i to X g_i + Y g_i^-1.

Besides the direct pipeline this module carries two independent routes to the
same value, the state sum over classical resolutions and the recursive skein
evaluation, plus checkers for the skein relations and for the well-definedness
of rho.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import dense
from .braid_words import Letter, PseudoWord, relation_pairs
from .coeff_ring import B_SQUARED, ExtScalar, Q, RationalFn, X, Y, Z
from .hecke import (
    HeckeElement,
    PseudoLetterPresent,
    ocneanu_trace,
    right_mul_gen,
)

DEFAULT_STATE_CAP = 2**16

# "dense" runs the integer-array kernels, "exact" the sparse ExtScalar engine.
DEFAULT_BACKEND = "dense"


class StateBudgetExceeded(RuntimeError):
    pass


class MarkNotPseudo(ValueError):
    pass


class InvariantMismatch(AssertionError):
    pass


@dataclass(frozen=True, eq=False)
class Constants:
    B: ExtScalar
    A: ExtScalar
    C: ExtScalar
    z_minus: ExtScalar
    lambda_plus: ExtScalar
    lambda_minus: ExtScalar
    B_inv: ExtScalar
    pseudo_factor: ExtScalar  # X z + Y z_-


@lru_cache(maxsize=None)
def constants() -> Constants:
    z_minus = ExtScalar(RationalFn(Z + 1 - Q, Q))
    B = ExtScalar.gen()
    B_inv = ExtScalar(0, B_SQUARED.inverse())
    pseudo_factor = ExtScalar(RationalFn(X * Z)) + z_minus * Y
    A = ExtScalar(0, RationalFn(Q, Z + 1 - Q))
    C = ExtScalar(0, RationalFn(Z)) * pseudo_factor.inverse()
    return Constants(
        B=B,
        A=A,
        C=C,
        z_minus=z_minus,
        lambda_plus=C * B_inv * X,
        lambda_minus=C * B * Y,
        B_inv=B_inv,
        pseudo_factor=pseudo_factor,
    )


def b_power(e: int) -> ExtScalar:
    k = constants()
    return k.B**e if e >= 0 else k.B_inv ** (-e)


def normalization(n: int, e: int, d: int) -> ExtScalar:
    """A^(n-1) B^e C^d."""
    k = constants()
    return k.A ** (n - 1) * b_power(e) * k.C**d


# direct pipeline

def resolve(w: PseudoWord) -> HeckeElement:
    """rho_{X,Y}(w) in H_n(q)."""
    elem = HeckeElement.one(w.strands)
    for let in w.letters:
        if let.is_pseudo:
            elem = right_mul_gen(elem, let.index, 1).scale(X) + right_mul_gen(elem, let.index, -1).scale(Y)
        else:
            elem = right_mul_gen(elem, let.index, let.sign)
    return elem


def induced_trace(w: PseudoWord, backend: str | None = None) -> ExtScalar:
    backend = backend or DEFAULT_BACKEND
    if backend == "dense" and w.strands <= dense.MAX_DENSE_STRANDS:
        return dense.dense_induced_trace(w)
    if backend not in ("dense", "exact"):
        raise ValueError(f"unknown backend {backend!r}")
    return ocneanu_trace(resolve(w))


def invariant_P(w: PseudoWord, backend: str | None = None) -> ExtScalar:
    return normalization(w.strands, w.e, w.d) * induced_trace(w, backend)


def classical_H(w: PseudoWord, backend: str | None = None) -> ExtScalar:
    """Normalized classical invariant A^(n-1) B^e tr_n(pi(w))."""
    if not w.is_classical:
        raise PseudoLetterPresent("classical_H takes classical words only")
    return normalization(w.strands, w.e, 0) * induced_trace(w, backend)


# state sum

@dataclass(frozen=True)
class StateResolution:
    choices: tuple[int, ...]

    @property
    def r_plus(self) -> int:
        return self.choices.count(1)

    @property
    def r_minus(self) -> int:
        return self.choices.count(-1)


def states(w: PseudoWord):
    for choices in itertools.product((1, -1), repeat=w.d):
        yield StateResolution(choices)


def apply_state(w: PseudoWord, s: StateResolution) -> PseudoWord:
    """Replace the k-th pseudo letter p_i by sigma_i^(choices[k])."""
    it = iter(s.choices)
    letters = tuple(
        Letter.sigma(let.index, next(it)) if let.is_pseudo else let for let in w.letters
    )
    return PseudoWord(w.strands, letters)


def state_sum_P(w: PseudoWord, cap: int = DEFAULT_STATE_CAP, backend: str | None = None) -> ExtScalar:
    """C^d * sum over states of (X B^-1)^r+ (Y B)^r- H(alpha_s)."""
    if 2**w.d > cap:
        raise StateBudgetExceeded(f"{2 ** w.d} states exceed the cap of {cap}")
    k = constants()
    plus = k.B_inv * X
    minus = k.B * Y
    total = ExtScalar(0)
    for s in states(w):
        total = total + plus**s.r_plus * minus**s.r_minus * classical_H(apply_state(w, s), backend)
    return k.C**w.d * total


# skein relations

@dataclass
class Report:
    check: str
    instances: int = 0
    failures: list = field(default_factory=list)
    elapsed_ms: float | None = None
    values: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = True) -> dict:
        return {
            "check": self.check,
            "instances": self.instances,
            "failures": self.failures,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
        }


def _clock() -> float:
    return time.perf_counter() * 1000.0


def pseudo_skein_check(w: PseudoWord, mark: int, backend: str | None = None) -> Report:
    """P(L_p) = lambda_+ P(L_+) + lambda_- P(L_-) at the marked pseudo letter."""
    start = _clock()
    let = w.letters[mark]
    if not let.is_pseudo:
        raise MarkNotPseudo(f"letter {mark} ({let}) is not a pseudo letter")
    k = constants()
    lp = invariant_P(w, backend)
    lplus = invariant_P(w.replace(mark, [Letter.sigma(let.index, 1)]), backend)
    lminus = invariant_P(w.replace(mark, [Letter.sigma(let.index, -1)]), backend)
    ok = lp == k.lambda_plus * lplus + k.lambda_minus * lminus
    rep = Report("pseudo-skein", 1, [] if ok else [{"word": str(w), "strands": w.strands, "mark": mark}])
    rep.values = {"L_p": lp, "L_plus": lplus, "L_minus": lminus}
    rep.elapsed_ms = _clock() - start
    return rep


def classical_skein_check(w: PseudoWord, position: int, index: int, backend: str | None = None) -> Report:
    """B^-1 P(L_+) - q B P(L_-) = (q - 1) P(L_0), inserting sigma_index^{+-1} at ``position``."""
    start = _clock()
    if not 1 <= index < w.strands:
        raise IndexError(f"sigma_{index} does not exist on {w.strands} strands")
    if not 0 <= position <= len(w):
        raise IndexError(f"insertion point {position} outside the word")
    k = constants()

    def insert(letters):
        return PseudoWord(w.strands, w.letters[:position] + tuple(letters) + w.letters[position:])

    lplus = invariant_P(insert([Letter.sigma(index, 1)]), backend)
    lminus = invariant_P(insert([Letter.sigma(index, -1)]), backend)
    lzero = invariant_P(w, backend)
    ok = k.B_inv * lplus - k.B * lminus * Q == lzero * (Q - 1)
    failure = {"word": str(w), "strands": w.strands, "position": position, "index": index}
    rep = Report("classical-skein", 1, [] if ok else [failure])
    rep.values = {"L_plus": lplus, "L_minus": lminus, "L_zero": lzero}
    rep.elapsed_ms = _clock() - start
    return rep


def skein_evaluate(w: PseudoWord, order: str = "left", backend: str | None = None) -> ExtScalar:
    """Resolve pseudo letters one at a time by the pseudo skein relation, then apply H."""
    positions = w.pseudo_positions()
    if not positions:
        return classical_H(w, backend)
    pos = positions[0] if order == "left" else positions[-1]
    idx = w.letters[pos].index
    k = constants()
    plus = skein_evaluate(w.replace(pos, [Letter.sigma(idx, 1)]), order, backend)
    minus = skein_evaluate(w.replace(pos, [Letter.sigma(idx, -1)]), order, backend)
    return k.lambda_plus * plus + k.lambda_minus * minus


# well-definedness of rho

def rho_relation_check(n: int) -> Report:
    """Check rho(lhs) == rho(rhs) for every defining relation of PM_n."""
    if n < 2:
        raise ValueError("relations need at least two strands")
    start = _clock()
    rep = Report(f"rho[n={n}]")
    for rule, params, lhs, rhs in relation_pairs(n):
        rep.instances += 1
        if resolve(lhs) != resolve(rhs):
            rep.failures.append({"rule": rule, "params": list(params), "lhs": str(lhs), "rhs": str(rhs)})
    rep.elapsed_ms = _clock() - start
    return rep


# the family g_1^k p_1

def tr2_power(m: int) -> ExtScalar:
    """tr_2(g_1^m) by repeated quadratic reduction in the basis {1, g_1}.

    g_1^m = a + b g_1; multiply by g_1 (or g_1^-1 for negative m) using
    g_1^2 = (q-1) g_1 + q and g_1^-1 = q^-1 g_1 + (q^-1 - 1), then take
    tr_2(1) = 1 and tr_2(g_1) = z.
    """
    a, b = RationalFn(1), RationalFn(0)
    q_inv = RationalFn(1, Q)
    for _ in range(abs(m)):
        if m > 0:
            a, b = b * Q, a + b * (Q - 1)
        else:
            # (a + b g) g^-1 = a g^-1 + b
            a, b = a * (q_inv - 1) + b, a * q_inv
    return ExtScalar(a + b * Z)


def family_alpha_k(k: int, backend: str | None = None) -> ExtScalar:
    """P of the closure of sigma_1^k p_1, checked against A B^k C (X tr(g^(k+1)) + Y tr(g^(k-1)))."""
    sign = 1 if k >= 0 else -1
    w = PseudoWord(2, tuple(Letter.sigma(1, sign) for _ in range(abs(k))) + (Letter.p(1),))
    value = invariant_P(w, backend)
    c = constants()
    closed = c.A * b_power(k) * c.C * (tr2_power(k + 1) * X + tr2_power(k - 1) * Y)
    if value != closed:
        raise InvariantMismatch(f"alpha_{k}: engine value disagrees with the closed form")
    return value
