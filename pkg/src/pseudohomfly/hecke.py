"""
The Iwahori-Hecke algebra H_n(q) in the permutation basis {T_w}, with
``ExtScalar`` coefficients, and the Ocneanu trace.

Convention: permutations are one-line arrays and ``w * s_i`` swaps the entries
in positions i and i+1.  With this convention T_w g_i = T_{w s_i} whenever the
length goes up, and T_w g_i = (q - 1) T_w + q T_{w s_i} when it goes down.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping

from .braid_words import PseudoWord
from .coeff_ring import ExtScalar, Q, RationalFn, Z

Q_MINUS_1 = RationalFn(Q - 1)
Q_INV = RationalFn(1, Q)
Q_INV_MINUS_1 = RationalFn(1 - Q, Q)


class PseudoLetterPresent(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_gens(cls, n: int, gens: Iterable[int]) -> Permutation:
        w = cls.identity(n)
        for i in gens:
            w = w.times_gen(i)
        return w

    @property
    def n(self) -> int:
        return len(self.images)

    def length(self) -> int:
        return perm_length(self)

    def times_gen(self, i: int) -> Permutation:
        """w * s_i: swap positions i and i+1 (1-based)."""
        im = list(self.images)
        im[i - 1], im[i] = im[i], im[i - 1]
        return Permutation(tuple(im))

    def ascends(self, i: int) -> bool:
        """True when length(w s_i) > length(w)."""
        return self.images[i - 1] < self.images[i]

    def extend(self, n: int) -> Permutation:
        return Permutation(self.images + tuple(range(self.n + 1, n + 1)))

    def restrict(self) -> Permutation:
        """Drop the last point; requires w(n) = n."""
        if self.images[-1] != self.n:
            raise ValueError("permutation does not fix its last point")
        return Permutation(self.images[:-1])

    def reduced_word(self) -> list[int]:
        """Generators i_1..i_k with w = s_{i_1} ... s_{i_k} and k = length(w)."""
        im = list(self.images)
        swaps = []
        changed = True
        while changed:
            changed = False
            for i in range(len(im) - 1):
                if im[i] > im[i + 1]:
                    im[i], im[i + 1] = im[i + 1], im[i]
                    swaps.append(i + 1)
                    changed = True
        return swaps[::-1]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


def perm_length(w: Permutation) -> int:
    im = w.images
    return sum(1 for a in range(len(im)) for b in range(a + 1, len(im)) if im[a] > im[b])


class HeckeElement:
    """Sparse combination of basis elements T_w of H_n(q)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Permutation, ExtScalar] | None = None):
        self.n = n
        clean: dict[Permutation, ExtScalar] = {}
        for w, c in (terms or {}).items():
            if w.n != n:
                raise ValueError(f"basis element {w} does not live in S_{n}")
            if not isinstance(c, ExtScalar):
                c = ExtScalar(c)
            if not c.is_zero():
                clean[w] = c
        self.terms = clean

    @classmethod
    def one(cls, n: int) -> HeckeElement:
        return cls(n, {Permutation.identity(n): ExtScalar(1)})

    @classmethod
    def basis(cls, w: Permutation) -> HeckeElement:
        return cls(w.n, {w: ExtScalar(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def embed(self, n: int) -> HeckeElement:
        """Reindex into H_m for m >= n via the standard inclusion."""
        if n < self.n:
            raise ValueError("can only embed into a larger algebra")
        return HeckeElement(n, {w.extend(n): c for w, c in self.terms.items()})

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t[w] + c if w in t else c
        return HeckeElement(self.n, t)

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + other.scale(-1)

    def scale(self, c) -> HeckeElement:
        return HeckeElement(self.n, {w: v * c for w, v in self.terms.items()})

    def __rmul__(self, c) -> HeckeElement:
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, HeckeElement):
            return self.scale(other)
        self._check(other)
        total = HeckeElement(self.n)
        for w, c in other.terms.items():
            part = self
            for i in w.reduced_word():
                part = right_mul_gen(part, i, 1)
            total = total + part.scale(c)
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if self.n != other.n or self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[w] for w, c in self.terms.items())

    __hash__ = None

    def _check(self, other: HeckeElement):
        if self.n != other.n:
            raise ValueError(f"elements of H_{self.n} and H_{other.n} do not mix")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) * T{w}" for w, c in sorted(self.terms.items()))

    __repr__ = __str__


def _accumulate(t: dict, w: Permutation, c: ExtScalar):
    if w in t:
        v = t[w] + c
        if v.is_zero():
            del t[w]
        else:
            t[w] = v
    else:
        t[w] = c


def right_mul_gen(elem: HeckeElement, i: int, sign: int = 1) -> HeckeElement:
    """elem * g_i (sign=+1) or elem * g_i^-1 (sign=-1)."""
    if not 1 <= i < elem.n:
        raise IndexError(f"generator g_{i} does not exist in H_{elem.n}")
    out: dict[Permutation, ExtScalar] = {}
    for w, c in elem.terms.items():
        ws = w.times_gen(i)
        if sign == 1:
            if w.ascends(i):
                _accumulate(out, ws, c)
            else:
                _accumulate(out, w, c * Q_MINUS_1)
                _accumulate(out, ws, c * Q)
        else:
            # g^-1 = q^-1 g + (q^-1 - 1); on a descent this collapses to T_{w s_i}
            if w.ascends(i):
                _accumulate(out, ws, c * Q_INV)
                _accumulate(out, w, c * Q_INV_MINUS_1)
            else:
                _accumulate(out, ws, c)
    return HeckeElement(elem.n, out)


def word_to_element(w: PseudoWord) -> HeckeElement:
    if not w.is_classical:
        raise PseudoLetterPresent("word_to_element takes classical words only")
    elem = HeckeElement.one(w.strands)
    for let in w.letters:
        elem = right_mul_gen(elem, let.index, let.sign)
    return elem


def coset_decompose(w: Permutation) -> tuple[Permutation, list[int]]:
    """Split w = v * s_{n-1} s_{n-2} ... s_j with v(n) = n and lengths adding.

    Returns ``(v, [n-1, n-2, ..., j])``; the run is empty when w fixes n.
    """
    n = w.n
    j = w.images.index(n) + 1
    if j == n:
        return w, []
    im = list(w.images)
    del im[j - 1]
    im.append(n)
    return Permutation(tuple(im)), list(range(n - 1, j - 1, -1))


_TRACE_CACHE: dict[Permutation, ExtScalar] = {}
_TRACE_LOCK = threading.Lock()


def basis_trace(w: Permutation) -> ExtScalar:
    """tr_n(T_w), memoized per exact permutation."""
    cached = _TRACE_CACHE.get(w)
    if cached is not None:
        return cached
    n = w.n
    if n == 1:
        value = ExtScalar(1)
    else:
        v, tail = coset_decompose(w)
        if not tail:
            value = basis_trace(v.restrict())
        else:
            # tr(T_v g_{n-1} y) = z tr(T_v y) for T_v, y in H_{n-1}
            inner = HeckeElement.basis(v.restrict())
            for i in tail[1:]:
                inner = right_mul_gen(inner, i, 1)
            value = ocneanu_trace(inner) * Z
    with _TRACE_LOCK:
        _TRACE_CACHE[w] = value
    return value


def ocneanu_trace(elem: HeckeElement) -> ExtScalar:
    total = ExtScalar(0)
    for w, c in elem.terms.items():
        total = total + c * basis_trace(w)
    return total
