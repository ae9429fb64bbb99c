"""
Exact coefficient arithmetic for the invariant.

Three layers:

- ``MultiPoly``: sparse polynomials in the commuting variables q, z, X, Y with
  arbitrary-precision integer coefficients.
- ``RationalFn``: fractions of ``MultiPoly`` kept in sign/content normal form,
  with common monomials cancelled.  No general gcd is taken on the hot path, so
  equality is decided by cross-multiplication.
- ``ExtScalar``: elements a + b*B of the quadratic extension where
  B^2 = (z + 1 - q)/(q z).

All values are immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

VARS = ("q", "z", "X", "Y")

# Exponent vectors are packed into one int, eq in the most significant field,
# so integer comparison of packed keys is lex order on (eq, ez, eX, eY).
_WIDTH = 32
_FIELD = (1 << _WIDTH) - 1
_MAX_EXP = 1 << (_WIDTH - 1)


class DivisionByZero(ZeroDivisionError):
    pass


class NotInvertible(ZeroDivisionError):
    pass


class InvalidPoint(ValueError):
    pass


def _pack(exps: Iterable[int]) -> int:
    eq, ez, ex, ey = (int(e) for e in exps)  # numpy ints would overflow the shifts
    for e in (eq, ez, ex, ey):
        if e < 0 or e >= _MAX_EXP:
            raise ValueError(f"exponent out of range: {e}")
    return (eq << 3 * _WIDTH) | (ez << 2 * _WIDTH) | (ex << _WIDTH) | ey


def _unpack(key: int) -> tuple[int, int, int, int]:
    return (
        key >> 3 * _WIDTH,
        (key >> 2 * _WIDTH) & _FIELD,
        (key >> _WIDTH) & _FIELD,
        key & _FIELD,
    )


def _mono_divides(a: int, b: int) -> bool:
    """True when monomial ``a`` divides monomial ``b`` (packed keys)."""
    return all(x <= y for x, y in zip(_unpack(a), _unpack(b)))


def _mono_gcd(keys: Iterable[int]) -> int:
    mins = None
    for k in keys:
        e = _unpack(k)
        mins = e if mins is None else tuple(map(min, mins, e))
        if mins == (0, 0, 0, 0):
            break
    return 0 if mins is None else _pack(mins)


def _mono_str(key: int) -> str:
    parts = []
    for name, e in zip(VARS, _unpack(key)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class MultiPoly:
    """Sparse polynomial in q, z, X, Y with integer coefficients.

    ``terms`` maps exponent vectors ``(eq, ez, eX, eY)`` to nonzero ints.
    """

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple[int, int, int, int], int] | None = None):
        t: dict[int, int] = {}
        if terms:
            for exps, c in terms.items():
                if not isinstance(c, int):
                    raise TypeError(f"coefficient must be int, got {type(c).__name__}")
                if c:
                    k = _pack(exps)
                    v = t.get(k, 0) + c
                    if v:
                        t[k] = v
                    else:
                        t.pop(k, None)
        self._t = t

    @classmethod
    def _raw(cls, packed: dict[int, int]) -> MultiPoly:
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._t = packed
        return p

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> MultiPoly:
        exps = [0, 0, 0, 0]
        exps[VARS.index(name)] = power
        return cls._raw({_pack(exps): 1})

    @classmethod
    def monomial(cls, exps: tuple[int, int, int, int], coeff: int = 1) -> MultiPoly:
        return cls._raw({_pack(exps): coeff} if coeff else {})

    @property
    def terms(self) -> dict[tuple[int, int, int, int], int]:
        return {_unpack(k): c for k, c in self._t.items()}

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_one(self) -> bool:
        return self._t == {0: 1}

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def constant_value(self) -> int:
        return self._t.get(0, 0)

    def leading(self) -> tuple[tuple[int, int, int, int], int]:
        """Leading exponent vector and coefficient under lex order."""
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return _unpack(k), self._t[k]

    def degree(self, name: str) -> int:
        i = VARS.index(name)
        return max((_unpack(k)[i] for k in self._t), default=-1)

    def content(self) -> int:
        return reduce(math.gcd, self._t.values(), 0)

    # ring operations

    @staticmethod
    def _coerce(other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            big, small = other._t, self._t
        else:
            big, small = self._t, other._t
        t = dict(big)
        for k, c in small.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                del t[k]
        return MultiPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) - c
            if v:
                t[k] = v
            else:
                del t[k]
        return MultiPoly._raw(t)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MultiPoly()
            return MultiPoly._raw({k: c * other for k, c in self._t.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, int] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return MultiPoly._raw({k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def scale_down(self, c: int, mono: int = 0) -> MultiPoly:
        """Exact division by the integer ``c`` times the packed monomial ``mono``."""
        return MultiPoly._raw({k - mono: v // c for k, v in self._t.items()})

    def divexact(self, other: MultiPoly) -> MultiPoly | None:
        """Return ``self / other`` when the division is exact, else None."""
        if not other._t:
            raise DivisionByZero("polynomial division by zero")
        if not self._t:
            return MultiPoly()
        if len(other._t) == 1:
            (kd, cd), = other._t.items()
            out = {}
            for k, c in self._t.items():
                if c % cd or not _mono_divides(kd, k):
                    return None
                out[k - kd] = c // cd
            return MultiPoly._raw(out)
        for name in VARS:
            if other.degree(name) > self.degree(name):
                return None
        kd = max(other._t)
        cd = other._t[kd]
        rem = dict(self._t)
        quot: dict[int, int] = {}
        while rem:
            kr = max(rem)
            cr = rem[kr]
            if cr % cd or not _mono_divides(kd, kr):
                return None
            km, cm = kr - kd, cr // cd
            quot[km] = cm
            for k, c in other._t.items():
                kk = k + km
                v = rem.get(kk, 0) - c * cm
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        return MultiPoly._raw(quot)

    def evaluate(self, point: Mapping[str, Fraction | int]) -> Fraction:
        vals = [Fraction(point[v]) for v in VARS]
        total = Fraction(0)
        for k, c in self._t.items():
            term = Fraction(c)
            for v, e in zip(vals, _unpack(k)):
                if e:
                    term *= v**e
            total += term
        return total

    # text / json

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = []
        for k in sorted(self._t, reverse=True):
            c = self._t[k]
            mono = _mono_str(k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def to_json(self) -> list:
        return [[self._t[k], list(_unpack(k))] for k in sorted(self._t, reverse=True)]

    @classmethod
    def from_json(cls, data: list) -> MultiPoly:
        return cls({tuple(exps): int(c) for c, exps in data})


ZERO_POLY = MultiPoly()
ONE_POLY = MultiPoly.const(1)


class RationalFn:
    """Fraction ``num/den`` of polynomials in sign/content normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly | int, den: MultiPoly | int = 1):
        if isinstance(num, int):
            num = MultiPoly.const(num)
        if isinstance(den, int):
            den = MultiPoly.const(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO_POLY, ONE_POLY
            return
        if den.is_one():
            self.num, self.den = num, den
            return
        mono = _mono_gcd(list(num._t) + list(den._t))
        g = math.gcd(num.content(), den.content())
        if den._t[max(den._t)] < 0:
            g = -g
        if mono or g != 1:
            num = num.scale_down(g, mono)
            den = den.scale_down(g, mono)
        self.num, self.den = num, den

    @classmethod
    def _coerce(cls, other) -> RationalFn:
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, (int, MultiPoly)):
            return cls(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RationalFn(a + c, b)
        k = d.divexact(b) if len(b) <= len(d) else None
        if k is not None:
            return RationalFn(a * k + c, d)
        k = b.divexact(d) if len(d) <= len(b) else None
        if k is not None:
            return RationalFn(a + c * k, b)
        return RationalFn(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RationalFn(0)
        a, b, c, d = self.num, self.den, other.num, other.den
        # cheap cancellations of identical factors
        if a == d:
            a, d = ONE_POLY, ONE_POLY
        if c == b:
            c, b = ONE_POLY, ONE_POLY
        return RationalFn(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> RationalFn:
        if self.is_zero():
            raise DivisionByZero("inverse of the zero fraction")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> RationalFn:
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFn(self.num**n, self.den**n)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is not structural

    def evaluate(self, point: Mapping[str, Fraction | int]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise InvalidPoint("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    def reduced(self) -> RationalFn:
        """Cancel the full polynomial gcd of numerator and denominator."""
        if self.den.is_constant() or self.num.is_zero():
            return self
        g = poly_gcd(self.num, self.den)
        if g.is_constant():
            return self
        return RationalFn(self.num.divexact(g), self.den.divexact(g))

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFn({self})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> RationalFn:
        return cls(MultiPoly.from_json(data["num"]), MultiPoly.from_json(data["den"]))


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Multivariate gcd over the integers, normalized to a positive leading coefficient."""
    import sympy

    gens = sympy.symbols(VARS)
    pa = sympy.Poly.from_dict({k: c for k, c in a.terms.items()}, gens, domain="ZZ")
    pb = sympy.Poly.from_dict({k: c for k, c in b.terms.items()}, gens, domain="ZZ")
    g = sympy.gcd(pa, pb)
    out = MultiPoly({tuple(k): int(c) for k, c in g.as_dict().items()})
    if out and out.leading()[1] < 0:
        out = -out
    return out


Q = MultiPoly.var("q")
Z = MultiPoly.var("z")
X = MultiPoly.var("X")
Y = MultiPoly.var("Y")

# B^2 = z_-/z = (z + 1 - q)/(q z)
B_SQUARED = RationalFn(Z + 1 - Q, Q * Z)

Scalarish = Union["ExtScalar", RationalFn, MultiPoly, int]


class ExtScalar:
    """Element ``part0 + part1*B`` with B^2 = (z + 1 - q)/(q z)."""

    __slots__ = ("part0", "part1")

    def __init__(self, part0: RationalFn | MultiPoly | int = 0, part1: RationalFn | MultiPoly | int = 0):
        self.part0 = part0 if isinstance(part0, RationalFn) else RationalFn(part0)
        self.part1 = part1 if isinstance(part1, RationalFn) else RationalFn(part1)

    @classmethod
    def gen(cls) -> ExtScalar:
        return cls(0, 1)

    @classmethod
    def _coerce(cls, other) -> ExtScalar:
        if isinstance(other, ExtScalar):
            return other
        if isinstance(other, (int, MultiPoly, RationalFn)):
            return cls(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.part0.is_zero() and self.part1.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtScalar(self.part0 + other.part0, self.part1 + other.part1)

    __radd__ = __add__

    def __neg__(self) -> ExtScalar:
        return ExtScalar(-self.part0, -self.part1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtScalar(self.part0 - other.part0, self.part1 - other.part1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, MultiPoly, RationalFn)):
            return ExtScalar(self.part0 * other, self.part1 * other)
        if not isinstance(other, ExtScalar):
            return NotImplemented
        a, b, c, d = self.part0, self.part1, other.part0, other.part1
        if b.is_zero() and d.is_zero():
            return ExtScalar(a * c)
        p0 = a * c
        if not (b.is_zero() or d.is_zero()):
            p0 = p0 + b * d * B_SQUARED
        p1 = a * d + b * c
        return ExtScalar(p0, p1)

    __rmul__ = __mul__

    def norm(self) -> RationalFn:
        """a^2 - b^2 * B^2, the product with the conjugate."""
        return self.part0 * self.part0 - self.part1 * self.part1 * B_SQUARED

    def inverse(self) -> ExtScalar:
        if self.part1.is_zero():
            if self.part0.is_zero():
                raise NotInvertible("zero has no inverse")
            return ExtScalar(self.part0.inverse())
        n = self.norm()
        if n.is_zero():
            raise NotInvertible("norm vanishes")
        return ExtScalar(self.part0 / n, -self.part1 / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> ExtScalar:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = ExtScalar(1)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.part0 == other.part0 and self.part1 == other.part1

    __hash__ = None

    def evaluate(self, point: Mapping[str, Fraction | int]) -> Fraction:
        """Exact value at a point assigning q, z, X, Y and B.

        The point must satisfy B^2 * q * z = z + 1 - q.
        """
        try:
            q, z, b = (Fraction(point[k]) for k in ("q", "z", "B"))
        except KeyError as exc:
            raise InvalidPoint(f"missing coordinate {exc}") from None
        if b * b * q * z != z + 1 - q:
            raise InvalidPoint("point violates B^2*q*z = z + 1 - q")
        return self.part0.evaluate(point) + self.part1.evaluate(point) * b

    def reduced(self) -> ExtScalar:
        return ExtScalar(self.part0.reduced(), self.part1.reduced())

    def __str__(self) -> str:
        if self.part1.is_zero():
            return str(self.part0)
        b = f"({self.part1})*B" if self.part1.den.is_one() else f"(({self.part1.num})/({self.part1.den}))*B"
        if self.part0.is_zero():
            return b
        return f"{self.part0} + {b}"

    def __repr__(self) -> str:
        return f"ExtScalar({self})"

    def to_json(self) -> dict:
        return {"part0": self.part0.to_json(), "part1": self.part1.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> ExtScalar:
        return cls(RationalFn.from_json(data["part0"]), RationalFn.from_json(data["part1"]))


def consistent_point(q: Fraction, b: Fraction, x: Fraction, y: Fraction) -> dict[str, Fraction]:
    """Solve B^2 q z = z + 1 - q for z, giving a point valid for ``evaluate``."""
    q, b = Fraction(q), Fraction(b)
    denom = b * b * q - 1
    if denom == 0:
        raise InvalidPoint("no z solves the B relation for this (q, B)")
    z = (1 - q) / denom
    return {"q": q, "z": z, "X": Fraction(x), "Y": Fraction(y), "B": b}
