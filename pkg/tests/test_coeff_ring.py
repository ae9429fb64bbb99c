import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudohomfly.coeff_ring import (
    B_SQUARED,
    DivisionByZero,
    ExtScalar,
    InvalidPoint,
    MultiPoly,
    NotInvertible,
    Q,
    RationalFn,
    X,
    Y,
    Z,
    consistent_point,
)

exps = st.tuples(*[st.integers(0, 3)] * 4)
polys = st.dictionaries(exps, st.integers(-9, 9), max_size=6).map(MultiPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfns = st.builds(RationalFn, polys, nonzero_polys)
nonzero_ratfns = st.builds(RationalFn, nonzero_polys, nonzero_polys)
small_ratfns = st.builds(
    RationalFn,
    st.dictionaries(exps, st.integers(-5, 5), max_size=3).map(MultiPoly),
    st.dictionaries(exps, st.integers(-5, 5), min_size=1, max_size=2).map(MultiPoly).filter(bool),
)
ext = st.builds(ExtScalar, small_ratfns, small_ratfns)

B = ExtScalar.gen()


def points():
    """Rational points satisfying B^2 q z = z + 1 - q with small coordinates."""
    vals = [Fraction(a, b) for a in range(-4, 5) for b in (1, 2, 3) if a]
    coords = st.tuples(*[st.sampled_from(vals)] * 4).filter(lambda c: c[1] ** 2 * c[0] != 1 and c[0] != 1)
    return coords.map(lambda c: consistent_point(*c))


class TestMultiPoly:
    def test_difference_of_squares(self):
        assert (Q + 1) * (Q - 1) == Q**2 - 1

    def test_additive_identity(self):
        p = 3 * Q**2 * Z * X - Y
        assert p + MultiPoly() == p
        assert p + 0 == p

    def test_distributivity_example(self):
        assert Q * (Z - 1) == Q * Z - Q

    def test_zero_is_empty(self):
        assert (Q - Q).terms == {}
        assert MultiPoly({(1, 0, 0, 0): 0}).is_zero()

    def test_no_zero_coefficients_stored(self):
        p = (Q + Z) * (Q - Z)
        assert all(c != 0 for c in p.terms.values())
        assert p.terms == {(2, 0, 0, 0): 1, (0, 2, 0, 0): -1}

    def test_text_lex_order(self):
        p = 3 * Q**2 * Z * X + Y - 2
        assert str(p) == "3*q^2*z*X + Y - 2"
        assert str(MultiPoly()) == "0"
        assert str(-Q) == "-q"

    def test_json_roundtrip(self):
        p = 3 * Q**2 * Z * X + Y - 2
        data = json.loads(json.dumps(p.to_json()))
        assert data[0] == [3, [2, 1, 1, 0]]
        assert MultiPoly.from_json(data) == p

    def test_divexact(self):
        a = (Z + 1 - Q) ** 3 * (X * Q + Y)
        assert a.divexact((Z + 1 - Q) ** 2) == (Z + 1 - Q) * (X * Q + Y)
        assert a.divexact(Q + Z) is None
        assert (Q**2 * Z).divexact(Q * 1) == Q * Z

    def test_big_coefficients_stay_exact(self):
        p = (Q + 1) ** 80
        assert p.terms[(40, 0, 0, 0)] == 107507208733336176461620  # C(80, 40)

    @given(polys, polys, polys)
    def test_ring_axioms(self, p, r, s):
        assert (p + r) * s == p * s + r * s
        assert (p * r) * s == p * (r * s)
        assert p * r == r * p
        assert p - p == MultiPoly()


class TestRationalFn:
    def test_inverse_pair(self):
        assert RationalFn(1, Q) * RationalFn(Q) == RationalFn(1)

    def test_self_division(self):
        assert RationalFn(Z) / RationalFn(Z) == 1

    def test_z_minus(self):
        zm = RationalFn(1, Q) * Z + RationalFn(1, Q) - 1
        assert zm == RationalFn(Z + 1 - Q, Q)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            RationalFn(Q) / RationalFn(0)
        with pytest.raises(DivisionByZero):
            RationalFn(Q, 0)

    def test_normal_form(self):
        f = RationalFn(-4 * Q**2 * Z, -6 * Q * Z**2)
        assert f.num == 2 * Q
        assert f.den == 3 * Z
        g = RationalFn(Q, -Q - Z)
        assert g.den.leading()[1] > 0

    def test_cross_multiplication_equality(self):
        a = RationalFn(Q**2 - 1, Q + Z)
        b = RationalFn((Q**2 - 1) * (Z + 1), (Q + Z) * (Z + 1))
        assert a == b
        assert a.num != b.num

    def test_reduced_is_canonical(self):
        b = RationalFn((Q**2 - 1) * (Z + 1), (Q + Z) * (Z + 1))
        r = b.reduced()
        assert r.num == Q**2 - 1 and r.den == Q + Z

    @given(nonzero_ratfns)
    @settings(max_examples=60)
    def test_field_inverse(self, f):
        assert f * f.inverse() == 1

    @given(ratfns, ratfns, nonzero_ratfns)
    @settings(max_examples=60)
    def test_field_axioms(self, f, g, h):
        assert (f + g) * h == f * h + g * h
        assert (f - g) + g == f
        assert (f / h) * h == f


class TestExtScalar:
    def test_b_squared(self):
        sq = B * B
        assert sq.part1.is_zero()
        assert sq.part0 == RationalFn(Z + 1 - Q, Q * Z)

    def test_identity(self):
        s = ExtScalar(RationalFn(Q, Z), RationalFn(X))
        assert ExtScalar(1) * s == s

    def test_b_times_inverse(self):
        b_inv = B * RationalFn(Q * Z, Z + 1 - Q)
        assert B * b_inv == 1

    def test_inverse_examples(self):
        assert ExtScalar(Z).inverse() == ExtScalar(RationalFn(1, Z))
        assert B.inverse() == ExtScalar(0, RationalFn(Q * Z, Z + 1 - Q))
        bz_inv = (B * Z).inverse()
        assert bz_inv == ExtScalar(0, RationalFn(Q, Z + 1 - Q))
        assert bz_inv * B * Z == 1

    def test_not_invertible(self):
        with pytest.raises(NotInvertible):
            ExtScalar(0).inverse()

    def test_eval_constant_and_b(self):
        pt = {"q": 1, "z": 5, "X": 2, "Y": 3, "B": 1}
        assert ExtScalar(1).evaluate(pt) == 1
        assert B.evaluate(pt) == 1

    def test_eval_rejects_inconsistent_point(self):
        with pytest.raises(InvalidPoint):
            B.evaluate({"q": 2, "z": 5, "X": 2, "Y": 3, "B": 1})
        with pytest.raises(InvalidPoint):
            ExtScalar(RationalFn(1, Z - 2)).evaluate(consistent_point(Fraction(-1), Fraction(1, 2), 1, 1) | {"z": Fraction(2)})

    @given(points())
    @settings(max_examples=30)
    def test_eval_defining_relation(self, pt):
        assert (ExtScalar(B_SQUARED) - B * B).evaluate(pt) == 0

    def test_text_form(self):
        s = ExtScalar(RationalFn(Q, Z), RationalFn(X, Q))
        assert str(s) == "(q)/(z) + ((X)/(q))*B"
        assert str(ExtScalar(RationalFn(Q + 1))) == "q + 1"
        assert str(ExtScalar(1)) == "1"

    def test_json_roundtrip(self):
        s = ExtScalar(RationalFn(Q, Z), RationalFn(X, Q))
        data = json.loads(json.dumps(s.to_json()))
        assert set(data) == {"part0", "part1"}
        assert data["part0"]["num"] == [[1, [1, 0, 0, 0]]]
        assert ExtScalar.from_json(data) == s

    @given(ext, ext, ext)
    @settings(max_examples=40, deadline=None)
    def test_closure_two_components(self, a, b, c):
        r = (a * b + c) * b
        assert isinstance(r.part0, RationalFn) and isinstance(r.part1, RationalFn)
        assert set(vars(type(r)).get("__slots__")) == {"part0", "part1"}

    @given(ext.filter(bool))
    @settings(max_examples=100, deadline=None)
    def test_norm_form_inverse(self, s):
        assert s * s.inverse() == 1

    @given(ext, ext, points())
    @settings(max_examples=60, deadline=None)
    def test_evaluation_homomorphism(self, s, t, pt):
        try:
            vs, vt = s.evaluate(pt), t.evaluate(pt)
        except InvalidPoint:
            return  # a denominator vanishes at this point
        assert (s * t).evaluate(pt) == vs * vt
        assert (s + t).evaluate(pt) == vs + vt
