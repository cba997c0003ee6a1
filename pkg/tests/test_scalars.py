"""Exact field arithmetic in Q(u)."""

from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from ncgeo.scalars import (
    HALF,
    LAMBDA,
    MU,
    ONE,
    ZERO,
    PoleError,
    Scalar,
    format_scalar,
    lambda_pow,
    mu_pow,
    parse_scalar,
)


def _poly(*coeffs: int) -> Scalar:
    """Plain polynomial in u with the given ascending coefficients."""
    return Scalar(0, tuple(coeffs), (1,))


small_scalars = st.builds(
    Scalar,
    st.integers(min_value=-3, max_value=3),
    st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=4).map(tuple),
    st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=4)
    .map(tuple)
    .filter(lambda t: any(t)),
)


class TestCanonicalForm:
    def test_zero_normal_form(self):
        assert Scalar(5, (0, 0), (3,)) == ZERO
        assert not ZERO
        assert ZERO.is_zero()

    def test_common_factor_cancels(self):
        # (u^2 - 1)/(u - 1) = u + 1
        assert Scalar(0, (-1, 0, 1), (-1, 1)) == _poly(1, 1)

    def test_content_reduced(self):
        assert Scalar(0, (2, 2), (4,)) == Scalar(0, (1, 1), (2,))

    def test_den_sign_is_positive(self):
        x = Scalar(0, (1,), (-2,))
        assert x.d[-1] > 0
        assert x == -HALF

    def test_powers_of_u_live_in_shift(self):
        x = Scalar(0, (0, 0, 3), (0, 1))
        assert (x.s, x.n, x.d) == (1, (3,), (1,))

    def test_equality_is_structural(self):
        a = (ONE - LAMBDA) * (ONE + LAMBDA)
        b = ONE - lambda_pow(2)
        assert a == b and hash(a) == hash(b)


class TestArithmetic:
    def test_mu_inverse_plus_mu(self):
        # 1/u + u = (1 + u^2)/u
        assert MU.inv() + MU == Scalar(-1, (1, 0, 1), (1,))

    def test_lambda_is_mu_squared(self):
        assert MU * MU == LAMBDA
        assert lambda_pow(3) == LAMBDA ** 3
        assert lambda_pow(-2) == LAMBDA.inv() ** 2

    def test_difference_of_squares(self):
        assert (ONE - LAMBDA) * (ONE + LAMBDA) == ONE - lambda_pow(2)

    def test_int_coercion(self):
        assert ONE + 1 == Scalar.from_int(2)
        assert 2 * HALF == ONE
        assert 1 - LAMBDA == ONE - LAMBDA
        assert (ONE + ONE).inv() == HALF

    def test_division(self):
        x = (ONE - LAMBDA) / (ONE - MU)
        assert x * (ONE - MU) == ONE - LAMBDA
        assert x == ONE + MU  # (1 - u^2)/(1 - u)

    def test_zero_division_raises(self):
        with pytest.raises(ZeroDivisionError):
            ZERO.inv()
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    @given(small_scalars, small_scalars, small_scalars)
    @settings(max_examples=80, deadline=None)
    def test_field_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + ZERO == a
        assert a * ONE == a
        assert a - a == ZERO

    @given(small_scalars)
    @settings(max_examples=60, deadline=None)
    def test_inverse_roundtrip(self, a):
        if a:
            assert a * a.inv() == ONE
            assert a.inv().inv() == a


class TestStar:
    def test_star_fixes_rationals(self):
        assert HALF.star() == HALF
        assert ONE.star() == ONE

    def test_star_inverts_mu(self):
        assert MU.star() == MU.inv()
        assert LAMBDA.star() == lambda_pow(-1)

    def test_star_of_one_plus_mu(self):
        # (1 + u) -> 1 + 1/u = (1 + u)/u
        assert (ONE + MU).star() == Scalar(-1, (1, 1), (1,))

    @given(small_scalars, small_scalars)
    @settings(max_examples=60, deadline=None)
    def test_star_is_field_automorphism(self, a, b):
        assert (a + b).star() == a.star() + b.star()
        assert (a * b).star() == a.star() * b.star()

    @given(small_scalars)
    @settings(max_examples=60, deadline=None)
    def test_star_is_involutive(self, a):
        assert a.star().star() == a


class TestNumericChannel:
    THETA = (math.sqrt(5) - 1) / 2

    def test_mu_evaluates_to_unit_circle(self):
        z = MU.eval_numeric(self.THETA)
        assert abs(abs(z) - 1) < 1e-12
        assert cmath.isclose(z, cmath.exp(1j * math.pi * self.THETA))

    def test_lambda_evaluates_to_twist(self):
        z = LAMBDA.eval_numeric(self.THETA)
        assert cmath.isclose(z, cmath.exp(2j * math.pi * self.THETA))

    def test_pole_detection(self):
        x = ONE / (ONE - LAMBDA)
        with pytest.raises(PoleError):
            x.eval_numeric(0.0)

    @given(small_scalars, small_scalars)
    @settings(max_examples=40, deadline=None)
    def test_evaluation_is_homomorphism(self, a, b):
        try:
            va = a.eval_numeric(self.THETA)
            vb = b.eval_numeric(self.THETA)
            vs = (a + b).eval_numeric(self.THETA)
            vp = (a * b).eval_numeric(self.THETA)
        except PoleError:
            return
        scale = max(1.0, abs(va) + abs(vb), abs(va) * abs(vb))
        assert abs(vs - (va + vb)) <= 1e-9 * scale
        assert abs(vp - va * vb) <= 1e-9 * scale


class TestTextForm:
    def test_reference_rendering(self):
        x = (ONE - LAMBDA) / MU
        assert format_scalar(x) == "(1 - u^2)/u"
        assert parse_scalar("(1 - u^2)/u") == x

    def test_simple_forms(self):
        assert format_scalar(ZERO) == "0"
        assert format_scalar(ONE) == "1"
        assert format_scalar(-HALF) == "-1/2"
        assert format_scalar(MU) == "u"
        assert format_scalar(lambda_pow(-1)) == "1/u^2"
        assert format_scalar(-MU * HALF) == "-u/2"
        assert format_scalar(Scalar(0, (1,), (1, 2))) == "1/(1 + 2u)"
        assert format_scalar(Scalar(-1, (1,), (2,))) == "1/(2u)"

    def test_parse_variants(self):
        assert parse_scalar("u^-2") == lambda_pow(-1)
        assert parse_scalar("3u^2 + 1") == Scalar(0, (1, 0, 3), (1,))
        assert parse_scalar("3*u^2+1") == Scalar(0, (1, 0, 3), (1,))
        assert parse_scalar("-(u)/(2)") == -MU * HALF
        assert parse_scalar(" 1 - u ^ 2 ") == ONE - LAMBDA

    def test_parse_rejects_junk(self):
        for bad in ("", "u +", "1 $ 2", "(1", "u^u"):
            with pytest.raises(ValueError):
                parse_scalar(bad)

    @given(small_scalars)
    @settings(max_examples=120, deadline=None)
    def test_round_trip_is_exact(self, a):
        text = format_scalar(a)
        assert parse_scalar(text) == a
        assert format_scalar(parse_scalar(text)) == text


class TestMonomials:
    def test_mu_pow(self):
        assert mu_pow(0) == ONE
        assert mu_pow(2) == LAMBDA
        assert mu_pow(-1) == MU.inv()

    @given(st.integers(min_value=-6, max_value=6), st.integers(min_value=-6, max_value=6))
    @settings(max_examples=40, deadline=None)
    def test_lambda_pow_is_homomorphism(self, i, j):
        assert lambda_pow(i) * lambda_pow(j) == lambda_pow(i + j)
        assert lambda_pow(i).star() == lambda_pow(-i)
