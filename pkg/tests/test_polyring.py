#!/usr/bin/env python3
"""
Test suite for the multivariate polynomial ring
"""

import pytest

from core.errors import ArityMismatch, SpecMismatch
from core.gf import all_elements, make_field, prime_field
from core.polyring import (
    Polynomial,
    divisible_by_omega_prefix,
    evaluate,
    expand_linear_power,
    format_polynomial,
    frobenius_power,
    identity_forms,
    in_Cn_q,
    lucas_binomial,
    p_pow,
    substitute,
    variable_names,
)


class TestPolynomialBasics:
    """Construction, equality and arithmetic"""

    def setup_method(self):
        self.f9 = make_field(3, [1, 0, 1])
        self.g = self.f9.gen

    def test_zero_terms_dropped(self):
        f = Polynomial(self.f9, 2, {(1, 0): 0, (0, 1): 1})
        assert len(f) == 1
        assert Polynomial.zero(self.f9, 2).is_zero()

    def test_arity_checked(self):
        with pytest.raises(ArityMismatch):
            Polynomial(self.f9, 2, {(1, 0, 0): 1})
        x = Polynomial.monomial(self.f9, (1, 0))
        y = Polynomial.monomial(self.f9, (1, 0, 0))
        with pytest.raises(ArityMismatch):
            x + y

    def test_spec_checked(self):
        x = Polynomial.monomial(self.f9, (1,))
        y = Polynomial.monomial(prime_field(3), (1,))
        with pytest.raises(SpecMismatch):
            x + y

    def test_ring_identities(self):
        x = Polynomial.monomial(self.f9, (1, 0))
        y = Polynomial.monomial(self.f9, (0, 1), self.g)
        assert (x + y) * (x - y) == x * x - y * y
        assert x - x == Polynomial.zero(self.f9, 2)
        assert 3 * x == Polynomial.zero(self.f9, 2)

    def test_freshman_power(self):
        x = Polynomial.monomial(self.f9, (1, 0))
        y = Polynomial.monomial(self.f9, (0, 1), self.g)
        assert p_pow(x + y, 3) == p_pow(x, 3) + p_pow(y, 3)
        assert (x + y) ** 4 == (x + y) * (x + y) * (x + y) * (x + y)

    def test_frobenius_power(self):
        f = Polynomial.monomial(self.f9, (1, 2), self.g) + Polynomial.monomial(self.f9, (2, 0))
        assert frobenius_power(f, 1) == f ** 3

    def test_homogeneous_parts(self):
        f = Polynomial.monomial(self.f9, (1, 2)) + Polynomial.monomial(self.f9, (2, 0))
        parts = f.homogeneous_parts()
        assert sorted(parts) == [2, 3]
        assert f.total_degrees() == [2, 3]

    def test_hash_matches_equality(self):
        a = Polynomial.monomial(self.f9, (1, 1)) + Polynomial.monomial(self.f9, (2, 0))
        b = Polynomial.monomial(self.f9, (2, 0)) + Polynomial.monomial(self.f9, (1, 1))
        assert a == b
        assert len({a, b}) == 1


class TestBinomials:
    """Lucas binomials and linear powers"""

    def test_lucas(self):
        assert lucas_binomial(5, 2, 3) == 10 % 3
        assert lucas_binomial(9, 3, 3) == 0
        assert lucas_binomial(4, 2, 2) == 0
        assert lucas_binomial(2, 5, 3) == 0

    def test_expand_linear_power(self):
        f9 = make_field(3, [1, 0, 1])
        g = f9.gen
        x = Polynomial.monomial(f9, (1, 0))
        y = Polynomial.monomial(f9, (0, 1))
        for a in range(0, 11):
            assert expand_linear_power(g, f9.one, a) == p_pow(g * x + y, a)

    @pytest.mark.parametrize("p,modulus", [
        (2, [1, 1, 1]),
        (2, [1, 0, 1, 1]),
        (3, [1, 0, 1]),
        (5, [0, 1]),
        (7, [0, 1]),
    ])
    def test_expand_linear_power_pointwise(self, p, modulus):
        spec = make_field(p, modulus)
        elements = all_elements(spec)
        for c in (spec.one, elements[-1]):
            for a in range(spec.q):
                f = expand_linear_power(c, spec.one, a)
                for x in elements:
                    for y in elements:
                        assert evaluate(f, [x, y]) == (c * x + y) ** a, (c, a, x, y)


class TestSubstitution:
    """Linear substitution of variables"""

    def setup_method(self):
        self.f8 = make_field(2, [1, 0, 1, 1])
        self.w = self.f8.gen.code

    def test_identity(self):
        f = Polynomial.monomial(self.f8, (3, 1, 2)) + Polynomial.monomial(self.f8, (1, 1, 0))
        assert substitute(f, identity_forms(3)) == f

    def test_two_term_form(self):
        t = Polynomial.monomial(self.f8, (5,))
        out = substitute(t, [((0, self.w), (1, 1))], target_arity=2)
        x = Polynomial.monomial(self.f8, (1, 0), self.f8.gen)
        y = Polynomial.monomial(self.f8, (0, 1))
        assert out == (x + y) ** 5

    def test_three_term_form(self):
        t = Polynomial.monomial(self.f8, (3,))
        out = substitute(t, [((0, 1), (1, 1), (2, 1))], target_arity=3)
        s = sum(
            (Polynomial.monomial(self.f8, e) for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
            Polynomial.zero(self.f8, 3),
        )
        assert out == s ** 3

    def test_arity_checked(self):
        t = Polynomial.monomial(self.f8, (1, 1))
        with pytest.raises(ArityMismatch):
            substitute(t, identity_forms(3))

    def test_evaluate_agrees(self):
        f = Polynomial.monomial(self.f8, (2, 3), self.f8.gen) + Polynomial.monomial(self.f8, (0, 1))
        g = self.f8.gen
        assert evaluate(f, [g, g + 1]) == g * g ** 2 * (g + 1) ** 3 + (g + 1)


class TestComplexMembership:
    """Membership predicates and canonical text"""

    def setup_method(self):
        self.f4 = make_field(2, [1, 1, 1])

    def test_prefix(self):
        assert divisible_by_omega_prefix(Polynomial.monomial(self.f4, (1, 2, 0)))
        assert not divisible_by_omega_prefix(Polynomial.monomial(self.f4, (0, 2, 1)))
        assert divisible_by_omega_prefix(Polynomial.monomial(self.f4, (5,)))

    def test_in_Cn_q(self):
        assert in_Cn_q(Polynomial.monomial(self.f4, (3, 1, 0)), 4)
        assert not in_Cn_q(Polynomial.monomial(self.f4, (4, 1, 0)), 4)

    def test_variable_names(self):
        assert variable_names(3) == ["U1", "U2", "T3"]
        assert variable_names(1) == ["T1"]

    def test_format(self):
        g = self.f4.gen
        f = (
            Polynomial.monomial(self.f4, (1, 2, 0))
            + Polynomial.monomial(self.f4, (1, 1, 1), g + 1)
            + Polynomial.monomial(self.f4, (2, 2, 0), g)
        )
        assert format_polynomial(f) == "g*U1^2*U2^2 + U1*U2^2 + (g+1)*U1*U2*T3"
        assert format_polynomial(Polynomial.zero(self.f4, 2)) == "0"
