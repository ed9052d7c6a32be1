#!/usr/bin/env python3
"""
End-to-end checks on the reference fields: explicit basis of H^3 against
the brute-force oracle.
"""

import pytest

from core.cocycles import enumerate_I, enumerate_J2, make_F, parse_spec, realize
from core.complex import ComplexCtx, delta
from core.config import DEFAULT_CONFIG
from core.gf import all_elements, element_order, make_field, make_omega
from core.oracle import cross_check_h2, cross_check_h3, oracle_h_dim, quandle_from
from core.polyring import Polynomial

from tests.conftest import context, within


def spec_set(ctx):
    return {str(s) for s in enumerate_I(ctx)}


def all_contexts(p, modulus):
    spec = make_field(p, modulus)
    for w in all_elements(spec):
        if w.code not in (0, 1):
            yield ComplexCtx(spec, make_omega(spec, w))


@pytest.mark.integration
class TestReferenceFields:
    """The worked examples over F_4, F_8, F_9 and F_p, each within its time budget"""

    def test_q4(self, ctx4):
        with within(1):
            assert spec_set(ctx4) == {"F(1,2,0)", "E1(1,2)", "E1(2,4)"}
            assert oracle_h_dim(quandle_from(ctx4), 3) == 3
            assert cross_check_h3(ctx4).agree

    def test_q9(self, ctx9):
        with within(10):
            assert spec_set(ctx9) == {"F(1,3,0)", "Psi(5,3)", "Gamma(1,1,3,3)", "E1(1,3)", "E1(3,9)"}
            check = cross_check_h3(ctx9)
        assert check.oracle_dim == 5
        assert check.agree

    def test_q9_gamma_expansion(self, ctx9):
        w = ctx9.omega.value
        gamma = realize(ctx9, parse_spec("Gamma(1,1,3,3)"))
        # 2^-1 (1 + w^-3) = -(1 + w) since w has order 4
        expected = make_F(ctx9, 1, 4, 3) - Polynomial.monomial(ctx9.spec, (1, 1, 6), 1 + w)
        assert gamma == expected
        assert delta(ctx9, gamma).is_zero()

    def test_q9_other_modulus(self, ctx9b):
        with within(10):
            assert spec_set(ctx9b) == {"Psi(5,3)"}
            check = cross_check_h3(ctx9b)
        assert check.oracle_dim == 1
        assert check.agree

    def test_q8(self, ctx8):
        with within(10):
            assert element_order(ctx8.omega.value) == 7
            assert spec_set(ctx8) == {"F(1,2,4)", "Psi(5,2)", "Psi(3,4)"}
            check = cross_check_h3(ctx8)
        assert check.oracle_dim == 3
        assert check.agree

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_prime_fields(self, p):
        with within(5):
            ctx = context(p, [0, 1], -1)
            assert spec_set(ctx) == {f"E1(1,{p})"}
            check = cross_check_h3(ctx)
        assert check.oracle_dim == 1
        assert check.agree

    def test_q9_minus_one(self):
        with within(10):
            ctx = context(3, [1, 0, 1], -1)
            assert spec_set(ctx) == {
                "F(1,3,0)", "E0(3,3)", "E1(1,3)", "E1(1,9)", "E1(3,9)", "Gamma(1,1,3,3)", "Psi(5,3)", "Psi(7,3)",
            }
            assert realize(ctx, parse_spec("Gamma(1,1,3,3)")) == make_F(ctx, 1, 4, 3)
            check = cross_check_h3(ctx)
        assert check.oracle_dim == 8
        assert check.agree


@pytest.mark.integration
class TestSecondCohomology:
    """|J2| against the oracle for every omega"""

    @pytest.mark.parametrize("key", ["3", "4", "5", "7", "8", "9", "9b"])
    def test_small_catalog(self, key):
        entry = DEFAULT_CONFIG["catalog"][key]
        for ctx in all_contexts(entry["p"], entry["modulus"]):
            check = cross_check_h2(ctx)
            assert check.basis_size == len(enumerate_J2(ctx))
            assert check.agree, (str(ctx), check.to_dict())

    @pytest.mark.slow
    @pytest.mark.parametrize("key", ["11", "13", "16", "25", "27"])
    def test_large_catalog(self, key):
        entry = DEFAULT_CONFIG["catalog"][key]
        for ctx in all_contexts(entry["p"], entry["modulus"]):
            assert cross_check_h2(ctx).agree, str(ctx)


@pytest.mark.slow
class TestSweep:
    """H^3 agreement for every omega on every field up to q = 16"""

    def test_full_sweep(self):
        disagreements = []
        with within(300):
            for key in ("3", "4", "5", "7", "8", "9", "9b", "16"):
                entry = DEFAULT_CONFIG["catalog"][key]
                for ctx in all_contexts(entry["p"], entry["modulus"]):
                    check = cross_check_h3(ctx)
                    if not check.agree:
                        disagreements.append((str(ctx), check.to_dict()))
        assert disagreements == []
