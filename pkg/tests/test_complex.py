#!/usr/bin/env python3
"""
Test suite for the polynomial cochain complex
"""

import math

import numpy as np
import pytest

from core import linalg
from core.complex import (
    ALL,
    ComplexCtx,
    D_s,
    P_set,
    basis_C,
    build_slice,
    coordinates,
    degrees,
    delta,
    delta_by_last_variable,
    delta_matrix,
    filtration_level,
    h_dim,
    h_dim_by_degree,
    lambda_cochain,
    lambda_in_image_of_D,
    lambda_preimage,
)
from core.errors import BadFiltration, NotInComplex, NotInFiltration
from core.gf import omega_pow_is_one
from core.polyring import Polynomial

from tests.conftest import catalog_field, catalog_params, context, valid_omegas


def levels(ctx):
    """Filtration levels s with p^s < q"""
    return [s for s in range(ctx.q) if ctx.p ** s < ctx.q]


def random_cochain(ctx, rng, n, step=1, terms=4):
    """A few random terms of C^n(q) whose Tn exponents are multiples of step"""
    out = {}
    for _ in range(terms):
        prefix = tuple(int(e) for e in rng.integers(1, ctx.q, size=n - 1))
        last = int(rng.integers(0, (ctx.q - 1) // step + 1)) * step
        out[prefix + (last,)] = int(rng.integers(1, ctx.q))
    return Polynomial(ctx.spec, n, out)


class TestDifferential:
    """delta on C^1, C^2 and C^3"""

    def test_delta_of_T1(self, ctx9):
        # delta(T1) = (w - 1) U1
        out = delta(ctx9, lambda_cochain(ctx9, 1))
        w = ctx9.omega.value
        assert out == Polynomial.monomial(ctx9.spec, (1, 0), w - 1)

    def test_not_in_complex(self, ctx4):
        with pytest.raises(NotInComplex):
            delta(ctx4, Polynomial.monomial(ctx4.spec, (0, 1)))

    @pytest.mark.parametrize("key", catalog_params(slow_from=16))
    def test_delta_squared_is_zero(self, key):
        spec = catalog_field(key)
        omegas = valid_omegas(spec)
        if not omegas:
            # F_2 has no omega outside {0, 1}
            assert spec.q == 2
            return
        ctx = ComplexCtx(spec, omegas[-1])
        for n in (1, 2):
            for mono in basis_C(ctx, n):
                f = Polynomial.monomial(ctx.spec, mono)
                assert delta(ctx, delta(ctx, f)).is_zero(), (n, mono)

    def test_matrices_compose_to_zero(self, ctx9):
        for d in degrees(ctx9, 2):
            assert linalg.matmul(delta_matrix(ctx9, 2, d), delta_matrix(ctx9, 1, d)).is_zero()
            assert linalg.matmul(delta_matrix(ctx9, 3, d), delta_matrix(ctx9, 2, d)).is_zero()

    def test_delta_by_last_variable_agrees(self, ctx8):
        rng = np.random.default_rng(3)
        for n in (1, 2, 3):
            basis = basis_C(ctx8, n)
            for _ in range(15):
                picks = rng.choice(len(basis), size=3, replace=False)
                terms = {basis[i]: int(rng.integers(1, ctx8.q)) for i in picks}
                f = Polynomial(ctx8.spec, n, terms)
                assert delta_by_last_variable(ctx8, f) == delta(ctx8, f)


class TestSlices:
    """Bases, coordinates and cohomology dimensions"""

    def test_basis_sizes(self, ctx4):
        assert len(basis_C(ctx4, 1)) == 4
        assert len(basis_C(ctx4, 2)) == 12
        assert len(basis_C(ctx4, 3)) == 36
        assert sum(len(basis_C(ctx4, 3, d)) for d in degrees(ctx4, 3)) == 36

    def test_coordinates(self, ctx4):
        basis = basis_C(ctx4, 2, 3)
        f = Polynomial.monomial(ctx4.spec, basis[1], ctx4.omega.value)
        v = coordinates(f, basis)
        assert v.tolist() == [0, ctx4.w] + [0] * (len(basis) - 2)
        with pytest.raises(NotInComplex):
            coordinates(Polynomial.monomial(ctx4.spec, (1, 1)), basis)

    def test_slice(self, ctx4):
        s = build_slice(ctx4, 2, 3)
        assert s.delta_matrix.shape == (len(s.target_basis), s.dim)
        whole = build_slice(ctx4, 1, ALL)
        assert whole.dim == 4

    @pytest.mark.parametrize("p,modulus,omega", [
        (2, [1, 1, 1], "g"),
        (3, [1, 0, 1], "g"),
        (3, [0, 1], 2),
    ])
    def test_acyclic_slices(self, p, modulus, omega):
        ctx = context(p, modulus, omega)
        for n in (2, 3):
            for d, dim in h_dim_by_degree(ctx, n).items():
                if not omega_pow_is_one(ctx.omega, d):
                    assert dim == 0, (n, d)

    def test_h3_dimensions(self, ctx4, ctx8, ctx9, ctx9b, ctx3):
        assert h_dim(ctx4, 3) == 3
        assert h_dim(ctx8, 3) == 3
        assert h_dim(ctx9, 3) == 5
        assert h_dim(ctx9b, 3) == 1
        assert h_dim(ctx3, 3) == 1

    def test_h2_dimensions(self, ctx4, ctx9, ctx3):
        assert h_dim(ctx4, 2) == 1
        assert h_dim(ctx9, 2) == 1
        assert h_dim(ctx3, 2) == 0


class TestFiltration:
    """Filtration levels, D_s and the lambda cochains"""

    def test_P_set(self):
        assert P_set(1, 8, p=2) == [1, 2, 4]
        assert P_set(0, 9, p=3) == [1, 2, 3, 4, 6, 7]
        assert P_set(1, 9, p=3) == [1, 3, 6]

    def test_P_set_bounds(self):
        with pytest.raises(BadFiltration):
            P_set(2, 9, p=3)
        with pytest.raises(ValueError):
            P_set(0, 9)

    def test_filtration_level(self, ctx9):
        spec = ctx9.spec
        assert filtration_level(Polynomial.monomial(spec, (1, 6))) == 1
        assert filtration_level(Polynomial.monomial(spec, (1, 9)) + Polynomial.monomial(spec, (2, 3))) == 1
        assert filtration_level(Polynomial.monomial(spec, (2, 0))) == math.inf

    def test_D_s(self, ctx9):
        spec = ctx9.spec
        out = D_s(Polynomial.monomial(spec, (1, 6)), 1)
        assert out == Polynomial.monomial(spec, (1, 3), 2)
        assert D_s(Polynomial.monomial(spec, (1, 9)), 1).is_zero()
        with pytest.raises(NotInFiltration):
            D_s(Polynomial.monomial(spec, (1, 4)), 1)

    def test_D_s_commutes_with_delta(self, ctx8, ctx9):
        rng = np.random.default_rng(11)
        for k in range(200):
            ctx = (ctx8, ctx9)[k % 2]
            s = int(rng.choice(levels(ctx)))
            n = int(rng.integers(2, 4))
            f = random_cochain(ctx, rng, n, step=ctx.p ** s)
            assert delta(ctx, D_s(f, s)) == D_s(delta(ctx, f), s), (ctx, s, f)

    def test_delta_keeps_filtration(self, ctx8, ctx9):
        rng = np.random.default_rng(5)
        for k in range(150):
            ctx = (ctx8, ctx9)[k % 2]
            s = int(rng.choice(levels(ctx)))
            n = int(rng.integers(1, 4))
            f = random_cochain(ctx, rng, n, step=ctx.p ** s)
            assert filtration_level(delta(ctx, f)) >= filtration_level(f), (ctx, f)

    def test_lambda_preimage(self, ctx9):
        for s in (0, 1):
            d = 2 * 3 ** s
            assert D_s(lambda_preimage(ctx9, s), s) == delta(ctx9, lambda_cochain(ctx9, d))

    def test_lambda_in_image(self, ctx9):
        for s in (0, 1):
            for d in P_set(s, ctx9.q, ctx9.omega):
                assert lambda_in_image_of_D(ctx9, d, s), (d, s)
        assert not lambda_in_image_of_D(ctx9, 2, 1)

    def test_lambda_image_matches_P_set(self, ctx8, ctx9):
        ctx16 = context(2, [1, 1, 0, 0, 1], "g")
        for ctx in (ctx8, ctx9, ctx16):
            for s in levels(ctx):
                allowed = set(P_set(s, ctx.q, p=ctx.p))
                for d in range(1, ctx.q):
                    assert lambda_in_image_of_D(ctx, d, s) == (d in allowed), (ctx, d, s)
