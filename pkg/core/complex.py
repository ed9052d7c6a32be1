"""
The polynomial quandle complex C*(q) of the Alexander quandle F_q[T]/(T-w).

C^n is spanned by monomials U1^i1 ... U(n-1)^i(n-1) Tn^in with every U
exponent >= 1; C^n(q) bounds all exponents by q-1. The differential is
computed symbolically per monomial and assembled into matrices one
total-degree slice at a time.
"""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core import linalg
from core.errors import BadFiltration, NotInComplex, NotInFiltration
from core.gf import FieldSpec, Omega
from core.linalg import MatrixFq
from core.log import get_logger
from core.polyring import (
    Monomial,
    Polynomial,
    divisible_by_omega_prefix,
    frobenius_power,
    monomial_key,
    p_mul,
    p_scale,
    p_sub,
    p_sum,
    substitute,
)

logger = get_logger(__name__)


class _AllDegrees:
    def __repr__(self) -> str:
        return "ALL"


ALL = _AllDegrees()
Degree = Union[int, _AllDegrees]


@dataclass(frozen=True)
class ComplexCtx:
    spec: FieldSpec
    omega: Omega

    def __post_init__(self):
        if self.omega.spec != self.spec:
            raise ValueError("omega must live in the context field")

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def w(self) -> int:
        """Code of omega"""
        return self.omega.code

    def omega_power(self, e: int) -> int:
        return self.spec.pow_c(self.w, e)

    def __str__(self) -> str:
        return f"{self.spec}, omega = {self.omega}"


# differential

def _differential_forms(ctx: ComplexCtx, n: int) -> List[Tuple[int, List[Tuple[Tuple[int, int], ...]]]]:
    """(sign code, forms) for the 2n substitutions making up delta on C^n"""
    spec, w = ctx.spec, ctx.w
    one, minus_one = 1, spec.neg_c(1)
    out = []
    for i in range(1, n + 1):
        sign = one if (i - 1) % 2 == 0 else minus_one
        # w*X_1, ..., w*X_(i-1), w*X_i + X_(i+1), X_(i+2), ...
        scaled = []
        merged = []
        for k in range(n):
            if k < i - 1:
                scaled.append(((k, w),))
                merged.append(((k, 1),))
            elif k == i - 1:
                scaled.append(((k, w), (k + 1, 1)))
                merged.append(((k, 1), (k + 1, 1)))
            else:
                scaled.append(((k + 1, 1),))
                merged.append(((k + 1, 1),))
        out.append((sign, scaled))
        out.append((spec.neg_c(sign), merged))
    return out


def delta(ctx: ComplexCtx, f: Polynomial) -> Polynomial:
    """The differential C^n -> C^(n+1)"""
    if not divisible_by_omega_prefix(f):
        raise NotInComplex(str(f))
    n = f.arity
    cache: Dict = {}
    parts = [
        p_scale(substitute(f, forms, target_arity=n + 1, cache=cache), sign)
        for sign, forms in _differential_forms(ctx, n)
    ]
    return p_sum(parts, ctx.spec, n + 1)


@lru_cache(maxsize=None)
def _delta_monomial(ctx: ComplexCtx, exps: Monomial) -> Dict[Monomial, int]:
    return delta(ctx, Polynomial.monomial(ctx.spec, exps)).terms


def delta_by_last_variable(ctx: ComplexCtx, f: Polynomial) -> Polynomial:
    """delta through f = sum_a f_a * Tn^a, one total degree at a time

    delta(f) = sum_a delta(f_a) * T(n+1)^a
               + (-1)^(n-1) * sum_a f_a * (w^d (Un + w^-1 T(n+1))^a - (Un + T(n+1))^a)
    """
    if not divisible_by_omega_prefix(f):
        raise NotInComplex(str(f))
    spec, n = ctx.spec, f.arity
    w_inv = spec.inv_c(ctx.w)
    sign = 1 if (n - 1) % 2 == 0 else spec.neg_c(1)
    pieces: List[Polynomial] = []

    for d, part in f.homogeneous_parts().items():
        by_power: Dict[int, Dict[Monomial, int]] = {}
        for exps, code in part.items():
            by_power.setdefault(exps[-1], {})[exps[:-1]] = code
        w_d = ctx.omega_power(d)
        for a, rest in by_power.items():
            if n > 1:
                f_a = Polynomial(spec, n - 1, rest)
                lower = delta(ctx, f_a)
                pieces.append(Polynomial(spec, n + 1, {e + (a,): c for e, c in lower.items()}))
                embedded = Polynomial(spec, n + 1, {e + (0, 0): c for e, c in rest.items()})
            else:
                embedded = Polynomial.constant(spec, 2, rest[()])
            t_a = Polynomial.monomial(spec, (a,))
            twisted = substitute(t_a, [((n - 1, 1), (n, w_inv))], target_arity=n + 1)
            plain = substitute(t_a, [((n - 1, 1), (n, 1))], target_arity=n + 1)
            bracket = p_sub(p_scale(twisted, w_d), plain)
            pieces.append(p_scale(p_mul(embedded, bracket), sign))

    return p_sum(pieces, spec, n + 1)


# bases and matrices

@lru_cache(maxsize=None)
def _basis_by_degree(q: int, n: int) -> Dict[int, Tuple[Monomial, ...]]:
    ranges = [range(1, q)] * (n - 1) + [range(q)]
    grouped: Dict[int, List[Monomial]] = {}
    for exps in itertools.product(*ranges):
        grouped.setdefault(sum(exps), []).append(exps)
    return {d: tuple(sorted(monos, key=monomial_key)) for d, monos in sorted(grouped.items())}


def basis_C(ctx: ComplexCtx, n: int, d: Degree = ALL) -> List[Monomial]:
    """Monomial basis of C^n(q), or of its total-degree-d slice"""
    if n < 1:
        raise ValueError("n must be at least 1")
    by_degree = _basis_by_degree(ctx.q, n)
    if d is ALL:
        return sorted(itertools.chain.from_iterable(by_degree.values()), key=monomial_key)
    return list(by_degree.get(d, ()))


def degrees(ctx: ComplexCtx, n: int) -> List[int]:
    return list(_basis_by_degree(ctx.q, n))


def coordinates(f: Polynomial, basis: Sequence[Monomial]) -> np.ndarray:
    """Coordinate vector of f in a monomial basis"""
    index = {m: i for i, m in enumerate(basis)}
    v = np.zeros(len(basis), dtype=np.int64)
    for exps, code in f.items():
        if exps not in index:
            raise NotInComplex(f"monomial {exps} outside the basis")
        v[index[exps]] = code
    return v


def delta_matrix(ctx: ComplexCtx, n: int, d: Degree = ALL) -> MatrixFq:
    """Matrix of delta: C^n_d(q) -> C^(n+1)_d(q) in the canonical bases"""
    cols = basis_C(ctx, n, d)
    rows = basis_C(ctx, n + 1, d)
    row_index = {m: i for i, m in enumerate(rows)}
    r, c, codes = [], [], []
    for j, mono in enumerate(cols):
        for exps, code in _delta_monomial(ctx, mono).items():
            i = row_index.get(exps)
            if i is None:
                raise NotInComplex(f"delta of {mono} leaves C^{n + 1}(q) at {exps}")
            r.append(i)
            c.append(j)
            codes.append(code)
    return linalg.from_triples(ctx.spec, len(rows), len(cols), r, c, codes, sparse=False)


@dataclass(frozen=True, eq=False)
class CochainSlice:
    """C^n_d(q) with its basis and the matrix of delta out of it"""

    n: int
    d: Degree
    basis: Tuple[Monomial, ...]
    target_basis: Tuple[Monomial, ...]
    delta_matrix: MatrixFq

    @property
    def dim(self) -> int:
        return len(self.basis)


def build_slice(ctx: ComplexCtx, n: int, d: Degree = ALL) -> CochainSlice:
    M = delta_matrix(ctx, n, d)
    logger.debug("slice n=%d d=%s: %d -> %d", n, d, M.cols, M.rows)
    return CochainSlice(n, d, tuple(basis_C(ctx, n, d)), tuple(basis_C(ctx, n + 1, d)), M)


def h_dim_by_degree(ctx: ComplexCtx, n: int) -> Dict[int, int]:
    """dim H^n(C*_d(q)) for every total degree d carrying cochains"""
    out: Dict[int, int] = {}
    for d in degrees(ctx, n):
        dim = len(basis_C(ctx, n, d))
        rank_out = linalg.rank(delta_matrix(ctx, n, d))
        rank_in = linalg.rank(delta_matrix(ctx, n - 1, d)) if n > 1 and basis_C(ctx, n - 1, d) else 0
        out[d] = dim - rank_out - rank_in
    return out


def h_dim(ctx: ComplexCtx, n: int) -> int:
    """dim H^n(C*(q)) summed over the degree slices"""
    return sum(h_dim_by_degree(ctx, n).values())


# filtration and derivative operators

def _p_valuation(e: int, p: int) -> int:
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return v


def filtration_level(f: Polynomial) -> Union[int, float]:
    """Largest s with every last-variable exponent divisible by p^s; inf without Tn"""
    exps = [e[-1] for e in f.terms if e[-1] > 0]
    if not exps:
        return math.inf
    return min(_p_valuation(e, f.spec.p) for e in exps)


def D_s(f: Polynomial, s: int) -> Polynomial:
    """sum f_a Tn^(a p^s)  ->  sum a f_a Tn^((a-1) p^s)"""
    spec = f.spec
    step = spec.p ** s
    terms: Dict[Monomial, int] = {}
    for exps, code in f.items():
        e = exps[-1]
        if e % step:
            raise NotInFiltration(s, e)
        a = e // step
        factor = spec.from_int(a)
        if factor:
            terms[exps[:-1] + ((a - 1) * step,)] = spec.mul_c(code, factor)
    return Polynomial(spec, f.arity, terms)


def P_set(s: int, q: int, omega: Optional[Omega] = None, p: Optional[int] = None) -> List[int]:
    """{p^t : t < s} together with {b p^s < q : b != -1 mod p, or b = p-1}"""
    if p is None:
        if omega is None:
            raise ValueError("P_set needs omega or p")
        p = omega.spec.p
    step = p ** s
    if step >= q:
        raise BadFiltration(s, q)
    out = {p ** t for t in range(s)}
    for b in range(1, (q - 1) // step + 1):
        if b % p != p - 1 or b == p - 1:
            out.add(b * step)
    return sorted(out)


def lambda_cochain(ctx: ComplexCtx, d: int) -> Polynomial:
    """The 1-cochain T1^d"""
    return Polynomial.monomial(ctx.spec, (d,))


def lambda_preimage(ctx: ComplexCtx, s: int) -> Polynomial:
    """[p^-1((wU1+T2)^p - (U1+T2)^p + (1-w^p)U1^p)]^(p^s)

    The division by p happens on the integer binomials, so the result is
    defined in characteristic p; D_s of it is delta(T1^((p-1)p^s)).
    """
    spec, p = ctx.spec, ctx.p
    terms: Dict[Monomial, int] = {}
    for i in range(1, p):
        quotient = (math.comb(p, i) // p) % p
        code = spec.mul_c(spec.from_int(quotient), spec.sub_c(ctx.omega_power(p - i), 1))
        if code:
            terms[(p - i, i)] = code
    return frobenius_power(Polynomial(spec, 2, terms), s)


def lambda_in_image_of_D(ctx: ComplexCtx, d: int, s: int) -> bool:
    """Whether delta(T1^d) = D_s(g) for some g in C^(2(s)) of degree d + p^s"""
    spec, p = ctx.spec, ctx.p
    step = p ** s
    target = delta(ctx, lambda_cochain(ctx, d))
    rows = [(i, d - i) for i in range(d, 0, -1)]
    row_index = {m: k for k, m in enumerate(rows)}
    candidates = [(d + step - j * step, j * step) for j in range(1, d // step + 2) if d + step - j * step >= 1]

    r, c, codes = [], [], []
    for col, mono in enumerate(candidates):
        image = D_s(Polynomial.monomial(spec, mono), s)
        for exps, code in image.items():
            r.append(row_index[exps])
            c.append(col)
            codes.append(code)
    M = linalg.from_triples(spec, len(rows), len(candidates), r, c, codes, sparse=False)
    v = np.zeros(len(rows), dtype=np.int64)
    for exps, code in target.items():
        v[row_index[exps]] = code
    return linalg.in_column_span(M, v)
