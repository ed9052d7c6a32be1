"""
Explicit cochain families and the basis I(q) of H^3.

Constructors (make_*) build any parameterisation; the admissibility
conditions (powers of omega, inequalities) live in the enumerators, so
non-admissible parameters can still be realized and inspected.
"""

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from core.complex import ComplexCtx, filtration_level, lambda_cochain
from core.errors import (
    AdmissibilityViolation,
    NotDivisibleByP,
    NotPowerOfP,
    NotPrime,
    OmegaPrefixViolation,
    SpecParseError,
)
from core.gf import FieldSpec, is_prime, omega_pow_is_one, prime_field
from core.polyring import Polynomial, p_add, p_pow, p_scale, p_sub, substitute


class Family(Enum):
    F3 = "F3"
    F2 = "F2"
    PSI = "Psi"
    E0 = "E0"
    E1 = "E1"
    GAMMA = "Gamma"
    J2 = "J2"
    LAMBDA = "Lambda"


_ARITY = {
    Family.F3: 3,
    Family.F2: 2,
    Family.PSI: 2,
    Family.E0: 2,
    Family.E1: 2,
    Family.GAMMA: 4,
    Family.J2: 2,
    Family.LAMBDA: 1,
}

_TEXT_NAMES = {
    "f": None,  # F3 or F2, decided by the parameters
    "psi": Family.PSI,
    "e0": Family.E0,
    "e1": Family.E1,
    "gamma": Family.GAMMA,
    "j2": Family.J2,
    "lambda": Family.LAMBDA,
}


@dataclass(frozen=True)
class CocycleSpec:
    family: Family
    params: Tuple[int, ...]

    def __post_init__(self):
        if len(self.params) != _ARITY[self.family]:
            raise ValueError(f"{self.family.value} takes {_ARITY[self.family]} parameters, got {len(self.params)}")
        if any(x < 0 for x in self.params):
            raise ValueError(f"negative parameter in {self.params}")

    def __str__(self) -> str:
        return format_spec(self)

    @property
    def cochain_degree(self) -> int:
        """n such that the realized polynomial lies in C^n"""
        return {Family.J2: 2, Family.LAMBDA: 1}.get(self.family, 3)


def format_spec(spec: CocycleSpec) -> str:
    args = ",".join(str(x) for x in spec.params)
    if spec.family is Family.F3:
        return f"F({args})"
    if spec.family is Family.F2:
        return f"F({args},0)"
    return f"{spec.family.value}({args})"


_SPEC_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*\(\s*([0-9\s,]*)\)\s*$")


def parse_spec(text: str) -> CocycleSpec:
    """Parse F(a,b,c), F(a,b), Psi(a,b), E0(a,b), E1(a,b), Gamma(a,b,c,d), Lambda(d), J2(a,b)"""
    match = _SPEC_RE.match(text or "")
    if not match:
        raise SpecParseError(text)
    name = match.group(1).lower()
    if name not in _TEXT_NAMES:
        raise SpecParseError(text, f"unknown family {match.group(1)!r}")
    raw = [x.strip() for x in match.group(2).split(",")] if match.group(2).strip() else []
    if any(not x for x in raw):
        raise SpecParseError(text, "empty parameter")
    try:
        params = tuple(int(x) for x in raw)
    except ValueError:
        raise SpecParseError(text, "non-integer parameter") from None

    family = _TEXT_NAMES[name]
    if family is None:
        if len(params) == 3 and params[2] == 0:
            family, params = Family.F2, params[:2]
        elif len(params) == 3:
            family = Family.F3
        elif len(params) == 2:
            family = Family.F2
        else:
            raise SpecParseError(text, "F takes 2 or 3 parameters")
    if len(params) != _ARITY[family]:
        raise SpecParseError(text, f"{family.value} takes {_ARITY[family]} parameters")
    return CocycleSpec(family, params)


def powers_of_p_below(p: int, q: int) -> List[int]:
    out, x = [], 1
    while x < q:
        out.append(x)
        x *= p
    return out


def is_power_of(value: int, p: int) -> bool:
    if value < 1:
        return False
    while value % p == 0:
        value //= p
    return value == 1


# building blocks

def chi(p: int, spec: Optional[FieldSpec] = None) -> Polynomial:
    """(1/p)((x+y)^p - x^p - y^p), division by p done on the integer binomials"""
    if not is_prime(p):
        raise NotPrime(p)
    spec = spec or prime_field(p)
    terms = {}
    for i in range(1, p):
        code = spec.from_int(math.comb(p, i) // p)
        if code:
            terms[(p - i, i)] = code
    return Polynomial(spec, 2, terms)


def chi_alternating(p: int, spec: Optional[FieldSpec] = None) -> Polynomial:
    """sum_{i=1}^{p-1} (-1)^(i-1) i^-1 x^(p-i) y^i, the same polynomial as chi"""
    if not is_prime(p):
        raise NotPrime(p)
    spec = spec or prime_field(p)
    terms = {}
    for i in range(1, p):
        code = spec.from_int((-1) ** (i - 1) * pow(i, -1, p))
        if code:
            terms[(p - i, i)] = code
    return Polynomial(spec, 2, terms)


def mu(ctx: ComplexCtx, a: int) -> Polynomial:
    """mu_a(x, y) = (x+y)^a - x^a - y^a"""
    spec = ctx.spec
    total = substitute(Polynomial.monomial(spec, (a,)), [((0, 1), (1, 1))], target_arity=2)
    return p_sub(total, p_add(Polynomial.monomial(spec, (a, 0)), Polynomial.monomial(spec, (0, a))))


def make_F(ctx: ComplexCtx, a: int, b: int, c: int = 0) -> Polynomial:
    """U1^a U2^b T3^c"""
    if a < 1 or b < 1:
        raise OmegaPrefixViolation("F", (a, b, c))
    return Polynomial.monomial(ctx.spec, (a, b, c))


def make_G(ctx: ComplexCtx, a: int, b: int, c: int, d: int = 0) -> Polynomial:
    """U1^a U2^b U3^c T4^d"""
    if a < 1 or b < 1 or c < 1:
        raise OmegaPrefixViolation("G", (a, b, c, d))
    return Polynomial.monomial(ctx.spec, (a, b, c, d))


def make_Psi(ctx: ComplexCtx, a: int, b: int) -> Polynomial:
    """((wU1+U2)^a - (U1+U2)^a + (1-w^a) U1^a) T3^b"""
    if a < 1:
        raise OmegaPrefixViolation("Psi", (a, b))
    spec, w = ctx.spec, ctx.w
    t_a = Polynomial.monomial(spec, (a,))
    twisted = substitute(t_a, [((0, w), (1, 1))], target_arity=3)
    plain = substitute(t_a, [((0, 1), (1, 1))], target_arity=3)
    correction = Polynomial.monomial(spec, (a, 0, 0), spec.sub_c(1, ctx.omega_power(a)))
    body = p_add(p_sub(twisted, plain), correction)
    return _times_last(body, b)


def _times_last(f: Polynomial, b: int) -> Polynomial:
    return Polynomial(f.spec, f.arity, {e[:-1] + (e[-1] + b,): c for e, c in f.items()})


def _chi_in(ctx: ComplexCtx, forms, arity: int) -> Polynomial:
    return substitute(chi(ctx.p, ctx.spec), forms, target_arity=arity)


def make_E0(ctx: ComplexCtx, ap: int, b: int) -> Polynomial:
    """(chi(wU1, U2) - chi(U1, U2))^a T3^b for the first parameter a*p"""
    if ap % ctx.p:
        raise NotDivisibleByP("E0", ap, ctx.p)
    a = ap // ctx.p
    twisted = _chi_in(ctx, [((0, ctx.w),), ((1, 1),)], 3)
    plain = _chi_in(ctx, [((0, 1),), ((1, 1),)], 3)
    return _times_last(p_pow(p_sub(twisted, plain), a), b)


def make_E1(ctx: ComplexCtx, a: int, bp: int) -> Polynomial:
    """U1^a (chi(U2, T3) - chi(U2, w^-1 T3))^b for the second parameter b*p"""
    if bp % ctx.p:
        raise NotDivisibleByP("E1", bp, ctx.p)
    if a < 1:
        raise OmegaPrefixViolation("E1", (a, bp))
    spec = ctx.spec
    b = bp // ctx.p
    plain = _chi_in(ctx, [((1, 1),), ((2, 1),)], 3)
    twisted = _chi_in(ctx, [((1, 1),), ((2, spec.inv_c(ctx.w)),)], 3)
    body = p_pow(p_sub(plain, twisted), b)
    return Polynomial(spec, 3, {(e[0] + a,) + e[1:]: c for e, c in body.items()})


# quadruples and Gamma

@dataclass(frozen=True, order=True)
class QQuadruple:
    q1: int
    q2: int
    q3: int
    q4: int
    case: int

    @property
    def powers(self) -> Tuple[int, int, int, int]:
        return self.q1, self.q2, self.q3, self.q4


def classify_quadruple(ctx: ComplexCtx, q1: int, q2: int, q3: int, q4: int) -> Optional[QQuadruple]:
    """The case (1-5) the quadruple falls under, or None outside the admissible set"""
    p = ctx.p
    for value in (q1, q2, q3, q4):
        if not is_power_of(value, p):
            raise NotPowerOfP(value, p)
    w = ctx.omega
    if not (q2 <= q3 and q1 < q3 and q2 < q4):
        return None
    if not (omega_pow_is_one(w, q1 + q3) and omega_pow_is_one(w, q2 + q4)):
        return None

    def found(case: int) -> QQuadruple:
        return QQuadruple(q1, q2, q3, q4, case)

    if omega_pow_is_one(w, q1 + q2):
        return found(1)
    if q3 > q4:
        return found(2)
    same_power = ctx.omega_power(q1) == ctx.omega_power(q2)
    if p != 2:
        if q3 == q4:
            return found(3)
        if q2 <= q1 < q3 < q4 and same_power:
            return found(4)
    elif q2 < q1 < q3 < q4 and same_power:
        return found(5)
    return None


def make_Gamma(ctx: ComplexCtx, quad: QQuadruple) -> Polynomial:
    spec = ctx.spec
    q1, q2, q3, q4 = quad.powers
    head = make_F(ctx, q1, q2 + q3, q4)
    if quad.case == 1:
        return head
    if quad.case == 2:
        coef = spec.mul_c(
            spec.inv_c(spec.sub_c(ctx.omega_power(q2), 1)),
            spec.sub_c(1, ctx.omega_power(q1 + q2)),
        )
        correction = p_sub(make_F(ctx, q1, q2, q3 + q4), make_F(ctx, q1 + q2, q4, q3))
        return p_sub(p_sub(head, make_F(ctx, q2, q1 + q4, q3)), p_scale(correction, coef))
    if quad.case == 3:
        # 2^-1 (1 + w^-q3) keeps delta zero given w^q1 = w^q2 = w^-q3
        w_neg = spec.inv_c(ctx.omega_power(q3))
        coef = spec.mul_c(spec.inv_c(spec.from_int(2)), spec.add_c(1, w_neg))
        return p_add(head, p_scale(make_F(ctx, q1, q2, q3 + q4), coef))
    coef = spec.mul_c(
        spec.inv_c(spec.sub_c(ctx.omega_power(q1), 1)),
        spec.sub_c(1, ctx.omega_power(2 * q1)),
    )
    tail = p_scale(make_F(ctx, q1 + q2, q3, q4), coef)
    return p_sub(p_add(head, make_F(ctx, q2, q1 + q3, q4)), tail)


# enumeration

def _field_q(ctx: ComplexCtx, q: Optional[int]) -> int:
    return ctx.q if q is None else q


def enumerate_Q(ctx: ComplexCtx, q: Optional[int] = None) -> List[QQuadruple]:
    powers = powers_of_p_below(ctx.p, _field_q(ctx, q))
    out = []
    for q1 in powers:
        for q2 in powers:
            for q3 in powers:
                for q4 in powers:
                    quad = classify_quadruple(ctx, q1, q2, q3, q4)
                    if quad is not None:
                        out.append(quad)
    return out


def enumerate_Q_d(ctx: ComplexCtx, q: Optional[int], d: int) -> List[QQuadruple]:
    return [quad for quad in enumerate_Q(ctx, q) if sum(quad.powers) == d]


def enumerate_I(ctx: ComplexCtx, q: Optional[int] = None) -> List[CocycleSpec]:
    """The generating set I(q) of H^3, families in order F3, F2, Psi, E0, E1, Gamma"""
    q = _field_q(ctx, q)
    p, w = ctx.p, ctx.omega
    powers = powers_of_p_below(p, q)
    out: List[CocycleSpec] = []

    for q1 in powers:
        for q2 in powers:
            for q3 in powers:
                if q1 < q2 < q3 and omega_pow_is_one(w, q1 + q2 + q3):
                    out.append(CocycleSpec(Family.F3, (q1, q2, q3)))

    for q1 in powers:
        for q2 in powers:
            if q1 < q2 and omega_pow_is_one(w, q1 + q2):
                out.append(CocycleSpec(Family.F2, (q1, q2)))

    for a in range(1, q):
        if is_power_of(a, p):
            continue
        for q1 in powers:
            if q1 > 1 and a % q1 and omega_pow_is_one(w, a + q1):
                out.append(CocycleSpec(Family.PSI, (a, q1)))

    for q1 in powers:
        for q2 in powers:
            if q1 < q2 and omega_pow_is_one(w, p * q1 + q2):
                out.append(CocycleSpec(Family.E0, (p * q1, q2)))

    for q1 in powers:
        for q2 in powers:
            if q1 <= q2 and omega_pow_is_one(w, q1 + p * q2):
                out.append(CocycleSpec(Family.E1, (q1, p * q2)))

    for quad in enumerate_Q(ctx, q):
        out.append(CocycleSpec(Family.GAMMA, quad.powers))
    return out


def spec_degree(spec: CocycleSpec) -> int:
    """Total degree of the realized polynomial"""
    return sum(spec.params)


def enumerate_I_d(ctx: ComplexCtx, q: Optional[int], d: int) -> List[CocycleSpec]:
    return [s for s in enumerate_I(ctx, q) if spec_degree(s) == d]


def enumerate_J2(ctx: ComplexCtx, q: Optional[int] = None) -> List[CocycleSpec]:
    """U1^(p^t) T2^(p^s) with t < s, p^s < q and w^(p^t + p^s) = 1"""
    powers = powers_of_p_below(ctx.p, _field_q(ctx, q))
    out = []
    for small in powers:
        for large in powers:
            if small < large and omega_pow_is_one(ctx.omega, small + large):
                out.append(CocycleSpec(Family.J2, (small, large)))
    return out


def is_admissible(ctx: ComplexCtx, spec: CocycleSpec) -> bool:
    if spec.family is Family.LAMBDA:
        return True
    if spec.family is Family.J2:
        return spec in enumerate_J2(ctx)
    return spec in enumerate_I(ctx)


def realize(ctx: ComplexCtx, spec: CocycleSpec, check: bool = False) -> Polynomial:
    """Expand a spec into its polynomial; check=True demands admissibility"""
    if check and not is_admissible(ctx, spec):
        raise AdmissibilityViolation(spec, f"not admissible over {ctx}")
    family, params = spec.family, spec.params
    if family is Family.F3:
        return make_F(ctx, *params)
    if family is Family.F2:
        return make_F(ctx, params[0], params[1], 0)
    if family is Family.PSI:
        return make_Psi(ctx, *params)
    if family is Family.E0:
        return make_E0(ctx, *params)
    if family is Family.E1:
        return make_E1(ctx, *params)
    if family is Family.GAMMA:
        quad = classify_quadruple(ctx, *params)
        if quad is None:
            raise AdmissibilityViolation(spec, "quadruple outside the admissible set")
        return make_Gamma(ctx, quad)
    if family is Family.J2:
        small, large = params
        if small < 1:
            raise OmegaPrefixViolation("J2", params)
        return Polynomial.monomial(ctx.spec, (small, large))
    return lambda_cochain(ctx, params[0])


def grade(ctx: ComplexCtx, spec: CocycleSpec) -> Tuple[int, Union[int, float]]:
    """(total degree, filtration level) of the realized polynomial"""
    return spec_degree(spec), filtration_level(realize(ctx, spec))


def group_by_degree(ctx: ComplexCtx, specs: Sequence[CocycleSpec]) -> Dict[int, List[CocycleSpec]]:
    out: Dict[int, List[CocycleSpec]] = {}
    for s in specs:
        out.setdefault(spec_degree(s), []).append(s)
    return dict(sorted(out.items()))
