"""
Sparse multivariate polynomials over F_q in U1, ..., U(n-1), Tn.

Terms map exponent tuples to nonzero element codes. The ring is not
truncated: exponents >= q are kept, and membership in C^n(q) is a
predicate (in_Cn_q), never a reduction.
"""

from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import ArityMismatch, SpecMismatch
from core.gf import FieldElement, FieldSpec, format_element

Monomial = Tuple[int, ...]
# a linear form is a sequence of (target variable index, coefficient code)
LinearForm = Sequence[Tuple[int, int]]
CoefLike = Union[FieldElement, int]


def variable_names(arity: int) -> List[str]:
    return [f"U{i}" for i in range(1, arity)] + [f"T{arity}"]


def monomial_key(exps: Monomial) -> Tuple:
    """Sort key: higher total degree first, then larger U1, U2, ... exponents"""
    return (-sum(exps), tuple(-e for e in exps))


class Polynomial:
    """Immutable sparse polynomial; coefficients stored as element codes"""

    __slots__ = ("spec", "arity", "_terms")

    def __init__(self, spec: FieldSpec, arity: int, terms: Optional[Mapping[Monomial, int]] = None):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.spec = spec
        self.arity = arity
        clean: Dict[Monomial, int] = {}
        for exps, code in (terms or {}).items():
            if len(exps) != arity:
                raise ArityMismatch(arity, len(exps))
            if code:
                clean[tuple(exps)] = code
        self._terms = clean

    # constructors

    @classmethod
    def zero(cls, spec: FieldSpec, arity: int) -> "Polynomial":
        return cls(spec, arity)

    @classmethod
    def monomial(cls, spec: FieldSpec, exps: Sequence[int], coef: CoefLike = 1) -> "Polynomial":
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {tuple(exps)}")
        return cls(spec, len(exps), {tuple(exps): _code(spec, coef)})

    @classmethod
    def constant(cls, spec: FieldSpec, arity: int, coef: CoefLike = 1) -> "Polynomial":
        return cls.monomial(spec, (0,) * arity, coef)

    @classmethod
    def _raw(cls, spec: FieldSpec, arity: int, terms: Dict[Monomial, int]) -> "Polynomial":
        # trusted path: terms already clean
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.arity = arity
        obj._terms = terms
        return obj

    # inspection

    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Monomial, int]]:
        return self._terms.items()

    def monomials(self) -> List[Monomial]:
        return sorted(self._terms, key=monomial_key)

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        return FieldElement(self.spec, self._terms.get(tuple(exps), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def total_degrees(self) -> List[int]:
        return sorted({sum(e) for e in self._terms})

    def homogeneous_parts(self) -> Dict[int, "Polynomial"]:
        parts: Dict[int, Dict[Monomial, int]] = {}
        for exps, code in self._terms.items():
            parts.setdefault(sum(exps), {})[exps] = code
        return {d: Polynomial._raw(self.spec, self.arity, t) for d, t in sorted(parts.items())}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.spec == other.spec and self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash((self.spec, self.arity, frozenset(self._terms.items())))

    # operators

    def __add__(self, other):
        return p_add(self, other)

    def __sub__(self, other):
        return p_sub(self, other)

    def __neg__(self):
        return p_neg(self)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return p_mul(self, other)
        return p_scale(self, other)

    def __rmul__(self, other):
        return p_scale(self, other)

    def __pow__(self, e: int):
        return p_pow(self, e)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, arity={self.arity}, q={self.spec.q})"


def _code(spec: FieldSpec, coef: CoefLike) -> int:
    if isinstance(coef, FieldElement):
        if coef.spec != spec:
            raise SpecMismatch(spec, coef.spec)
        return coef.code
    return spec.from_int(coef)


def _check_pair(f: Polynomial, g: Polynomial) -> None:
    if f.spec != g.spec:
        raise SpecMismatch(f.spec, g.spec)
    if f.arity != g.arity:
        raise ArityMismatch(f.arity, g.arity)


def _accumulate(spec: FieldSpec, acc: Dict[Monomial, int], exps: Monomial, code: int) -> None:
    new = spec.add_c(acc.get(exps, 0), code)
    if new:
        acc[exps] = new
    else:
        acc.pop(exps, None)


# ring operations

def p_add(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_pair(f, g)
    acc = dict(f._terms)
    for exps, code in g._terms.items():
        _accumulate(f.spec, acc, exps, code)
    return Polynomial._raw(f.spec, f.arity, acc)


def p_neg(f: Polynomial) -> Polynomial:
    neg = f.spec.neg_c
    return Polynomial._raw(f.spec, f.arity, {e: neg(c) for e, c in f._terms.items()})


def p_sub(f: Polynomial, g: Polynomial) -> Polynomial:
    return p_add(f, p_neg(g))


def p_scale(f: Polynomial, c: CoefLike) -> Polynomial:
    code = _code(f.spec, c)
    if code == 0:
        return Polynomial.zero(f.spec, f.arity)
    mul = f.spec.mul_c
    return Polynomial._raw(f.spec, f.arity, {e: mul(v, code) for e, v in f._terms.items()})


def p_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_pair(f, g)
    spec = f.spec
    mul = spec.mul_c
    acc: Dict[Monomial, int] = {}
    for e1, c1 in f._terms.items():
        for e2, c2 in g._terms.items():
            exps = tuple(a + b for a, b in zip(e1, e2))
            _accumulate(spec, acc, exps, mul(c1, c2))
    return Polynomial._raw(spec, f.arity, acc)


def p_sum(polys: Iterable[Polynomial], spec: FieldSpec, arity: int) -> Polynomial:
    acc: Dict[Monomial, int] = {}
    for f in polys:
        if f.spec != spec:
            raise SpecMismatch(spec, f.spec)
        if f.arity != arity:
            raise ArityMismatch(arity, f.arity)
        for exps, code in f._terms.items():
            _accumulate(spec, acc, exps, code)
    return Polynomial._raw(spec, arity, acc)


def frobenius_power(f: Polynomial, i: int) -> Polynomial:
    """f^(p^i): exponents times p^i, coefficients through Frobenius"""
    spec = f.spec
    k = spec.p ** i
    return Polynomial._raw(
        spec, f.arity,
        {tuple(e * k for e in exps): spec.pow_c(c, k) for exps, c in f._terms.items()},
    )


def p_pow(f: Polynomial, e: int) -> Polynomial:
    """f^e as the product over base-p digits d_i of (f^d_i)^(p^i)"""
    if e < 0:
        raise ValueError("negative polynomial power")
    spec = f.spec
    result = Polynomial.constant(spec, f.arity)
    i = 0
    while e:
        e, digit = divmod(e, spec.p)
        if digit:
            block = Polynomial.constant(spec, f.arity)
            for _ in range(digit):
                block = p_mul(block, f)
            result = p_mul(result, frobenius_power(block, i))
        i += 1
    return result


def lucas_binomial(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p from the base-p digits of n and k"""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        result = result * _small_binomial(ni, ki) % p
    return result


def _small_binomial(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out = out * (n - j) // (j + 1)
    return out


def _two_term_power(spec: FieldSpec, i: int, c1: int, j: int, c2: int, a: int, arity: int) -> Dict[Monomial, int]:
    """(c1*X_i + c2*X_j)^a, i != j, as raw terms"""
    p = spec.p
    acc: Dict[Monomial, int] = {}
    for k in range(a + 1):
        b = lucas_binomial(a, k, p)
        if not b:
            continue
        code = spec.mul_c(spec.from_int(b), spec.mul_c(spec.pow_c(c1, a - k), spec.pow_c(c2, k)))
        if code:
            exps = [0] * arity
            exps[i] = a - k
            exps[j] = k
            acc[tuple(exps)] = code
    return acc


def expand_linear_power(c1: FieldElement, c2: FieldElement, a: int) -> Polynomial:
    """(c1*X + c2*Y)^a in two variables, binomials by Lucas"""
    if a < 0:
        raise ValueError("a must be non-negative")
    if c1.spec != c2.spec:
        raise SpecMismatch(c1.spec, c2.spec)
    spec = c1.spec
    return Polynomial(spec, 2, _two_term_power(spec, 0, c1.code, 1, c2.code, a, 2))


def _form_power(spec: FieldSpec, form: LinearForm, e: int, arity: int) -> Dict[Monomial, int]:
    merged: Dict[int, int] = {}
    for var, code in form:
        merged[var] = spec.add_c(merged.get(var, 0), code)
    parts = [(v, c) for v, c in sorted(merged.items()) if c]
    if e == 0:
        return {(0,) * arity: 1}
    if not parts:
        return {}
    if len(parts) == 1:
        var, code = parts[0]
        exps = [0] * arity
        exps[var] = e
        return {tuple(exps): spec.pow_c(code, e)}
    if len(parts) == 2:
        (i, c1), (j, c2) = parts
        return _two_term_power(spec, i, c1, j, c2, e, arity)
    base_terms: Dict[Monomial, int] = {}
    for var, code in parts:
        exps = [0] * arity
        exps[var] = 1
        base_terms[tuple(exps)] = code
    return p_pow(Polynomial._raw(spec, arity, base_terms), e)._terms


def substitute(
    f: Polynomial,
    forms: Sequence[LinearForm],
    target_arity: Optional[int] = None,
    cache: Optional[Dict] = None,
) -> Polynomial:
    """Replace variable k of f by the linear form forms[k] and expand"""
    if len(forms) != f.arity:
        raise ArityMismatch(f.arity, len(forms))
    if target_arity is None:
        target_arity = max([v + 1 for form in forms for v, _ in form] or [1])
    spec = f.spec
    mul = spec.mul_c
    powers = cache if cache is not None else {}

    acc: Dict[Monomial, int] = {}
    for exps, coef in f._terms.items():
        partial: Dict[Monomial, int] = {(0,) * target_arity: coef}
        for k, e in enumerate(exps):
            key = (k, tuple(forms[k]), e, target_arity)
            pw = powers.get(key)
            if pw is None:
                pw = _form_power(spec, forms[k], e, target_arity)
                powers[key] = pw
            if len(pw) == 1 and next(iter(pw)) == (0,) * target_arity:
                continue
            nxt: Dict[Monomial, int] = {}
            for e1, c1 in partial.items():
                for e2, c2 in pw.items():
                    _accumulate(spec, nxt, tuple(a + b for a, b in zip(e1, e2)), mul(c1, c2))
            partial = nxt
            if not partial:
                break
        for e1, c1 in partial.items():
            _accumulate(spec, acc, e1, c1)
    return Polynomial._raw(spec, target_arity, acc)


def identity_forms(arity: int) -> List[LinearForm]:
    return [((k, 1),) for k in range(arity)]


# predicates and evaluation

def divisible_by_omega_prefix(f: Polynomial) -> bool:
    """Every monomial has exponent >= 1 in U1 .. U(n-1)"""
    return all(all(e >= 1 for e in exps[:-1]) for exps in f._terms)


def in_Cn_q(f: Polynomial, q: int) -> bool:
    return divisible_by_omega_prefix(f) and all(max(exps) <= q - 1 for exps in f._terms)


def evaluate(f: Polynomial, point: Sequence[CoefLike]) -> FieldElement:
    if len(point) != f.arity:
        raise ArityMismatch(f.arity, len(point))
    spec = f.spec
    codes = [_code(spec, x) for x in point]
    total = 0
    for exps, coef in f._terms.items():
        value = coef
        for x, e in zip(codes, exps):
            if e:
                value = spec.mul_c(value, spec.pow_c(x, e))
        total = spec.add_c(total, value)
    return FieldElement(spec, total)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: ' + '-joined terms in monomial_key order"""
    if f.is_zero():
        return "0"
    names = variable_names(f.arity)
    out = []
    for exps in f.monomials():
        coef = format_element(FieldElement(f.spec, f._terms[exps]))
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            out.append(coef)
            continue
        if coef != "1":
            factors.insert(0, f"({coef})" if "+" in coef else coef)
        out.append("*".join(factors))
    return " + ".join(out)

