"""
Exact arithmetic in F_p and F_q = F_p[x]/(m(x)).

Elements are coefficient vectors in the power basis 1, g, ..., g^(m-1).
Internally every element also has an integer code sum(c_i * p^i); the
hot paths (polynomials, matrices) work on codes through precomputed
tables held by the FieldSpec.
"""

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from core.errors import (
    DegreeZero,
    DivisionByZero,
    ElementParseError,
    InvalidOmega,
    NotMonic,
    NotPrime,
    Reducible,
    SpecMismatch,
    ZeroElement,
)

GENERATOR_SYMBOL = "g"


def is_prime(n: int) -> bool:
    """Trial division; inputs are tiny"""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- polynomials over F_p as coefficient lists, constant term first ---

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    a = _trim([x % p for x in a])
    m = _trim(list(m))
    inv_lead = pow(m[-1], p - 2, p) if p > 2 else 1
    while len(a) >= len(m):
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> List[int]:
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """No factor of degree <= m/2, via gcd with x^(p^i) - x"""
    m = len(modulus) - 1
    x = [0, 1]
    h = x
    for _ in range(1, m // 2 + 1):
        h = _poly_powmod(h, p, modulus, p)
        g = _poly_gcd(modulus, _poly_sub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


# --- fields ---

@dataclass(frozen=True)
class FieldTables:
    """Operation tables on element codes (numpy for vectorised use, lists for scalars)"""

    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    coeffs: np.ndarray          # q x m, code -> coefficient vector
    add_l: List[List[int]] = field(repr=False)
    sub_l: List[List[int]] = field(repr=False)
    mul_l: List[List[int]] = field(repr=False)
    neg_l: List[int] = field(repr=False)
    inv_l: List[int] = field(repr=False)


@dataclass(frozen=True)
class FieldSpec:
    """F_q = F_p[g]/(modulus(g)); modulus is monic, constant term first"""

    p: int
    modulus: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.modulus) - 1

    @property
    def degree(self) -> int:
        return self.m

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __str__(self) -> str:
        return f"F_{self.q} = F_{self.p}[{GENERATOR_SYMBOL}]/({format_modulus(self.modulus)})"

    # codes <-> coefficient vectors

    def code_of(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return code

    def coeffs_of(self, code: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def from_int(self, n: int) -> int:
        """Code of the integer n (image of Z in the prime subfield)"""
        return n % self.p

    @cached_property
    def tables(self) -> FieldTables:
        q, m, p = self.q, self.m, self.p
        coeffs = np.array([self.coeffs_of(c) for c in range(q)], dtype=np.int64).reshape(q, m)
        weights = np.array([p ** i for i in range(m)], dtype=np.int64)

        add = ((coeffs[:, None, :] + coeffs[None, :, :]) % p) @ weights
        sub = ((coeffs[:, None, :] - coeffs[None, :, :]) % p) @ weights
        neg = ((-coeffs) % p) @ weights

        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            ca = list(coeffs[a])
            for b in range(a, q):
                prod = _poly_mod(_poly_mul(_trim(list(ca)), _trim(list(coeffs[b])), p), self.modulus, p)
                code = self.code_of(prod)
                mul[a, b] = code
                mul[b, a] = code

        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            hits = np.nonzero(mul[a] == 1)[0]
            inv[a] = int(hits[0])

        return FieldTables(
            add=add, sub=sub, mul=mul, neg=neg, inv=inv, coeffs=coeffs,
            add_l=add.tolist(), sub_l=sub.tolist(), mul_l=mul.tolist(),
            neg_l=neg.tolist(), inv_l=inv.tolist(),
        )

    # scalar code arithmetic

    def add_c(self, a: int, b: int) -> int:
        return self.tables.add_l[a][b]

    def sub_c(self, a: int, b: int) -> int:
        return self.tables.sub_l[a][b]

    def mul_c(self, a: int, b: int) -> int:
        return self.tables.mul_l[a][b]

    def neg_c(self, a: int) -> int:
        return self.tables.neg_l[a]

    def inv_c(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero()
        return self.tables.inv_l[a]

    def pow_c(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv_c(a), -e
        result = 1
        mul = self.tables.mul_l
        while e:
            if e & 1:
                result = mul[result][a]
            a = mul[a][a]
            e >>= 1
        return result

    # elements

    def element(self, value: "ElementLike") -> "FieldElement":
        """Coerce an int (integer embedding), text, or FieldElement"""
        if isinstance(value, FieldElement):
            _check_same(self, value.spec)
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a field element")
        if isinstance(value, int):
            return FieldElement(self, self.from_int(value))
        if isinstance(value, str):
            return parse_element(self, value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def code(self, value: "ElementLike") -> int:
        return self.element(value).code

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of g; equals 0 in a prime field presented as F_p[g]/(g)"""
        return parse_element(self, GENERATOR_SYMBOL)

    def sorted_codes(self) -> List[int]:
        """Codes ordered by coefficient vector, constant term most significant"""
        return sorted(range(self.q), key=self.coeffs_of)


def _check_same(left: FieldSpec, right: FieldSpec) -> None:
    if left != right:
        raise SpecMismatch(left, right)


def make_field(p: int, modulus: Sequence[int]) -> FieldSpec:
    """Validate p and the modulus (constant term first) and build the field"""
    if not is_prime(p):
        raise NotPrime(p)
    coeffs = _trim([int(c) % p for c in modulus])
    if len(coeffs) < 2:
        raise DegreeZero()
    if coeffs[-1] != 1:
        raise NotMonic(modulus)
    if not _is_irreducible(coeffs, p):
        raise Reducible(coeffs)
    return FieldSpec(p, tuple(coeffs))


def prime_field(p: int) -> FieldSpec:
    """F_p presented as F_p[g]/(g)"""
    return make_field(p, [0, 1])


def format_modulus(modulus: Sequence[int]) -> str:
    terms = []
    for k in range(len(modulus) - 1, -1, -1):
        c = modulus[k]
        if c:
            terms.append(_format_term(c, k))
    return "+".join(terms) if terms else "0"


def _format_term(c: int, k: int) -> str:
    if k == 0:
        return str(c)
    mono = GENERATOR_SYMBOL if k == 1 else f"{GENERATOR_SYMBOL}^{k}"
    return mono if c == 1 else f"{c}*{mono}"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.spec.q:
            raise ValueError(f"code {self.code} out of range for {self.spec}")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.spec.coeffs_of(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            _check_same(self.spec, other.spec)
            return other.code
        if isinstance(other, int) and not isinstance(other, bool):
            return self.spec.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add_c(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub_c(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub_c(o, self.code))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_c(self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul_c(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul_c(self.code, self.spec.inv_c(o)))

    def __pow__(self, e: int):
        if self.code == 0 and e < 0:
            raise DivisionByZero()
        return FieldElement(self.spec, self.spec.pow_c(self.code, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv_c(self.code))

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"FieldElement({format_element(self)!r}, q={self.spec.q})"


ElementLike = Union[FieldElement, int, str]


# spec-level operations

def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def power(a: FieldElement, e: int) -> FieldElement:
    return a ** e


def frobenius(a: FieldElement) -> FieldElement:
    return a ** a.spec.p


def _divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def element_order(a: FieldElement) -> int:
    """Smallest n >= 1 with a^n = 1"""
    if a.code == 0:
        raise ZeroElement()
    spec = a.spec
    for d in _divisors(spec.q - 1):
        if spec.pow_c(a.code, d) == 1:
            return d
    raise AssertionError("element order must divide q-1")


def all_elements(spec: FieldSpec) -> List[FieldElement]:
    return [FieldElement(spec, c) for c in spec.sorted_codes()]


def primitive_element(spec: FieldSpec) -> FieldElement:
    """First element (in sorted order) generating F_q*"""
    for a in all_elements(spec):
        if a.code and element_order(a) == spec.q - 1:
            return a
    raise AssertionError("F_q* is cyclic")


@dataclass(frozen=True)
class Omega:
    """The Alexander quandle parameter; neither 0 nor 1"""

    value: FieldElement

    def __post_init__(self):
        if self.value.code in (0, 1):
            raise InvalidOmega(format_element(self.value))

    @property
    def spec(self) -> FieldSpec:
        return self.value.spec

    @property
    def code(self) -> int:
        return self.value.code

    @cached_property
    def order(self) -> int:
        return element_order(self.value)

    def __str__(self) -> str:
        return format_element(self.value)


def make_omega(spec: FieldSpec, value: ElementLike) -> Omega:
    return Omega(spec.element(value))


def omega_pow_is_one(omega: Omega, d: int) -> bool:
    return d % omega.order == 0


# text form

_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(" + GENERATOR_SYMBOL + r"(?:\^(\d+))?)?$")


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    """Parse sums of terms c*g^k (signs allowed, coefficients reduced mod p)"""
    compact = re.sub(r"\s+", "", str(text))
    if not compact:
        raise ElementParseError(text, "empty")
    if compact[0] not in "+-":
        compact = "+" + compact
    pieces = re.findall(r"[+-][^+-]*", compact)
    if "".join(pieces) != compact:
        raise ElementParseError(text)

    by_power: Dict[int, int] = {}
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        body = piece[1:]
        match = _TERM_RE.match(body)
        if not body or not match or (match.group(1) is None and match.group(2) is None):
            raise ElementParseError(text, f"bad term {body!r}")
        coef = int(match.group(1)) if match.group(1) is not None else 1
        if match.group(2) is None:
            k = 0
        elif match.group(3) is None:
            k = 1
        else:
            k = int(match.group(3))
        by_power[k] = by_power.get(k, 0) + sign * coef

    # g is the class of x, so g^k reduces through the modulus
    value = 0
    g_code = spec.code_of(_poly_mod([0, 1], spec.modulus, spec.p))
    for k, c in by_power.items():
        term = spec.mul_c(spec.from_int(c), spec.pow_c(g_code, k))
        value = spec.add_c(value, term)
    return FieldElement(spec, value)


def format_element(a: FieldElement) -> str:
    coeffs = a.coeffs
    terms = [_format_term(coeffs[k], k) for k in range(len(coeffs) - 1, -1, -1) if coeffs[k]]
    return "+".join(terms) if terms else "0"
