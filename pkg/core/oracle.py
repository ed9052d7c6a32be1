"""
Brute-force quandle cohomology of X = F_q[T]/(T-w) with coefficients in F_q.

Cochains are functions on n-tuples with no two adjacent entries equal,
stored over the tuple basis (lexicographic in the element order of the
field). The graded variant splits every cochain space by the scaling
action of F_q*, which commutes with the differential.
"""

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core import linalg
from core.cocycles import CocycleSpec, enumerate_I, enumerate_J2, realize
from core.complex import ALL, ComplexCtx, basis_C
from core.errors import AxiomViolation, DegreeUnsupported, NotInComplex
from core.gf import FieldElement, FieldSpec, format_element, primitive_element
from core.linalg import AnyMatrix, MatrixFq
from core.log import get_logger
from core.polyring import Polynomial, in_Cn_q

logger = get_logger(__name__)

FN_DELTA_DEGREES = (1, 2, 3)
# plain matrices above this many cells are kept sparse
DENSE_CELL_LIMIT = 25_000_000


@dataclass(frozen=True, eq=False)
class QuandleTable:
    """a * b = w a + (1 - w) b on element codes"""

    ctx: ComplexCtx
    table: np.ndarray

    @property
    def spec(self) -> FieldSpec:
        return self.ctx.spec

    @property
    def q(self) -> int:
        return self.ctx.q

    def entry(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(self.spec, int(self.table[a.code, b.code]))


def quandle_from(ctx: ComplexCtx) -> QuandleTable:
    """Build the operation table and check the three quandle axioms exhaustively"""
    spec = ctx.spec
    t = spec.tables
    codes = np.arange(spec.q)
    one_minus_w = spec.sub_c(1, ctx.w)
    table = t.add[t.mul[ctx.w, codes][:, None], t.mul[one_minus_w, codes][None, :]]

    def _element(code) -> str:
        return format_element(FieldElement(spec, int(code)))

    bad = np.flatnonzero(table[codes, codes] != codes)
    if bad.size:
        raise AxiomViolation("a*a = a", _element(bad[0]))

    columns_ok = (np.sort(table, axis=0) == codes[:, None]).all(axis=0)
    if not columns_ok.all():
        raise AxiomViolation("a -> a*b is a bijection", _element(np.flatnonzero(~columns_ok)[0]))

    lhs = table[table[:, :, None], codes[None, None, :]]
    rhs = table[table[:, None, :], table[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b, c = (_element(x) for x in bad[0])
        raise AxiomViolation("(a*b)*c = (a*c)*(b*c)", (a, b, c))

    return QuandleTable(ctx, table)


# tuple basis

@lru_cache(maxsize=None)
def _element_order(spec: FieldSpec) -> Tuple[np.ndarray, np.ndarray]:
    """(codes in basis order, position of every code)"""
    order = np.array(spec.sorted_codes(), dtype=np.int64)
    position = np.empty_like(order)
    position[order] = np.arange(len(order))
    return order, position


@lru_cache(maxsize=None)
def tuple_positions(q: int, n: int) -> np.ndarray:
    """All non-degenerate n-tuples of element positions, in lexicographic order"""
    out = np.arange(q, dtype=np.int64)[:, None]
    choices = np.arange(q - 1, dtype=np.int64)
    for _ in range(n - 1):
        last = np.repeat(out[:, -1], q - 1)
        nxt = np.tile(choices, out.shape[0])
        nxt = nxt + (nxt >= last)
        out = np.hstack([np.repeat(out, q - 1, axis=0), nxt[:, None]])
    out.setflags(write=False)
    return out


def tuple_index(positions: np.ndarray, q: int) -> np.ndarray:
    """Index of each non-degenerate position tuple in the tuple basis"""
    idx = positions[:, 0].copy()
    for i in range(1, positions.shape[1]):
        rank = positions[:, i] - (positions[:, i] > positions[:, i - 1])
        idx = idx * (q - 1) + rank
    return idx


def cochain_dim(q: int, n: int) -> int:
    return q * (q - 1) ** (n - 1)


def _non_degenerate(codes: np.ndarray) -> np.ndarray:
    if codes.shape[1] < 2:
        return np.ones(codes.shape[0], dtype=bool)
    return (codes[:, 1:] != codes[:, :-1]).all(axis=1)


def _face_terms(X: QuandleTable, Y: np.ndarray) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
    """(sign code, valid rows, n-tuples) for the 2(n+1) terms of delta at (n+1)-tuples Y

    delta f(x) = sum_i (-1)^i [f(x1*xi, ..., x(i-1)*xi, x(i+1), ...) - f(x1, .., ^xi, ..)]
    """
    spec = X.spec
    width = Y.shape[1]
    for i in range(1, width + 1):
        k = i - 1
        sign = 1 if i % 2 == 0 else spec.neg_c(1)
        acted = [X.table[Y[:, j], Y[:, k]] for j in range(k)] + [Y[:, j] for j in range(k + 1, width)]
        A = np.stack(acted, axis=1)
        yield sign, _non_degenerate(A), A
        B = np.delete(Y, k, axis=1)
        yield spec.neg_c(sign), _non_degenerate(B), B


def fn_delta_matrix(X: QuandleTable, n: int) -> AnyMatrix:
    """Matrix of delta: C^n(X, F_q) -> C^(n+1)(X, F_q) in the tuple bases"""
    if n not in FN_DELTA_DEGREES:
        raise DegreeUnsupported(n, FN_DELTA_DEGREES)
    q = X.q
    order, position = _element_order(X.spec)
    Y = order[tuple_positions(q, n + 1)]
    rows_all = np.arange(Y.shape[0])
    r, c, codes = [], [], []
    for sign, valid, Z in _face_terms(X, Y):
        r.append(rows_all[valid])
        c.append(tuple_index(position[Z[valid]], q))
        codes.append(np.full(int(valid.sum()), sign, dtype=np.int64))
    n_rows, n_cols = cochain_dim(q, n + 1), cochain_dim(q, n)
    sparse = n_rows * n_cols > DENSE_CELL_LIMIT or n_cols > linalg.dense_column_limit()
    return linalg.from_triples(
        X.spec, n_rows, n_cols, np.concatenate(r), np.concatenate(c), np.concatenate(codes), sparse=sparse
    )


@dataclass(frozen=True, eq=False)
class FnCochain:
    spec: FieldSpec
    n: int
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != cochain_dim(self.spec.q, self.n):
            raise ValueError("value vector does not match the tuple basis")

    def at(self, xs: Sequence[FieldElement]) -> FieldElement:
        """Value at a tuple; zero on degenerate tuples"""
        if len(xs) != self.n:
            raise ValueError(f"expected an {self.n}-tuple")
        _, position = _element_order(self.spec)
        pos = np.array([[position[x.code] for x in xs]])
        if not _non_degenerate(pos)[0]:
            return FieldElement(self.spec, 0)
        return FieldElement(self.spec, int(self.values[tuple_index(pos, self.spec.q)[0]]))

    def is_zero(self) -> bool:
        return not self.values.any()


def fn_delta(X: QuandleTable, f: FnCochain) -> FnCochain:
    return FnCochain(X.spec, f.n + 1, linalg.apply(fn_delta_matrix(X, f.n), f.values))


def oracle_h_dim(X: QuandleTable, n: int, graded: bool = True) -> int:
    """dim ker delta^n - rank delta^(n-1) over F_q"""
    if n not in FN_DELTA_DEGREES:
        raise DegreeUnsupported(n, FN_DELTA_DEGREES)
    if graded:
        return GradedFnComplex(X).h_dim(n)
    dim = cochain_dim(X.q, n)
    rank_out = linalg.rank(fn_delta_matrix(X, n))
    rank_in = linalg.rank(fn_delta_matrix(X, n - 1)) if n > 1 else 0
    return dim - rank_out - rank_in


def oracle_dims(X: QuandleTable, degrees: Sequence[int] = (2, 3), graded: bool = True) -> Dict[int, int]:
    if graded:
        complex_ = GradedFnComplex(X)
        return {n: complex_.h_dim(n) for n in degrees}
    return {n: oracle_h_dim(X, n, graded=False) for n in degrees}


# graded oracle

@dataclass(frozen=True, eq=False)
class _Orbits:
    reps: np.ndarray        # tuple index of each orbit representative
    orbit_of: np.ndarray    # tuple index -> orbit id
    shift: np.ndarray       # tuple index -> k with tuple = u^k * representative
    zero_orbit: Optional[int]


@dataclass(frozen=True, eq=False)
class _FaceData:
    rows: np.ndarray
    orbits: np.ndarray
    shifts: np.ndarray
    signs: np.ndarray


class GradedFnComplex:
    """The function complex split into the q-1 characters f(u x) = u^j f(x)

    Basis of character j in degree n: one function per scaling orbit O,
    equal to u^(jk) at u^k * rep(O) and zero elsewhere. The zero 1-tuple is
    fixed by scaling and only carries character 0.
    """

    def __init__(self, X: QuandleTable):
        self.X = X
        self.spec = X.spec
        self.q = X.q
        self.u = primitive_element(self.spec).code
        self.upow = np.array([self.spec.pow_c(self.u, k) for k in range(self.q - 1)], dtype=np.int64)
        self._orbits: Dict[int, _Orbits] = {}
        self._faces: Dict[int, _FaceData] = {}
        self._matrices: Dict[Tuple[int, int], MatrixFq] = {}
        self._ranks: Dict[Tuple[int, int], int] = {}

    @property
    def characters(self) -> range:
        return range(self.q - 1)

    def orbits(self, n: int) -> _Orbits:
        if n not in self._orbits:
            q = self.q
            order, position = _element_order(self.spec)
            codes = order[tuple_positions(q, n)]
            mul = self.spec.tables.mul
            scaled = np.empty((codes.shape[0], q - 1), dtype=np.int64)
            for k in range(q - 1):
                scaled[:, k] = tuple_index(position[mul[self.upow[k], codes]], q)
            rep_index = scaled.min(axis=1)
            shift = (-scaled.argmin(axis=1)) % (q - 1)
            reps = np.unique(rep_index)
            orbit_of = np.searchsorted(reps, rep_index)
            zero_orbit = None
            if n == 1:
                zero_orbit = int(orbit_of[position[0]])
            self._orbits[n] = _Orbits(reps, orbit_of, shift, zero_orbit)
        return self._orbits[n]

    def columns(self, n: int, j: int) -> np.ndarray:
        """Orbit id -> column in character j (-1 when the orbit carries no basis function)"""
        orb = self.orbits(n)
        count = len(orb.reps)
        cols = np.arange(count)
        if orb.zero_orbit is not None and j != 0:
            cols = np.where(cols < orb.zero_orbit, cols, cols - 1)
            cols[orb.zero_orbit] = -1
        return cols

    def dim(self, n: int, j: int) -> int:
        orb = self.orbits(n)
        return len(orb.reps) - (1 if orb.zero_orbit is not None and j != 0 else 0)

    def rep_tuples(self, n: int) -> np.ndarray:
        """Codes of the orbit representatives, one row per orbit"""
        order, _ = _element_order(self.spec)
        return order[tuple_positions(self.q, n)[self.orbits(n).reps]]

    def _face_data(self, n: int) -> _FaceData:
        if n not in self._faces:
            _, position = _element_order(self.spec)
            Y = self.rep_tuples(n + 1)
            orb = self.orbits(n)
            rows_all = np.arange(Y.shape[0])
            rows, orbits, shifts, signs = [], [], [], []
            for sign, valid, Z in _face_terms(self.X, Y):
                idx = tuple_index(position[Z[valid]], self.q)
                rows.append(rows_all[valid])
                orbits.append(orb.orbit_of[idx])
                shifts.append(orb.shift[idx])
                signs.append(np.full(len(idx), sign, dtype=np.int64))
            self._faces[n] = _FaceData(
                np.concatenate(rows), np.concatenate(orbits), np.concatenate(shifts), np.concatenate(signs)
            )
        return self._faces[n]

    def matrix(self, n: int, j: int) -> MatrixFq:
        """delta restricted to character j: orbit basis of degree n -> degree n+1"""
        if n not in FN_DELTA_DEGREES:
            raise DegreeUnsupported(n, FN_DELTA_DEGREES)
        key = (n, j)
        if key not in self._matrices:
            faces = self._face_data(n)
            cols = self.columns(n, j)[faces.orbits]
            keep = cols >= 0
            values = self.spec.tables.mul[faces.signs, self.upow[(j * faces.shifts) % (self.q - 1)]]
            self._matrices[key] = linalg.from_triples(
                self.spec, len(self.orbits(n + 1).reps), self.dim(n, j),
                faces.rows[keep], cols[keep], values[keep], sparse=False,
            )
        return self._matrices[key]

    def rank(self, n: int, j: int) -> int:
        key = (n, j)
        if key not in self._ranks:
            self._ranks[key] = linalg.rank(self.matrix(n, j))
        return self._ranks[key]

    def h_dim_by_character(self, n: int) -> Dict[int, int]:
        out = {}
        for j in self.characters:
            rank_in = self.rank(n - 1, j) if n > 1 else 0
            out[j] = self.dim(n, j) - self.rank(n, j) - rank_in
        return out

    def h_dim(self, n: int) -> int:
        start = time.perf_counter()
        total = sum(self.h_dim_by_character(n).values())
        logger.debug("graded H^%d over q=%d: %d (%.1f ms)", n, self.q, total, 1000 * (time.perf_counter() - start))
        return total

    def phi_vector(self, ctx: ComplexCtx, f: Polynomial) -> Tuple[int, np.ndarray]:
        """(character, coordinates) of phi(f) for f homogeneous: its values at the orbit representatives"""
        degrees = f.total_degrees()
        if len(degrees) != 1:
            raise ValueError("phi_vector needs a homogeneous polynomial")
        j = degrees[0] % (self.q - 1)
        values = _evaluate_on(f, _difference_coords(self.spec, self.rep_tuples(f.arity)))
        keep = self.columns(f.arity, j) >= 0
        return j, values[keep]


# the chain map phi

@lru_cache(maxsize=None)
def _power_table(spec: FieldSpec, e: int) -> np.ndarray:
    return np.array([spec.pow_c(c, e) for c in range(spec.q)], dtype=np.int64)


def _difference_coords(spec: FieldSpec, X: np.ndarray) -> np.ndarray:
    """(x1 - x2, ..., x(n-1) - xn, xn) row by row"""
    sub = spec.tables.sub
    D = X.copy()
    for k in range(X.shape[1] - 1):
        D[:, k] = sub[X[:, k], X[:, k + 1]]
    return D


def _evaluate_on(f: Polynomial, points: np.ndarray) -> np.ndarray:
    spec = f.spec
    mul, add = spec.tables.mul, spec.tables.add
    total = np.zeros(points.shape[0], dtype=np.int64)
    for exps, coef in f.items():
        value = np.full(points.shape[0], coef, dtype=np.int64)
        for k, e in enumerate(exps):
            if e:
                value = mul[value, _power_table(spec, e)[points[:, k]]]
        total = add[total, value]
    return total


def phi(ctx: ComplexCtx, f: Polynomial) -> FnCochain:
    """phi(f)(x1, ..., xn) = f(x1 - x2, ..., x(n-1) - xn, xn)"""
    if not in_Cn_q(f, ctx.q):
        raise NotInComplex(str(f))
    order, _ = _element_order(ctx.spec)
    points = _difference_coords(ctx.spec, order[tuple_positions(ctx.q, f.arity)])
    return FnCochain(ctx.spec, f.arity, _evaluate_on(f, points))


def phi_matrix(ctx: ComplexCtx, n: int) -> MatrixFq:
    """Columns: phi of the C^n(q) basis monomials, rows: the tuple basis"""
    if not 1 <= n <= 4:
        raise DegreeUnsupported(n, (1, 2, 3, 4))
    spec = ctx.spec
    order, _ = _element_order(spec)
    points = _difference_coords(spec, order[tuple_positions(ctx.q, n)])
    columns = [_evaluate_on(Polynomial.monomial(spec, mono), points) for mono in basis_C(ctx, n, ALL)]
    return MatrixFq.from_columns(spec, columns, rows=points.shape[0])


def phi_is_iso(ctx: ComplexCtx, n: int) -> bool:
    M = phi_matrix(ctx, n)
    return M.rows == M.cols == linalg.rank(M)


# basis cross-checks

@dataclass(frozen=True)
class CrossCheck:
    """Explicit basis against the brute-force cohomology in one degree"""

    degree: int
    basis: Tuple[CocycleSpec, ...] = field(repr=False)
    oracle_dim: int
    independent: bool
    cocycles: bool

    @property
    def basis_size(self) -> int:
        return len(self.basis)

    @property
    def agree(self) -> bool:
        return self.basis_size == self.oracle_dim and self.independent and self.cocycles

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "basis_size": self.basis_size,
            "oracle_dim": self.oracle_dim,
            "independent": self.independent,
            "cocycles": self.cocycles,
            "agree": self.agree,
        }


def cross_check(ctx: ComplexCtx, specs: Sequence[CocycleSpec], n: int, graded: bool = True) -> CrossCheck:
    """Compare |specs| with dim H^n and test the phi-images for cocycle and independence"""
    X = quandle_from(ctx)
    polys = [realize(ctx, s) for s in specs]
    homogeneous = all(len(f.total_degrees()) == 1 for f in polys)

    if graded and homogeneous:
        G = GradedFnComplex(X)
        oracle_dim = G.h_dim(n)
        by_character: Dict[int, List[np.ndarray]] = {}
        for f in polys:
            j, v = G.phi_vector(ctx, f)
            by_character.setdefault(j, []).append(v)
        cocycles = all(
            not linalg.apply(G.matrix(n, j), v).any() for j, vs in by_character.items() for v in vs
        )
        independent = all(
            linalg.independent_mod(G.matrix(n - 1, j), vs) if n > 1 else _independent(G.spec, vs)
            for j, vs in by_character.items()
        )
    else:
        oracle_dim = oracle_h_dim(X, n, graded=False)
        vectors = [phi(ctx, f).values for f in polys]
        delta_n = fn_delta_matrix(X, n)
        cocycles = all(not linalg.apply(delta_n, v).any() for v in vectors)
        if n > 1:
            independent = linalg.independent_mod(fn_delta_matrix(X, n - 1), vectors)
        else:
            independent = _independent(ctx.spec, vectors)

    result = CrossCheck(n, tuple(specs), oracle_dim, independent, cocycles)
    logger.debug("cross-check H^%d over %s: %s", n, ctx, result.to_dict())
    return result


def _independent(spec: FieldSpec, vectors: List[np.ndarray]) -> bool:
    if not vectors:
        return True
    return linalg.rank(MatrixFq.from_columns(spec, vectors)) == len(vectors)


def cross_check_h3(ctx: ComplexCtx, graded: bool = True) -> CrossCheck:
    return cross_check(ctx, enumerate_I(ctx), 3, graded=graded)


def cross_check_h2(ctx: ComplexCtx, graded: bool = True) -> CrossCheck:
    return cross_check(ctx, enumerate_J2(ctx), 2, graded=graded)
