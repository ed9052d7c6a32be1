"""
Exact linear algebra over F_q on matrices of element codes.

Dense matrices are numpy arrays of codes; arithmetic goes through the
FieldSpec tables. Matrices wider than the dense column limit use a
sparse row-insertion eliminator instead.
"""

import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import InconsistentSpan, SpecMismatch
from core.gf import FieldSpec
from core.log import get_logger

logger = get_logger(__name__)

DEFAULT_DENSE_COLUMN_LIMIT = 10000
_dense_column_limit = DEFAULT_DENSE_COLUMN_LIMIT


def set_dense_column_limit(limit: int) -> None:
    global _dense_column_limit
    _dense_column_limit = int(limit)


def dense_column_limit() -> int:
    return _dense_column_limit


@dataclass(frozen=True, eq=False)
class MatrixFq:
    """Dense matrix of element codes"""

    spec: FieldSpec
    data: np.ndarray

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "MatrixFq":
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "MatrixFq":
        return cls(spec, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "MatrixFq":
        if not rows:
            return cls.zeros(spec, 0, cols or 0)
        return cls(spec, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @classmethod
    def from_columns(cls, spec: FieldSpec, vectors: Sequence[np.ndarray], rows: Optional[int] = None) -> "MatrixFq":
        if not vectors:
            return cls.zeros(spec, rows or 0, 0)
        return cls(spec, np.stack([np.asarray(v, dtype=np.int64) for v in vectors], axis=1))

    def transpose(self) -> "MatrixFq":
        return MatrixFq(self.spec, self.data.T.copy())

    def column(self, j: int) -> np.ndarray:
        return self.data[:, j].copy()

    def is_zero(self) -> bool:
        return not self.data.any()

    def nnz(self) -> int:
        return int(np.count_nonzero(self.data))

    def to_list(self) -> List[List[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return self.spec == other.spec and self.data.shape == other.data.shape and bool((self.data == other.data).all())

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        return matmul(self, other)


@dataclass(frozen=True, eq=False)
class SparseMatrixFq:
    """Row-major sparse matrix: one {col: code} dict per row, zeros omitted"""

    spec: FieldSpec
    rows: int
    cols: int
    row_entries: List[Dict[int, int]] = field(repr=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return sum(len(r) for r in self.row_entries)

    def to_dense(self) -> MatrixFq:
        data = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i, entries in enumerate(self.row_entries):
            for j, code in entries.items():
                data[i, j] = code
        return MatrixFq(self.spec, data)

    def transpose(self) -> "SparseMatrixFq":
        out: List[Dict[int, int]] = [{} for _ in range(self.cols)]
        for i, entries in enumerate(self.row_entries):
            for j, code in entries.items():
                out[j][i] = code
        return SparseMatrixFq(self.spec, self.cols, self.rows, out)


AnyMatrix = Union[MatrixFq, SparseMatrixFq]


def _to_dense(M: AnyMatrix) -> MatrixFq:
    return M.to_dense() if isinstance(M, SparseMatrixFq) else M


def from_triples(
    spec: FieldSpec,
    rows: int,
    cols: int,
    r: np.ndarray,
    c: np.ndarray,
    codes: np.ndarray,
    sparse: Optional[bool] = None,
) -> AnyMatrix:
    """Sum coded entries into a matrix; repeated (r, c) positions add in F_q"""
    r = np.asarray(r, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    codes = np.asarray(codes, dtype=np.int64)
    if sparse is None:
        sparse = cols > _dense_column_limit

    if sparse:
        row_entries: List[Dict[int, int]] = [{} for _ in range(rows)]
        add = spec.add_c
        for i, j, v in zip(r.tolist(), c.tolist(), codes.tolist()):
            entries = row_entries[i]
            nv = add(entries.get(j, 0), v)
            if nv:
                entries[j] = nv
            else:
                entries.pop(j, None)
        return SparseMatrixFq(spec, rows, cols, row_entries)

    p = spec.p
    planes = spec.tables.coeffs[codes]
    data = np.zeros((rows, cols), dtype=np.int64)
    for level in range(spec.m):
        acc = np.zeros((rows, cols), dtype=np.int64)
        np.add.at(acc, (r, c), planes[:, level])
        data += (acc % p) * (p ** level)
    return MatrixFq(spec, data)


def _reduction_rows(spec: FieldSpec) -> np.ndarray:
    """Row k holds the coefficients of g^k for k < 2m-1"""
    m, p = spec.m, spec.p
    g = spec.gen.code if m > 1 else 0
    out = np.zeros((max(2 * m - 1, 1), m), dtype=np.int64)
    for k in range(out.shape[0]):
        if k < m:
            out[k, k] = 1
        else:
            out[k] = spec.coeffs_of(spec.pow_c(g, k))
    return out % p


def matmul(A: AnyMatrix, B: AnyMatrix) -> MatrixFq:
    """Product over F_q through coefficient planes and integer matmul mod p"""
    A, B = _to_dense(A), _to_dense(B)
    if A.spec != B.spec:
        raise SpecMismatch(A.spec, B.spec)
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    spec = A.spec
    p, m = spec.p, spec.m
    coeffs = spec.tables.coeffs
    a_planes = coeffs[A.data]
    b_planes = coeffs[B.data]

    products = []
    for k in range(2 * m - 1):
        acc = np.zeros((A.rows, B.cols), dtype=np.int64)
        for i in range(max(0, k - m + 1), min(k, m - 1) + 1):
            acc += a_planes[..., i] @ b_planes[..., k - i]
        products.append(acc % p)

    reduction = _reduction_rows(spec)
    data = np.zeros((A.rows, B.cols), dtype=np.int64)
    for level in range(m):
        plane = np.zeros((A.rows, B.cols), dtype=np.int64)
        for k, prod in enumerate(products):
            if reduction[k, level]:
                plane += prod * reduction[k, level]
        data += (plane % p) * (p ** level)
    return MatrixFq(spec, data)


def apply(M: AnyMatrix, v: np.ndarray) -> np.ndarray:
    col = MatrixFq(M.spec, np.asarray(v, dtype=np.int64).reshape(-1, 1))
    return matmul(M, col).data[:, 0]


def hstack(*mats: AnyMatrix) -> MatrixFq:
    dense = [_to_dense(M) for M in mats]
    spec = dense[0].spec
    for M in dense[1:]:
        if M.spec != spec:
            raise SpecMismatch(spec, M.spec)
    return MatrixFq(spec, np.hstack([M.data for M in dense]))


# elimination

def _eliminate(spec: FieldSpec, data: np.ndarray, reduced: bool) -> Tuple[np.ndarray, List[int]]:
    """Gaussian elimination, pivot = first nonzero entry in column order"""
    A = np.array(data, dtype=np.int64, copy=True)
    rows, cols = A.shape
    mul, sub, inv = spec.tables.mul, spec.tables.sub, spec.tables.inv
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        lead = A[r, c]
        if lead != 1:
            A[r, c:] = mul[inv[lead], A[r, c:]]

        if reduced:
            targets = np.flatnonzero(A[:, c])
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.flatnonzero(A[r + 1:, c])
        if targets.size:
            factors = A[targets, c]
            scaled = mul[:, A[r, c:]][factors]
            A[targets, c:] = sub[A[targets, c:], scaled]
        pivots.append(c)
        r += 1
    return A, pivots


def _sparse_rank(spec: FieldSpec, rows: Iterable[Dict[int, int]]) -> int:
    """Insert rows one by one against pivot rows keyed by leading column"""
    add, mul, neg, inv = spec.add_c, spec.mul_c, spec.neg_c, spec.inv_c
    pivots: Dict[int, Dict[int, int]] = {}
    for entries in rows:
        row = dict(entries)
        while row:
            c = min(row)
            pivot = pivots.get(c)
            if pivot is None:
                scale = inv(row[c])
                pivots[c] = {k: mul(v, scale) for k, v in row.items()}
                break
            factor = neg(row[c])
            for k, v in pivot.items():
                nv = add(row.get(k, 0), mul(factor, v))
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def rank(M: AnyMatrix) -> int:
    start = time.perf_counter()
    if isinstance(M, SparseMatrixFq) or M.cols > _dense_column_limit:
        sparse = M if isinstance(M, SparseMatrixFq) else _dense_to_sparse(M)
        if sparse.rows > sparse.cols:
            sparse = sparse.transpose()
        result = _sparse_rank(sparse.spec, sparse.row_entries)
    else:
        data = M.data if M.rows <= M.cols else M.data.T
        if data.size == 0:
            return 0
        _, pivots = _eliminate(M.spec, data, reduced=False)
        result = len(pivots)
    logger.debug("rank %s -> %d (%.1f ms)", M.shape, result, 1000 * (time.perf_counter() - start))
    return result


def _dense_to_sparse(M: MatrixFq) -> SparseMatrixFq:
    row_entries = []
    for row in M.data:
        nz = np.flatnonzero(row)
        row_entries.append(dict(zip(nz.tolist(), row[nz].tolist())))
    return SparseMatrixFq(M.spec, M.rows, M.cols, row_entries)


def rref(M: AnyMatrix) -> Tuple[MatrixFq, List[int]]:
    """Reduced row echelon form and pivot columns"""
    M = _to_dense(M)
    R, pivots = _eliminate(M.spec, M.data, reduced=True)
    return MatrixFq(M.spec, R), pivots


def kernel_basis(M: AnyMatrix) -> List[np.ndarray]:
    """Basis of {v : M v = 0}, one vector per free column"""
    M = _to_dense(M)
    spec = M.spec
    R, pivots = rref(M)
    neg = spec.tables.neg
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v = np.zeros(M.cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = neg[R.data[i, f]]
        basis.append(v)
    if basis:
        check = matmul(M, MatrixFq.from_columns(spec, basis))
        assert check.is_zero(), "kernel vector fails M v = 0"
    return basis


def dim_quotient(Z: Union[AnyMatrix, Sequence[np.ndarray]], B: AnyMatrix) -> int:
    """dim span(Z) - rank(B), with span(B) required to lie inside span(Z)"""
    if not isinstance(Z, (MatrixFq, SparseMatrixFq)):
        Z = MatrixFq.from_columns(B.spec, list(Z), rows=B.rows)
    rank_z = rank(Z)
    rank_b = rank(B)
    if B.cols:
        rank_zb = rank(hstack(Z, B))
        if rank_zb != rank_z:
            raise InconsistentSpan(f"rank of span(Z)+span(B) is {rank_zb}, span(Z) has {rank_z}")
    return rank_z - rank_b


def independent_mod(B: AnyMatrix, vectors: Sequence[np.ndarray]) -> bool:
    """True iff the vectors are linearly independent modulo the column span of B"""
    if not vectors:
        return True
    V = MatrixFq.from_columns(B.spec, list(vectors))
    return rank(hstack(B, V)) == rank(B) + len(vectors)


def in_column_span(M: AnyMatrix, v: np.ndarray) -> bool:
    return not independent_mod(M, [v])
