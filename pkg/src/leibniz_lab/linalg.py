"""Exact linear algebra over Q(i): RREF, kernels, spans and canonical subspaces.

Subspaces are always stored in reduced row echelon form so structural equality
is plain row-by-row equality.  Pivot choice is fixed (leftmost nonzero column,
topmost row) which makes every result reproducible.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Scalar

Vector = list


class Matrix:
    """Dense matrix with Scalar entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged rows")
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols=ncols)

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], ncols=self.nrows)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = ZERO
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    b = other.rows[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def apply(self, vec: Vector) -> Vector:
        if len(vec) != self.ncols:
            raise ValueError("length mismatch")
        out = []
        for i in range(self.nrows):
            acc = ZERO
            row = self.rows[i]
            for k, v in enumerate(vec):
                if not v.is_zero() and not row[k].is_zero():
                    acc = acc + row[k] * v
            out.append(acc)
        return out

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(e) for e in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"

    def copy_rows(self) -> list:
        return [list(r) for r in self.rows]


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Unique reduced row echelon form and rank."""
    rows = m.copy_rows()
    nrows, ncols = m.nrows, m.ncols
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, nrows):
            if not rows[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(nrows):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == nrows:
            break
    return Matrix(rows, ncols=ncols), rank


def _pivot_cols(rref_rows: list, ncols: int) -> list:
    cols = []
    for row in rref_rows:
        for j in range(ncols):
            if not row[j].is_zero():
                cols.append(j)
                break
    return cols


class Subspace:
    """A subspace of Q(i)^ambient, basis stored as RREF rows without zero rows."""

    __slots__ = ("ambient", "mat")

    def __init__(self, ambient: int, mat: Matrix):
        self.ambient = ambient
        self.mat = mat

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vector], ambient: int | None = None) -> "Subspace":
        if not vectors:
            if ambient is None:
                raise ValueError("ambient dimension required for an empty span")
            return cls(ambient, Matrix([], ncols=ambient))
        amb = len(vectors[0])
        if ambient is not None and ambient != amb:
            raise ValueError("ambient dimension mismatch")
        if any(len(v) != amb for v in vectors):
            raise ValueError("vectors of unequal length")
        r, rank = rref(Matrix(vectors, ncols=amb))
        return cls(amb, Matrix(r.rows[:rank], ncols=amb))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix([], ncols=ambient))

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.mat.nrows

    def basis(self) -> list:
        return self.mat.copy_rows()

    def reduce(self, vec: Vector) -> Vector:
        """Residue of vec after elimination against the stored basis."""
        if len(vec) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        v = list(vec)
        for row in self.mat.rows:
            p = next(j for j in range(self.ambient) if not row[j].is_zero())
            if not v[p].is_zero():
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Vector) -> bool:
        return all(x.is_zero() for x in self.reduce(vec))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.mat.rows)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.mat == other.mat)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def span(vectors: Sequence[Vector], ambient: int | None = None) -> Subspace:
    return Subspace.from_vectors(vectors, ambient)


def kernel(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} as a canonical subspace of Q(i)^ncols."""
    r, rank = rref(m)
    pivots = _pivot_cols(r.rows[:rank], m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.ncols
        v[free] = ONE
        for row_idx, pcol in enumerate(pivots):
            coeff = r.rows[row_idx][free]
            if not coeff.is_zero():
                v[pcol] = -coeff
        basis.append(v)
    return Subspace.from_vectors(basis, ambient=m.ncols)


def subspace_rel(a: Subspace, b: Subspace) -> str:
    """One of 'equal', 'a_in_b', 'b_in_a', 'incomparable'."""
    if a.ambient != b.ambient:
        raise ValueError("subspaces live in different ambient spaces")
    ab = b.contains_subspace(a)
    ba = a.contains_subspace(b)
    if ab and ba:
        return "equal"
    if ab:
        return "a_in_b"
    if ba:
        return "b_in_a"
    return "incomparable"


def invert(m: Matrix) -> Matrix:
    """Exact inverse; raises ValueError on singular input."""
    if m.nrows != m.ncols:
        raise ValueError("not square")
    n = m.nrows
    aug = Matrix([list(m.rows[i]) + [ONE if j == i else ZERO for j in range(n)]
                  for i in range(n)], ncols=2 * n)
    r, rank = rref(aug)
    if rank < n or any(r.rows[i][i] != ONE for i in range(n)):
        raise ValueError("singular matrix")
    return Matrix([row[n:] for row in r.rows[:n]], ncols=n)


class RrefAccumulator:
    """Incremental RREF builder: vectors are inserted one at a time.

    Keeps the invariant that stored rows form an RREF basis, which makes
    repeated span extension (series computations) cheap.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list = []
        self.pivots: list = []

    def add(self, vec: Vector) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if not v[p].is_zero():
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        pivot = None
        for j in range(self.ambient):
            if not v[j].is_zero():
                pivot = j
                break
        if pivot is None:
            return False
        inv = v[pivot].inverse()
        v = [x * inv for x in v]
        for idx, row in enumerate(self.rows):
            if not row[pivot].is_zero():
                f = row[pivot]
                self.rows[idx] = [a - f * b for a, b in zip(row, v)]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < pivot:
            pos += 1
        self.rows.insert(pos, v)
        self.pivots.insert(pos, pivot)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vec: Vector) -> bool:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if not v[p].is_zero():
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return all(x.is_zero() for x in v)

    def to_subspace(self) -> Subspace:
        return Subspace(self.ambient, Matrix(self.rows, ncols=self.ambient))


def sparse_kernel_basis(rows: Iterable[dict], ncols: int) -> list:
    """Raw null space basis of a sparse system given as {column: coeff} rows.

    Forward-eliminates each incoming row against the current pivot rows, then
    back-substitutes once at the end; used where a dense matrix would be
    wastefully big.  One basis vector per free column, not row reduced.
    """
    pivots: dict = {}
    for row in rows:
        r = dict(row)
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = r[c].inverse()
                pivots[c] = {cc: vv * inv for cc, vv in r.items()}
                break
            f = r.pop(c)
            for cc, vv in prow.items():
                if cc == c:
                    continue
                nv = r.get(cc, ZERO) - f * vv
                if nv.is_zero():
                    r.pop(cc, None)
                else:
                    r[cc] = nv
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        for c2 in [cc for cc in row if cc != c and cc in pivots]:
            f = row.pop(c2)
            for cc, vv in pivots[c2].items():
                if cc == c2:
                    continue
                nv = row.get(cc, ZERO) - f * vv
                if nv.is_zero():
                    row.pop(cc, None)
                else:
                    row[cc] = nv
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for pcol, prow in pivots.items():
            coeff = prow.get(free)
            if coeff is not None:
                v[pcol] = -coeff
        basis.append(v)
    return basis


def kernel_of_sparse_rows(rows: Iterable[dict], ncols: int) -> Subspace:
    """Null space of a sparse {column: coeff} system as a canonical Subspace."""
    return Subspace.from_vectors(sparse_kernel_basis(rows, ncols), ambient=ncols)
