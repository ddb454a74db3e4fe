"""Dense exact linear algebra: matrices, kernels, solving, canonical subspaces.

All computations are exact.  Over Q, elimination runs on denominator-cleared
integer rows kept primitive (content 1), which is much faster in CPython than
Fraction arithmetic; rows are converted back to leading-one Fraction form at
the end.  Over F_p rows are plain ints reduced mod p.

A :class:`Subspace` is always stored by its reduced row-echelon basis, so two
subspaces are equal iff their representations are identical entry-wise.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .fields import Field, Scalar

Vector = tuple


# ---------------------------------------------------------------------------
# vector helpers


def vec_zero(field: Field, n: int) -> Vector:
    return (field.zero,) * n


def unit_vector(field: Field, n: int, i: int) -> Vector:
    return tuple(field.one if j == i else field.zero for j in range(n))


def vec_add(field: Field, u: Sequence, v: Sequence) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v, strict=True))


def vec_sub(field: Field, u: Sequence, v: Sequence) -> Vector:
    return tuple(field.sub(a, b) for a, b in zip(u, v, strict=True))


def vec_neg(field: Field, u: Sequence) -> Vector:
    return tuple(field.neg(a) for a in u)


def vec_scale(field: Field, c: Scalar, u: Sequence) -> Vector:
    return tuple(field.mul(c, a) for a in u)


def vec_is_zero(u: Sequence) -> bool:
    return not any(u)


# ---------------------------------------------------------------------------
# reduced row echelon form


def _reduce_content(row: list[int]) -> None:
    g = 0
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                return
    if g > 1:
        for i, a in enumerate(row):
            row[i] = a // g


def _rref_int(rows: Iterable[Sequence[int]]) -> dict[int, list[int]]:
    """Integer pseudo-RREF: pivot rows are primitive with positive pivot entry,
    fully reduced against each other (zeros in all other pivot columns)."""
    pivots: dict[int, list[int]] = {}
    for incoming in rows:
        row = list(incoming)
        if not any(row):
            continue
        for c, prow in pivots.items():
            f = row[c]
            if f:
                lead = prow[c]
                for i, b in enumerate(prow):
                    if b:
                        row[i] = row[i] * lead - f * b
                    else:
                        row[i] = row[i] * lead
                _reduce_content(row)
        lead_col = next((i for i, a in enumerate(row) if a), None)
        if lead_col is None:
            continue
        if row[lead_col] < 0:
            row = [-a for a in row]
        lead = row[lead_col]
        for prow in pivots.values():
            f = prow[lead_col]
            if f:
                for i, b in enumerate(row):
                    if b:
                        prow[i] = prow[i] * lead - f * b
                    else:
                        prow[i] = prow[i] * lead
                _reduce_content(prow)
        pivots[lead_col] = row
    return pivots


def _rref_mod(rows: Iterable[Sequence[int]], p: int) -> dict[int, list[int]]:
    """RREF over F_p with rows of ints in [0, p); pivot entries are 1."""
    pivots: dict[int, list[int]] = {}
    for incoming in rows:
        row = [a % p for a in incoming]
        for c, prow in pivots.items():
            f = row[c]
            if f:
                for i, b in enumerate(prow):
                    if b:
                        row[i] = (row[i] - f * b) % p
        lead_col = next((i for i, a in enumerate(row) if a), None)
        if lead_col is None:
            continue
        inv = pow(row[lead_col], -1, p)
        row = [a * inv % p for a in row]
        for prow in pivots.values():
            f = prow[lead_col]
            if f:
                for i, b in enumerate(row):
                    if b:
                        prow[i] = (prow[i] - f * b) % p
        pivots[lead_col] = row
    return pivots


def rref(field: Field, rows: Iterable[Sequence], ncols: int) -> tuple[list[Vector], list[int]]:
    """Canonical reduced row echelon form of the span of ``rows``.

    Returns ``(echelon_rows, pivot_cols)`` with rows normalized to leading
    coefficient one and sorted by pivot column; zero rows are dropped.  The
    output depends only on the row span, so it is a canonical representative.
    """
    if field.char == 0:
        int_rows = []
        for row in rows:
            fracs = [Fraction(x) for x in row]
            if not any(fracs):
                continue
            d = lcm(*(f.denominator for f in fracs))
            int_rows.append([int(f * d) for f in fracs])
        pivots = _rref_int(int_rows)
        out = []
        for c in sorted(pivots):
            prow = pivots[c]
            lead = prow[c]
            out.append((c, tuple(Fraction(a, lead) for a in prow)))
    else:
        pivots = _rref_mod(rows, field.char)
        out = [(c, tuple(pivots[c])) for c in sorted(pivots)]
    return [r for _, r in out], [c for c, _ in out]


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix over a single field, row-major tuples."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field: Field, entries: Sequence[Sequence[Scalar]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in entries)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.entries = rows

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [unit_vector(field, n, i) for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [vec_zero(field, ncols)] * nrows, ncols=ncols)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence[Scalar]], nrows: int | None = None) -> "Matrix":
        if cols:
            return cls(field, list(zip(*cols)))
        return cls(field, [], ncols=0) if nrows is None else cls(field, [()] * nrows, ncols=0)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def mul_vec(self, v: Sequence) -> Vector:
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero
            for a, x in zip(row, v, strict=True):
                if a and x:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows or self.field != other.field:
            raise ValueError("incompatible matrix product")
        f = self.field
        ot = list(zip(*other.entries)) if other.entries else [()] * other.ncols
        rows = []
        for r in self.entries:
            row = []
            for c in ot:
                acc = f.zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            rows.append(row)
        return Matrix(f, rows, ncols=other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._compatible(other)
        f = self.field
        return Matrix(f, [vec_add(f, r, s) for r, s in zip(self.entries, other.entries)], ncols=self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._compatible(other)
        f = self.field
        return Matrix(f, [vec_sub(f, r, s) for r, s in zip(self.entries, other.entries)], ncols=self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [vec_neg(self.field, r) for r in self.entries], ncols=self.ncols)

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(self.field, [vec_scale(self.field, c, r) for r in self.entries], ncols=self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.entries)) if self.entries else [], ncols=self.nrows)

    def is_zero(self) -> bool:
        return all(not a for r in self.entries for a in r)

    def rank(self) -> int:
        _, piv = rref(self.field, self.entries, self.ncols)
        return len(piv)

    def inverse(self) -> "Matrix | None":
        """Inverse via Gauss-Jordan on the augmented matrix; None if singular."""
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        f = self.field
        aug = [list(r) + list(unit_vector(f, n, i)) for i, r in enumerate(self.entries)]
        rows, piv = rref(f, aug, 2 * n)
        if piv != list(range(n)):
            return None
        return Matrix(f, [r[n:] for r in rows], ncols=n)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(a) for a in r) for r in self.entries)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    def _compatible(self, other: "Matrix") -> None:
        if self.field != other.field or self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("incompatible matrix shapes")


def kernel_basis(m: Matrix) -> "Subspace":
    """Canonical basis of the right null space ``{v : m v = 0}``."""
    rows, piv = rref(m.field, m.entries, m.ncols)
    f = m.field
    piv_set = set(piv)
    basis = []
    for free in range(m.ncols):
        if free in piv_set:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for prow, pcol in zip(rows, piv):
            v[pcol] = f.neg(prow[free])
        basis.append(v)
    return Subspace.from_vectors(f, m.ncols, basis)


def solve_linear(m: Matrix, b: Sequence) -> Vector | None:
    """One solution of ``m x = b``, or None if the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side length mismatch")
    f = m.field
    aug = [list(row) + [bv] for row, bv in zip(m.entries, b)]
    rows, piv = rref(f, aug, m.ncols + 1)
    x = [f.zero] * m.ncols
    for prow, pcol in zip(rows, piv):
        if pcol == m.ncols:
            return None
        x[pcol] = prow[-1]
    return tuple(x)


# ---------------------------------------------------------------------------
# canonical subspaces


class Subspace:
    """A subspace of F^n held by its unique reduced row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: Sequence[Vector], pivots: Sequence[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(v) for v in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows, piv = rref(field, vectors, ambient_dim)
        return cls(field, ambient_dim, rows, piv)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, [], [])

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls.from_vectors(field, ambient_dim, Matrix.identity(field, ambient_dim).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Residual of v after reduction by the echelon basis.

        This is a linear map of v whose kernel is exactly the subspace, so it
        doubles as the fixed complement projection used to linearize
        "lies in this subspace" constraints.
        """
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        f = self.field
        out = list(v)
        for w, p in zip(self.basis, self.pivots):
            c = out[p]
            if c:
                for i, b in enumerate(w):
                    if b:
                        out[i] = f.sub(out[i], f.mul(c, b))
        return tuple(out)

    def reduction_matrix(self) -> Matrix:
        """Matrix of :meth:`reduce`; annihilates the subspace, fixes a complement."""
        f = self.field
        rows = [list(unit_vector(f, self.ambient_dim, i)) for i in range(self.ambient_dim)]
        for w, p in zip(self.basis, self.pivots):
            for i, b in enumerate(w):
                if b:
                    rows[i][p] = f.sub(rows[i][p], b)
        return Matrix(f, rows, ncols=self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        return vec_is_zero(self.reduce(v))

    def leq(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(other.contains(v) for v in self.basis)

    def orthogonal_complement(self) -> "Subspace":
        """Vectors annihilated by every basis functional (standard dot pairing)."""
        return kernel_basis(Matrix(self.field, self.basis, ncols=self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        stacked = list(self.orthogonal_complement().basis) + list(other.orthogonal_complement().basis)
        return kernel_basis(Matrix(self.field, stacked, ncols=self.ambient_dim))

    def add(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace.from_vectors(self.field, self.ambient_dim, list(self.basis) + list(other.basis))

    def _same_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of F^{self.ambient_dim})"
