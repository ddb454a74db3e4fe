"""Finite-dimensional algebras, bimodules, triangular assembly, and centers.

An :class:`FDAlgebra` is given by structure constants over a fixed field; a
:class:`TriangularAlgebra` glues two unital algebras and a faithful bimodule
into the block algebra of formal upper-triangular 2x2 matrices.  Centers and
twisted centers are computed as kernels of commutation constraints and, where
a structural description is known, cross-checked against it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import (
    AssociativityViolation,
    BimoduleAxiomViolation,
    EnumerationTooLarge,
    NotAutomorphism,
    NotFaithful,
    StructuralMismatch,
    UnitViolation,
    ZeroModule,
)
from .fields import Field, PrimeField, Scalar
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    kernel_basis,
    solve_linear,
    unit_vector,
    vec_neg,
    vec_zero,
)


class FDAlgebra:
    """Associative algebra with a distinguished basis and structure constants.

    ``table[i][j]`` holds the coordinates of the product of basis elements i
    and j.  Associativity (and the unit law, when a unit is declared) is
    verified on all basis triples at construction time.

    ``only_trivial_idempotents`` is a declared flag: the structure theorems
    that require it gate on the declaration, and
    :func:`has_only_trivial_idempotents_bruteforce` can certify it over small
    prime fields.
    """

    __slots__ = ("field", "labels", "table", "unit", "only_trivial_idempotents")

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        table: Sequence[Sequence[Sequence[Scalar]]],
        unit: Sequence[Scalar] | None = None,
        only_trivial_idempotents: bool = False,
    ):
        dim = len(labels)
        if len(table) != dim or any(len(row) != dim for row in table):
            raise ValueError("structure constant table must be dim x dim")
        self.field = field
        self.labels = tuple(labels)
        self.table = tuple(tuple(tuple(v) for v in row) for row in table)
        for row in self.table:
            for v in row:
                if len(v) != dim:
                    raise ValueError("structure constant vectors must have length dim")
        self.unit = tuple(unit) if unit is not None else None
        self.only_trivial_idempotents = only_trivial_idempotents
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def zero(self) -> Vector:
        return vec_zero(self.field, self.dim)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.field, self.dim, i)

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = f.mul(xi, yj)
                for t, s in enumerate(row[j]):
                    if s:
                        out[t] = f.add(out[t], f.mul(c, s))
        return tuple(out)

    def left_mul_matrix(self, x: Sequence) -> Matrix:
        """Matrix of v -> x·v in the canonical basis."""
        cols = [self.mul(x, self.basis_vector(l)) for l in range(self.dim)]
        return Matrix.from_columns(self.field, cols, nrows=self.dim)

    def right_mul_matrix(self, x: Sequence) -> Matrix:
        """Matrix of v -> v·x in the canonical basis."""
        cols = [self.mul(self.basis_vector(l), x) for l in range(self.dim)]
        return Matrix.from_columns(self.field, cols, nrows=self.dim)

    def _validate(self) -> None:
        dim = self.dim
        for i in range(dim):
            for j in range(dim):
                ij = self.table[i][j]
                for k in range(dim):
                    left = self.mul(ij, self.basis_vector(k))
                    right = self.mul(self.basis_vector(i), self.table[j][k])
                    if left != right:
                        raise AssociativityViolation(i, j, k, left, right)
        if self.unit is not None:
            if len(self.unit) != dim:
                raise ValueError("unit vector has wrong length")
            for i in range(dim):
                e = self.basis_vector(i)
                if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                    raise UnitViolation(i)

    def __repr__(self):
        kind = "unital" if self.is_unital else "non-unital"
        return f"FDAlgebra(dim={self.dim}, {kind}, field={self.field!r})"


def make_algebra(
    field: Field,
    labels: Sequence[str],
    table,
    unit=None,
    only_trivial_idempotents: bool = False,
) -> FDAlgebra:
    """Validated construction; rejects non-associative tables and wrong units."""
    return FDAlgebra(field, labels, table, unit, only_trivial_idempotents)


class Bimodule:
    """A nonzero (A, B)-bimodule with basis and explicit action tables.

    ``left[i][k]`` is the coordinate vector of (i-th basis of A)·(k-th basis
    of M); ``right[k][j]`` that of (k-th basis of M)·(j-th basis of B).  The
    module axioms, the compatibility law (a·m)·b = a·(m·b) and the identity
    action of both units are all checked on basis triples.
    """

    __slots__ = ("left_algebra", "right_algebra", "labels", "left", "right")

    def __init__(self, left_algebra: FDAlgebra, right_algebra: FDAlgebra, labels, left, right):
        if not labels:
            raise ZeroModule("bimodule must be nonzero")
        if not (left_algebra.is_unital and right_algebra.is_unital):
            raise ValueError("bimodule requires unital acting algebras")
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.labels = tuple(labels)
        self.left = tuple(tuple(tuple(v) for v in row) for row in left)
        self.right = tuple(tuple(tuple(v) for v in row) for row in right)
        if len(self.left) != left_algebra.dim or any(len(r) != self.dim for r in self.left):
            raise ValueError("left action table has wrong shape")
        if len(self.right) != self.dim or any(len(r) != right_algebra.dim for r in self.right):
            raise ValueError("right action table has wrong shape")
        self._validate()

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def field(self) -> Field:
        return self.left_algebra.field

    def zero(self) -> Vector:
        return vec_zero(self.field, self.dim)

    def basis_vector(self, k: int) -> Vector:
        return unit_vector(self.field, self.dim, k)

    def act_left(self, a: Sequence, m: Sequence) -> Vector:
        f = self.field
        out = [f.zero] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for k, mk in enumerate(m):
                if not mk:
                    continue
                c = f.mul(ai, mk)
                for t, s in enumerate(self.left[i][k]):
                    if s:
                        out[t] = f.add(out[t], f.mul(c, s))
        return tuple(out)

    def act_right(self, m: Sequence, b: Sequence) -> Vector:
        f = self.field
        out = [f.zero] * self.dim
        for k, mk in enumerate(m):
            if not mk:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = f.mul(mk, bj)
                for t, s in enumerate(self.right[k][j]):
                    if s:
                        out[t] = f.add(out[t], f.mul(c, s))
        return tuple(out)

    def left_action_matrix(self, a: Sequence) -> Matrix:
        cols = [self.act_left(a, self.basis_vector(k)) for k in range(self.dim)]
        return Matrix.from_columns(self.field, cols, nrows=self.dim)

    def right_action_matrix(self, b: Sequence) -> Matrix:
        cols = [self.act_right(self.basis_vector(k), b) for k in range(self.dim)]
        return Matrix.from_columns(self.field, cols, nrows=self.dim)

    def _validate(self) -> None:
        A, B = self.left_algebra, self.right_algebra
        for i in range(A.dim):
            ei = A.basis_vector(i)
            for j in range(A.dim):
                prod = A.table[i][j]
                for k in range(self.dim):
                    mk = self.basis_vector(k)
                    if self.act_left(prod, mk) != self.act_left(ei, self.left[j][k]):
                        raise BimoduleAxiomViolation(f"(a{i}·a{j})·m{k} != a{i}·(a{j}·m{k})")
        for k in range(self.dim):
            mk = self.basis_vector(k)
            for i in range(B.dim):
                ei = B.basis_vector(i)
                for j in range(B.dim):
                    if self.act_right(mk, B.table[i][j]) != self.act_right(self.right[k][i], B.basis_vector(j)):
                        raise BimoduleAxiomViolation(f"m{k}·(b{i}·b{j}) != (m{k}·b{i})·b{j}")
        for i in range(A.dim):
            ai = A.basis_vector(i)
            for k in range(self.dim):
                for j in range(B.dim):
                    bj = B.basis_vector(j)
                    if self.act_right(self.left[i][k], bj) != self.act_left(ai, self.right[k][j]):
                        raise BimoduleAxiomViolation(f"(a{i}·m{k})·b{j} != a{i}·(m{k}·b{j})")
        for k in range(self.dim):
            mk = self.basis_vector(k)
            if self.act_left(A.unit, mk) != mk:
                raise BimoduleAxiomViolation(f"1_A does not fix m{k}")
            if self.act_right(mk, B.unit) != mk:
                raise BimoduleAxiomViolation(f"1_B does not fix m{k}")

    def __repr__(self):
        return f"Bimodule(dim={self.dim})"


class TriangularAlgebra:
    """The block algebra of formal matrices [[a, m], [0, b]].

    Basis order: A's basis, then M's, then B's, so coordinate projections and
    embeddings are index slices.  ``p`` and ``q`` are the complementary
    diagonal idempotents (1_A, 0, 0) and (0, 0, 1_B).
    """

    __slots__ = ("A", "M", "B", "algebra", "p", "q")

    def __init__(self, A: FDAlgebra, M: Bimodule, B: FDAlgebra, *, require_faithful: bool = True):
        if not (A.is_unital and B.is_unital):
            raise ValueError("triangular assembly requires unital diagonal algebras")
        if M.left_algebra is not A or M.right_algebra is not B:
            raise ValueError("bimodule does not act for the given algebras")
        self.A, self.M, self.B = A, M, B
        if require_faithful:
            self._check_faithful()
        self.algebra = self._assemble()
        self.p = self.element(A.unit, M.zero(), B.zero())
        self.q = self.element(A.zero(), M.zero(), B.unit)

    # -- coordinate bookkeeping ------------------------------------------

    @property
    def dim(self) -> int:
        return self.A.dim + self.M.dim + self.B.dim

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def trivial_idempotent_components(self) -> bool:
        """Both diagonal algebras are declared to have only trivial idempotents."""
        return self.A.only_trivial_idempotents and self.B.only_trivial_idempotents

    def element(self, a: Sequence, m: Sequence, b: Sequence) -> Vector:
        return tuple(a) + tuple(m) + tuple(b)

    def embed_a(self, a: Sequence) -> Vector:
        return self.element(a, self.M.zero(), self.B.zero())

    def embed_m(self, m: Sequence) -> Vector:
        return self.element(self.A.zero(), m, self.B.zero())

    def embed_b(self, b: Sequence) -> Vector:
        return self.element(self.A.zero(), self.M.zero(), b)

    def pi_a(self, x: Sequence) -> Vector:
        return tuple(x[: self.A.dim])

    def pi_m(self, x: Sequence) -> Vector:
        return tuple(x[self.A.dim : self.A.dim + self.M.dim])

    def pi_b(self, x: Sequence) -> Vector:
        return tuple(x[self.A.dim + self.M.dim :])

    # -- construction ------------------------------------------------------

    def _assemble(self) -> FDAlgebra:
        A, M, B = self.A, self.M, self.B
        na, nm, nb = A.dim, M.dim, B.dim
        labels = (
            tuple(f"a:{s}" for s in A.labels)
            + tuple(f"m:{s}" for s in M.labels)
            + tuple(f"b:{s}" for s in B.labels)
        )
        zero = vec_zero(self.field, na + nm + nb)
        table = [[zero] * (na + nm + nb) for _ in range(na + nm + nb)]
        for i in range(na):
            for j in range(na):
                table[i][j] = self.embed_a(A.table[i][j])
            for k in range(nm):
                table[i][na + k] = self.embed_m(M.left[i][k])
        for k in range(nm):
            for j in range(nb):
                table[na + k][na + nm + j] = self.embed_m(M.right[k][j])
        for i in range(nb):
            for j in range(nb):
                table[na + nm + i][na + nm + j] = self.embed_b(B.table[i][j])
        unit = self.element(A.unit, M.zero(), B.unit)
        return FDAlgebra(self.field, labels, table, unit, only_trivial_idempotents=False)

    def _check_faithful(self) -> None:
        A, M, B = self.A, self.M, self.B
        left_cols = []
        for i in range(A.dim):
            mat = M.left_action_matrix(A.basis_vector(i))
            left_cols.append([x for row in mat.entries for x in row])
        ker = kernel_basis(Matrix.from_columns(self.field, left_cols, nrows=M.dim * M.dim))
        if ker.dim:
            raise NotFaithful("left", ker.basis[0])
        right_cols = []
        for j in range(B.dim):
            mat = M.right_action_matrix(B.basis_vector(j))
            right_cols.append([x for row in mat.entries for x in row])
        ker = kernel_basis(Matrix.from_columns(self.field, right_cols, nrows=M.dim * M.dim))
        if ker.dim:
            raise NotFaithful("right", ker.basis[0])

    def mul(self, x: Sequence, y: Sequence) -> Vector:
        return self.algebra.mul(x, y)

    def __repr__(self):
        return (
            f"TriangularAlgebra(dimA={self.A.dim}, dimM={self.M.dim}, "
            f"dimB={self.B.dim}, field={self.field!r})"
        )


def make_triangular(A: FDAlgebra, M: Bimodule, B: FDAlgebra, *, require_faithful: bool = True) -> TriangularAlgebra:
    return TriangularAlgebra(A, M, B, require_faithful=require_faithful)


# ---------------------------------------------------------------------------
# centers


@lru_cache(maxsize=None)
def center_subspace(algebra: FDAlgebra) -> Subspace:
    """The set of x with [x, e_i] = 0 for every basis element, as a kernel."""
    f = algebra.field
    n = algebra.dim
    rows = []
    for i in range(n):
        e = algebra.basis_vector(i)
        diff = algebra.right_mul_matrix(e) - algebra.left_mul_matrix(e)
        rows.extend(diff.entries)
    return kernel_basis(Matrix(f, rows, ncols=n))


@lru_cache(maxsize=None)
def sigma_center_subspace(algebra: FDAlgebra, sigma: Matrix) -> Subspace:
    """Twisted center {λ : σ(x)λ = λx for all x}, computed as a kernel."""
    f = algebra.field
    n = algebra.dim
    rows = []
    for i in range(n):
        e = algebra.basis_vector(i)
        diff = algebra.left_mul_matrix(sigma.mul_vec(e)) - algebra.right_mul_matrix(e)
        rows.extend(diff.entries)
    return kernel_basis(Matrix(f, rows, ncols=n))


@dataclass(frozen=True)
class CenterData:
    """Center of a triangular algebra plus its diagonal shadow.

    ``tau`` maps the A-part of a central element to its forced B-part: its
    columns give the images (in B-coordinates) of the canonical basis of
    ``piA_center``.
    """

    center: Subspace
    piA_center: Subspace
    piB_center: Subspace
    tau: Matrix


@dataclass(frozen=True)
class SigmaCenterData:
    """Twisted center of a triangular algebra.

    ``eta`` (present only when the diagonal idempotent flags allow the
    automorphism to be decomposed) maps the B-part of a twisted-central
    element back to its forced A-part, column by column over the canonical
    basis of ``piB_part``.
    """

    sigma_center: Subspace
    piA_part: Subspace
    piB_part: Subspace
    eta: Matrix | None


def _structural_center_pairs(t: TriangularAlgebra) -> Subspace:
    """Solutions (a, b) of a·m = m·b for all m, in stacked (A|B)-coordinates."""
    A, M, B = t.A, t.M, t.B
    f = t.field
    rows = []
    for k in range(M.dim):
        mk = M.basis_vector(k)
        for tcoord in range(M.dim):
            row = [M.left[i][k][tcoord] for i in range(A.dim)]
            row += [f.neg(M.right[k][j][tcoord]) for j in range(B.dim)]
            rows.append(row)
    return kernel_basis(Matrix(f, rows, ncols=A.dim + B.dim))


def center(t: TriangularAlgebra) -> CenterData:
    """Center computed two ways (commutator kernel vs structural form) and
    checked equal; raises StructuralMismatch if the cross-check fails."""
    f = t.field
    oracle = center_subspace(t.algebra)
    pairs = _structural_center_pairs(t)
    structural = Subspace.from_vectors(
        f,
        t.dim,
        [t.element(v[: t.A.dim], t.M.zero(), v[t.A.dim :]) for v in pairs.basis],
    )
    if structural != oracle:
        raise StructuralMismatch("commutator-kernel center differs from structural center")
    piA = Subspace.from_vectors(f, t.A.dim, [t.pi_a(v) for v in oracle.basis])
    piB = Subspace.from_vectors(f, t.B.dim, [t.pi_b(v) for v in oracle.basis])
    if not piA.leq(center_subspace(t.A)):
        raise StructuralMismatch("projection of Z(T) is not central in A")
    if not piB.leq(center_subspace(t.B)):
        raise StructuralMismatch("projection of Z(T) is not central in B")
    tau_cols = []
    for a in piA.basis:
        b = _solve_right_partner(t, a)
        if b is None or not piB.contains(b):
            raise StructuralMismatch("central A-part admits no central B-partner")
        tau_cols.append(b)
    tau = Matrix.from_columns(f, tau_cols, nrows=t.B.dim)
    return CenterData(oracle, piA, piB, tau)


def _solve_right_partner(t: TriangularAlgebra, a: Sequence) -> Vector | None:
    """Solve a·m = m·b for b, given a (faithfulness makes it unique)."""
    M = t.M
    f = t.field
    rows, rhs = [], []
    for k in range(M.dim):
        target = M.act_left(a, M.basis_vector(k))
        for tcoord in range(M.dim):
            rows.append([M.right[k][j][tcoord] for j in range(t.B.dim)])
            rhs.append(target[tcoord])
    return solve_linear(Matrix(f, rows, ncols=t.B.dim), rhs)


def sigma_center(t: TriangularAlgebra, sigma) -> SigmaCenterData:
    """Twisted center of the triangular algebra for a verified automorphism.

    When both diagonal flags are declared, the kernel computation is
    cross-checked against the structural description derived from the
    automorphism decomposition, and the isomorphism eta is extracted.
    """
    from .maps import as_endo_matrix  # local: avoids module cycle

    sigma_mat = as_endo_matrix(t.algebra, sigma)
    check = is_automorphism_of(t.algebra, sigma_mat)
    if not check.ok:
        raise NotAutomorphism(check.witness)
    f = t.field
    space = sigma_center_subspace(t.algebra, sigma_mat)
    piA = Subspace.from_vectors(f, t.A.dim, [t.pi_a(v) for v in space.basis])
    piB = Subspace.from_vectors(f, t.B.dim, [t.pi_b(v) for v in space.basis])
    eta = None
    if t.trivial_idempotent_components:
        from .structure import decompose_automorphism

        parts = decompose_automorphism(t, sigma)
        _cross_check_sigma_center(t, parts, space)
        eta_cols = []
        for b in piB.basis:
            a = _solve_eta_image(t, parts.nu_sigma, b)
            if a is None or not piA.contains(a):
                raise StructuralMismatch("twisted-central B-part admits no A-partner")
            eta_cols.append(a)
        eta = Matrix.from_columns(f, eta_cols, nrows=t.A.dim)
    return SigmaCenterData(space, piA, piB, eta)


def _cross_check_sigma_center(t: TriangularAlgebra, parts, space: Subspace) -> None:
    """Structural form: elements (a, -m_σ·b, b) with a·m = ν(m)·b for all m."""
    A, M, B = t.A, t.M, t.B
    f = t.field
    rows = []
    nu_cols = [parts.nu_sigma.column(k) for k in range(M.dim)]
    for k in range(M.dim):
        nu_mk = nu_cols[k]
        for tcoord in range(M.dim):
            row = [M.left[i][k][tcoord] for i in range(A.dim)]
            row += [
                f.neg(M.act_right(nu_mk, B.basis_vector(j))[tcoord]) for j in range(B.dim)
            ]
            rows.append(row)
    pairs = kernel_basis(Matrix(f, rows, ncols=A.dim + B.dim))
    members = []
    for v in pairs.basis:
        a, b = v[: A.dim], v[A.dim :]
        m_part = vec_neg(f, M.act_right(parts.m_sigma, b))
        members.append(t.element(a, m_part, b))
    structural = Subspace.from_vectors(f, t.dim, members)
    if structural != space:
        raise StructuralMismatch("twisted center kernel differs from structural form")


def _solve_eta_image(t: TriangularAlgebra, nu: Matrix, b: Sequence) -> Vector | None:
    """Solve η(b)·m = ν(m)·b for η(b) in A-coordinates."""
    M = t.M
    f = t.field
    rows, rhs = [], []
    for k in range(M.dim):
        target = M.act_right(nu.column(k), b)
        for tcoord in range(M.dim):
            rows.append([M.left[i][k][tcoord] for i in range(t.A.dim)])
            rhs.append(target[tcoord])
    return solve_linear(Matrix(f, rows, ncols=t.A.dim), rhs)


def is_automorphism_of(algebra: FDAlgebra, mat: Matrix):
    """Shim so this module can verify automorphisms without importing maps at load time."""
    from .maps import LinearEndo, is_automorphism

    return is_automorphism(LinearEndo(algebra, mat))


# ---------------------------------------------------------------------------
# idempotent enumeration


def has_only_trivial_idempotents_bruteforce(algebra: FDAlgebra, bound: int = 200_000) -> bool:
    """Enumerate all elements of an algebra over F_p and test e² = e.

    True iff the only idempotents are 0 and (when present) the unit.  Raises
    EnumerationTooLarge when p^dim exceeds the bound.
    """
    field = algebra.field
    if not isinstance(field, PrimeField):
        raise ValueError("brute-force idempotent search needs a prime field")
    total = field.p ** algebra.dim
    if total > bound:
        raise EnumerationTooLarge(f"{total} elements exceed the bound {bound}")
    trivial = {vec_zero(field, algebra.dim)}
    if algebra.unit is not None:
        trivial.add(tuple(algebra.unit))
    for coords in itertools.product(range(field.p), repeat=algebra.dim):
        e = tuple(coords)
        if algebra.mul(e, e) == e and e not in trivial:
            return False
    return True
