"""Linear self-maps, twisted brackets, map predicates, and the solver that
turns each defining identity into a homogeneous linear system.

Quantified conditions ("for all x") are handled by polarization: the value of
q(x) = [x, Θ(x)]_σ (or its anti-symmetric variant) expands bilinearly as
q(Σ x_i e_i) = Σ_i x_i² q(e_i) + Σ_{i<j} x_i x_j sym(i, j), so q vanishes for
every x exactly when all diagonal values and all symmetrized basis-pair
values vanish.  Conditions of the form "value lies in the center" are made
linear by composing with the fixed complement projection that annihilates the
center (:meth:`trialg.linalg.Subspace.reduction_matrix`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import FDAlgebra, TriangularAlgebra, center_subspace
from .errors import NotAutomorphism
from .fields import Field, Scalar
from .linalg import Matrix, Subspace, Vector, kernel_basis, solve_linear, vec_add, vec_is_zero

SOLVE_KINDS = (
    "derivation",
    "sigma_derivation",
    "generalized_pair",
    "left_multiplier",
    "commuting",
    "centralizing",
    "skew_commuting",
    "skew_centralizing",
)

PREDICATE_MODES = ("commuting", "centralizing", "skew_commuting", "skew_centralizing")


@dataclass(frozen=True)
class Witness:
    """Concrete counterexample surfaced by a failed check."""

    reason: str
    pair: tuple[int, int] | None = None
    element: Vector | None = None
    lhs: Vector | None = None
    rhs: Vector | None = None

    def __repr__(self):
        bits = [self.reason]
        if self.pair is not None:
            bits.append(f"pair={self.pair}")
        return f"Witness({', '.join(bits)})"


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.ok


_PASS = CheckResult(True)


class LinearEndo:
    """A linear self-map of an algebra; column j is the image of basis j."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: FDAlgebra, matrix: Matrix):
        if matrix.nrows != matrix.ncols or matrix.nrows != algebra.dim:
            raise ValueError("endomorphism matrix must be dim x dim")
        if matrix.field != algebra.field:
            raise ValueError("endomorphism field mismatch")
        self.algebra = algebra
        self.matrix = matrix

    @classmethod
    def identity(cls, algebra: FDAlgebra) -> "LinearEndo":
        return cls(algebra, Matrix.identity(algebra.field, algebra.dim))

    @classmethod
    def zero(cls, algebra: FDAlgebra) -> "LinearEndo":
        return cls(algebra, Matrix.zeros(algebra.field, algebra.dim, algebra.dim))

    @classmethod
    def from_images(cls, algebra: FDAlgebra, images: Sequence[Sequence[Scalar]]) -> "LinearEndo":
        return cls(algebra, Matrix.from_columns(algebra.field, images, nrows=algebra.dim))

    def __call__(self, v: Sequence) -> Vector:
        return self.matrix.mul_vec(v)

    def compose(self, other: "LinearEndo") -> "LinearEndo":
        return LinearEndo(self.algebra, self.matrix @ other.matrix)

    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(self.algebra.field, self.algebra.dim)

    def __eq__(self, other):
        return isinstance(other, LinearEndo) and other.algebra is self.algebra and other.matrix == self.matrix

    def __hash__(self):
        return hash((id(self.algebra), self.matrix))

    def __repr__(self):
        return f"LinearEndo(dim={self.algebra.dim})"


def as_algebra(obj) -> FDAlgebra:
    return obj.algebra if isinstance(obj, TriangularAlgebra) else obj


def as_endo(algebra_or_t, obj) -> LinearEndo:
    """Coerce a LinearEndo or raw Matrix to an endomorphism of the algebra."""
    algebra = as_algebra(algebra_or_t)
    if isinstance(obj, LinearEndo):
        if obj.algebra is not algebra and obj.algebra.table != algebra.table:
            raise ValueError("endomorphism belongs to a different algebra")
        return obj
    return LinearEndo(algebra, obj)


def as_endo_matrix(algebra_or_t, obj) -> Matrix:
    return as_endo(algebra_or_t, obj).matrix


# ---------------------------------------------------------------------------
# twisted brackets


def bracket_sigma(sigma: LinearEndo, x: Sequence, y: Sequence) -> Vector:
    """σ(x)·y − y·x."""
    alg = sigma.algebra
    f = alg.field
    prod = alg.mul(sigma(x), y)
    return tuple(f.sub(a, b) for a, b in zip(prod, alg.mul(y, x)))


def abracket_sigma(sigma: LinearEndo, x: Sequence, y: Sequence) -> Vector:
    """σ(x)·y + y·x."""
    alg = sigma.algebra
    return vec_add(alg.field, alg.mul(sigma(x), y), alg.mul(y, x))


# ---------------------------------------------------------------------------
# pointwise predicates


def is_automorphism(theta: LinearEndo) -> CheckResult:
    alg = theta.algebra
    n = alg.dim
    if theta.matrix.rank() != n:
        return CheckResult(False, Witness("not invertible"))
    if alg.is_unital and theta(alg.unit) != tuple(alg.unit):
        return CheckResult(False, Witness("unit not preserved", lhs=theta(alg.unit), rhs=tuple(alg.unit)))
    for i in range(n):
        for j in range(n):
            lhs = theta(alg.table[i][j])
            rhs = alg.mul(theta(alg.basis_vector(i)), theta(alg.basis_vector(j)))
            if lhs != rhs:
                return CheckResult(False, Witness("multiplicativity", pair=(i, j), lhs=lhs, rhs=rhs))
    return _PASS


def is_sigma_derivation(d: LinearEndo, sigma: LinearEndo) -> CheckResult:
    """d(xy) = d(x)y + σ(x)d(y), checked on all basis pairs."""
    alg = d.algebra
    f = alg.field
    n = alg.dim
    for i in range(n):
        ei = alg.basis_vector(i)
        si = sigma(ei)
        for j in range(n):
            ej = alg.basis_vector(j)
            lhs = d(alg.table[i][j])
            rhs = vec_add(f, alg.mul(d(ei), ej), alg.mul(si, d(ej)))
            if lhs != rhs:
                return CheckResult(False, Witness("twisted Leibniz rule", pair=(i, j), lhs=lhs, rhs=rhs))
    return _PASS


def is_derivation(d: LinearEndo) -> CheckResult:
    return is_sigma_derivation(d, LinearEndo.identity(d.algebra))


def is_generalized_pair(D: LinearEndo, d: LinearEndo, sigma: LinearEndo) -> CheckResult:
    """D(xy) = D(x)y + σ(x)d(y) with d a σ-derivation, on all basis pairs."""
    inner = is_sigma_derivation(d, sigma)
    if not inner.ok:
        return inner
    alg = D.algebra
    f = alg.field
    n = alg.dim
    for i in range(n):
        ei = alg.basis_vector(i)
        si = sigma(ei)
        for j in range(n):
            ej = alg.basis_vector(j)
            lhs = D(alg.table[i][j])
            rhs = vec_add(f, alg.mul(D(ei), ej), alg.mul(si, d(ej)))
            if lhs != rhs:
                return CheckResult(False, Witness("generalized Leibniz rule", pair=(i, j), lhs=lhs, rhs=rhs))
    return _PASS


def is_left_multiplier(F: LinearEndo) -> CheckResult:
    """F(xy) = F(x)y on all basis pairs."""
    alg = F.algebra
    n = alg.dim
    for i in range(n):
        fei = F(alg.basis_vector(i))
        for j in range(n):
            lhs = F(alg.table[i][j])
            rhs = alg.mul(fei, alg.basis_vector(j))
            if lhs != rhs:
                return CheckResult(False, Witness("left multiplier rule", pair=(i, j), lhs=lhs, rhs=rhs))
    return _PASS


def predicate(theta: LinearEndo, sigma: LinearEndo, mode: str) -> CheckResult:
    """Universally quantified bracket condition, decided by polarization.

    mode is one of ``commuting`` / ``centralizing`` / ``skew_commuting`` /
    ``skew_centralizing``; the skew variants use the anti-symmetric bracket
    and the centralizing variants only require the value to be central.
    A failure reports the lexicographically first violating basis pair and
    the element witness e_i (+ e_j) together with the bracket value there.
    """
    if mode not in PREDICATE_MODES:
        raise ValueError(f"unknown predicate mode {mode!r}")
    alg = theta.algebra
    f = alg.field
    skew = mode.startswith("skew")
    central = mode.endswith("centralizing")
    residual = center_subspace(alg).reduce if central else (lambda v: v)
    bracket = abracket_sigma if skew else bracket_sigma

    def value(x: Sequence, y: Sequence) -> Vector:
        return bracket(sigma, x, theta(y))

    n = alg.dim
    for i in range(n):
        ei = alg.basis_vector(i)
        for j in range(i, n):
            if i == j:
                element = ei
                val = value(ei, ei)
            else:
                ej = alg.basis_vector(j)
                element = vec_add(f, ei, ej)
                val = vec_add(f, value(ei, ej), value(ej, ei))
            if not vec_is_zero(residual(val)):
                return CheckResult(
                    False, Witness(f"{mode} fails", pair=(i, j), element=element, lhs=val)
                )
    return _PASS


# ---------------------------------------------------------------------------
# map spaces


def vec_of_endo(endo: LinearEndo) -> Vector:
    return tuple(x for row in endo.matrix.entries for x in row)


def endo_of_vec(algebra: FDAlgebra, v: Sequence) -> LinearEndo:
    n = algebra.dim
    rows = [v[r * n : (r + 1) * n] for r in range(n)]
    return LinearEndo(algebra, Matrix(algebra.field, rows, ncols=n))


def vec_of_endo_pair(D: LinearEndo, d: LinearEndo) -> Vector:
    return vec_of_endo(D) + vec_of_endo(d)


@dataclass(frozen=True)
class MapSpace:
    """A solved space of endomorphisms (or (D, d) pairs) of one algebra."""

    algebra: FDAlgebra
    kind: str
    pair: bool
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def endos(self) -> list[LinearEndo]:
        if self.pair:
            raise ValueError("pair space: use endo_pairs()")
        return [endo_of_vec(self.algebra, v) for v in self.space.basis]

    def endo_pairs(self) -> list[tuple[LinearEndo, LinearEndo]]:
        if not self.pair:
            raise ValueError("not a pair space")
        half = self.algebra.dim ** 2
        return [
            (endo_of_vec(self.algebra, v[:half]), endo_of_vec(self.algebra, v[half:]))
            for v in self.space.basis
        ]

    def contains_endo(self, endo: LinearEndo) -> bool:
        if self.pair:
            raise ValueError("pair space: use contains_pair()")
        return self.space.contains(vec_of_endo(endo))

    def contains_pair(self, D: LinearEndo, d: LinearEndo) -> bool:
        return self.space.contains(vec_of_endo_pair(D, d))

    def first_component_space(self) -> Subspace:
        """Projection of a pair space onto its D-block."""
        half = self.algebra.dim ** 2
        return Subspace.from_vectors(
            self.algebra.field, half, [v[:half] for v in self.space.basis]
        )


class _System:
    """Accumulates rows of a homogeneous system over endo-block unknowns."""

    def __init__(self, field: Field, n: int, blocks: int):
        self.field = field
        self.n = n
        self.width = blocks * n * n
        self.rows: list[list[Scalar]] = []

    def equation(self, terms) -> None:
        """Add the n coordinate rows of sum of terms = 0.

        Each term is (block, P, v, sign): the expression P·X_block(v) with P a
        known Matrix (or None for the identity) and v a known vector.
        """
        f = self.field
        n = self.n
        rows = [[f.zero] * self.width for _ in range(n)]
        for block, P, v, sign in terms:
            offset = block * n * n
            nz = [(k, vk) for k, vk in enumerate(v) if vk]
            if P is None:
                for r in range(n):
                    row = rows[r]
                    base = offset + r * n
                    for k, vk in nz:
                        x = f.mul(sign, vk)
                        row[base + k] = f.add(row[base + k], x)
            else:
                for r in range(n):
                    row = rows[r]
                    prow = P.entries[r]
                    for t in range(n):
                        pr = prow[t]
                        if not pr:
                            continue
                        c = f.mul(sign, pr)
                        base = offset + t * n
                        for k, vk in nz:
                            row[base + k] = f.add(row[base + k], f.mul(c, vk))
        self.rows.extend(rows)

    def kernel(self) -> Subspace:
        return kernel_basis(Matrix(self.field, self.rows, ncols=self.width))


def solve_space(algebra_or_t, sigma: LinearEndo | None, kind: str) -> MapSpace:
    """Solve the full space of maps of the given kind as a kernel.

    ``sigma`` must be a verified automorphism for the twisted kinds and is
    ignored (replaced by the identity) for ``derivation`` and
    ``left_multiplier``.  Generalized pairs are solved jointly in the
    unknowns (D, d) with the twisted Leibniz constraint imposed on d.
    """
    if kind not in SOLVE_KINDS:
        raise ValueError(f"unknown solve kind {kind!r}")
    alg = as_algebra(algebra_or_t)
    f = alg.field
    n = alg.dim
    if kind in ("derivation", "left_multiplier"):
        sigma = LinearEndo.identity(alg)
    else:
        if sigma is None:
            raise ValueError(f"kind {kind!r} needs an automorphism")
        sigma = as_endo(alg, sigma)
        check = is_automorphism(sigma)
        if not check.ok:
            raise NotAutomorphism(check.witness)

    basis = [alg.basis_vector(i) for i in range(n)]
    right = [alg.right_mul_matrix(e) for e in basis]
    left_sigma = [alg.left_mul_matrix(sigma(e)) for e in basis]

    pair = kind == "generalized_pair"
    system = _System(f, n, 2 if pair else 1)
    one = f.one
    minus = f.neg(one)

    if kind in ("derivation", "sigma_derivation", "left_multiplier", "generalized_pair"):
        for i in range(n):
            for j in range(n):
                prod = alg.table[i][j]
                terms = [(0, None, prod, one), (0, right[j], basis[i], minus)]
                if kind != "left_multiplier":
                    terms.append((1 if pair else 0, left_sigma[i], basis[j], minus))
                system.equation(terms)
        if pair:
            for i in range(n):
                for j in range(n):
                    system.equation(
                        [
                            (1, None, alg.table[i][j], one),
                            (1, right[j], basis[i], minus),
                            (1, left_sigma[i], basis[j], minus),
                        ]
                    )
    else:
        skew = kind.startswith("skew")
        central = kind.endswith("centralizing")
        proj = center_subspace(alg).reduction_matrix() if central else None
        op = []
        for i in range(n):
            m = left_sigma[i] + right[i] if skew else left_sigma[i] - right[i]
            op.append(proj @ m if proj is not None else m)
        for i in range(n):
            system.equation([(0, op[i], basis[i], one)])
            for j in range(i + 1, n):
                system.equation([(0, op[i], basis[j], one), (0, op[j], basis[i], one)])

    return MapSpace(alg, kind, pair, system.kernel())


def associated_derivations(D: LinearEndo, sigma: LinearEndo):
    """All σ-derivations d making (D, d) a generalized pair.

    Returns ``(particular, homogeneous)`` where the full solution set is
    particular + homogeneous, or None when no partner exists.  On a unital
    algebra the homogeneous part is zero, so the partner is unique.
    """
    alg = D.algebra
    f = alg.field
    n = alg.dim
    basis = [alg.basis_vector(i) for i in range(n)]
    right = [alg.right_mul_matrix(e) for e in basis]
    left_sigma = [alg.left_mul_matrix(sigma(e)) for e in basis]

    homo = _System(f, n, 1)
    rows: list[list[Scalar]] = []
    rhs: list[Scalar] = []
    for i in range(n):
        for j in range(n):
            # known part: D(e_i e_j) - D(e_i) e_j must equal sigma(e_i) d(e_j)
            known = D(alg.table[i][j])
            known = tuple(f.sub(a, b) for a, b in zip(known, alg.mul(D(basis[i]), basis[j])))
            sub = _System(f, n, 1)
            sub.equation([(0, left_sigma[i], basis[j], f.one)])
            rows.extend(sub.rows)
            rhs.extend(known)
            homo.equation(
                [
                    (0, None, alg.table[i][j], f.one),
                    (0, right[j], basis[i], f.neg(f.one)),
                    (0, left_sigma[i], basis[j], f.neg(f.one)),
                ]
            )
    # twisted Leibniz on d itself is homogeneous; stack it below the probes
    rows.extend(homo.rows)
    rhs.extend([f.zero] * len(homo.rows))
    full = Matrix(f, rows, ncols=n * n)
    particular = solve_linear(full, rhs)
    if particular is None:
        return None
    return endo_of_vec(alg, particular), kernel_basis(full)
