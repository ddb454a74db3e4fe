import pytest

from trialg import GF, QQ, LinearEndo, block_upper, trian_trunc, upper_triangular


def conjugation(t, u):
    """Conjugation x -> u x u^{-1} of the assembled algebra, u given in T-coords."""
    alg = t.algebra
    inv = alg.left_mul_matrix(u).inverse()
    assert inv is not None, "conjugating element must be invertible"
    u_inv = inv.mul_vec(alg.unit)
    return LinearEndo(alg, alg.left_mul_matrix(u) @ alg.right_mul_matrix(u_inv))


def diag_sign_automorphism(t):
    """(a, m, b) -> (a, -m, b): conjugation by p - q."""
    f = t.field
    u = tuple(f.sub(a, b) for a, b in zip(t.p, t.q))
    return conjugation(t, u)


def unipotent_automorphism(t):
    """Conjugation by 1 + (first module basis vector): a non-diagonal inner map."""
    f = t.field
    m = t.M.basis_vector(0)
    u = tuple(f.add(a, b) for a, b in zip(t.algebra.unit, t.embed_m(m)))
    return conjugation(t, u)


@pytest.fixture(scope="session")
def t2q():
    return upper_triangular(2, QQ)


@pytest.fixture(scope="session")
def t3q():
    return upper_triangular(3, QQ)


@pytest.fixture(scope="session")
def t4q():
    return upper_triangular(4, QQ)


@pytest.fixture(scope="session")
def t2f5():
    return upper_triangular(2, GF(5))


@pytest.fixture(scope="session")
def block21q():
    return block_upper((2, 1), 1, QQ)


@pytest.fixture(scope="session")
def trunc3q():
    return trian_trunc(3, QQ)
