"""Exact arithmetic tests, checked against independent polynomial oracles."""

import random
from fractions import Fraction

import pytest

from skeinlab.errors import DivisionByZero, FieldMismatch
from skeinlab.linalg import (
    Field,
    Matrix,
    cyclotomic_polynomial,
    euler_phi,
    solve_sylvester_family,
    unvec,
)

QQ = Field.rational()


# --- independent oracle: schoolbook polynomial reduction mod Phi_n ---------

def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_mod(a, m):
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        top = a.pop()
        if top:
            for j in range(dm):
                a[-dm + j] -= top * m[j] / m[dm]
    while len(a) < dm:
        a.append(Fraction(0))
    return a


def oracle_cyc_mul(n, a, b):
    m = [Fraction(c) for c in cyclotomic_polynomial(n)]
    return poly_mod(poly_mul(list(a), list(b)), m)


# --- scalars ----------------------------------------------------------------

def test_rational_add():
    a = QQ.scalar("1/2")
    b = QQ.scalar("1/3")
    assert a + b == QQ.scalar("5/6")


def test_phi_values():
    assert [euler_phi(n) for n in (1, 2, 3, 4, 5, 6, 12)] == [1, 1, 2, 2, 4, 2, 4]


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(2) == [1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(5) == [1, 1, 1, 1, 1]
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]


def test_zeta4_squares_to_minus_one():
    f = Field.cyclotomic(4)
    z = f.gen
    assert z * z == f.scalar(-1)


def test_zeta5_inverse_by_reduction_oracle():
    f = Field.cyclotomic(5)
    z = f.gen
    w = z.inv()
    # inv(zeta_5) = zeta_5^4 = -1 - z - z^2 - z^3
    assert w == f.from_coeffs([-1, -1, -1, -1])
    prod = oracle_cyc_mul(5, z.coeffs, w.coeffs)
    assert prod == list(f.one.coeffs)


def test_cyclotomic_mul_against_oracle_random():
    rng = random.Random(7)
    for n in (4, 5, 12):
        f = Field.cyclotomic(n)
        for _ in range(100):
            a = f.from_coeffs([Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                               for _ in range(f.degree)])
            b = f.from_coeffs([Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                               for _ in range(f.degree)])
            assert list((a * b).coeffs) == oracle_cyc_mul(n, a.coeffs, b.coeffs)


def test_cyclotomic_inverse_random():
    rng = random.Random(11)
    f = Field.cyclotomic(5)
    for _ in range(25):
        a = f.from_coeffs([rng.randint(-4, 4) for _ in range(4)])
        if a.is_zero():
            continue
        assert a * a.inv() == f.one


def test_inv_zero_raises():
    with pytest.raises(DivisionByZero):
        QQ.scalar(0).inv()


def test_field_mismatch_raises():
    with pytest.raises(FieldMismatch):
        QQ.scalar(1) + Field.cyclotomic(4).scalar(1)


def test_scalar_encoding_roundtrip():
    assert QQ.encode(QQ.scalar("-3/7")) == "-3/7"
    f = Field.cyclotomic(4)
    s = f.from_coeffs(["1/2", "-2"])
    assert f.encode(s) == ["1/2", "-2"]
    assert f.decode(["1/2", "-2"]) == s
    assert f.decode("3") == f.scalar(3)


# --- matrices ---------------------------------------------------------------

def test_kernel_of_zero_1x1():
    m = Matrix.zeros(QQ, 1, 1)
    k = m.kernel()
    assert k.cols == 1 and k[0, 0] == QQ.one


def test_kernel_of_identity():
    assert Matrix.identity(QQ, 3).kernel().cols == 0


def test_kernel_checked_by_multiplication():
    m = Matrix.from_rows(QQ, [[1, 1], [2, 2]])
    k = m.kernel()
    assert k.cols == 1
    assert (m @ k).is_zero()
    # spanned by (1, -1) up to scale
    assert k[0, 0] * QQ.scalar(-1) == k[1, 0]


def test_cokernel_mirrors_kernel():
    m = Matrix.from_rows(QQ, [[1, 2], [1, 2], [0, 0]])
    q = m.cokernel()
    assert (q @ m).is_zero()
    assert q.rank() == m.rows - m.rank() == 2
    assert Matrix.identity(QQ, 2).cokernel().rows == 0
    z = Matrix.zeros(QQ, 1, 1).cokernel()
    assert z.rows == 1 and z.rank() == 1


def test_rank_nullity_random():
    rng = random.Random(3)
    for _ in range(60):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        m = Matrix.from_rows(QQ, [[rng.randint(-3, 3) for _ in range(c)]
                                  for _ in range(r)])
        k = m.kernel()
        assert m.rank() + k.cols == c
        assert (m @ k).is_zero()
        q = m.cokernel()
        assert (q @ m).is_zero()
        assert q.rows == r - m.rank()


def test_rank_nullity_cyclotomic():
    rng = random.Random(5)
    f = Field.cyclotomic(4)
    for _ in range(20):
        m = Matrix.from_rows(
            f, [[f.from_coeffs([rng.randint(-2, 2), rng.randint(-2, 2)])
                 for _ in range(3)] for _ in range(3)])
        assert m.rank() + m.kernel().cols == 3
        assert (m @ m.kernel()).is_zero()


def test_solve_and_inverse():
    m = Matrix.from_rows(QQ, [[2, 1], [1, 1]])
    inv = m.inverse()
    assert m @ inv == Matrix.identity(QQ, 2)
    rhs = Matrix.from_rows(QQ, [[1], [0]])
    x = m.solve(rhs)
    assert m @ x == rhs
    with pytest.raises(ValueError):
        Matrix.from_rows(QQ, [[1, 1], [1, 1]]).solve(Matrix.from_rows(QQ, [[1], [0]]))


def test_kron_mixed_identity():
    a = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    i2 = Matrix.identity(QQ, 2)
    k = a.kron(i2)
    assert k.rows == k.cols == 4
    assert k[0, 0] == QQ.scalar(1) and k[1, 1] == QQ.scalar(1)
    assert k[0, 2] == QQ.scalar(2) and k[2, 0] == QQ.scalar(3)


def test_matmul_kron_compatibility():
    # (A kron B)(C kron D) = AC kron BD
    rng = random.Random(1)

    def rand(n, m):
        return Matrix.from_rows(QQ, [[rng.randint(-2, 2) for _ in range(m)]
                                     for _ in range(n)])

    a, b, c, d = rand(2, 3), rand(2, 2), rand(3, 2), rand(2, 3)
    assert a.kron(b) @ c.kron(d) == (a @ c).kron(b @ d)


# --- sylvester solver --------------------------------------------------------

def test_sylvester_empty_family():
    sol = solve_sylvester_family([], dims=(2, 2), field=QQ)
    assert sol.cols == 4


def test_sylvester_diag_brute_force():
    d = Matrix.from_rows(QQ, [[1, 0], [0, 2]])
    sol = solve_sylvester_family([(d, d)])
    assert sol.cols == 2
    # brute-force oracle over the 4-dim space of 2x2 matrices
    found = 0
    for t00 in (0, 1):
        for t11 in (0, 1):
            t = Matrix.from_rows(QQ, [[t00, 0], [0, t11]])
            if d @ t == t @ d:
                found += 1
    assert found == 4  # all diagonal matrices commute with diag(1,2)
    for k in range(sol.cols):
        t = unvec(QQ, sol.col(k), 2, 2)
        assert d @ t == t @ d
        assert t[0, 1].is_zero() and t[1, 0].is_zero()


def test_sylvester_scaling_forces_zero():
    i = Matrix.identity(QQ, 2)
    sol = solve_sylvester_family([(i, i * QQ.scalar(2))])
    assert sol.cols == 0
