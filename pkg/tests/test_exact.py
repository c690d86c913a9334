"""Exact scalar and linear-algebra substrate."""

import random
from fractions import Fraction

import pytest

from bornlab import Matrix, Signature, Subspace, determinant, invert, signature_of_symmetric
from bornlab.errors import NotSymmetricError, SingularMatrixError
from bornlab.exact import format_rational, parse_rational


def cofactor_det(rows):
    """Independent determinant oracle by cofactor expansion along row 0."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[r][c] for c in range(n) if c != j] for r in range(1, n)]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def random_matrix(rng, n, height=4):
    return Matrix([[Fraction(rng.randint(-height, height), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])


def random_invertible(rng, n):
    while True:
        m = random_matrix(rng, n)
        if determinant(m) != 0:
            return m


# --- rationals ----------------------------------------------------------


def test_rational_normalization():
    x = parse_rational("4/6")
    assert (x.numerator, x.denominator) == (2, 3)
    assert parse_rational("-4/6") == Fraction(-2, 3)
    assert parse_rational("-4/6").denominator == 3
    assert parse_rational("0/7") == 0


@pytest.mark.parametrize("text", ["3/4", "-3/4", "7", "-7", "0"])
def test_rational_round_trip(text):
    assert format_rational(parse_rational(text)) == text


@pytest.mark.parametrize("bad", ["3/-4", "3.5", " 1", "1 ", "1/0", "", "a/b", "+1"])
def test_rational_rejects_non_canonical(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


# --- inversion ----------------------------------------------------------


def test_invert_identity():
    assert invert(Matrix.identity(4)) == Matrix.identity(4)


def test_invert_swap_matrix_multiplies_back():
    m = Matrix([[0, 1], [1, 0]])
    inv = invert(m)
    assert m * inv == Matrix.identity(2)
    assert inv * m == Matrix.identity(2)
    assert inv == m


def test_invert_singular_raises():
    with pytest.raises(SingularMatrixError):
        invert(Matrix([[1, 1], [2, 2]]))


def test_invert_involutive_on_random_matrices():
    rng = random.Random(11)
    for _ in range(25):
        m = random_invertible(rng, rng.randint(2, 5))
        assert invert(invert(m)) == m
        assert m * invert(m) == Matrix.identity(m.n)


# --- determinant --------------------------------------------------------


def test_determinant_examples():
    assert determinant(Matrix.identity(3)) == 1
    assert determinant(Matrix([[0, 1], [-1, 0]])) == 1


def test_determinant_h4_omega_nonzero():
    # omega = a13 + a26 + a45 on six generators
    rows = [[0] * 6 for _ in range(6)]
    for i, j in ((1, 3), (2, 6), (4, 5)):
        rows[i - 1][j - 1] = 1
        rows[j - 1][i - 1] = -1
    m = Matrix(rows)
    expected = cofactor_det([list(r) for r in m.rows])
    assert determinant(m) == expected
    assert expected != 0
    assert expected == 1


def test_determinant_agrees_with_cofactor_oracle():
    rng = random.Random(5)
    for _ in range(20):
        m = random_matrix(rng, rng.randint(1, 4))
        assert determinant(m) == cofactor_det([list(r) for r in m.rows])


def test_determinant_multiplicative():
    rng = random.Random(17)
    for _ in range(15):
        n = rng.randint(2, 4)
        a, b = random_matrix(rng, n), random_matrix(rng, n)
        assert determinant(a * b) == determinant(a) * determinant(b)


# --- signature ----------------------------------------------------------


def test_signature_examples():
    assert signature_of_symmetric(Matrix.identity(2)) == Signature(2, 0, 0)
    # eigenvalues of [[0,1],[1,0]] are +1 and -1
    assert signature_of_symmetric(Matrix([[0, 1], [1, 0]])) == Signature(1, 1, 0)


def test_signature_hypersymplectic_metric():
    # two hyperbolic 2x2 blocks
    rows = [[0] * 4 for _ in range(4)]
    for i, j in ((1, 4), (2, 3)):
        rows[i - 1][j - 1] = -1
        rows[j - 1][i - 1] = -1
    assert signature_of_symmetric(Matrix(rows)).as_tuple() == (2, 2, 0)


def test_signature_requires_symmetry():
    with pytest.raises(NotSymmetricError):
        signature_of_symmetric(Matrix([[0, 1], [0, 0]]))


def test_signature_congruence_invariant():
    rng = random.Random(23)
    for _ in range(20):
        n = rng.randint(2, 5)
        m = random_matrix(rng, n)
        sym = m + m.transpose()
        p = random_invertible(rng, n)
        assert signature_of_symmetric(sym) == signature_of_symmetric(p.transpose() * sym * p)


def test_signature_counts_and_negation():
    rng = random.Random(29)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n)
        sym = m + m.transpose()
        sig = signature_of_symmetric(sym)
        assert sig.positive + sig.negative + sig.null == n
        flipped = signature_of_symmetric(-sym)
        assert (flipped.positive, flipped.negative) == (sig.negative, sig.positive)


def test_signature_null_block_with_hyperbolic_repair():
    # zero diagonal everywhere: needs the e_i -> e_i + e_j congruence
    m = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    assert signature_of_symmetric(m) == Signature(1, 1, 1)


# --- subspaces ----------------------------------------------------------


def test_subspace_membership_and_residual():
    s = Subspace(3, [[1, 0, 1], [0, 1, 0]])
    assert s.dim == 2
    assert s.contains([2, 3, 2])
    assert not s.contains([1, 0, 0])
    assert s.residual([1, 1, 1]) == (0, 0, 0)


def test_subspace_rejects_dependent_basis():
    with pytest.raises(ValueError):
        Subspace(3, [[1, 1, 0], [2, 2, 0]])


def test_subspace_equality_is_span_equality():
    a = Subspace(3, [[1, 1, 0], [0, 0, 1]])
    b = Subspace(3, [[2, 2, 2], [1, 1, -1]])
    assert a == b


def test_subspace_complementarity():
    f = Subspace(4, [[1, 1, 0, 0], [0, 0, 1, -1]])
    g = Subspace(4, [[1, -1, 0, 0], [0, 0, 1, 1]])
    assert f.is_complementary(g)
    assert not f.is_complementary(f)
