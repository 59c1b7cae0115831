"""Exact rational matrices: arithmetic conventions and fraction-free rank."""

import doctest
import random
from fractions import Fraction

import pytest

from borbit import ratmat
from borbit.perms import all_perms, compose
from borbit.ratmat import (
    RationalMatrix,
    format_matrix,
    parse_matrix,
    stack_rows,
)


def gauss_rank(rows):
    """Plain fraction Gaussian elimination, used as an independent check."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col]
        for r in range(nrows):
            if r != rank and m[r][col]:
                factor = m[r][col] / inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_doctests():
    assert doctest.testmod(ratmat).failed == 0


def test_constructors_and_entry_indexing():
    e = RationalMatrix.elementary(3, 2, 3)
    assert e.entry(2, 3) == 1
    assert sum(1 for row in e.rows for v in row if v) == 1
    assert RationalMatrix.matrix_identity(3) == RationalMatrix.elementary(
        3, 1, 1
    ) + RationalMatrix.elementary(3, 2, 2) + RationalMatrix.elementary(3, 3, 3)
    z = RationalMatrix.zero(2, 3)
    assert (z.nrows, z.ncols) == (2, 3)
    assert z.is_zero()


def test_elementary_product_rule():
    for r in range(1, 4):
        for s in range(1, 4):
            for t in range(1, 4):
                for u in range(1, 4):
                    prod = RationalMatrix.elementary(
                        3, r, s
                    ) * RationalMatrix.elementary(3, t, u)
                    if s == t:
                        assert prod == RationalMatrix.elementary(3, r, u)
                    else:
                        assert prod.is_zero()


def test_permutation_matrix_sends_basis_vectors():
    # column j of the matrix of w is the basis vector indexed by w(j)
    w = (2, 4, 1, 3)
    p = RationalMatrix.permutation(w)
    for j in range(1, 5):
        col = [p.entry(i, j) for i in range(1, 5)]
        assert col == [1 if i == w[j - 1] else 0 for i in range(1, 5)]


def test_permutation_matrices_respect_composition():
    for u in all_perms(3):
        for w in all_perms(3):
            assert RationalMatrix.permutation(
                compose(u, w)
            ) == RationalMatrix.permutation(u) * RationalMatrix.permutation(w)


def test_arithmetic():
    a = parse_matrix("1,2;3,4")
    b = parse_matrix("0,1;1,0")
    assert a + b == parse_matrix("1,3;4,4")
    assert a - a == RationalMatrix.zero(2, 2)
    assert -a == parse_matrix("-1,-2;-3,-4")
    assert a * b == parse_matrix("2,1;4,3")
    assert 2 * a == a * 2 == parse_matrix("2,4;6,8")
    assert Fraction(1, 2) * b == parse_matrix("0,1/2;1/2,0")
    assert a.transpose() == parse_matrix("1,3;2,4")
    with pytest.raises(ValueError):
        a + RationalMatrix.zero(3, 3)
    with pytest.raises(ValueError):
        a * RationalMatrix.zero(3, 3)


def test_triangularity_tests():
    assert parse_matrix("1,2;0,3").is_upper_triangular()
    assert not parse_matrix("1,2;0,3").is_strictly_upper_triangular()
    assert parse_matrix("0,2;0,0").is_strictly_upper_triangular()
    assert not parse_matrix("0,0;1,0").is_upper_triangular()


def test_column_selection_and_augmentation():
    a = parse_matrix("1,2,3;4,5,6")
    assert a.take_columns(2) == parse_matrix("1,2;4,5")
    with pytest.raises(ValueError):
        a.take_columns(0)
    with pytest.raises(ValueError):
        a.take_columns(4)
    left = parse_matrix("1;4")
    assert left.augment(a.take_columns(2)) == parse_matrix("1,1,2;4,4,5")
    assert stack_rows([(1, 2), (3, 4)]) == parse_matrix("1,2;3,4")
    assert stack_rows([a.flatten()]).rank() == 1


def test_rank_known_values():
    assert RationalMatrix.matrix_identity(5).rank() == 5
    assert RationalMatrix.zero(3, 4).rank() == 0
    assert parse_matrix("1,2;2,4").rank() == 1
    assert parse_matrix("1/2,1/3;1/4,1/6").rank() == 1
    assert parse_matrix("1,0,0;0,0,1").rank() == 2


def test_rank_matches_gaussian_elimination_on_random_matrices():
    rng = random.Random(20240814)
    for _ in range(120):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        rows = tuple(
            tuple(
                Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                for _ in range(ncols)
            )
            for _ in range(nrows)
        )
        mat = RationalMatrix(rows)
        assert mat.rank() == gauss_rank(rows)
        # rank is invariant under transpose and row duplication
        assert mat.transpose().rank() == mat.rank()
        assert stack_rows(mat.rows + mat.rows).rank() == mat.rank()


def test_rank_of_products_never_exceeds_factors():
    rng = random.Random(7)
    for _ in range(40):
        a = RationalMatrix(
            tuple(
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(3))
                for _ in range(4)
            )
        )
        b = RationalMatrix(
            tuple(
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(5))
                for _ in range(3)
            )
        )
        assert (a * b).rank() <= min(a.rank(), b.rank())


def test_immutability_and_hashing():
    a = parse_matrix("1,2;3,4")
    with pytest.raises(AttributeError):
        a.rows = ()
    assert hash(a) == hash(parse_matrix("1,2;3,4"))
    assert a != "1,2;3,4"


def test_format_round_trip():
    text = "0,1/2;1,0"
    assert format_matrix(parse_matrix(text)) == text
    assert parse_matrix(format_matrix(RationalMatrix.matrix_identity(3))) == (
        RationalMatrix.matrix_identity(3)
    )
    with pytest.raises(ValueError):
        parse_matrix("1,2;3")
