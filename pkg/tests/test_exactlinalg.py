import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superhom.exactlinalg import SparseRationalMatrix as M, compose_is_zero, kernel_dim, rank

from .oracles import dense_rank

values = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))


@st.composite
def sparse(draw, max_rows=12, max_cols=12):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    if not r or not c:
        return M(r, c)
    cells = draw(st.lists(st.tuples(st.integers(0, r - 1), st.integers(0, c - 1)),
                          max_size=r * c, unique=True))
    return M(r, c, {rc: draw(values) for rc in cells})


def test_rank_examples():
    assert rank(M.zero(3, 7)) == 0
    assert rank(M.zero(0, 0)) == 0
    for k in range(1, 6):
        assert rank(M.identity(k)) == k
    A = M(2, 2, {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 4})
    assert rank(A) == 1
    assert kernel_dim(A) == 1
    assert rank(M(2, 2, {(0, 0): Fraction(1, 3), (1, 1): Fraction(-2, 7)})) == 2


def test_modular_rank_is_a_lower_bound():
    A = M(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 3})
    assert rank(A) == 2
    assert rank(A, prime=2) == 1
    assert rank(A, prime=101) == 2


def test_compose_examples():
    I = M.identity(3)
    assert not compose_is_zero(I, I)
    assert compose_is_zero(M(4, 3, {(0, 0): 5}), M.zero(3, 2))
    with pytest.raises(ValueError):
        compose_is_zero(M.identity(2), M.identity(3))


def test_construction_errors():
    with pytest.raises(IndexError):
        M(2, 2, {(2, 0): 1})
    with pytest.raises(ValueError):
        M.from_triplets(2, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(ValueError):
        M(-1, 2)
    assert M(2, 2, {(0, 0): 0}).nnz == 0


def test_arithmetic():
    A = M(2, 3, {(0, 0): 1, (1, 2): Fraction(1, 2)})
    B = M(3, 2, {(0, 1): 2, (2, 0): 4})
    assert (A @ B).to_dense() == [[0, 2], [2, 0]]
    assert (A + A.scale(-1)).is_zero()
    assert A.transpose().transpose() == A
    assert A.transpose().shape == (3, 2)


def test_dump_round_trip():
    A = M(3, 4, {(0, 1): Fraction(-3, 2), (2, 3): 7, (1, 0): -1})
    text = A.dumps()
    assert text.splitlines()[0] == "3 4 3"
    assert M.loads(text) == A
    assert M.loads(M(5, 0).dumps()) == M(5, 0)
    with pytest.raises(ValueError):
        M.loads("2 2 2\n0 0 1\n")
    with pytest.raises(ValueError):
        M.loads("")


def test_large_random_transpose():
    rnd = random.Random(7)
    for trial in range(3):
        r, c = rnd.randint(150, 200), rnd.randint(150, 200)
        ent = {(rnd.randrange(r), rnd.randrange(c)): rnd.choice([-2, -1, 1, 2, 3]) for _ in range(600)}
        A = M(r, c, ent)
        assert rank(A) == rank(A.transpose())
        if trial == 0:
            assert rank(A) == dense_rank(A.to_dense())


# --- properties ----------------------------------------------------------

@settings(max_examples=1000, deadline=None)
@given(sparse())
def test_rank_matches_dense_oracle(A):
    assert rank(A) == dense_rank(A.to_dense())
    assert rank(A) <= min(A.shape)


@settings(max_examples=1000, deadline=None)
@given(sparse())
def test_rank_transpose(A):
    assert rank(A) == rank(A.transpose())


@settings(max_examples=1000, deadline=None)
@given(sparse(), st.randoms(use_true_random=False), st.lists(values.filter(bool), min_size=12, max_size=12))
def test_rank_permutation_and_scaling(A, rnd, scales):
    rp = list(range(A.rows))
    cp = list(range(A.cols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    B = M(A.rows, A.cols, {(rp[r], cp[c]): v * scales[r] for (r, c), v in A.entries().items()})
    assert rank(B) == rank(A)


@settings(max_examples=1000, deadline=None)
@given(sparse(6, 6), sparse(6, 6))
def test_block_diagonal_rank(A, B):
    ent = dict(A.entries())
    ent.update({(r + A.rows, c + A.cols): v for (r, c), v in B.entries().items()})
    D = M(A.rows + B.rows, A.cols + B.cols, ent)
    assert rank(D) == rank(A) + rank(B)


@settings(max_examples=1000, deadline=None)
@given(sparse())
def test_modular_rank_bounded(A):
    assert rank(A, prime=3) <= rank(A)
    assert rank(A, prime=1000003) <= rank(A)


@settings(max_examples=1000, deadline=None)
@given(sparse())
def test_dump_round_trip_property(A):
    assert M.loads(A.dumps()) == A
