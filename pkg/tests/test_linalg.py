from fractions import Fraction

from hypothesis import given, settings, strategies as st

from emssloop.linalg import Quotient, kernel, rank, reduce, rref
from emssloop.scalars import FieldSpec
from oracles import matrix_rank

fields = st.sampled_from([0, 2, 3, 5])
matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=6))


@settings(max_examples=80)
@given(fields, matrices)
def test_rank_matches_naive_elimination(p, rows):
    F = FieldSpec(p)
    assert rank(F, rows) == matrix_rank(rows, p)
    assert len(rref(F, rows)[1]) == matrix_rank(rows, p)


@settings(max_examples=60)
@given(fields, matrices)
def test_kernel_is_kernel(p, rows):
    F = FieldSpec(p)
    # columns of the map are the rows given
    cols = rows
    n_target = len(cols[0])
    K = kernel(F, cols, n_target)
    assert len(K) == len(cols) - rank(F, cols)
    for v in K:
        img = [F.zero] * n_target
        for c, col in zip(v, cols):
            img = [F.add(a, F.mul(c, F.coerce(b))) for a, b in zip(img, col)]
        assert all(x == 0 for x in img)


def test_rref_over_q_with_fractions():
    F = FieldSpec(0)
    red, piv = rref(F, [[2, 4, 1], [1, 2, 3]])
    assert piv == [0, 2]
    assert red == [[1, 2, 0], [0, 0, 1]]
    assert all(isinstance(c, Fraction) for row in red for c in row)


def test_quotient_coordinates():
    F = FieldSpec(3)
    Z = [[1, 0, 0], [0, 1, 0]]
    B = [[1, 1, 0]]
    q = Quotient(F, Z, B)
    assert q.dim == 1
    a = q.coordinates([1, 0, 0])
    b = q.coordinates([0, 1, 0])
    # e1 = -e2 modulo e1 + e2
    assert a != [0] and a == [F.neg(b[0])]
    assert q.coordinates([1, 1, 0]) == [0]


def test_reduce_zeroes_pivots():
    F = FieldSpec(5)
    basis, piv = rref(F, [[1, 2, 3]])
    v = reduce(F, basis, piv, [2, 0, 1])
    assert v[piv[0]] == 0
