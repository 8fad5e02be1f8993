import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multclose.errors import InputError, ResourceBoundError
from multclose.linalg import (
    FpVec,
    Subspace,
    count_subspaces,
    enumerate_subspaces,
    format_subspace,
    full_subspace,
    gaussian_binomial,
    nullspace,
    parse_subspace,
    rref,
    subspace_contains,
    subspace_meet,
    subspace_sum,
    zero_subspace,
)

PRIMES = (2, 3, 5)


def matrices(max_dim=4):
    return st.integers(0, len(PRIMES) - 1).flatmap(
        lambda pi: st.integers(1, max_dim).flatmap(
            lambda d: st.lists(
                st.tuples(*([st.integers(0, PRIMES[pi] - 1)] * d)),
                min_size=0,
                max_size=d + 2,
            ).map(lambda rows: (PRIMES[pi], d, rows))
        )
    )


@st.composite
def matrix_pairs(draw, max_dim=3):
    p = PRIMES[draw(st.integers(0, len(PRIMES) - 1))]
    d = draw(st.integers(1, max_dim))
    row = st.tuples(*([st.integers(0, p - 1)] * d))
    rows1 = draw(st.lists(row, min_size=0, max_size=d + 2))
    rows2 = draw(st.lists(row, min_size=0, max_size=d + 2))
    return p, d, rows1, rows2


def test_rref_full_rank_2x2():
    assert rref([(1, 1), (0, 1)], p=2).rows == ((1, 0), (0, 1))


def test_rref_zero_rows():
    assert rref([(0, 0)], p=2).rows == ()


def test_rref_dependent_rows():
    assert rref([(1, 1, 0), (1, 1, 1)], p=2).rows == ((1, 1, 0), (0, 0, 1))


def test_rref_mixed_moduli_rejected():
    with pytest.raises(InputError):
        rref([FpVec(2, (1, 0)), FpVec(3, (1, 0))])
    with pytest.raises(InputError):
        rref([FpVec(2, (1, 0)), FpVec(2, (1, 0, 1))])


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rref_idempotent(data):
    p, d, rows = data
    s = rref(rows, p=p, dim=d)
    assert rref(s.rows, p=p, dim=d) == s


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rref_spans_input(data):
    p, d, rows = data
    s = rref(rows, p=p, dim=d)
    for r in rows:
        assert s.contains_vec(tuple(c % p for c in r))


def test_meet_examples():
    u = rref([(1, 0)], p=2)
    v = rref([(0, 1)], p=2)
    assert subspace_meet(u, v).is_zero()
    assert subspace_meet(u, u) == u
    a = rref([(1, 0, 0), (0, 1, 0)], p=2)
    b = rref([(0, 1, 0), (0, 0, 1)], p=2)
    assert subspace_meet(a, b) == rref([(0, 1, 0)], p=2)


def test_sum_examples():
    u = rref([(1, 0)], p=2)
    z = zero_subspace(2, 2)
    assert subspace_sum(u, z) == u
    assert subspace_sum(u, rref([(0, 1)], p=2)) == full_subspace(2, 2)
    assert subspace_contains(u, u)


def test_ambient_mismatch_rejected():
    with pytest.raises(InputError):
        subspace_meet(zero_subspace(2, 2), zero_subspace(2, 3))
    with pytest.raises(InputError):
        subspace_sum(zero_subspace(2, 2), zero_subspace(3, 2))


@given(matrix_pairs())
@settings(max_examples=100, deadline=None)
def test_meet_sum_galois(data):
    p, d, rows1, rows2 = data
    u = rref(rows1, p=p, dim=d)
    v = rref(rows2, p=p, dim=d)
    m = subspace_meet(u, v)
    s = subspace_sum(u, v)
    assert subspace_contains(u, m) and subspace_contains(v, m)
    assert subspace_contains(s, u) and subspace_contains(s, v)
    assert m.rank + s.rank == u.rank + v.rank


@given(matrix_pairs())
@settings(max_examples=60, deadline=None)
def test_meet_matches_elementwise_intersection(data):
    p, d, rows1, rows2 = data
    u = rref(rows1, p=p, dim=d)
    v = rref(rows2, p=p, dim=d)
    expected = set(u.elements()) & set(v.elements())
    assert set(subspace_meet(u, v).elements()) == expected


def test_enumerate_counts():
    assert len(list(enumerate_subspaces(2, 2))) == 5
    assert len(list(enumerate_subspaces(2, 0))) == 1
    assert len(list(enumerate_subspaces(2, 3))) == 16


@pytest.mark.parametrize("p,dim", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_enumerate_matches_gaussian_binomials(p, dim):
    spaces = list(enumerate_subspaces(p, dim))
    assert len(spaces) == count_subspaces(p, dim)
    assert len(set(spaces)) == len(spaces)
    for k in range(dim + 1):
        assert sum(1 for s in spaces if s.rank == k) == gaussian_binomial(
            dim, k, p
        )


def test_enumerate_canonical_and_ordered():
    spaces = list(enumerate_subspaces(2, 3))
    for s in spaces:
        assert rref(s.rows, p=2, dim=3) == s
    keys = [(s.rank, s.rows) for s in spaces]
    assert keys == sorted(keys)


def test_enumerate_respects_bounds():
    from multclose.bounds import Bounds

    with pytest.raises(ResourceBoundError):
        list(enumerate_subspaces(2, 9, Bounds()))
    with pytest.raises(ResourceBoundError):
        list(enumerate_subspaces(7, 2, Bounds()))


def test_gaussian_binomial_values():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 2, 3) == 13


def test_nullspace_solves_constraints():
    # x + y = 0, y + z = 0 over F_3
    ker = nullspace(3, [(1, 1, 0), (0, 1, 1)], 3)
    assert ker.rank == 1
    (row,) = ker.rows
    for c in (1, 2):
        v = tuple((c * x) % 3 for x in row)
        assert (v[0] + v[1]) % 3 == 0 and (v[1] + v[2]) % 3 == 0


def test_serialization_round_trip():
    s = rref([(1, 1, 0), (0, 0, 1)], p=2)
    text = format_subspace(s)
    assert text == "1 1 0;0 0 1"
    assert parse_subspace(text, 2, 3) == s
    assert format_subspace(zero_subspace(2, 3)) == "0"
    assert parse_subspace("0", 2, 3) == zero_subspace(2, 3)
    with pytest.raises(InputError):
        parse_subspace("1 0", 2, 3)


def test_subspace_rejects_non_canonical_rows():
    with pytest.raises(InputError):
        Subspace(2, 2, ((1, 1), (0, 1)))  # pivot column not clean
    with pytest.raises(InputError):
        Subspace(2, 2, ((0, 1), (1, 0)))  # pivots not increasing


def test_fpvec_arithmetic():
    a = FpVec(5, (1, 7))
    assert a.coords == (1, 2)
    b = FpVec(5, (4, 4))
    assert (a + b).coords == (0, 1)
    assert (a - b).coords == (2, 3)
    assert (-a).coords == (4, 3)
    assert a.scale(3).coords == (3, 1)
    with pytest.raises(InputError):
        a + FpVec(3, (1, 1))
