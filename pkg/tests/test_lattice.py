import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockforge.errors import UnsupportedInputError, UsageError
from fockforge.lattice import (
    Cocycle,
    Lattice,
    det,
    group_mul,
    roots,
    short_vectors,
    spanned_by_roots,
)


def box_vectors(L, bound, box):
    """Brute force: every coordinate vector in [-box, box]^rank with norm <= bound."""
    out = []
    for v in product(range(-box, box + 1), repeat=L.rank):
        n = L.norm(v)
        if n <= bound:
            out.append(v)
    return sorted(out)


POSITIVE = [
    Lattice.A(1),
    Lattice.A(2),
    Lattice.A(3),
    Lattice([[4]]),
    Lattice([[2, 0], [0, 2]]),
    Lattice([[2, 1], [1, 4]]),
    Lattice([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -2], [0, 0, -2, 4]]),
]


@pytest.mark.parametrize("L", POSITIVE, ids=repr)
@pytest.mark.parametrize("bound", [2, 4, 6])
def test_short_vectors_match_box(L, bound):
    got = sorted(tuple(v) for v in short_vectors(L, bound))
    assert got == box_vectors(L, bound, 4)


@pytest.mark.parametrize(
    "L,count",
    [(Lattice.A(1), 2), (Lattice.A(2), 6), (Lattice.A(3), 12), (Lattice.A(4), 20), (Lattice([[4]]), 0),
     (Lattice([[2, 0], [0, 2]]), 4)],
    ids=repr,
)
def test_root_counts(L, count):
    # A_n has n(n+1) roots; the counts are checked against the box search too
    rs = roots(L)
    assert len(rs) == count
    assert sorted(tuple(v) for v in rs) == [v for v in box_vectors(L, 2, 3) if L.norm(v) == 2]


def test_spanned_by_roots():
    assert spanned_by_roots(Lattice.A(2))
    assert not spanned_by_roots(Lattice([[4]]))
    assert not spanned_by_roots(Lattice([[2, 1], [1, 4]]))


def test_roots_need_positive_definite():
    with pytest.raises(UnsupportedInputError):
        roots(Lattice([[2, 1], [1, -2]]))


def test_validation():
    with pytest.raises(UsageError):
        Lattice([[2, 1], [0, 2]])
    with pytest.raises(UsageError):
        Lattice([[3]])
    with pytest.raises(UsageError):
        Lattice([[2, 1], [1, 1]], ["even", "odd"])
    with pytest.raises(UsageError):
        Lattice([[2, 2], [2, 2]])
    with pytest.raises(UsageError):
        Lattice([[2, 1]])
    assert Lattice([[1]], ["odd"]).odd_colors == [0]
    assert Lattice([]).rank == 0


def test_det():
    assert det([[2, -1], [-1, 2]]) == 3
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == Fraction(-3)


def test_json_roundtrip():
    L = Lattice([[2, 0], [0, 1]], ["even", "odd"], name="x")
    assert Lattice.from_json(L.to_json()) == L
    with pytest.raises(UsageError):
        Lattice.from_json({"rank": 3, "gram": [[2]]})
    H = Lattice.from_json({"gram": [[2]], "include_h0_h4": True})
    assert H.rank == 3 and H.gram[1][2] == 1


vec = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@given(vec, vec, vec)
def test_cocycle_bimultiplicative(a, b, c):
    L = Lattice.A(3)
    eps = Cocycle(L)
    ab = [x + y for x, y in zip(a, b)]
    assert eps(ab, c) == eps(a, c) * eps(b, c)
    assert eps(c, ab) == eps(c, a) * eps(c, b)
    assert eps(a, b) * eps(b, a) == (-1) ** (L.inner(a, b) % 2)


@given(vec, vec, vec)
def test_twisted_group_algebra_associative(a, b, c):
    L = Lattice([[2, 1, 0], [1, 2, 3], [0, 3, -4]])
    s1, ab = group_mul(L, a, b)
    s2, abc = group_mul(L, ab, c)
    s3, bc = group_mul(L, b, c)
    s4, abc2 = group_mul(L, a, bc)
    assert abc == abc2 and s1 * s2 == s3 * s4


def test_group_mul_rejects_odd():
    L = Lattice([[2, 0], [0, 1]], ["even", "odd"])
    with pytest.raises(UnsupportedInputError):
        group_mul(L, (0, 1), (1, 0))


def test_inner_rank_mismatch():
    with pytest.raises(UsageError):
        Lattice.A(2).inner((1,), (1, 0))


def test_random_vector_even_only():
    L = Lattice([[2, 0], [0, 1]], ["even", "odd"])
    rng = random.Random(3)
    assert all(L.random_vector(rng)[1] == 0 for _ in range(20))
