import random
from fractions import Fraction
from itertools import product

import pytest

from fockforge.errors import TruncationError, UnsupportedInputError
from fockforge.fock import FockState, random_state
from fockforge.lattice import Cocycle, Lattice, roots
from fockforge.vertex import (
    ChargedState,
    ch2_of,
    character,
    heisenberg_mode_apply,
    l0_eigenvalue,
    sector_level_counts,
    vertex_commutator,
    vertex_mode_apply,
    weight_one_algebra,
)

from test_series import pentagonal_partition_counts


def character_oracle(L, N, box=4):
    """Lattice points from a box search times (p^{*rank})(level) from the pentagonal recurrence."""
    p = pentagonal_partition_counts(N)
    colored = [1] + [0] * N
    for _ in range(L.rank):
        colored = [sum(colored[i] * p[n - i] for i in range(n + 1)) for n in range(N + 1)]
    out = [0] * (N + 1)
    for v in product(range(-box, box + 1), repeat=L.rank):
        base = L.norm(v)
        if base <= 2 * N:
            for d in range(N - base // 2 + 1):
                out[base // 2 + d] += colored[d]
    return out


POSITIVE_EVEN = [Lattice.A(1), Lattice.A(2), Lattice([[4]]), Lattice([[2, 1], [1, 4]]), Lattice.A(3)]


@pytest.mark.parametrize("L", POSITIVE_EVEN, ids=repr)
def test_character_matches_oracle(L):
    N = 6
    oracle = character_oracle(L, N)
    assert [int(c) for c in character(L, N).coefficients()] == oracle
    assert sector_level_counts(L, N) == oracle


def test_character_a1_start():
    # theta_A1 / eta: 1 + 3q + 4q^2 + ..., the oracle fixes the rest
    assert [int(c) for c in character(Lattice.A(1), 2).coefficients()] == [1, 3, 4]


def test_character_needs_positive_definite():
    with pytest.raises(UnsupportedInputError):
        character(Lattice([[2, 1], [1, -2]]), 3)


def test_l0_and_ch2():
    L = Lattice.A(2)
    lam = (1, 1)
    for n in range(4):
        assert l0_eigenvalue(L, lam, n) + ch2_of(L, lam, n) == L.norm(lam)
    assert l0_eigenvalue(L, lam, 2) == Fraction(3)


def test_vertex_creates_exponential():
    L = Lattice.A(1)
    x = vertex_mode_apply(L, (1,), -1, ChargedState.vacuum(L), 4)
    assert x == ChargedState.vacuum(L, (1,))
    # lower modes vanish on the vacuum
    assert not vertex_mode_apply(L, (1,), 0, ChargedState.vacuum(L), 4)


@pytest.mark.parametrize("m", [-3, -2, -1, 0, 1])
def test_vertex_mode_shifts_l0(m):
    L = Lattice.A(2)
    x = ChargedState.from_fock(FockState.monomial(L, {0: [2], 1: [1]}), (1, 0))
    for alpha in roots(L):
        y = vertex_mode_apply(L, alpha, m, x, 10)
        for level in y.l0_levels():
            assert level == x.l0_levels()[0] - m


def test_truncation_error():
    L = Lattice.A(1)
    with pytest.raises(TruncationError):
        vertex_mode_apply(L, (1,), -8, ChargedState.vacuum(L), 3)


def test_vertex_needs_root():
    L = Lattice.A(2)
    with pytest.raises(UnsupportedInputError):
        vertex_mode_apply(L, (1, -1), 0, ChargedState.vacuum(L), 3)


def states(L, seed, k=3):
    rng = random.Random(seed)
    rs = roots(L)
    return [ChargedState.vacuum(L)] + [
        ChargedState.from_fock(random_state(L, rng, 2), rng.choice([L.zero()] + rs)) for _ in range(k)
    ]


@pytest.mark.parametrize("L", [Lattice.A(2), Lattice.A(3)], ids=repr)
def test_vertex_commutators(L):
    rs = roots(L)
    eps = Cocycle(L)
    for x in states(L, 11):
        for a in rs[:4]:
            for b in rs:
                k = L.inner(a, b)
                for m, n in ((-1, 0), (0, -1), (-2, 1)):
                    if k == -1:
                        comm, pred = vertex_commutator(L, a, b, m, n, x, 12)
                        assert comm == pred
                        assert eps(a, b) * eps(b, a) == -1
                    elif k >= 0:
                        # regular product: the modes commute
                        ab = vertex_mode_apply(L, a, m, vertex_mode_apply(L, b, n, x, 12, eps), 12, eps)
                        ba = vertex_mode_apply(L, b, n, vertex_mode_apply(L, a, m, x, 12, eps), 12, eps)
                        assert ab == ba


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_heisenberg_vertex_relation(n):
    """[h_n, Gamma_a{m}] = (h, a) Gamma_a{m + n}."""
    L = Lattice.A(2)
    h = (1, 0)
    for x in states(L, 5):
        for a in roots(L)[:3]:
            m = -1
            lhs = heisenberg_mode_apply(L, h, n, vertex_mode_apply(L, a, m, x, 12)) - vertex_mode_apply(
                L, a, m, heisenberg_mode_apply(L, h, n, x), 12
            )
            assert lhs == vertex_mode_apply(L, a, m + n, x, 12) * L.inner(h, a)


@pytest.mark.parametrize("L,dim", [(Lattice.A(1), 3), (Lattice.A(2), 8), (Lattice.A(3), 15)], ids=repr)
def test_weight_one_algebra(L, dim):
    W = weight_one_algebra(L, 6)
    assert W.dimension == dim
    assert W.antisymmetry_holds()
    assert W.jacobi_holds()
    assert W.form_is_invariant()
    for i in range(L.rank):
        for j in range(L.rank):
            col = W.labels.index(("e", L.basis(j)))
            got = W.bracket(i, col)
            assert got == [L.gram[i][j] if k == col else 0 for k in range(dim)]


def test_weight_one_rejects():
    with pytest.raises(UnsupportedInputError, match="not spanned by roots"):
        weight_one_algebra(Lattice([[4]]))
    with pytest.raises(UnsupportedInputError):
        weight_one_algebra(Lattice([[2, 1], [1, -2]]))


def test_weight_one_json():
    doc = weight_one_algebra(Lattice.A(1)).to_json()
    assert doc["basis"] == ["h0", "e^[1]", "e^[-1]"]
    assert all(len(row) == 3 for row in doc["brackets"])


def test_zero_mode_on_negative_root_sector():
    """Gamma_a{0} (1 (x) e^{-a}) = eps(a, -a) a_{-1} (x) e^0."""
    L = Lattice.A(2)
    eps = Cocycle(L)
    for a in roots(L):
        got = vertex_mode_apply(L, a, 0, ChargedState.vacuum(L, -a), 4)
        a_minus_1 = FockState(L, {})
        for i, c in enumerate(a):
            if c:
                a_minus_1 = a_minus_1 + FockState.monomial(L, {i: [1]}, c)
        assert got == ChargedState.from_fock(a_minus_1) * eps(a, -a)
