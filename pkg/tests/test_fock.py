import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockforge.errors import UnsupportedInputError, UsageError
from fockforge.fock import (
    FockState,
    FockTensor,
    OperatorSymbol,
    PairingSpec,
    apply,
    commutator_check,
    coproduct,
    evaluate_in_fock,
    h_element,
    h_sequence,
    hh_table,
    inner_product,
    monomial_basis,
    multiply,
    newton_convert,
    partition_formula_h,
    primitive_dimension,
    q_pairing,
    random_state,
    tensor_pair,
)
from fockforge.lattice import Lattice
from fockforge.series import LaurentPoly, binomial_power

LATTICES = [
    Lattice.A(1),
    Lattice.A(2),
    Lattice([[2, 1], [1, -2]]),
    Lattice([[2, -1, 0], [-1, 2, 0], [0, 0, 1]], ["even", "even", "odd"]),
    Lattice([[0, 1], [1, 0]], ["odd", "odd"]),
]

lattice_st = st.sampled_from(LATTICES)
seed_st = st.integers(0, 10**6)


def gen(L, color, part, coeff=1):
    return FockState.monomial(L, {color: [part]}, coeff)


# creation, annihilation, relations


def test_creation_builds_monomials(a2):
    x = apply(OperatorSymbol(0, -2), FockState.vacuum(a2))
    x = apply(OperatorSymbol(1, -1), x)
    assert x == FockState.monomial(a2, {0: [2], 1: [1]})


def test_annihilation_pairs(a2):
    x = FockState.monomial(a2, {0: [2], 1: [1]})
    # v^1_2 hits v^0_{-2} with 2 * (a1, a0) = -2
    assert apply(OperatorSymbol(1, 2), x) == FockState.monomial(a2, {1: [1]}, -2)
    assert apply(OperatorSymbol(0, 3), x) == FockState.zero(a2)


def test_zero_mode_rejected(a1):
    with pytest.raises(UsageError):
        OperatorSymbol(0, 0)
    assert OperatorSymbol.parse("1:-3") == OperatorSymbol(1, -3)


@given(lattice_st, seed_st, st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool), st.data())
def test_heisenberg_relations(L, seed, n, m, data):
    i = data.draw(st.integers(0, L.rank - 1))
    j = data.draw(st.integers(0, L.rank - 1))
    x = random_state(L, random.Random(seed), 6)
    lhs, pred = commutator_check(i, j, n, m, x)
    assert lhs == pred
    if n != -m:
        assert not pred


@given(st.sampled_from(LATTICES[:3]), seed_st, st.integers(1, 3), st.integers(1, 4), st.data())
def test_level_and_q_relations(L, seed, c, n, data):
    i = data.draw(st.integers(0, L.rank - 1))
    j = data.draw(st.integers(0, L.rank - 1))
    x = random_state(L, random.Random(seed), 5)
    lhs, pred = commutator_check(i, j, n, -n, x, PairingSpec.level_c(L, c))
    assert lhs == pred == x * (c * n * L.gram[i][j])
    lhs, pred = commutator_check(i, j, n, -n, x, PairingSpec.q_deformed(L, c))
    assert lhs == pred
    assert pred.evaluate_q(1) == x * (c * n * L.gram[i][j])


def test_odd_generators_anticommute():
    L = Lattice([[1]], ["odd"])
    a = gen(L, 0, 1)
    b = gen(L, 0, 2)
    assert multiply(a, a) == FockState.zero(L)
    assert multiply(a, b) == -multiply(b, a)


@pytest.mark.parametrize("K", range(-3, 4))
@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("c", [1, 2, 3])
def test_q_pairing_formula(K, n, c):
    v = q_pairing(K, n, c)
    assert v.evaluate(1) == c * n * K
    for q in (Fraction(2), Fraction(1, 3)):
        def qint(k):
            return (q**k - q**-k) / (q - 1 / q)
        assert v.evaluate(q) == n * qint(n * c * K) / qint(n)


def test_q_commutator_is_quantum_two():
    L = Lattice.A(1)
    x = apply(OperatorSymbol(0, 1), gen(L, 0, 1), PairingSpec.q_deformed(L))
    assert x.vacuum_coefficient() == LaurentPoly({1: 1, -1: 1})
    assert PairingSpec.q_deformed(L, 2).specialize_q1() == PairingSpec.level_c(L, 2)


# Hopf structure


def random_homogeneous(L, rng, d):
    basis = monomial_basis(L, d)
    return FockState(L, {basis[rng.randrange(len(basis))]: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                         for _ in range(3)})


@given(lattice_st, seed_st, st.integers(0, 5), st.integers(0, 5))
def test_product_coproduct_adjoint(L, seed, dx, dy):
    rng = random.Random(seed)
    x = random_homogeneous(L, rng, dx)
    y = random_homogeneous(L, rng, dy)
    z = random_homogeneous(L, rng, dx + dy)
    assert inner_product(multiply(x, y), z) == tensor_pair(x, y, coproduct(z))


@given(lattice_st, seed_st)
def test_product_associative_and_graded(L, seed):
    rng = random.Random(seed)
    x, y, z = (random_state(L, rng, 3) for _ in range(3))
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@given(lattice_st, seed_st)
def test_coproduct_multiplicative_on_even(L, seed):
    if L.odd_colors:
        return
    rng = random.Random(seed)
    x = random_state(L, rng, 3)
    y = random_state(L, rng, 3)
    lhs = coproduct(multiply(x, y))
    rhs = FockTensor(L)
    for (a, b), c in coproduct(x).terms.items():
        for (p, q), d in coproduct(y).terms.items():
            rhs = rhs + FockTensor.tensor(
                multiply(FockState(L, {a: 1}), FockState(L, {p: 1})) * (c * d),
                multiply(FockState(L, {b: 1}), FockState(L, {q: 1})),
            )
    assert lhs == rhs


@given(st.sampled_from(LATTICES[:2]), seed_st)
def test_inner_product_symmetric_positive(L, seed):
    rng = random.Random(seed)
    x = random_state(L, rng, 4)
    y = random_state(L, rng, 4)
    assert inner_product(x, y) == inner_product(y, x)
    if L == Lattice.A(1):
        assert inner_product(x, x) > 0 or not x


def test_primitive_generator(a2):
    v = gen(a2, 1, 3)
    assert coproduct(v) == FockTensor.tensor(v, FockState.vacuum(a2)) + FockTensor.tensor(FockState.vacuum(a2), v)


@pytest.mark.parametrize("L", LATTICES[:4], ids=repr)
def test_primitive_dimension(L):
    for n in range(1, 5):
        assert primitive_dimension(L, n) == L.rank


# group-like elements


@pytest.mark.parametrize("L,v", [(Lattice.A(1), (1,)), (Lattice.A(2), (1, -2)), (Lattice([[2, 1], [1, -2]]), (2, 1))])
def test_h_matches_partition_formula(L, v):
    hs = h_sequence(L, v, 7)
    for n in range(8):
        assert hs[n] == partition_formula_h(L, v, n)
    assert h_element(L, v, 3) == hs[3]


def test_h_grouplike(a2):
    hs = h_sequence(a2, (1, 1), 6)
    for n in range(7):
        want = FockTensor(a2)
        for a in range(n + 1):
            want = want + FockTensor.tensor(hs[a], hs[n - a])
        assert coproduct(hs[n]) == want


def test_h_rejects_odd_vector():
    L = LATTICES[3]
    with pytest.raises(UnsupportedInputError):
        h_sequence(L, (0, 0, 1), 3)


@pytest.mark.parametrize("v,w", [((1, 0), (0, 1)), ((1, 1), (1, 0)), ((1, 0), (1, 0)), ((1, -1), (1, 1))])
def test_hh_table_on_a2(v, w):
    L = Lattice.A(2)
    assert hh_table(L, v, w, 6) == binomial_power(L.inner(v, w), 6)


# Newton identities


XS = [Fraction(1, 2), Fraction(2), Fraction(-3), Fraction(5, 3)]


def power_sum(k):
    return sum(x**k for x in XS)


def complete_h(k):
    return sum(prod(c) for c in combinations_with_replacement(XS, k))


def eval_poly(poly, values):
    return sum(c * prod(values[k] for k in lam) for lam, c in poly.items())


@pytest.mark.parametrize("n", range(1, 8))
def test_newton_p_to_h(n):
    polys = newton_convert("p->h", n)
    pvals = {k: power_sum(k) for k in range(1, n + 1)}
    assert [eval_poly(p, pvals) for p in polys] == [complete_h(k) for k in range(1, n + 1)]


@pytest.mark.parametrize("n", range(1, 8))
def test_newton_h_to_p(n):
    polys = newton_convert("h->p", n)
    hvals = {k: complete_h(k) for k in range(1, n + 1)}
    assert [eval_poly(p, hvals) for p in polys] == [power_sum(k) for k in range(1, n + 1)]


def test_newton_bad_direction():
    with pytest.raises(UsageError):
        newton_convert("sideways", 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_newton_in_fock_gives_h(n):
    L = Lattice.A(2)
    v = (1, 2)
    assert evaluate_in_fock(newton_convert("p->h", n)[-1], L, v) == h_element(L, v, n)


# serialisation


@given(lattice_st, seed_st)
def test_state_json_roundtrip(L, seed):
    x = random_state(L, random.Random(seed), 5)
    assert FockState.from_json(x.to_json()) == x


def test_state_json_rejects_repeated_odd_part():
    L = Lattice([[1]], ["odd"])
    with pytest.raises(UsageError):
        FockState.from_json({"terms": [{"mono": {"0": [1, 1]}, "coeff": "1"}]}, L)
