"""Acceptance criteria 1-10: exact arithmetic, zero tolerance, with runtime limits.

Each test prints one PASS/FAIL line and records it for the terminal summary.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from conftest import ACCEPTANCE
from fockforge import checks
from fockforge.fock import PairingSpec, hh_pairing_series, hh_table
from fockforge.hilbgen import (
    HodgeDiamond,
    central_charge_check,
    corner_excess_report,
    hilb_hodge_series,
    u0_series,
)
from fockforge.lattice import Lattice, roots
from fockforge.series import LaurentPoly
from fockforge.vertex import character, sector_level_counts, weight_one_algebra

from test_hilbgen import product_counts
from test_series import pentagonal_partition_counts

pytestmark = pytest.mark.acceptance

HEISENBERG_LATTICES = [Lattice.A(1), Lattice.A(2), Lattice([[2, 3], [3, -4]])]


class Criterion:
    """Times a block, records the outcome and prints one line."""

    def __init__(self, number, label, limit):
        self.number = number
        self.label = label
        self.limit = limit
        self.ok = True
        self.notes = []

    def check(self, cond, note):
        if not cond:
            self.ok = False
            self.notes.append(note)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.ok = False
            self.notes.append(f"{exc_type.__name__}: {exc}")
        if self.limit is not None and elapsed > self.limit:
            self.ok = False
            self.notes.append(f"took {elapsed:.1f}s > {self.limit}s")
        label = f"{self.label} ({elapsed:.2f}s)"
        if self.notes:
            label += " - " + "; ".join(self.notes)
        ACCEPTANCE[self.number] = (self.ok, label)
        print(f"{'PASS' if self.ok else 'FAIL'} criterion {self.number}: {label}")
        return False


def test_criterion_01_heisenberg():
    with Criterion(1, "Heisenberg relations, |n|,|m| <= 6, 50 states of degree <= 8", 30) as c:
        for L in HEISENBERG_LATTICES:
            r = checks.heisenberg_suite(L, max_mode=6, n_states=50, max_degree=8, seed=1)
            c.check(r.passed, f"{L!r}: {r.detail}")
    assert c.ok, c.notes


def test_criterion_02_adjointness():
    with Criterion(2, "(xy, z) = (x (x) y, Delta z), 100 triples per lattice, degree <= 6", 30) as c:
        for L in HEISENBERG_LATTICES:
            r = checks.adjointness_suite(L, n_triples=100, max_degree=6, seed=2)
            c.check(r.passed, f"{L!r}: {r.detail}")
    assert c.ok, c.notes


def rising_oracle(k, N):
    """Coefficient table of (1 - ts)^{-k}: only the diagonal, k(k+1)...(k+n-1)/n!."""
    table = {}
    for n in range(N + 1):
        r = Fraction(1)
        for j in range(n):
            r *= Fraction(k + j, j + 1)
        for m in range(N + 1):
            table[(n, m)] = r if n == m else Fraction(0)
    return table


def test_criterion_03_hh_generating_function():
    N = 8
    with Criterion(3, "(h^v_n, h^w_m) table = (1 - ts)^{-(v,w)}, |(v,w)| <= 4, n,m <= 8", 10) as c:
        for k in range(-4, 5):
            S = hh_pairing_series(k, N)
            want = rising_oracle(k, N)
            c.check(all(S.coefficient(n, m) == want[(n, m)] for n, m in want), f"k={k}")
        # vectors inside a genuine root lattice as well
        L = Lattice.A(2)
        for v, w in (((1, 0), (0, 1)), ((1, 0), (1, 0)), ((1, 1), (2, 1))):
            S = hh_table(L, v, w, N)
            want = rising_oracle(L.inner(v, w), N)
            c.check(all(S.coefficient(n, m) == want[(n, m)] for n, m in want), f"A2 {v},{w}")
    assert c.ok, c.notes


def test_criterion_04_weight_one_lie_algebra():
    with Criterion(4, "weight-1 Lie algebra: dims 3 and 8, antisymmetry, Jacobi, Cartan matrix", 60) as c:
        for L, dim in ((Lattice.A(1), 3), (Lattice.A(2), 8)):
            W = weight_one_algebra(L, 6)
            c.check(W.dimension == dim, f"{L.name} dim {W.dimension}")
            c.check(W.dimension == L.rank + len(roots(L)), f"{L.name} rank + roots")
            c.check(W.antisymmetry_holds(), f"{L.name} antisymmetry")
            c.check(W.jacobi_holds(), f"{L.name} Jacobi")
            for i in range(L.rank):
                for j in range(L.rank):
                    col = W.labels.index(("e", L.basis(j)))
                    want = [Fraction(L.gram[i][j]) if k == col else 0 for k in range(dim)]
                    c.check(W.bracket(i, col) == want, f"{L.name} [h{i}, e^a{j}]")
    assert c.ok, c.notes


def test_criterion_05_character():
    N = 6
    with Criterion(5, "A1 character = basis enumeration, levels 0-6", 30) as c:
        L = Lattice.A(1)
        # enumeration oracle: e^{m alpha} sits at level m^2, oscillators counted by p(d)
        p = pentagonal_partition_counts(N)
        oracle = [0] * (N + 1)
        for m in range(-N, N + 1):
            for d in range(N + 1 - m * m):
                oracle[m * m + d] += p[d]
        got = [int(x) for x in character(L, N).coefficients()]
        c.check(got == oracle, f"character {got} vs {oracle}")
        c.check(sector_level_counts(L, N) == oracle, "sector counts")
        c.label += " " + ",".join(map(str, oracle))
    assert c.ok, c.notes


def at_one(x):
    return x.evaluate(1) if isinstance(x, LaurentPoly) else x


def test_criterion_06_central_charge():
    with Criterion(6, "level-c relations for c = 1, 2, 3; q-pairing at q = 1 is level c, n <= 10", 10) as c:
        for level in (1, 2, 3):
            for L in (Lattice.A(1), Lattice.A(2), Lattice([[2, 1], [1, -2]])):
                for r in central_charge_check(level, L, order=4, seed=level):
                    c.check(r.passed, f"c={level} {r.name} {r.detail}")
            L = Lattice.A(2)
            Pq = PairingSpec.q_deformed(L, level)
            Pc = PairingSpec.level_c(L, level)
            for n in range(1, 11):
                for i in range(2):
                    for j in range(2):
                        c.check(at_one(Pq.value(i, j, n)) == Pc.value(i, j, n), f"c={level} n={n}")
        c.check(checks.q_specialization_suite(max_n=10, max_level=3).passed, "q specialization")
    assert c.ok, c.notes


def test_criterion_07_corners():
    with Criterion(7, "addable - removable = 1 for n <= 25; = 2 on pairs of total weight <= 10", 10) as c:
        r1 = corner_excess_report(25)
        r2 = corner_excess_report(10, 2)
        c.check(r1.passed and r1.detail.startswith(f"checked {sum(pentagonal_partition_counts(25))},"), r1.detail)
        c.check(r2.passed, r2.detail)
        c.label += f" [{r1.detail}; {r2.detail}]"
    assert c.ok, c.notes


def test_criterion_08_hodge_dimension_oracle():
    N = 8
    with Criterion(8, "Hodge series totals = multipartition counts; n = 1 is X; P2 n = 2 Betti sum", 30) as c:
        for X in (HodgeDiamond.projective_plane(), HodgeDiamond.k3()):
            s = hilb_hodge_series(X, N)
            c.check(s.totals() == product_counts(X.even_count, X.odd_count, N), "totals")
            c.check(s.polys[1] == X.hodge_polynomial(), "n = 1")
        s = hilb_hodge_series(HodgeDiamond.projective_plane(), 2)
        betti_sum = sum(s.betti(2))
        c.check(betti_sum == product_counts(3, 0, 2)[2] == 9, f"P2 n=2 Betti sum {betti_sum}")
    assert c.ok, c.notes


def test_criterion_09_u0():
    N = 6
    with Criterion(9, "u^0 coefficient = (n, n) diagonal for n <= 6; h20 = 0 degenerates", 10) as c:
        for h20, h11 in product((0, 1, 2), (0, 1, 3, 20)):
            X = HodgeDiamond({(2, 0): h20, (0, 2): h20, (1, 1): h11}, strict=False)
            diag = hilb_hodge_series(X, N).diagonal()
            got = [int(x) for x in u0_series(h20, h11, N).coefficients()]
            c.check(got == diag, f"h20={h20} h11={h11}")
        for h11 in (1, 2, 20):
            got = [int(x) for x in u0_series(0, h11, N).coefficients()]
            c.check(got == product_counts(h11, 0, N), f"degenerate h11={h11}")
    assert c.ok, c.notes


def test_criterion_10_determinism(tmp_path):
    lattice = tmp_path / "a1.json"
    lattice.write_text(json.dumps({"rank": 1, "gram": [[2]], "parity": ["even"]}))
    cmd = [sys.executable, "-m", "fockforge.cli", "check-all", "--lattice", str(lattice), "--order", "6",
           "--seed", "7"]
    with Criterion(10, "check-all twice with one seed gives byte-identical reports", None) as c:
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        c.check(first.returncode == 0 and second.returncode == 0, "exit status")
        c.check(first.stdout == second.stdout and first.stdout, "bytes differ")
        c.check(json.loads(first.stdout)["seed"] == 7, "seed recorded")
    assert c.ok, c.notes
