"""Integral lattices: Gram matrix, roots, the sign cocycle and the twisted group algebra."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from math import ceil, floor, isqrt

from .errors import UnsupportedInputError, UsageError

__all__ = [
    "Lattice",
    "LatticeVector",
    "Cocycle",
    "inner",
    "roots",
    "epsilon",
    "group_mul",
    "det",
    "load_lattice",
]

HYPERBOLIC_PLANE = ((0, 1), (1, 0))


def det(matrix) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        d *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return d


class LatticeVector(tuple):
    """Integer coordinates in the lattice basis."""

    __slots__ = ()

    def __new__(cls, coords=()):
        return super().__new__(cls, (int(c) for c in coords))

    def __add__(self, other):
        if len(other) != len(self):
            raise UsageError("rank mismatch")
        return LatticeVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(other) != len(self):
            raise UsageError("rank mismatch")
        return LatticeVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return LatticeVector(-a for a in self)

    def __mul__(self, k):
        return LatticeVector(k * a for a in self)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self)

    def __repr__(self):
        return f"LatticeVector({list(self)!r})"


class Lattice:
    """Free abelian group with an integer symmetric Gram matrix.

    ``parity[i]`` is ``"even"`` or ``"odd"``; odd generators model odd
    cohomology, must have zero pairing with even ones, and never appear in
    group-algebra labels.
    """

    def __init__(self, gram, parity=None, name=None):
        gram = tuple(tuple(int(x) for x in row) for row in gram)
        k = len(gram)
        if any(len(row) != k for row in gram):
            raise UsageError("Gram matrix must be square")
        for i in range(k):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise UsageError("Gram matrix must be symmetric")
        if parity is None:
            parity = ("even",) * k
        parity = tuple(parity)
        if len(parity) != k or any(p not in ("even", "odd") for p in parity):
            raise UsageError("parity must list 'even'/'odd' once per generator")
        for i in range(k):
            if parity[i] == "even" and gram[i][i] % 2:
                raise UsageError(f"even generator {i} has odd norm {gram[i][i]}")
            for j in range(k):
                if parity[i] != parity[j] and gram[i][j]:
                    raise UsageError("even and odd generators must be orthogonal")
        if det(gram) == 0:
            raise UsageError("Gram matrix is degenerate")
        self.gram = gram
        self.parity = parity
        self.name = name

    @property
    def rank(self) -> int:
        return len(self.gram)

    def is_odd(self, i) -> bool:
        return self.parity[i] == "odd"

    @property
    def even_colors(self):
        return [i for i in range(self.rank) if self.parity[i] == "even"]

    @property
    def odd_colors(self):
        return [i for i in range(self.rank) if self.parity[i] == "odd"]

    def basis(self, i) -> LatticeVector:
        return LatticeVector(1 if j == i else 0 for j in range(self.rank))

    def zero(self) -> LatticeVector:
        return LatticeVector((0,) * self.rank)

    def vector(self, coords) -> LatticeVector:
        v = LatticeVector(coords)
        if len(v) != self.rank:
            raise UsageError(f"vector {list(v)} has wrong length for rank {self.rank}")
        return v

    def inner(self, a, b) -> int:
        return inner(self, a, b)

    def norm(self, a) -> int:
        return inner(self, a, a)

    def determinant(self) -> int:
        return int(det(self.gram))

    def is_positive_definite(self) -> bool:
        """Leading principal minors test."""
        return all(
            det([row[:k] for row in self.gram[:k]]) > 0 for k in range(1, self.rank + 1)
        )

    def with_hyperbolic_summand(self) -> Lattice:
        """Append an even hyperbolic plane (the extra H^0 + H^4 piece)."""
        k = self.rank
        gram = [list(row) + [0, 0] for row in self.gram]
        gram.append([0] * k + list(HYPERBOLIC_PLANE[0]))
        gram.append([0] * k + list(HYPERBOLIC_PLANE[1]))
        return Lattice(gram, self.parity + ("even", "even"), self.name)

    def random_vector(self, rng: random.Random, bound=2) -> LatticeVector:
        return LatticeVector(
            rng.randint(-bound, bound) if self.parity[i] == "even" else 0
            for i in range(self.rank)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.gram == other.gram
            and self.parity == other.parity
        )

    def __hash__(self):
        return hash((self.gram, self.parity))

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Lattice({label}gram={[list(r) for r in self.gram]})"

    # presets
    @classmethod
    def A(cls, n: int) -> Lattice:
        """Root lattice of type A_n (Cartan matrix as Gram matrix)."""
        gram = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        return cls(gram, name=f"A{n}")

    # serialisation
    def to_json(self):
        out = {"rank": self.rank, "gram": [list(r) for r in self.gram], "parity": list(self.parity)}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj) -> Lattice:
        if isinstance(obj, list):
            return cls(obj)
        if not isinstance(obj, dict) or "gram" not in obj:
            raise UsageError("lattice JSON needs a 'gram' field")
        gram = obj["gram"]
        if "rank" in obj and int(obj["rank"]) != len(gram):
            raise UsageError("lattice 'rank' disagrees with the Gram matrix size")
        lat = cls(gram, obj.get("parity"), obj.get("name"))
        if obj.get("include_h0_h4", False):
            lat = lat.with_hyperbolic_summand()
        return lat


def load_lattice(path) -> Lattice:
    with open(path) as fh:
        return Lattice.from_json(json.load(fh))


def inner(L: Lattice, a, b) -> int:
    """a^T G b."""
    k = L.rank
    if len(a) != k or len(b) != k:
        raise UsageError(f"rank mismatch: lattice rank {k}, vectors {len(a)} and {len(b)}")
    g = L.gram
    total = 0
    for i in range(k):
        ai = a[i]
        if ai:
            row = g[i]
            for j in range(k):
                if b[j]:
                    total += ai * row[j] * b[j]
    return total


def _ldl(gram):
    """Exact G = U^T D U with U unit upper triangular; returns (d, mu) rows."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i] - sum(mu[k][i] ** 2 * d[k] for k in range(i))
        for j in range(i + 1, n):
            mu[i][j] = (a[i][j] - sum(mu[k][i] * mu[k][j] * d[k] for k in range(i))) / d[i]
    return d, mu


def short_vectors(L: Lattice, bound) -> list:
    """All v with (v, v) <= bound, by exact completed-square enumeration.

    Requires a positive definite lattice.
    """
    if not L.is_positive_definite():
        raise UnsupportedInputError("vector enumeration needs a positive definite lattice")
    n = L.rank
    if n == 0:
        return [LatticeVector(())]
    d, mu = _ldl(L.gram)
    bound = Fraction(bound)
    out = []
    x = [0] * n

    # Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2, fix x_{n-1} first
    def rec(i, remaining):
        center = -sum(mu[i][j] * x[j] for j in range(i + 1, n))
        ratio = remaining / d[i]
        reach = isqrt(ratio.numerator // ratio.denominator) + 1
        lo = floor(center) - reach
        hi = ceil(center) + reach
        for xi in range(lo, hi + 1):
            q = d[i] * (xi - center) ** 2
            if q > remaining:
                continue
            x[i] = xi
            if i == 0:
                out.append(LatticeVector(x))
            else:
                rec(i - 1, remaining - q)
        x[i] = 0

    rec(n - 1, bound)
    out.sort(key=lambda v: (inner(L, v, v), tuple(-c for c in v)))
    return out


def roots(L: Lattice) -> list:
    """All lattice vectors of norm exactly 2."""
    return [v for v in short_vectors(L, 2) if inner(L, v, v) == 2]


def _integer_row_rank_index(rows, ncols):
    """(rank, index of the row span in Z^ncols when full rank, else 0)."""
    m = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        # gcd-reduce the column below the current pivot row
        while True:
            nz = [r for r in range(rank, len(m)) if m[r][col]]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(m[r][col]))
            m[rank], m[piv] = m[piv], m[rank]
            done = True
            for r in range(rank + 1, len(m)):
                if m[r][col]:
                    q = m[r][col] // m[rank][col]
                    m[r] = [a - q * b for a, b in zip(m[r], m[rank])]
                    if m[r][col]:
                        done = False
            if done:
                rank += 1
                break
    if rank < ncols:
        return rank, 0
    index = 1
    for i in range(ncols):
        index *= abs(m[i][i])
    return rank, index


def spanned_by_roots(L: Lattice) -> bool:
    rs = roots(L)
    if not rs:
        return L.rank == 0
    _, index = _integer_row_rank_index(rs, L.rank)
    return index == 1


def simple_roots_are_basis(L: Lattice) -> bool:
    return all(inner(L, L.basis(i), L.basis(i)) == 2 for i in range(L.rank))


class Cocycle:
    """Bimultiplicative sign on L x L.

    On basis vectors eps(a_i, a_j) = +1 for i <= j and (-1)^{(a_i, a_j)} for
    i > j, so eps(a, b) eps(b, a) = (-1)^{(a, b)} on all pairs.
    """

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        g = lattice.gram
        # exponent mod 2 of eps on ordered basis pairs
        self._bits = tuple(
            tuple((g[i][j] % 2) if i > j else 0 for j in range(lattice.rank))
            for i in range(lattice.rank)
        )

    def __call__(self, a, b) -> int:
        k = self.lattice.rank
        if len(a) != k or len(b) != k:
            raise UsageError(f"rank mismatch: lattice rank {k}, vectors {len(a)} and {len(b)}")
        parity = 0
        bits = self._bits
        for i in range(k):
            if a[i] % 2:
                row = bits[i]
                for j in range(i):
                    if row[j] and b[j] % 2:
                        parity ^= 1
        return -1 if parity else 1

    def table(self):
        """Values on ordered basis pairs as +1/-1."""
        L = self.lattice
        return [[self(L.basis(i), L.basis(j)) for j in range(L.rank)] for i in range(L.rank)]


def epsilon(L: Lattice, a, b) -> int:
    return Cocycle(L)(a, b)


def group_mul(L: Lattice, a, b, cocycle=None):
    """e^a * e^b = eps(a, b) e^{a+b}; returns (sign, a + b)."""
    eps = cocycle or Cocycle(L)
    a = L.vector(a)
    b = L.vector(b)
    for v in (a, b):
        if any(v[i] for i in L.odd_colors):
            raise UnsupportedInputError("odd generators do not carry group-algebra labels")
    return eps(a, b), a + b
