"""The lattice vertex algebra F = S (x) C{L}.

Vertex operators follow the exponential formula

    Gamma_a(z) = exp(sum_{n>0} a_{-n} z^n / n) exp(-sum_{n>0} a_n z^{-n} / n) e^a z^{a_0}

with ``e^a e^lam = eps(a, lam) e^{a+lam}`` and ``z^{a_0} e^lam = z^{(a, lam)} e^lam``.
For a root a the conformal weight is 1, and mode ``m`` is the coefficient of
``z^{-m-1}``; it lowers the L0 eigenvalue by m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import TruncationError, UnsupportedInputError, UsageError
from .fock import FockState, PairingSpec, apply_vector, h_sequence, monomial_basis, multiply
from .lattice import Cocycle, Lattice, LatticeVector, inner, roots, short_vectors, spanned_by_roots
from .series import TruncatedSeries, format_coeff

__all__ = [
    "ChargedState",
    "WeightOneAlgebra",
    "l0_eigenvalue",
    "ch2_of",
    "vertex_mode_apply",
    "heisenberg_mode_apply",
    "weight_one_algebra",
    "character",
    "sector_level_counts",
    "vertex_commutator",
]


class ChargedState:
    """Finite sum over sectors lam of (Fock state) (x) e^lam."""

    __slots__ = ("lattice", "_sectors")

    def __init__(self, lattice: Lattice, sectors=None):
        self.lattice = lattice
        clean = {}
        for lam, st in (sectors or {}).items():
            lam = lattice.vector(lam)
            if any(lam[i] for i in lattice.odd_colors):
                raise UnsupportedInputError("odd generators do not carry group-algebra labels")
            if st:
                clean[lam] = st
        self._sectors = clean

    @classmethod
    def vacuum(cls, lattice, lam=None):
        lam = lattice.zero() if lam is None else lattice.vector(lam)
        return cls(lattice, {lam: FockState.vacuum(lattice)})

    @classmethod
    def from_fock(cls, state: FockState, lam=None):
        L = state.lattice
        lam = L.zero() if lam is None else L.vector(lam)
        return cls(L, {lam: state})

    @property
    def sectors(self):
        return dict(self._sectors)

    def sector(self, lam) -> FockState:
        return self._sectors.get(LatticeVector(lam), FockState.zero(self.lattice))

    def __bool__(self):
        return bool(self._sectors)

    def __eq__(self, other):
        if not isinstance(other, ChargedState):
            return NotImplemented
        return self.lattice == other.lattice and self._sectors == other._sectors

    __hash__ = None

    def __add__(self, other):
        out = dict(self._sectors)
        for lam, st in other._sectors.items():
            out[lam] = out[lam] + st if lam in out else st
        return ChargedState(self.lattice, out)

    def __neg__(self):
        return ChargedState(self.lattice, {lam: -st for lam, st in self._sectors.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return ChargedState(self.lattice, {lam: st * c for lam, st in self._sectors.items()})

    __rmul__ = __mul__

    def l0_levels(self):
        """Sorted set of L0 eigenvalues occurring in the state."""
        out = set()
        for lam, st in self._sectors.items():
            for m in st.terms:
                out.add(l0_eigenvalue(self.lattice, lam, m.weight))
        return sorted(out)

    def to_json(self):
        return {
            "sectors": [
                {"lattice_vector": list(lam), "state": [
                    {"mono": m.to_json(), "coeff": format_coeff(c)} for m, c in st.items()
                ]}
                for lam, st in sorted(self._sectors.items())
            ]
        }

    def __repr__(self):
        body = ", ".join(f"{list(lam)}: {st!r}" for lam, st in sorted(self._sectors.items()))
        return f"ChargedState({{{body}}})"


def l0_eigenvalue(L: Lattice, lam, n: int) -> Fraction:
    """Conformal weight of S_n (x) e^lam: (lam, lam)/2 + n."""
    return Fraction(inner(L, lam, lam), 2) + n


def ch2_of(L: Lattice, lam, n: int) -> Fraction:
    """(lam, lam)/2 - n, i.e. c1.c1/2 - c2 with c1 = lam, c2 = n.

    l0_eigenvalue(lam, n) + ch2_of(lam, n) == (lam, lam).
    """
    return Fraction(inner(L, lam, lam), 2) - n


def _check_root(L, alpha):
    alpha = L.vector(alpha)
    if any(alpha[i] for i in L.odd_colors):
        raise UnsupportedInputError("vertex operators need an even lattice vector")
    if inner(L, alpha, alpha) != 2:
        raise UnsupportedInputError(f"{list(alpha)} is not a root (norm {inner(L, alpha, alpha)})")
    return alpha


def _annihilation_exponential(alpha, u: FockState, pairing):
    """[E_0 u, E_1 u, ...] with E_k the z^{-k} part of exp(-sum a_n z^{-n}/n).

    Uses k E_k = -sum_{n=1}^k a_n E_{k-n}; stops once the terms vanish.
    """
    out = [u]
    k = 1
    top = max((m.weight for m in u.terms), default=0)
    while k <= top:
        acc = FockState.zero(u.lattice)
        for n in range(1, k + 1):
            acc = acc + apply_vector(alpha, n, out[k - n], pairing)
        out.append(acc * Fraction(-1, k))
        k += 1
    return out


@lru_cache(maxsize=256)
def _creation_sequence(L, alpha, order):
    return tuple(h_sequence(L, alpha, order))


def vertex_mode_apply(L: Lattice, alpha, m: int, x: ChargedState, order: int, cocycle=None) -> ChargedState:
    """Mode m of Gamma_alpha (coefficient of z^{-m-1}) applied to x.

    ``order`` bounds the expansion of the creation exponential; if the
    requested mode needs a higher term a TruncationError is raised.
    """
    alpha = _check_root(L, alpha)
    eps = cocycle or Cocycle(L)
    pairing = PairingSpec.classical(L)
    out = {}
    hs = None
    for lam, u in x.sectors.items():
        s = inner(L, alpha, lam)
        sign = eps(alpha, lam)
        lowered = _annihilation_exponential(alpha, u, pairing)
        acc = FockState.zero(L)
        for k, ek in enumerate(lowered):
            if not ek:
                continue
            # power of z: s + j - k = -m - 1
            j = k - m - 1 - s
            if j < 0:
                continue
            if j > order:
                raise TruncationError(
                    f"mode {m} on sector {list(lam)} needs creation order {j} > {order}"
                )
            if hs is None or len(hs) <= j:
                hs = _creation_sequence(L, alpha, order)
            acc = acc + multiply(hs[j], ek)
        if acc:
            target = lam + alpha
            out[target] = out[target] + acc * sign if target in out else acc * sign
    return ChargedState(L, out)


def heisenberg_mode_apply(L: Lattice, v, n: int, x: ChargedState) -> ChargedState:
    """Mode n of the field v(z) = sum v_n z^{-n-1}; v_0 multiplies e^lam by (v, lam)."""
    v = L.vector(v)
    out = {}
    for lam, u in x.sectors.items():
        if n == 0:
            r = u * inner(L, v, lam)
        else:
            r = apply_vector(v, n, u)
        if r:
            out[lam] = r
    return ChargedState(L, out)


def vertex_commutator(L, alpha, beta, m, n, x, order):
    """(Gamma_a{m} Gamma_b{n} x - Gamma_b{n} Gamma_a{m} x, predicted) for (a, b) = -1.

    The prediction is eps(a, b) Gamma_{a+b}{m+n} x.
    """
    eps = Cocycle(L)
    a = _check_root(L, alpha)
    b = _check_root(L, beta)
    if inner(L, a, b) != -1:
        raise UsageError("vertex_commutator needs (a, b) = -1")
    ab = vertex_mode_apply(L, a, m, vertex_mode_apply(L, b, n, x, order, eps), order, eps)
    ba = vertex_mode_apply(L, b, n, vertex_mode_apply(L, a, m, x, order, eps), order, eps)
    predicted = vertex_mode_apply(L, a + b, m + n, x, order, eps) * eps(a, b)
    return ab - ba, predicted


@dataclass
class WeightOneAlgebra:
    """Conformal-weight-1 subspace with its bracket a_(0) b and form a_(1) b."""

    lattice: Lattice
    labels: list  # ("h", i) or ("e", root)
    basis: list  # ChargedState per label
    brackets: dict  # (i, j) -> list of Fraction coordinates
    form: list  # Gram matrix of the invariant form

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def bracket(self, i, j):
        return self.brackets[(i, j)]

    def _bracket_vec(self, u, w):
        out = [Fraction(0)] * self.dimension
        for a, ca in enumerate(u):
            if not ca:
                continue
            for b, cb in enumerate(w):
                if not cb:
                    continue
                for k, c in enumerate(self.brackets[(a, b)]):
                    if c:
                        out[k] += ca * cb * c
        return out

    def unit(self, i):
        return [Fraction(1) if k == i else Fraction(0) for k in range(self.dimension)]

    def antisymmetry_holds(self) -> bool:
        d = self.dimension
        return all(
            self.brackets[(i, j)] == [-c for c in self.brackets[(j, i)]]
            for i in range(d)
            for j in range(d)
        )

    def jacobi_holds(self) -> bool:
        """[a, [b, c]] = [[a, b], c] + [b, [a, c]] on all basis triples."""
        d = self.dimension
        for a in range(d):
            ua = self.unit(a)
            for b in range(d):
                ub = self.unit(b)
                ab = self.brackets[(a, b)]
                for c in range(d):
                    uc = self.unit(c)
                    lhs = self._bracket_vec(ua, self.brackets[(b, c)])
                    r1 = self._bracket_vec(ab, uc)
                    r2 = self._bracket_vec(ub, self.brackets[(a, c)])
                    if lhs != [x + y for x, y in zip(r1, r2)]:
                        return False
        return True

    def form_is_invariant(self) -> bool:
        """([a, b], c) = (a, [b, c])."""
        d = self.dimension

        def pair(u, w):
            return sum(u[i] * w[j] * self.form[i][j] for i in range(d) for j in range(d) if u[i] and w[j])

        for a in range(d):
            for b in range(d):
                for c in range(d):
                    if pair(self.brackets[(a, b)], self.unit(c)) != pair(self.unit(a), self.brackets[(b, c)]):
                        return False
        return True

    def label_text(self, i):
        kind, val = self.labels[i]
        return f"h{val}" if kind == "h" else "e^" + str(list(val))

    def to_json(self):
        d = self.dimension
        return {
            "basis": [self.label_text(i) for i in range(d)],
            "brackets": [
                [i, j, [format_coeff(c) for c in self.brackets[(i, j)]]]
                for i in range(d)
                for j in range(d)
                if any(self.brackets[(i, j)])
            ],
            "form": [[format_coeff(c) for c in row] for row in self.form],
        }


def weight_one_algebra(L: Lattice, order: int = 6) -> WeightOneAlgebra:
    """Weight-1 space of F with bracket from zero modes, for a root-spanned positive lattice."""
    if L.odd_colors:
        raise UnsupportedInputError("weight-one algebra needs an even lattice")
    if not L.is_positive_definite():
        raise UnsupportedInputError("weight-one algebra needs a positive definite lattice")
    if not spanned_by_roots(L):
        raise UnsupportedInputError("lattice not spanned by roots")
    eps = Cocycle(L)
    rts = roots(L)
    labels = [("h", i) for i in range(L.rank)] + [("e", r) for r in rts]
    basis = []
    for kind, val in labels:
        if kind == "h":
            basis.append(ChargedState.from_fock(FockState.monomial(L, {val: [1]})))
        else:
            basis.append(ChargedState.vacuum(L, val))
    root_index = {r: L.rank + k for k, r in enumerate(rts)}

    def field_mode(label, k, state):
        kind, val = label
        if kind == "h":
            return heisenberg_mode_apply(L, L.basis(val), k, state)
        return vertex_mode_apply(L, val, k, state, order, eps)

    def coordinates(state: ChargedState):
        vec = [Fraction(0)] * len(labels)
        for lam, st in state.sectors.items():
            for mono, c in st.terms.items():
                if lam.is_zero() and mono.weight == 1 and len(mono) == 1:
                    color = mono[0][0]
                    vec[color] += c
                elif not lam.is_zero() and not mono and lam in root_index:
                    vec[root_index[lam]] += c
                else:
                    raise UnsupportedInputError(f"bracket left the weight-1 space: {state!r}")
        return vec

    brackets = {}
    for i, a in enumerate(labels):
        for j, b in enumerate(basis):
            brackets[(i, j)] = coordinates(field_mode(a, 0, b))
    form = []
    for i, a in enumerate(labels):
        row = []
        for b in basis:
            r = field_mode(a, 1, b)
            row.append(r.sector(L.zero()).vacuum_coefficient())
        form.append(row)
    return WeightOneAlgebra(L, labels, basis, brackets, form)


def character(L: Lattice, order: int) -> TruncatedSeries:
    """sum_lam q^{(lam,lam)/2} * prod_{m>=1} (1 - q^m)^{-rank}, truncated at q^order."""
    if order < 0:
        raise UsageError("order must be >= 0")
    theta = {}
    for v in short_vectors(L, 2 * order):
        e = inner(L, v, v) // 2
        theta[(e,)] = theta.get((e,), 0) + 1
    th = TruncatedSeries(("q",), order, theta)
    eta_inv = TruncatedSeries.one(("q",), order)
    for m in range(1, order + 1):
        eta_inv = eta_inv * (TruncatedSeries(("q",), order, {(0,): 1, (m,): -1}) ** (-L.rank))
    return th * eta_inv


def sector_level_counts(L: Lattice, order: int) -> list:
    """Number of basis vectors (lattice point, oscillator monomial) at each L0 level."""
    counts = [0] * (order + 1)
    for v in short_vectors(L, 2 * order):
        base = inner(L, v, v) // 2
        for d in range(order - base + 1):
            counts[base + d] += len(monomial_basis(L, d))
    return counts
