"""The Fock space on a lattice: a free super-commutative algebra with Heisenberg action.

A basis monomial is a :class:`~fockforge.partitions.Multipartition`; color
``i`` with parts ``(n1, n2, ...)`` is ``v^i_{-n1} v^i_{-n2} ... 1``. Odd colors
are exterior generators, so their partitions have distinct parts and every
reordering of odd generators costs a Koszul sign. Canonical generator order
is color ascending, then part descending.

Annihilation operators ``v^i_n`` (n > 0) act as (super-)derivations with
``v^i_n(v^j_{-n} 1) = <i, j>_n``, where ``<,>_n`` comes from a
:class:`PairingSpec`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .errors import UnsupportedInputError, UsageError
from .lattice import Lattice
from .partitions import Multipartition, Partition, enumerate_partitions, multipartitions
from .series import LaurentPoly, TruncatedSeries, format_coeff, parse_coeff, q_integer

__all__ = [
    "PairingSpec",
    "OperatorSymbol",
    "FockState",
    "FockTensor",
    "apply",
    "apply_vector",
    "commutator_check",
    "multiply",
    "coproduct",
    "inner_product",
    "tensor_pair",
    "h_element",
    "h_sequence",
    "newton_convert",
    "hh_table",
    "hh_pairing_series",
    "q_pairing",
    "degree",
    "graded_components",
    "monomial_basis",
    "primitive_dimension",
    "random_state",
]

VACUUM = Multipartition._trusted(())


def _norm(c):
    """Canonical coefficient: ints to Fraction, constant LaurentPoly to Fraction."""
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, LaurentPoly):
        ex = c.exponents()
        if not ex:
            return Fraction(0)
        if ex == [0]:
            return Fraction(c.coefficient(0))
    return c


# ---------------------------------------------------------------------------
# pairings


def q_pairing(K: int, n: int, c: int = 1) -> LaurentPoly:
    """n [n c K] / [n] as a Laurent polynomial in q.

    For n c K < 0 the value is minus the one for |K|; for K = 0 it is 0.
    """
    if n < 1:
        raise UsageError(f"q_pairing needs mode n >= 1, got {n}")
    if c < 1:
        raise UsageError(f"level must be >= 1, got {c}")
    if K == 0:
        return LaurentPoly()
    sign = 1 if K > 0 else -1
    num = q_integer(n * c * abs(K))
    quotient = num.divide_exact(q_integer(n))
    return quotient * (n * sign)


@dataclass(frozen=True)
class PairingSpec:
    """Bilinear form on generators at each mode n.

    ``classical``: n (v, w); ``level_c``: c n (v, w); ``q_deformed``:
    n [n c (v, w)] / [n], Laurent-polynomial valued.
    """

    kind: str
    gram: tuple
    level: int = 1
    parity: tuple = field(default=None)

    def __post_init__(self):
        if self.kind not in ("classical", "level_c", "q_deformed"):
            raise UsageError(f"unknown pairing kind {self.kind!r}")
        if self.level < 1:
            raise UsageError(f"level must be >= 1, got {self.level}")
        if self.kind == "classical" and self.level != 1:
            raise UsageError("the classical pairing has level 1")

    @classmethod
    def classical(cls, lattice: Lattice) -> PairingSpec:
        return cls("classical", lattice.gram, 1, lattice.parity)

    @classmethod
    def level_c(cls, lattice: Lattice, c: int) -> PairingSpec:
        return cls("level_c", lattice.gram, int(c), lattice.parity)

    @classmethod
    def q_deformed(cls, lattice: Lattice, c: int = 1) -> PairingSpec:
        return cls("q_deformed", lattice.gram, int(c), lattice.parity)

    @classmethod
    def make(cls, lattice: Lattice, kind="classical", level=1) -> PairingSpec:
        if kind == "classical" and level != 1:
            kind = "level_c"
        return cls(kind, lattice.gram, int(level), lattice.parity)

    def value(self, i: int, j: int, n: int):
        """<v^i_n, v^j_n> for n >= 1."""
        return _pair_value(self, i, j, n)

    def specialize_q1(self) -> PairingSpec:
        """The rational pairing obtained at q = 1."""
        if self.kind != "q_deformed":
            return self
        return PairingSpec("level_c", self.gram, self.level, self.parity)


@lru_cache(maxsize=4096)
def _pair_value(spec: PairingSpec, i, j, n):
    K = spec.gram[i][j]
    if spec.kind == "q_deformed":
        return _norm(q_pairing(K, n, spec.level))
    return Fraction(spec.level * n * K)


@dataclass(frozen=True)
class OperatorSymbol:
    """Mode ``v^color_mode``; negative modes create, positive annihilate."""

    color: int
    mode: int

    def __post_init__(self):
        if self.mode == 0:
            raise UsageError("mode must be nonzero")

    @classmethod
    def parse(cls, text: str) -> OperatorSymbol:
        """``"color:mode"``, e.g. ``"0:-2"``."""
        try:
            c, m = text.split(":")
            return cls(int(c), int(m))
        except ValueError as exc:
            raise UsageError(f"operator must look like COLOR:MODE, got {text!r}") from exc


# ---------------------------------------------------------------------------
# monomial kernels


def _odd_set(lattice: Lattice):
    return frozenset(lattice.odd_colors)


def _odd_before(mono, color, part, odd):
    """Number of odd generators strictly before (color, part) in canonical order."""
    count = 0
    for c, p in mono:
        if c > color:
            break
        if c in odd:
            if c < color:
                count += len(p)
            else:
                count += sum(1 for k in p if k > part)
    return count


@lru_cache(maxsize=200_000)
def _insert(mono, color, part, odd):
    """Left multiplication by v^color_{-part}: (sign, monomial) or None."""
    items = list(mono)
    for idx, (c, p) in enumerate(items):
        if c == color:
            if color in odd and part in p:
                return None
            sign = -1 if (color in odd and _odd_before(mono, color, part, odd) % 2) else 1
            items[idx] = (c, Partition._trusted(tuple(sorted(p + (part,), reverse=True))))
            return sign, Multipartition._trusted(tuple(items))
        if c > color:
            sign = -1 if (color in odd and _odd_before(mono, color, part, odd) % 2) else 1
            items.insert(idx, (color, Partition._trusted((part,))))
            return sign, Multipartition._trusted(tuple(items))
    sign = -1 if (color in odd and _odd_before(mono, color, part, odd) % 2) else 1
    items.append((color, Partition._trusted((part,))))
    return sign, Multipartition._trusted(tuple(items))


@lru_cache(maxsize=200_000)
def _remove(mono, color, part, odd):
    """Terms (factor, monomial) of d/d(v^color_{-part}) applied to the monomial.

    For an odd color the factor carries the Koszul sign of moving the
    generator to the front.
    """
    items = list(mono)
    for idx, (c, p) in enumerate(items):
        if c != color:
            continue
        k = p.count(part)
        if not k:
            return ()
        rest = list(p)
        rest.remove(part)
        if rest:
            items[idx] = (c, Partition._trusted(tuple(rest)))
        else:
            del items[idx]
        new = Multipartition._trusted(tuple(items))
        if color in odd:
            sign = -1 if _odd_before(mono, color, part, odd) % 2 else 1
            return ((sign, new),)
        return ((k, new),)
    return ()


@lru_cache(maxsize=200_000)
def _mono_mul(m1, m2, odd):
    """Product of monomials: (sign, monomial) or None when an odd square appears."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    d1 = dict(m1)
    d2 = dict(m2)
    sign = 1
    # inversions between odd generators of m1 and later-sorting ones of m2
    odd1 = [(c, k) for c, p in m1 if c in odd for k in p]
    odd2 = [(c, k) for c, p in m2 if c in odd for k in p]
    if odd1 and odd2:
        inv = 0
        for c2, k2 in odd2:
            for c1, k1 in odd1:
                if c1 == c2 and k1 == k2:
                    return None
                if (c2, -k2) < (c1, -k1):
                    inv += 1
        if inv % 2:
            sign = -1
    merged = {}
    for c in set(d1) | set(d2):
        parts = d1.get(c, ()) + d2.get(c, ())
        merged[c] = Partition._trusted(tuple(sorted(parts, reverse=True)))
    return sign, Multipartition._trusted(tuple(sorted(merged.items())))


# ---------------------------------------------------------------------------
# states


class FockState:
    """Finite linear combination of monomials over a lattice palette.

    Coefficients are Fractions, or LaurentPoly after q-deformed operations.
    """

    __slots__ = ("lattice", "_terms")

    def __init__(self, lattice: Lattice, terms=None):
        self.lattice = lattice
        clean = {}
        if terms:
            for mono, c in terms.items():
                if not isinstance(mono, Multipartition):
                    mono = Multipartition(mono, palette_size=lattice.rank)
                c = _norm(c)
                if c:
                    clean[mono] = c
        self._terms = clean

    @classmethod
    def _raw(cls, lattice, terms):
        obj = cls.__new__(cls)
        obj.lattice = lattice
        obj._terms = terms
        return obj

    @classmethod
    def vacuum(cls, lattice: Lattice) -> FockState:
        return cls._raw(lattice, {VACUUM: Fraction(1)})

    @classmethod
    def zero(cls, lattice: Lattice) -> FockState:
        return cls._raw(lattice, {})

    @classmethod
    def monomial(cls, lattice: Lattice, components, coeff=1) -> FockState:
        """From ``{color: [parts]}``; odd colors get their parts sorted with the Koszul sign."""
        state = cls.vacuum(lattice) * coeff
        gens = []
        for color, parts in dict(components).items():
            gens.extend((int(color), int(k)) for k in parts)
        # apply creators right to left so the written order is the product order
        for color, part in reversed(gens):
            state = apply(OperatorSymbol(color, -part), state)
        return state

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _mono_sort_key(kv[0]))

    def coefficient(self, mono):
        if not isinstance(mono, Multipartition):
            mono = Multipartition(mono)
        return self._terms.get(mono, Fraction(0))

    def vacuum_coefficient(self):
        return self._terms.get(VACUUM, Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _same_palette(self, other):
        if self.lattice != other.lattice:
            raise UsageError("states live on different palettes")

    def __eq__(self, other):
        if isinstance(other, FockState):
            return self.lattice == other.lattice and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not other:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        self._same_palette(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = _norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return FockState._raw(self.lattice, out)

    def __neg__(self):
        return FockState._raw(self.lattice, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FockState):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, LaurentPoly)):
            out = {}
            for m, c in self._terms.items():
                v = _norm(c * other)
                if v:
                    out[m] = v
            return FockState._raw(self.lattice, out)
        return NotImplemented

    __rmul__ = __mul__

    def evaluate_q(self, q) -> FockState:
        q = Fraction(q)
        return FockState(
            self.lattice,
            {m: (c.evaluate(q) if isinstance(c, LaurentPoly) else c) for m, c in self._terms.items()},
        )

    def degree(self) -> int:
        return degree(self)

    def to_json(self):
        return {
            "palette": self.lattice.to_json(),
            "terms": [
                {
                    "mono": m.to_json(),
                    "coeff": c.to_json() if isinstance(c, LaurentPoly) else format_coeff(c),
                }
                for m, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, obj, lattice: Lattice = None) -> FockState:
        if lattice is None:
            lattice = Lattice.from_json(obj["palette"])
        terms = {}
        for t in obj["terms"]:
            mono = Multipartition.from_json(t["mono"], palette_size=lattice.rank)
            for c, p in mono:
                if lattice.is_odd(c) and not p.is_strict():
                    raise UsageError(f"odd color {c} cannot repeat a part")
            terms[mono] = terms.get(mono, 0) + parse_coeff(t["coeff"])
        return cls(lattice, terms)

    def __repr__(self):
        if not self._terms:
            return "FockState(0)"
        body = " + ".join(f"({format_coeff(c)})*{_mono_str(m)}" for m, c in self.items())
        return f"FockState({body})"


def _mono_sort_key(m):
    return (m.weight, tuple((c, tuple(-k for k in p)) for c, p in m))


def _mono_str(m):
    if not m:
        return "1"
    return "".join(f"v{c}[{-k}]" for c, p in m for k in p)


class FockTensor:
    """Element of S (x) S as a map (left monomial, right monomial) -> coefficient."""

    __slots__ = ("lattice", "_terms")

    def __init__(self, lattice, terms=None):
        self.lattice = lattice
        self._terms = {k: _norm(v) for k, v in (terms or {}).items() if v}

    @property
    def terms(self):
        return dict(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FockTensor):
            return NotImplemented
        return self.lattice == other.lattice and self._terms == other._terms

    __hash__ = None

    def __add__(self, other):
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return FockTensor(self.lattice, out)

    def __sub__(self, other):
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) - c
        return FockTensor(self.lattice, out)

    @classmethod
    def tensor(cls, x: FockState, y: FockState) -> FockTensor:
        out = {}
        for m1, c1 in x._terms.items():
            for m2, c2 in y._terms.items():
                out[(m1, m2)] = out.get((m1, m2), 0) + c1 * c2
        return cls(x.lattice, out)

    def to_json(self):
        return {
            "terms": [
                {"left": l.to_json(), "right": r.to_json(), "coeff": format_coeff(c)}
                for (l, r), c in sorted(
                    self._terms.items(),
                    key=lambda kv: (_mono_sort_key(kv[0][0]), _mono_sort_key(kv[0][1])),
                )
            ]
        }


# ---------------------------------------------------------------------------
# operations


def apply(op: OperatorSymbol, x: FockState, pairing: PairingSpec = None) -> FockState:
    """Action of the Heisenberg mode ``op`` on ``x``.

    Creation multiplies by the generator; annihilation is the (super-)derivation
    fixed by the pairing at that mode. ``pairing`` defaults to the classical one.
    """
    L = x.lattice
    color, mode = op.color, op.mode
    if not 0 <= color < L.rank:
        raise UsageError(f"unknown color {color} for a rank-{L.rank} palette")
    odd = _odd_set(L)
    out = {}
    if mode < 0:
        part = -mode
        for m, c in x._terms.items():
            r = _insert(m, color, part, odd)
            if r is None:
                continue
            sign, new = r
            v = out.get(new, 0) + (c if sign > 0 else -c)
            out[new] = v
    else:
        if pairing is None:
            pairing = PairingSpec.classical(L)
        n = mode
        vals = [pairing.value(color, j, n) for j in range(L.rank)]
        for m, c in x._terms.items():
            for j, p in m:
                val = vals[j]
                if not val or n not in p:
                    continue
                for factor, new in _remove(m, j, n, odd):
                    out[new] = out.get(new, 0) + c * val * factor
    return FockState(L, out)


def apply_vector(coords, mode: int, x: FockState, pairing: PairingSpec = None) -> FockState:
    """Action of (sum_i coords[i] v^i)_mode."""
    total = FockState.zero(x.lattice)
    for i, a in enumerate(coords):
        if a:
            total = total + apply(OperatorSymbol(i, mode), x, pairing) * a
    return total


def _mode_bracket_value(L, pairing, i, j, n, m):
    """Predicted scalar for [v^i_n, v^j_m] (anticommutator if both odd)."""
    if n + m != 0:
        return Fraction(0)
    both_odd = L.is_odd(i) and L.is_odd(j)
    if n > 0:
        return pairing.value(i, j, n)
    # [v^i_{-k}, v^j_k] = -[v^j_k, v^i_{-k}]; for odd pairs the anticommutator is symmetric
    val = pairing.value(j, i, m)
    return val if both_odd else -val


def commutator_check(i, j, n, m, x: FockState, pairing: PairingSpec = None):
    """(computed, predicted) for the (super)commutator of two modes applied to x."""
    L = x.lattice
    if pairing is None:
        pairing = PairingSpec.classical(L)
    a = OperatorSymbol(i, n)
    b = OperatorSymbol(j, m)
    ab = apply(a, apply(b, x, pairing), pairing)
    ba = apply(b, apply(a, x, pairing), pairing)
    both_odd = L.is_odd(i) and L.is_odd(j)
    lhs = ab + ba if both_odd else ab - ba
    predicted = x * _mode_bracket_value(L, pairing, i, j, n, m)
    return lhs, predicted


def multiply(x: FockState, y: FockState) -> FockState:
    """Super-commutative product."""
    x._same_palette(y)
    odd = _odd_set(x.lattice)
    out = {}
    for m1, c1 in x._terms.items():
        for m2, c2 in y._terms.items():
            r = _mono_mul(m1, m2, odd)
            if r is None:
                continue
            sign, m = r
            out[m] = out.get(m, 0) + (c1 * c2 if sign > 0 else -(c1 * c2))
    return FockState(x.lattice, out)


@lru_cache(maxsize=50_000)
def _mono_coproduct(mono, odd):
    """Coproduct of one monomial: tuple of ((left, right), coefficient)."""
    gens = [(c, k) for c, p in mono for k in p]
    # even generators grouped into blocks with multiplicity; odd ones stay single
    blocks = []
    for g in gens:
        if g[0] not in odd and blocks and blocks[-1][0] == g:
            blocks[-1][1] += 1
        else:
            blocks.append([g, 1])
    out = {}
    for choice in product(*(range(k + 1) for _, k in blocks)):
        coeff = 1
        left, right = [], []
        sign = 1
        odd_right = 0
        for (g, k), a in zip(blocks, choice):
            coeff *= comb(k, a)
            left.extend([g] * a)
            right.extend([g] * (k - a))
            if g[0] in odd:
                if a:  # goes left, past the odd generators already sent right
                    if odd_right % 2:
                        sign = -sign
                else:
                    odd_right += 1
        key = (_gens_to_mono(left), _gens_to_mono(right))
        out[key] = out.get(key, 0) + sign * coeff
    return tuple((k, v) for k, v in out.items() if v)


def _gens_to_mono(gens):
    d = {}
    for c, k in gens:
        d.setdefault(c, []).append(k)
    return Multipartition._trusted(
        tuple((c, Partition._trusted(tuple(sorted(ks, reverse=True)))) for c, ks in sorted(d.items()))
    )


def coproduct(x: FockState) -> FockTensor:
    """Delta with every generator primitive, extended as an algebra map."""
    odd = _odd_set(x.lattice)
    out = {}
    for m, c in x._terms.items():
        for key, k in _mono_coproduct(m, odd):
            out[key] = out.get(key, 0) + c * k
    return FockTensor(x.lattice, out)


@lru_cache(maxsize=200_000)
def _pair_monos(m1, m2, pairing: PairingSpec, odd):
    """(m1, m2) computed by annihilating m2 with the adjoints of m1's generators."""
    if m1.weight != m2.weight:
        return Fraction(0)
    if not m1:
        return Fraction(1) if not m2 else Fraction(0)
    # m1 = g * rest with g its first generator in canonical order, no sign
    color, p = m1[0]
    part = p[0]
    rest_items = list(m1)
    if len(p) == 1:
        del rest_items[0]
    else:
        rest_items[0] = (color, Partition._trusted(p[1:]))
    rest = Multipartition._trusted(tuple(rest_items))
    total = Fraction(0)
    for j, q in m2:
        if part not in q:
            continue
        val = pairing.value(color, j, part)
        if not val:
            continue
        for factor, new in _remove(m2, j, part, odd):
            sub = _pair_monos(rest, new, pairing, odd)
            if sub:
                total = total + val * factor * sub
    return _norm(total)


def inner_product(x: FockState, y: FockState, pairing: PairingSpec = None):
    """The Hopf-adjoint form with <1, 1> = 1 and generator values from ``pairing``."""
    x._same_palette(y)
    if pairing is None:
        pairing = PairingSpec.classical(x.lattice)
    odd = _odd_set(x.lattice)
    total = Fraction(0)
    for m1, c1 in x._terms.items():
        for m2, c2 in y._terms.items():
            v = _pair_monos(m1, m2, pairing, odd)
            if v:
                total = total + c1 * c2 * v
    return _norm(total)


def tensor_pair(x: FockState, y: FockState, t: FockTensor, pairing: PairingSpec = None):
    """(x (x) y, t) with (x (x) y, a (x) b) = (x, a)(y, b).

    No Koszul sign: with adjoints taken generator by generator from the left
    this is the rule under which product and coproduct are adjoint.
    """
    if pairing is None:
        pairing = PairingSpec.classical(x.lattice)
    odd = _odd_set(x.lattice)
    total = Fraction(0)
    for (a, b), c in t._terms.items():
        left = Fraction(0)
        for m1, c1 in x._terms.items():
            v = _pair_monos(m1, a, pairing, odd)
            if v:
                left = left + c1 * v
        if not left:
            continue
        right = Fraction(0)
        for m2, c2 in y._terms.items():
            v = _pair_monos(m2, b, pairing, odd)
            if v:
                right = right + c2 * v
        total = total + c * left * right
    return _norm(total)


def degree(x: FockState) -> int:
    """Degree of a homogeneous state (vacuum and zero have degree 0)."""
    degs = {m.weight for m in x._terms}
    if len(degs) > 1:
        raise UsageError(f"state is not homogeneous: degrees {sorted(degs)}")
    return degs.pop() if degs else 0


def graded_components(x: FockState) -> dict:
    """{n: component of x in S_n}."""
    parts = {}
    for m, c in x._terms.items():
        parts.setdefault(m.weight, {})[m] = c
    return {n: FockState._raw(x.lattice, t) for n, t in sorted(parts.items())}


def _check_even_vector(L: Lattice, v):
    v = tuple(v)
    if len(v) != L.rank:
        raise UsageError(f"vector {list(v)} has wrong length for rank {L.rank}")
    if any(v[i] for i in L.odd_colors):
        raise UnsupportedInputError("group-like elements need an even vector")
    return v


def _creation_vector(L, v, m):
    """(sum_i v_i alpha^i)_{-m} . 1."""
    return FockState(L, {Multipartition._trusted(((i, Partition._trusted((m,))),)): a for i, a in enumerate(v) if a})


def h_sequence(L: Lattice, v, order: int) -> list:
    """[h^v_0, ..., h^v_order] from n h_n = sum_m v_{-m} h_{n-m}."""
    v = _check_even_vector(L, v)
    if order < 0:
        raise UsageError("order must be >= 0")
    hs = [FockState.vacuum(L)]
    gens = [None] + [_creation_vector(L, v, m) for m in range(1, order + 1)]
    for n in range(1, order + 1):
        acc = FockState.zero(L)
        for m in range(1, n + 1):
            acc = acc + multiply(gens[m], hs[n - m])
        hs.append(acc * Fraction(1, n))
    return hs


def h_element(L: Lattice, v, n: int) -> FockState:
    """Degree-n part of exp(sum_{m>=1} v_{-m} t^m / m) . 1."""
    if n < 0:
        raise UsageError("n must be >= 0")
    return h_sequence(L, v, n)[n]


# ---------------------------------------------------------------------------
# Newton conversion between power sums p_k and complete homogeneous h_k


def _poly_mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(sorted(m1 + m2, reverse=True))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _poly_add(a, b, scale=1):
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + scale * c
    return {m: c for m, c in out.items() if c}


def newton_convert(direction: str, n: int) -> list:
    """Universal polynomials relating h_k and p_k for k = 1..n.

    ``"p->h"`` expresses each h_k in the power sums (keys are partitions
    naming products p_{l1} p_{l2} ...); ``"h->p"`` expresses each p_k in the
    h's. Uses k h_k = sum_{i=1}^k p_i h_{k-i}.
    """
    if n < 1:
        raise UsageError("n must be >= 1")
    if direction in ("p->h", "h_in_p"):
        h = [{(): Fraction(1)}]
        for k in range(1, n + 1):
            acc = {}
            for i in range(1, k + 1):
                acc = _poly_add(acc, _poly_mul({(i,): Fraction(1)}, h[k - i]))
            h.append({m: c / k for m, c in acc.items()})
        return [_as_partition_keys(p) for p in h[1:]]
    if direction in ("h->p", "p_in_h"):
        p = [None]
        for k in range(1, n + 1):
            acc = {(k,): Fraction(k)}
            for i in range(1, k):
                acc = _poly_add(acc, _poly_mul(p[i], {(k - i,): Fraction(1)}), scale=-1)
            p.append(acc)
        return [_as_partition_keys(q) for q in p[1:]]
    raise UsageError(f"direction must be 'p->h' or 'h->p', got {direction!r}")


def _as_partition_keys(poly):
    return {Partition._trusted(m): c for m, c in sorted(poly.items(), key=lambda kv: (len(kv[0]), kv[0]), reverse=True)}


def format_symmetric_poly(poly, var="p") -> str:
    pieces = []
    for m, c in poly.items():
        mono = "*".join(
            f"{var}{k}" if e == 1 else f"{var}{k}^{e}" for k, e in sorted(m.exponents().items(), reverse=True)
        )
        pieces.append(f"{format_coeff(c)}*{mono}" if mono else format_coeff(c))
    return " + ".join(pieces) if pieces else "0"


def evaluate_in_fock(poly, L: Lattice, v) -> FockState:
    """Substitute p_k -> v_{-k} . 1 (the f(n) = n normalization) and multiply out."""
    v = _check_even_vector(L, v)
    total = FockState.zero(L)
    for m, c in poly.items():
        term = FockState.vacuum(L) * c
        for k in m:
            term = multiply(term, _creation_vector(L, v, k))
        total = total + term
    return total


# ---------------------------------------------------------------------------
# generating functions of pairings


def hh_table(L: Lattice, v, w, order: int, pairing: PairingSpec = None) -> TruncatedSeries:
    """sum_{n,m <= order} (h^v_n, h^w_m) t^n s^m from first principles."""
    if pairing is None:
        pairing = PairingSpec.classical(L)
    hv = h_sequence(L, v, order)
    hw = hv if tuple(v) == tuple(w) else h_sequence(L, w, order)
    terms = {}
    for n in range(order + 1):
        for m in range(order + 1):
            terms[(n, m)] = inner_product(hv[n], hw[m], pairing)
    return TruncatedSeries(("t", "s"), order, terms)


def witness_lattice(k: int) -> tuple:
    """A small even lattice with two vectors v, w of inner product k."""
    if k == 0:
        return Lattice([[2, 0], [0, 2]]), (1, 0), (0, 1)
    return Lattice([[0, k], [k, 0]]), (1, 0), (0, 1)


def hh_pairing_series(k: int, order: int, kind="classical", level=1) -> TruncatedSeries:
    """Double generating function of (h^v_n, h^w_m) for (v, w) = k.

    Classical case equals ``binomial_power(k, order)``.
    """
    if order < 0:
        raise UsageError("order must be >= 0")
    L, v, w = witness_lattice(k)
    return hh_table(L, v, w, order, PairingSpec.make(L, kind, level))


# ---------------------------------------------------------------------------
# bases, primitives, random states


def monomial_basis(L: Lattice, n: int) -> list:
    return multipartitions(n, L.rank, strict_colors=L.odd_colors)


def _rank(rows):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / pv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def primitive_dimension(L: Lattice, n: int) -> int:
    """dim of {x in S_n : Delta x = x (x) 1 + 1 (x) x}, by exact linear algebra."""
    basis = monomial_basis(L, n)
    odd = _odd_set(L)
    images = []
    for m in basis:
        t = dict(_mono_coproduct(m, odd))
        t[(m, VACUUM)] = t.get((m, VACUUM), 0) - 1
        t[(VACUUM, m)] = t.get((VACUUM, m), 0) - 1
        images.append({k: Fraction(v) for k, v in t.items() if v})
    keys = sorted({k for im in images for k in im}, key=lambda kv: (_mono_sort_key(kv[0]), _mono_sort_key(kv[1])))
    index = {k: i for i, k in enumerate(keys)}
    # columns are basis elements; rank of the map = rank of its transpose
    rows = []
    for im in images:
        row = [Fraction(0)] * len(keys)
        for k, v in im.items():
            row[index[k]] = v
        rows.append(row)
    return len(basis) - (_rank(rows) if keys else 0)


def random_state(L: Lattice, rng: random.Random, max_degree: int, n_terms: int = 3, coeff_bound: int = 3) -> FockState:
    """A few random monomials of degree <= max_degree with small rational coefficients."""
    terms = {}
    for _ in range(n_terms):
        d = rng.randint(0, max_degree)
        basis = _cached_basis(L, d)
        if not basis:
            continue
        m = basis[rng.randrange(len(basis))]
        num = rng.randint(-coeff_bound, coeff_bound) or 1
        den = rng.randint(1, coeff_bound)
        terms[m] = terms.get(m, 0) + Fraction(num, den)
    return FockState(L, terms)


@lru_cache(maxsize=256)
def _cached_basis(L, d):
    return tuple(monomial_basis(L, d))


def partition_formula_h(L: Lattice, v, n: int) -> FockState:
    """h^v_n = sum_{lambda |- n} v_{-lambda} / z_lambda (closed form)."""
    v = _check_even_vector(L, v)
    total = FockState.zero(L)
    for lam in enumerate_partitions(n):
        z = 1
        for i, a in lam.exponents().items():
            z *= i**a * factorial(a)
        term = FockState.vacuum(L) * Fraction(1, z)
        for k in lam:
            term = multiply(term, _creation_vector(L, v, k))
        total = total + term
    return total
