"""Hodge-graded generating functions for Hilbert schemes of points on a surface.

Summed over n, the cohomology is the free supercommutative algebra on
classes r^Z_m, one per basis class Z of H^*(X) and m >= 1. A class Z of
Hodge type (p, q) gives a generator of weight m and bidegree
(m + p - 1, m + q - 1): even when p + q is even, exterior when odd.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .errors import UsageError
from .fock import FockState, PairingSpec, commutator_check, random_state
from .lattice import Lattice
from .partitions import corner_excess, enumerate_partitions, multipartition_tuples, strict_partitions
from .series import TruncatedSeries

__all__ = [
    "HodgeDiamond",
    "BigradedSeries",
    "hilb_hodge_series",
    "u0_series",
    "fock_dim_oracle",
    "central_charge_check",
    "corner_excess_report",
    "CheckResult",
]


class HodgeDiamond:
    """h^{p,q} of a surface, 0 <= p, q <= 2.

    ``strict=False`` lifts the h^{0,0} >= 1 requirement so that formal
    diamonds (only some classes switched on) can be used.
    """

    def __init__(self, h, strict=True):
        table = {}
        for key, val in dict(h).items():
            if isinstance(key, str):
                p, q = (int(s) for s in key.split(","))
            else:
                p, q = key
            if not (0 <= p <= 2 and 0 <= q <= 2):
                raise UsageError(f"Hodge index ({p},{q}) out of range for a surface")
            val = int(val)
            if val < 0:
                raise UsageError("Hodge numbers must be nonnegative")
            if val:
                table[(p, q)] = val
        for (p, q), v in table.items():
            if table.get((q, p), 0) != v:
                raise UsageError(f"h^{p},{q} != h^{q},{p}")
        if strict and table.get((0, 0), 0) < 1:
            raise UsageError("h^{0,0} must be at least 1")
        self.h = table

    def __getitem__(self, pq):
        return self.h.get(tuple(pq), 0)

    @classmethod
    def projective_plane(cls):
        return cls({(0, 0): 1, (1, 1): 1, (2, 2): 1})

    @classmethod
    def k3(cls):
        return cls({(0, 0): 1, (2, 0): 1, (0, 2): 1, (1, 1): 20, (2, 2): 1})

    @property
    def even_count(self) -> int:
        return sum(v for (p, q), v in self.h.items() if (p + q) % 2 == 0)

    @property
    def odd_count(self) -> int:
        return sum(v for (p, q), v in self.h.items() if (p + q) % 2 == 1)

    def hodge_polynomial(self):
        """{(p, q): h^{p,q}}."""
        return dict(sorted(self.h.items()))

    def to_json(self):
        return {"h": {f"{p},{q}": v for (p, q), v in sorted(self.h.items())}}

    @classmethod
    def from_json(cls, obj, strict=True):
        if not isinstance(obj, dict) or "h" not in obj:
            raise UsageError("Hodge diamond JSON needs an 'h' object")
        return cls(obj["h"], strict=strict)

    @classmethod
    def load(cls, path, strict=True):
        with open(path) as fh:
            return cls.from_json(json.load(fh), strict=strict)


@dataclass
class BigradedSeries:
    """polys[n] = {(a, b): dim H^{a,b}} of the degree-n Fock piece, n <= order."""

    order: int
    polys: list

    def coefficient(self, n, a, b) -> int:
        return self.polys[n].get((a, b), 0)

    def totals(self) -> list:
        """Values at t = s = 1 (total dimension per n)."""
        return [sum(p.values()) for p in self.polys]

    def diagonal(self) -> list:
        """dim of bidegree (n, n) in the n-th piece."""
        return [p.get((n, n), 0) for n, p in enumerate(self.polys)]

    def is_symmetric(self) -> bool:
        return all(p.get((b, a), 0) == c for p in self.polys for (a, b), c in p.items())

    def betti(self, n) -> list:
        """Betti numbers of the n-th piece: b_k = sum_{a+b=k} h^{a,b}."""
        top = 4 * n
        out = [0] * (top + 1)
        for (a, b), c in self.polys[n].items():
            out[a + b] += c
        return out

    def to_json(self):
        return {
            "order": self.order,
            "variables": ["t", "s"],
            "polys": [
                [[a, b, c] for (a, b), c in sorted(p.items())] for p in self.polys
            ],
        }

    def to_tsv(self) -> str:
        """One row per n: n, then t^a s^b:coeff cells in sorted order."""
        lines = ["n\tterms"]
        for n, p in enumerate(self.polys):
            cells = " ".join(f"t^{a}s^{b}:{c}" for (a, b), c in sorted(p.items()))
            lines.append(f"{n}\t{cells}")
        return "\n".join(lines) + "\n"


def _poly3_mul(A, B, order):
    """Product of z-graded bivariate polys (lists of dicts), truncated at z^order."""
    out = [dict() for _ in range(order + 1)]
    for n1, p1 in enumerate(A):
        if not p1:
            continue
        for n2 in range(order + 1 - n1):
            p2 = B[n2]
            if not p2:
                continue
            tgt = out[n1 + n2]
            for (a1, b1), c1 in p1.items():
                for (a2, b2), c2 in p2.items():
                    key = (a1 + a2, b1 + b2)
                    tgt[key] = tgt.get(key, 0) + c1 * c2
    return out


def hilb_hodge_series(X: HodgeDiamond, order: int) -> BigradedSeries:
    """Hodge polynomials of the Fock pieces S_n, n <= order.

    Product over m >= 1 and (p, q) of (1 - t^{m+p-1} s^{m+q-1} z^m)^{-h^{p,q}}
    for p + q even and (1 + t^{m+p-1} s^{m+q-1} z^m)^{h^{p,q}} for p + q odd.
    """
    if order < 0:
        raise UsageError("order must be >= 0")
    total = [dict() for _ in range(order + 1)]
    total[0][(0, 0)] = 1
    for m in range(1, order + 1):
        for (p, q), h in sorted(X.h.items()):
            a, b = m + p - 1, m + q - 1
            factor = [dict() for _ in range(order + 1)]
            for k in range(order // m + 1):
                if (p + q) % 2 == 0:
                    c = comb(k + h - 1, k)
                else:
                    c = comb(h, k)
                if c:
                    factor[k * m][(a * k, b * k)] = c
            total = _poly3_mul(total, factor, order)
    return BigradedSeries(order, total)


def u0_series(h20: int, h11: int, order: int) -> TruncatedSeries:
    """Coefficient of u^0 in prod_n ((1 - z^n u)(1 - z^n/u))^{-h20} (1 - z^n)^{-h11}.

    Expanded in (z, u) with u-exponents kept in the window [-order, order],
    which is exact since every power of u comes with at least that power of z.
    """
    if order < 0 or h20 < 0 or h11 < 0:
        raise UsageError("u0_series needs nonnegative arguments")
    # series[n] = {u_exponent: coeff}
    series = [dict() for _ in range(order + 1)]
    series[0][0] = 1

    def mul_factor(cur, m, du, h):
        # cur * (1 - z^m u^du)^{-h}
        out = [dict() for _ in range(order + 1)]
        for k in range(order // m + 1):
            c = comb(k + h - 1, k)
            if not c:
                continue
            for n in range(order + 1 - k * m):
                for e, v in cur[n].items():
                    ee = e + k * du
                    if abs(ee) > order:
                        continue
                    tgt = out[n + k * m]
                    tgt[ee] = tgt.get(ee, 0) + c * v
        return out

    for m in range(1, order + 1):
        if h20:
            series = mul_factor(series, m, 1, h20)
            series = mul_factor(series, m, -1, h20)
        if h11:
            series = mul_factor(series, m, 0, h11)
    return TruncatedSeries(("z",), order, {(n,): series[n].get(0, 0) for n in range(order + 1)})


def fock_dim_oracle(colors_even: int, colors_odd: int, n: int) -> int:
    """dim S_n by counting monomials: a partition per even color, a strict one per odd color.

    Colors are processed one at a time; at each step the number of monomials
    of every partial weight is updated from the explicit partition lists.
    """
    if n < 0 or colors_even < 0 or colors_odd < 0:
        raise UsageError("fock_dim_oracle needs nonnegative arguments")
    full = [len(enumerate_partitions(w)) for w in range(n + 1)]
    strict = [len(strict_partitions(w)) for w in range(n + 1)]
    counts = [1] + [0] * n
    for per_color in [full] * colors_even + [strict] * colors_odd:
        new = [0] * (n + 1)
        for w, c in enumerate(counts):
            if c:
                for w2 in range(n + 1 - w):
                    new[w + w2] += c * per_color[w2]
        counts = new
    return counts[n]


@dataclass
class CheckResult:
    """One verified identity in a report."""

    name: str
    identity: str
    passed: bool
    detail: str = ""
    skipped: bool = False

    def to_json(self):
        out = {"id": self.name, "identity": self.identity, "passed": self.passed, "detail": self.detail}
        if self.skipped:
            out["skipped"] = True
        return out


def central_charge_check(c: int, gram, order: int = 4, seed: int = 0, n_states: int = 10) -> list:
    """Heisenberg relations under the level-c pairing.

    Checks [v^i_1, v^j_{-1}] = c (v^i, v^j) and [v^i_n, v^j_{-n}] = c n (v^i, v^j)
    on random states of degree <= order, for n = 1..order.
    """
    import random

    if c < 1:
        raise UsageError("level must be >= 1")
    L = gram if isinstance(gram, Lattice) else Lattice(gram)
    P = PairingSpec.level_c(L, c)
    rng = random.Random(seed)
    states = [FockState.vacuum(L)] + [random_state(L, rng, order) for _ in range(n_states)]
    results = []
    ok = True
    detail = ""
    for i in range(L.rank):
        for j in range(L.rank):
            expected = c * L.gram[i][j]
            for x in states:
                lhs, pred = commutator_check(i, j, 1, -1, x, P)
                if lhs != pred or pred != x * expected:
                    ok = False
                    detail = f"colors {i},{j}"
    results.append(
        CheckResult("charge.h1", "[h^S_1, h^S'_{-1}] = c (S, S')", ok, detail or f"c={c}")
    )
    ok = True
    detail = ""
    for n in range(1, order + 1):
        for i in range(L.rank):
            for j in range(L.rank):
                expected = c * n * L.gram[i][j]
                for x in states:
                    lhs, pred = commutator_check(i, j, n, -n, x, P)
                    if lhs != pred or pred != x * expected:
                        ok = False
                        detail = f"n={n} colors {i},{j}"
    results.append(
        CheckResult("charge.modes", "[v_n, w_{-n}] = c n (v, w)", ok, detail or f"c={c}, n<={order}")
    )
    return results


def corner_excess_report(n_max: int, c: int = 1) -> CheckResult:
    """Addable minus removable cells: exactly c over every c-tuple of partitions.

    For c = 1 this runs over all partitions of every n <= n_max; for c > 1
    over c-tuples of total weight <= n_max.
    """
    if n_max < 0:
        raise UsageError("n_max must be >= 0")
    if c < 1:
        raise UsageError("c must be >= 1")
    checked = 0
    failures = []
    if c == 1:
        for n in range(n_max + 1):
            for lam in enumerate_partitions(n):
                checked += 1
                if corner_excess(lam) != 1:
                    failures.append(list(lam))
    else:
        for tup in multipartition_tuples(n_max, c):
            checked += 1
            if sum(corner_excess(lam) for lam in tup) != c:
                failures.append([list(lam) for lam in tup])
    return CheckResult(
        "corners" if c == 1 else f"corners.c{c}",
        "#addable - #removable = c",
        not failures,
        f"checked {checked}, failures {len(failures)}",
    )
