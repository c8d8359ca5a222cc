"""Partitions, multipartitions, Young-diagram corners and stratum dimensions.

Cells are ``(row, column)``, zero based, English convention: row 0 is the
longest part. Partitions of n are listed in reverse-lexicographic order,
``(4), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)``.
"""

from __future__ import annotations

from collections import Counter, namedtuple
from functools import lru_cache
from itertools import product

from . import kernels
from .errors import UsageError

__all__ = [
    "Partition",
    "Multipartition",
    "enumerate_partitions",
    "partition_count",
    "strict_partitions",
    "corners",
    "corner_excess",
    "stratum_dim_sym",
    "stratum_dim_hilb",
    "punctual_fiber_dim",
    "component_census",
    "Census",
    "multipartitions",
    "multipartition_tuples",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise UsageError(f"partition parts must be positive: {parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise UsageError(f"partition parts must be weakly decreasing: {parts!r}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts):
        return tuple.__new__(cls, parts)

    @classmethod
    def from_exponents(cls, multiplicities):
        """Build from ``{i: alpha_i}``, the (1^a1 2^a2 ...) notation."""
        parts = []
        for i in sorted(multiplicities, reverse=True):
            m = multiplicities[i]
            if m < 0 or i < 1:
                raise UsageError(f"bad exponent form entry {i}: {m}")
            parts.extend([i] * m)
        return cls._trusted(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def exponents(self) -> dict:
        """``{i: alpha_i}`` with only nonzero multiplicities."""
        return dict(sorted(Counter(self).items()))

    def is_strict(self) -> bool:
        return len(set(self)) == len(self)

    def conjugate(self) -> Partition:
        if not self:
            return self
        return Partition._trusted(
            tuple(sum(1 for p in self if p > j) for j in range(self[0]))
        )

    def cells(self):
        return [(i, j) for i, p in enumerate(self) for j in range(p)]

    def to_json(self):
        return list(self)

    def __repr__(self):
        return f"Partition({list(self)!r})"


@lru_cache(maxsize=256)
def _partitions_cached(n):
    return tuple(Partition._trusted(p) for p in kernels.partitions_of(n))


def enumerate_partitions(n: int) -> list:
    """All partitions of n, each once, reverse-lexicographic."""
    if n < 0:
        raise UsageError("n must be >= 0")
    return list(_partitions_cached(n))


def partition_count(n: int) -> int:
    return len(_partitions_cached(n)) if n >= 0 else 0


def strict_partitions(n: int) -> list:
    """Partitions of n into distinct parts, same order as enumerate_partitions."""
    return [p for p in enumerate_partitions(n) if p.is_strict()]


def corners(lam):
    """(addable cells, removable cells) of a Young diagram."""
    addable, removable = kernels.corner_cells(tuple(lam))
    return list(addable), list(removable)


def corner_excess(lam) -> int:
    """#addable - #removable; always 1 for a single partition."""
    return kernels.corner_excess(tuple(lam))


def stratum_dim_sym(alpha) -> int:
    """Complex dimension of the stratum of the symmetric product: 2 * length."""
    return 2 * len(alpha)


def stratum_dim_hilb(alpha) -> int:
    """Dimension of the preimage stratum in the Hilbert scheme: weight + length."""
    return sum(alpha) + len(alpha)


def punctual_fiber_dim(n: int) -> int:
    """Dimension of the fiber over a point of multiplicity n: n - 1."""
    if n < 1:
        raise UsageError(f"punctual fiber needs n >= 1, got {n}")
    return n - 1


Census = namedtuple("Census", ["components", "dimension"])


def component_census(n: int) -> Census:
    """Irreducible components of the curve preimage: one per partition, all of dimension n."""
    if n < 0:
        raise UsageError("n must be >= 0")
    return Census(partition_count(n), n)


class Multipartition(tuple):
    """Sorted tuple of ``(color, Partition)`` pairs with no empty partitions.

    Doubles as the monomial key of the Fock space: color ``i`` with parts
    ``(n1, n2, ...)`` stands for the product of generators ``v^i_{-n1} v^i_{-n2} ...``.
    """

    __slots__ = ()

    def __new__(cls, components=(), palette_size=None):
        if isinstance(components, dict):
            items = components.items()
        else:
            items = components
        clean = []
        for color, parts in items:
            color = int(color)
            if color < 0 or (palette_size is not None and color >= palette_size):
                raise UsageError(f"color {color} outside palette")
            p = parts if isinstance(parts, Partition) else Partition(sorted(parts, reverse=True))
            if p:
                clean.append((color, p))
        clean.sort(key=lambda cp: cp[0])
        for a, b in zip(clean, clean[1:]):
            if a[0] == b[0]:
                raise UsageError(f"color {a[0]} repeated")
        return super().__new__(cls, clean)

    @classmethod
    def _trusted(cls, items):
        return tuple.__new__(cls, items)

    @property
    def weight(self) -> int:
        return sum(sum(p) for _, p in self)

    def component(self, color) -> Partition:
        for c, p in self:
            if c == color:
                return p
        return Partition._trusted(())

    def as_dict(self):
        return {c: p for c, p in self}

    def generators(self):
        """Flat list of (color, part) in canonical order."""
        return [(c, k) for c, p in self for k in p]

    def to_json(self):
        return {str(c): list(p) for c, p in self}

    @classmethod
    def from_json(cls, obj, palette_size=None):
        return cls({int(k): v for k, v in obj.items()}, palette_size=palette_size)

    def __repr__(self):
        body = {c: list(p) for c, p in self}
        return f"Multipartition({body!r})"


def multipartitions(n: int, colors: int, strict_colors=()):
    """All multipartitions of total weight n over ``colors`` colors.

    Colors listed in ``strict_colors`` only receive partitions with distinct
    parts (odd generators square to zero).
    """
    strict_colors = set(strict_colors)
    out = []

    def rec(color, remaining, acc):
        if color == colors:
            if remaining == 0:
                out.append(Multipartition._trusted(tuple(acc)))
            return
        for w in range(remaining, -1, -1):
            for p in enumerate_partitions(w):
                if color in strict_colors and not p.is_strict():
                    continue
                if p:
                    acc.append((color, p))
                rec(color + 1, remaining - w, acc)
                if p:
                    acc.pop()

    rec(0, n, [])
    return out


def multipartition_tuples(total_max: int, c: int):
    """All c-tuples of partitions with total weight <= total_max."""
    weights = range(total_max + 1)
    for ws in product(weights, repeat=c):
        if sum(ws) > total_max:
            continue
        yield from product(*(enumerate_partitions(w) for w in ws))
