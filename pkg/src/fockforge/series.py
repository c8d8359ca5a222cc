"""Exact truncated power series in one or two variables, and Laurent polynomials in q.

Coefficients are :class:`fractions.Fraction` (or :class:`LaurentPoly` when a
q-deformed computation feeds a series). There is no floating point here.
"""

from __future__ import annotations

from fractions import Fraction

from . import kernels
from .errors import UsageError

__all__ = [
    "LaurentPoly",
    "TruncatedSeries",
    "series_mul",
    "series_exp",
    "binomial_power",
    "q_integer",
    "format_coeff",
    "parse_coeff",
]


def _frac(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


def format_coeff(c) -> str:
    """Render an exact coefficient as ``p/q`` (integers as ``p``)."""
    if isinstance(c, LaurentPoly):
        return str(c)
    return str(Fraction(c))


def parse_coeff(text):
    if isinstance(text, dict) and "q" in text:
        return LaurentPoly.from_json(text)
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text))


class LaurentPoly:
    """Finite sum of c_k q^k, k any integer, exact coefficients.

    Immutable; supports ring arithmetic with ints and Fractions.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if isinstance(c, Fraction) and c.denominator == 1:
                        c = c.numerator
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, e, c=1):
        return cls({e: c})

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, e):
        return self._terms.get(e, 0)

    def exponents(self):
        return sorted(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: Fraction(c) / other for e, c in self._terms.items()})
        if isinstance(other, LaurentPoly):
            return self.divide_exact(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise UsageError("negative powers of Laurent polynomials are not supported")
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def divide_exact(self, divisor: LaurentPoly) -> LaurentPoly:
        """Quotient by long division; raises ArithmeticError unless exact."""
        if not divisor:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        rem = dict(self._terms)
        dtop = max(divisor._terms)
        dlow = min(divisor._terms)
        lead = divisor._terms[dtop]
        quot = {}
        while rem:
            top = max(rem)
            if top - dtop < min(rem, default=top) - dlow:
                break
            shift = top - dtop
            c = Fraction(rem[top]) / lead
            if c.denominator == 1:
                c = c.numerator
            quot[shift] = c
            for e, dc in divisor._terms.items():
                k = e + shift
                v = rem.get(k, 0) - c * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if rem:
            raise ArithmeticError("Laurent polynomial division is not exact")
        return LaurentPoly(quot)

    def bar(self) -> LaurentPoly:
        """The image under q -> 1/q."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def evaluate(self, q) -> Fraction:
        q = Fraction(q)
        total = Fraction(0)
        for e, c in self._terms.items():
            total += c * q**e
        return total

    def to_json(self):
        return {"q": [[e, format_coeff(c)] for e, c in sorted(self._terms.items(), reverse=True)]}

    @classmethod
    def from_json(cls, obj):
        return cls({int(e): parse_coeff(c) for e, c in obj["q"]})

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}"
            pieces.append(_signed_term(c, mono))
        return _join_terms(pieces)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _signed_term(c, mono):
    """(negative?, body) for a coefficient times a monomial string."""
    if isinstance(c, LaurentPoly):
        body = f"({c})"
        return (False, body + ("*" + mono if mono else ""))
    c = Fraction(c)
    neg = c < 0
    a = -c if neg else c
    if not mono:
        return (neg, str(a))
    if a == 1:
        return (neg, mono)
    return (neg, f"{a}*{mono}")


def _join_terms(pieces):
    out = ""
    for idx, (neg, body) in enumerate(pieces):
        if idx == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


class TruncatedSeries:
    """Power series in 1 or 2 commuting variables, truncated at ``order``.

    In two variables the truncation is the box ``deg_x <= order`` and
    ``deg_y <= order``. Terms are a sparse map from exponent tuples to
    coefficients; zero coefficients are never stored.
    """

    __slots__ = ("variables", "order", "_terms")

    def __init__(self, variables, order: int, terms=None):
        if isinstance(variables, str):
            variables = (variables,)
        variables = tuple(variables)
        if len(variables) not in (1, 2) or len(set(variables)) != len(variables):
            raise UsageError(f"need one or two distinct variables, got {variables!r}")
        if order < 0:
            raise UsageError("truncation order must be >= 0")
        self.variables = variables
        self.order = int(order)
        clean = {}
        if terms:
            nv = len(variables)
            for exps, c in terms.items():
                if isinstance(exps, int):
                    exps = (exps,)
                exps = tuple(exps)
                if len(exps) != nv or min(exps) < 0:
                    raise UsageError(f"bad exponent {exps!r} for variables {variables!r}")
                if max(exps) > order or not c:
                    continue
                clean[exps] = _frac(c)
        self._terms = clean

    # construction helpers
    @classmethod
    def one(cls, variables, order):
        nv = 1 if isinstance(variables, str) else len(variables)
        return cls(variables, order, {(0,) * nv: 1})

    @classmethod
    def zero(cls, variables, order):
        return cls(variables, order)

    @classmethod
    def from_dense(cls, variables, order, coeffs):
        """From a list (1 variable) or a list of rows (2 variables)."""
        if isinstance(variables, str) or len(variables) == 1:
            return cls(variables, order, {(i,): c for i, c in enumerate(coeffs)})
        return cls(
            variables,
            order,
            {(i, j): c for i, row in enumerate(coeffs) for j, c in enumerate(row)},
        )

    def gen(self, index=0):
        """The series equal to one of the variables, same shape as self."""
        e = [0] * len(self.variables)
        e[index] = 1
        return TruncatedSeries(self.variables, self.order, {tuple(e): 1})

    # accessors
    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, *exps):
        if len(exps) == 1 and isinstance(exps[0], tuple):
            exps = exps[0]
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self):
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def coefficients(self):
        """Dense coefficient list (1 variable only)."""
        if len(self.variables) != 1:
            raise UsageError("coefficients() needs a one-variable series")
        return [self._terms.get((i,), Fraction(0)) for i in range(self.order + 1)]

    def diagonal(self):
        """Coefficients of (xy)^n, n = 0..order (2 variables only)."""
        if len(self.variables) != 2:
            raise UsageError("diagonal() needs a two-variable series")
        return [self._terms.get((i, i), Fraction(0)) for i in range(self.order + 1)]

    def __iter__(self):
        return iter(sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0])))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # arithmetic
    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            return False
        if other.variables != self.variables:
            raise UsageError(
                f"variable mismatch: {self.variables!r} vs {other.variables!r}"
            )
        if other.order != self.order:
            raise UsageError(f"order mismatch: {self.order} vs {other.order}")
        return True

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return (
                self.variables == other.variables
                and self.order == other.order
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)):
            return self == TruncatedSeries.one(self.variables, self.order) * other
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.order, frozenset(self._terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = TruncatedSeries.one(self.variables, self.order) * other
        if not self._check(other):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(self.variables, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(
            self.variables, self.order, {e: -c for e, c in self._terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return TruncatedSeries(
                self.variables,
                self.order,
                {e: c * other for e, c in self._terms.items()},
            )
        if not self._check(other):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncatedSeries.one(self.variables, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def _nilpotent_powers(self):
        """Yield r, r^2, ... until the truncation kills them (r has no constant term)."""
        p = self
        while p:
            yield p
            p = p * self

    def inverse(self) -> TruncatedSeries:
        c0 = self.constant_term()
        if not c0:
            raise UsageError("series with zero constant term is not invertible")
        if isinstance(c0, LaurentPoly):
            raise UsageError("inverse needs a rational constant term")
        inv0 = Fraction(1) / c0
        r = self * inv0 - 1
        total = TruncatedSeries.one(self.variables, self.order)
        sign = -1
        for p in r._nilpotent_powers():
            total = total + p * sign
            sign = -sign
        return total * inv0

    def exp(self) -> TruncatedSeries:
        return series_exp(self)

    # specialisation
    def evaluate_q(self, q) -> TruncatedSeries:
        """Replace every LaurentPoly coefficient by its value at a rational q."""
        q = Fraction(q)
        return TruncatedSeries(
            self.variables,
            self.order,
            {
                e: (c.evaluate(q) if isinstance(c, LaurentPoly) else c)
                for e, c in self._terms.items()
            },
        )

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.variables, order, self._terms)

    # serialisation
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self:
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, exps)
                if e
            )
            pieces.append(_signed_term(c, mono))
        return _join_terms(pieces)

    __str__ = to_text

    def __repr__(self):
        return f"TruncatedSeries({self.variables!r}, order={self.order}, {self.to_text()!r})"

    def to_json(self):
        return {
            "variables": list(self.variables),
            "order": self.order,
            "terms": [
                [*exps, c.to_json() if isinstance(c, LaurentPoly) else format_coeff(c)]
                for exps, c in self
            ],
        }

    @classmethod
    def from_json(cls, obj):
        variables = tuple(obj["variables"])
        nv = len(variables)
        terms = {}
        for row in obj["terms"]:
            terms[tuple(int(e) for e in row[:nv])] = parse_coeff(row[nv])
        return cls(variables, int(obj["order"]), terms)


def _grlex_key(exps):
    return (sum(exps), tuple(-e for e in exps))


def _to_dense(a: TruncatedSeries):
    n = a.order
    if len(a.variables) == 1:
        out = [0] * (n + 1)
        for (i,), c in a._terms.items():
            out[i] = c
        return out
    w = n + 1
    out = [0] * (w * w)
    for (i, j), c in a._terms.items():
        out[i * w + j] = c
    return out


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Exact truncated product; both factors must share variables and order."""
    if a.variables != b.variables:
        raise UsageError(f"variable mismatch: {a.variables!r} vs {b.variables!r}")
    if a.order != b.order:
        raise UsageError(f"order mismatch: {a.order} vs {b.order}")
    n = a.order
    if not a._terms or not b._terms:
        return TruncatedSeries(a.variables, n)
    da, db = _to_dense(a), _to_dense(b)
    if len(a.variables) == 1:
        prod = kernels.conv1d(da, db, n)
        terms = {(i,): c for i, c in enumerate(prod) if c}
    else:
        prod = kernels.conv2d(da, db, n)
        w = n + 1
        terms = {(k // w, k % w): c for k, c in enumerate(prod) if c}
    return TruncatedSeries(a.variables, n, terms)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) = sum a^k / k!, for a with zero constant term."""
    if a.constant_term():
        raise UsageError("series_exp needs a zero constant term")
    total = TruncatedSeries.one(a.variables, a.order)
    fact = 1
    for k, p in enumerate(a._nilpotent_powers(), start=1):
        fact *= k
        total = total + p * Fraction(1, fact)
    return total


def binomial_power(k: int, order: int, variables=("t", "s")) -> TruncatedSeries:
    """(1 - ts)^(-k) truncated at ``order`` in each variable, any integer k."""
    if order < 0:
        raise UsageError("order must be >= 0")
    terms = {}
    c = Fraction(1)
    for n in range(order + 1):
        if n:
            c = c * (k + n - 1) / n
        if c:
            terms[(n, n)] = c
    return TruncatedSeries(variables, order, terms)


def q_integer(n: int) -> LaurentPoly:
    """[n] = (q^n - q^-n)/(q - 1/q) = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n <= 0:
        raise UsageError(f"q_integer needs n >= 1, got {n}")
    return LaurentPoly({n - 1 - 2 * j: 1 for j in range(n)})
