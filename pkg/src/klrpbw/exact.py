"""Exact coefficient arithmetic in one variable ``t``.

Three value types live here:

* :class:`LaurentPoly` -- elements of ``Z[t, t^-1]``;
* :class:`RatFun` -- elements of ``Q(t)`` kept in a canonical reduced form, so
  that ``==`` is a syntactic comparison;
* :class:`TruncSeries` -- elements of ``Z((t))`` known up to a cutoff degree.

Polynomial kernels (products, gcds, exact division) are delegated to FLINT's
``fmpz_poly``; everything else is plain Python.  No floating point is used.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from flint import fmpz_poly

__all__ = [
    "LaurentPoly",
    "RatFun",
    "TruncSeries",
    "NotBoundedBelow",
    "DEFAULT_CUTOFF",
    "T",
    "ONE",
    "ZERO",
    "qint",
    "qfactorial",
    "qbinom",
    "bar",
    "series_expand",
    "as_ratfun",
]

DEFAULT_CUTOFF = 20


class NotBoundedBelow(ValueError):
    """The rational function has no expansion in Z((t))."""


def _valuation(p: fmpz_poly) -> int:
    for k, c in enumerate(p.coeffs()):
        if c != 0:
            return k
    raise ValueError("valuation of zero polynomial")


class LaurentPoly:
    """A Laurent polynomial ``t^val * poly(t)`` with ``poly(0) != 0``.

    The zero polynomial is stored as ``val == 0`` and ``poly == 0``.
    Instances are immutable.
    """

    __slots__ = ("_val", "_poly", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, int], int, None] = None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs} if coeffs else {}
        items = [(e, int(c)) for e, c in coeffs.items() if c]
        if not items:
            self._val, self._poly = 0, fmpz_poly()
        else:
            lo = min(e for e, _ in items)
            hi = max(e for e, _ in items)
            dense = [0] * (hi - lo + 1)
            for e, c in items:
                dense[e - lo] += c
            self._val, self._poly = lo, fmpz_poly(dense)
        self._hash = None

    @classmethod
    def _raw(cls, val: int, poly: fmpz_poly) -> "LaurentPoly":
        obj = cls.__new__(cls)
        if poly.is_zero():
            obj._val, obj._poly = 0, poly
        elif poly[0] == 0:
            k = _valuation(poly)
            obj._val, obj._poly = val + k, poly.right_shift(k)
        else:
            obj._val, obj._poly = val, poly
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        if coeff == 0:
            return cls()
        return cls._raw(exp, fmpz_poly([coeff]))

    @classmethod
    def from_poly(cls, poly: fmpz_poly, shift: int = 0) -> "LaurentPoly":
        return cls._raw(shift, fmpz_poly(poly))

    # -- inspection ---------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return {self._val + k: int(c) for k, c in enumerate(self._poly.coeffs()) if c != 0}

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def __bool__(self) -> bool:
        return not self._poly.is_zero()

    @property
    def valuation(self) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self._val

    @property
    def degree(self) -> int:
        if self.is_zero():
            raise ValueError("degree of zero")
        return self._val + self._poly.degree()

    def coefficient(self, exp: int) -> int:
        k = exp - self._val
        if self.is_zero() or k < 0 or k > self._poly.degree():
            return 0
        return int(self._poly[k])

    def is_monomial(self) -> bool:
        return not self.is_zero() and self._poly.degree() == 0

    def is_constant(self) -> bool:
        return self.is_zero() or (self._val == 0 and self._poly.degree() == 0)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._poly.coeffs())

    def is_bar_symmetric(self) -> bool:
        return self == self.bar()

    def split(self) -> tuple[int, fmpz_poly]:
        """Return ``(val, poly)`` with ``self == t^val * poly``."""
        return self._val, self._poly

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b = self._val, other._val
        if a == b:
            return LaurentPoly._raw(a, self._poly + other._poly)
        if a < b:
            return LaurentPoly._raw(a, self._poly + other._poly.left_shift(b - a))
        return LaurentPoly._raw(b, self._poly.left_shift(a - b) + other._poly)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self._val, -self._poly)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if isinstance(other, int):
            return LaurentPoly(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly._raw(self._val, self._poly * other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return LaurentPoly._raw(self._val + other._val, self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial; use RatFun")
        return LaurentPoly._raw(self._val * n, self._poly ** n)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        if self.is_zero():
            return self
        return LaurentPoly._raw(self._val + k, self._poly)

    def bar(self) -> "LaurentPoly":
        """Substitute ``t -> t^-1``."""
        if self.is_zero():
            return self
        rev = fmpz_poly(list(reversed(self._poly.coeffs())))
        return LaurentPoly._raw(-(self._val + self._poly.degree()), rev)

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide."""
        if isinstance(other, int):
            other = LaurentPoly(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self
        q, r = divmod(self._poly, other._poly)
        if not r.is_zero() or q * other._poly != self._poly:
            raise ValueError(f"{other} does not divide {self}")
        return LaurentPoly._raw(self._val - other._val, q)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.divexact(self)
        except ValueError:
            return False
        return True

    def truncate_positive(self) -> "LaurentPoly":
        """Keep only the terms of strictly positive degree."""
        return LaurentPoly({e: c for e, c in self.coeffs.items() if e > 0})

    def __call__(self, x):
        """Evaluate at a rational (or integer) point."""
        x = Fraction(x)
        return sum((Fraction(c) * x ** e for e, c in self.coeffs.items()), Fraction(0))

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(other)
        if isinstance(other, LaurentPoly):
            return self._val == other._val and self._poly == other._poly
        if isinstance(other, RatFun):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._val, tuple(int(c) for c in self._poly.coeffs())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                power = "t" if e == 1 else f"t^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


T = LaurentPoly.monomial(1)
ONE = LaurentPoly(1)
ZERO = LaurentPoly()

Scalar = Union[int, LaurentPoly, "RatFun"]


class RatFun:
    """An element of ``Q(t)`` in canonical form.

    The canonical form is ``t^k * N(t) / D(t)`` with ``N, D`` coprime in
    ``Z[t]``, ``D(0) != 0`` and the leading coefficient of ``D`` positive.
    ``numerator`` is the Laurent polynomial ``t^k N`` and ``denominator`` is
    ``D``, which therefore has minimal exponent 0.
    """

    __slots__ = ("numerator", "denominator", "_hash")

    def __init__(self, num: Union[int, LaurentPoly] = 0, den: Union[int, LaurentPoly] = 1):
        if isinstance(num, int):
            num = LaurentPoly(num)
        if isinstance(den, int):
            den = LaurentPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if num.is_zero():
            self.numerator, self.denominator = ZERO, ONE
            return
        nv, npoly = num.split()
        dv, dpoly = den.split()
        if not (dpoly.degree() == 0 and dpoly[0] == 1):
            g = npoly.gcd(dpoly)
            if not g.is_one():
                npoly = npoly // g
                dpoly = dpoly // g
        if dpoly.leading_coefficient() < 0:
            npoly, dpoly = -npoly, -dpoly
        self.numerator = LaurentPoly._raw(nv - dv, npoly)
        self.denominator = LaurentPoly._raw(0, dpoly)

    @classmethod
    def _exact(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFun":
        obj = cls.__new__(cls)
        obj.numerator, obj.denominator, obj._hash = num, den, None
        return obj

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFun":
        return cls._exact(p, ONE) if not p.is_zero() else cls._exact(ZERO, ONE)

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __bool__(self) -> bool:
        return not self.numerator.is_zero()

    def is_laurent(self) -> bool:
        return self.denominator == ONE

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.numerator

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, LaurentPoly):
            return RatFun.from_laurent(x)
        if isinstance(x, int):
            return RatFun.from_laurent(LaurentPoly(x))
        if isinstance(x, Fraction):
            return RatFun(x.numerator, x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFun")

    def __add__(self, other):
        try:
            o = RatFun._coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.denominator == o.denominator:
            return RatFun(self.numerator + o.numerator, self.denominator)
        return RatFun(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._exact(-self.numerator, self.denominator)

    def __sub__(self, other):
        try:
            o = RatFun._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatFun._coerce(other) - self

    def __mul__(self, other):
        try:
            o = RatFun._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFun()
        if self.is_laurent() and o.is_laurent():
            return RatFun._exact(self.numerator * o.numerator, ONE)
        return RatFun(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFun._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.numerator * o.denominator, self.denominator * o.numerator)

    def __rtruediv__(self, other):
        return RatFun._coerce(other) / self

    def __pow__(self, n: int) -> "RatFun":
        if n >= 0:
            return RatFun._exact(self.numerator ** n, self.denominator ** n) if n else RatFun(1)
        return RatFun(1) / (self ** (-n))

    def bar(self) -> "RatFun":
        return RatFun(self.numerator.bar(), self.denominator.bar())

    def __call__(self, x):
        return self.numerator(x) / self.denominator(x)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        try:
            o = RatFun._coerce(other)
        except TypeError:
            return NotImplemented
        return self.numerator == o.numerator and self.denominator == o.denominator

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.numerator, self.denominator))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"


def as_ratfun(x: Scalar) -> RatFun:
    return RatFun._coerce(x)


def bar(f):
    """The involution ``t -> t^-1`` on Laurent polynomials and rational functions."""
    if isinstance(f, int):
        return f
    return f.bar()


def qint(n: int) -> LaurentPoly:
    """Balanced quantum integer ``[n] = t^(n-1) + t^(n-3) + ... + t^(1-n)``."""
    if n < 0:
        raise ValueError("qint is defined for n >= 0")
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


def qfactorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("qfactorial is defined for n >= 0")
    out = ONE
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


def qbinom(n: int, k: int) -> LaurentPoly:
    if not 0 <= k <= n:
        return ZERO
    return qfactorial(n).divexact(qfactorial(k) * qfactorial(n - k))


class TruncSeries:
    """An element of ``Z((t))`` known exactly for degrees ``<= cutoff``.

    ``coeffs[j]`` is the coefficient of ``t^(lowest + j)``.
    """

    __slots__ = ("lowest", "coeffs", "cutoff")

    def __init__(self, lowest: int, coeffs: Iterable[int], cutoff: int):
        coeffs = [int(c) for c in coeffs][: max(0, cutoff - lowest + 1)]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lowest += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.lowest = lowest if coeffs else cutoff + 1
        self.coeffs = tuple(coeffs)
        self.cutoff = cutoff

    def coefficient(self, k: int) -> int:
        if k > self.cutoff:
            raise ValueError(f"degree {k} beyond cutoff {self.cutoff}")
        j = k - self.lowest
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def as_dict(self) -> dict[int, int]:
        return {self.lowest + j: c for j, c in enumerate(self.coeffs) if c}

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def truncate(self, cutoff: int) -> "TruncSeries":
        return TruncSeries(self.lowest, self.coeffs, min(cutoff, self.cutoff))

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        cutoff = min(self.cutoff, other.cutoff)
        lo = min(self.lowest, other.lowest)
        out = {}
        for s in (self, other):
            for e, c in s.as_dict().items():
                if e <= cutoff:
                    out[e] = out.get(e, 0) + c
        return TruncSeries._from_dict(out, cutoff, lo)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.lowest, [-c for c in self.coeffs], self.cutoff)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        lo_a = self.lowest if self.coeffs else self.cutoff + 1
        lo_b = other.lowest if other.coeffs else other.cutoff + 1
        cutoff = min(self.cutoff + lo_b, other.cutoff + lo_a)
        out: dict[int, int] = {}
        for ea, ca in self.as_dict().items():
            for eb, cb in other.as_dict().items():
                if ea + eb <= cutoff:
                    out[ea + eb] = out.get(ea + eb, 0) + ca * cb
        return TruncSeries._from_dict(out, cutoff, lo_a + lo_b)

    @staticmethod
    def _from_dict(d: Mapping[int, int], cutoff: int, lo: int) -> "TruncSeries":
        d = {e: c for e, c in d.items() if c}
        if not d:
            return TruncSeries(cutoff + 1, [], cutoff)
        lo = min(d)
        hi = max(d)
        return TruncSeries(lo, [d.get(e, 0) for e in range(lo, hi + 1)], cutoff)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, cutoff: int) -> "TruncSeries":
        return cls._from_dict({e: c for e, c in p.coeffs.items() if e <= cutoff}, cutoff, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        cutoff = min(self.cutoff, other.cutoff)
        return self.truncate(cutoff).as_dict() == other.truncate(cutoff).as_dict()

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*t^{e}" for e, c in sorted(self.as_dict().items())) or "0"
        return f"TruncSeries({terms} + O(t^{self.cutoff + 1}))"


def series_expand(f: Scalar, cutoff: int = DEFAULT_CUTOFF) -> TruncSeries:
    """Expand ``f`` in ``Z((t))`` exactly up to degree ``cutoff``.

    >>> series_expand(RatFun(1, LaurentPoly({0: 1, 2: -1})), 6)
    TruncSeries(1*t^0 + 1*t^2 + 1*t^4 + 1*t^6 + O(t^7))
    """
    f = as_ratfun(f)
    if f.is_zero():
        return TruncSeries(cutoff + 1, [], cutoff)
    nv, npoly = f.numerator.split()
    dpoly = f.denominator.split()[1]
    d0 = int(dpoly[0])
    if d0 not in (1, -1):
        raise NotBoundedBelow(
            f"denominator {f.denominator} has non-unit constant term; no Z((t)) expansion"
        )
    length = cutoff - nv + 1
    if length <= 0:
        return TruncSeries(cutoff + 1, [], cutoff)
    num = [int(c) for c in npoly.coeffs()] + [0] * length
    den = [int(c) for c in dpoly.coeffs()]
    out = []
    for k in range(length):
        acc = num[k] - sum(den[j] * out[k - j] for j in range(1, min(k, len(den) - 1) + 1))
        out.append(acc * d0)
    return TruncSeries(nv, out, cutoff)
