"""Exact arithmetic in real quadratic fields Q(sqrt(N)).

Numbers are a + b*sqrt(rad) with rational a, b and squarefree rad.  All
predicates (sign, comparisons, equality) are decided by integer arithmetic;
no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Union

Rational = Fraction

RationalLike = Union[int, Fraction]
QuadLike = Union[int, Fraction, "QuadNum"]


class MixedRadicandError(ValueError):
    """Operation would mix incompatible radicands."""


def split_square(n: int) -> tuple[int, int]:
    """Largest square factor: n = f*f*m with m squarefree; returns (f, m)."""
    if n < 0:
        raise ValueError(f"negative radicand {n}")
    if n == 0:
        return 1, 0
    f = 1
    m = n
    d = 2
    while d * d <= m:
        while m % (d * d) == 0:
            f *= d
            m //= d * d
        d += 1
    return f, m


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


class QuadNum:
    """Element a + b*sqrt(rad) of a real quadratic field.

    Canonical form: rad squarefree >= 2 with b != 0, or rad == 1 with b == 0.
    The constructor normalizes any (a, b, rad) with rad >= 0 into this form.
    """

    __slots__ = ("a", "b", "rad")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, rad: int = 1):
        a = _frac(a)
        b = _frac(b)
        if not isinstance(rad, int):
            raise TypeError(f"radicand must be int, got {type(rad).__name__}")
        f, m = split_square(rad)
        if m <= 1 or b == 0:
            # sqrt(rad) is rational (or irrelevant): fold it into a
            a, b, m = a + b * f * m, Fraction(0), 1
        else:
            b *= f
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "rad", m)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadNum is immutable")

    @classmethod
    def sqrt(cls, n: RationalLike) -> "QuadNum":
        """Exact square root of a non-negative rational."""
        n = _frac(n)
        if n < 0:
            raise ValueError(f"sqrt of negative rational {n}")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, n.denominator), n.numerator * n.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b, self.rad)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.rad

    def _coerce(self, other: QuadLike) -> "QuadNum | None":
        if isinstance(other, QuadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other)
        return None

    def _join_rad(self, other: "QuadNum") -> int:
        if self.rad == 1:
            return other.rad
        if other.rad in (1, self.rad):
            return self.rad
        raise MixedRadicandError(f"radicands {self.rad} and {other.rad} are incompatible")

    def __add__(self, other: QuadLike) -> "QuadNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.a + o.a, self.b + o.b, self._join_rad(o))

    __radd__ = __add__

    def __sub__(self, other: QuadLike) -> "QuadNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.a - o.a, self.b - o.b, self._join_rad(o))

    def __rsub__(self, other: QuadLike) -> "QuadNum":
        return (-self) + other

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b, self.rad)

    def __mul__(self, other: QuadLike) -> "QuadNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self._join_rad(o)
        return QuadNum(self.a * o.a + self.b * o.b * n, self.a * o.b + self.b * o.a, n)

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        nrm = self.norm()
        if nrm == 0:
            # norm vanishes only at zero: rad squarefree >= 2 makes sqrt(rad) irrational
            raise ZeroDivisionError("inverse of zero")
        return QuadNum(self.a / nrm, -self.b / nrm, self.rad)

    def __truediv__(self, other: QuadLike) -> "QuadNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: QuadLike) -> "QuadNum":
        return self.inverse() * other

    def __pow__(self, k: int) -> "QuadNum":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadNum(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: |a| vs |b|*sqrt(rad), squared comparison is exact
        t = self.a * self.a - self.b * self.b * self.rad
        assert t != 0  # a^2 = b^2*rad would make sqrt(rad) rational
        if self.a > 0:
            return 1 if t > 0 else -1
        return -1 if t > 0 else 1

    def __abs__(self) -> "QuadNum":
        return -self if self.sign() < 0 else self

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other) if isinstance(other, (int, Fraction, QuadNum)) else None
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.rad) == (o.a, o.b, o.rad)

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.rad))

    def _cmp(self, other: QuadLike) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadNum with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other: QuadLike) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: QuadLike) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: QuadLike) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: QuadLike) -> bool:
        return self._cmp(other) >= 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"√{self.rad}"
        if abs(self.b) == 1:
            bs = root
        elif self.b.denominator == 1:
            bs = f"{abs(self.b)}{root}"
        else:
            bs = f"({abs(self.b)}){root}"
        head = "" if self.a == 0 else str(self.a)
        sign = "-" if self.b < 0 else ("+" if head else "")
        return f"{head}{sign}{bs}"

    def __repr__(self) -> str:
        return f"QuadNum({self.a!r}, {self.b!r}, {self.rad})"

    def decimal(self, digits: int = 6) -> str:
        """Decimal rendering, display only; exact digits via integer sqrt."""
        guard = digits + 6
        while True:
            scale = 10 ** guard
            lo = isqrt(self.rad * scale * scale)
            # sqrt(rad) in [lo, lo+1]/scale
            ends = [self.a + self.b * Fraction(r, scale) for r in (lo, lo + 1)]
            out = {_round_str(v, digits) for v in ends}
            if len(out) == 1:
                return out.pop()
            guard *= 2  # rounding boundary: tighten the bracket

    def to_json(self) -> dict:
        return {
            "a": [self.a.numerator, self.a.denominator],
            "b": [self.b.numerator, self.b.denominator],
            "rad": self.rad,
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuadNum":
        return cls(Fraction(*data["a"]), Fraction(*data["b"]), data["rad"])


def _round_str(v: Fraction, digits: int) -> str:
    q = 10 ** digits
    n = v.numerator * q * 2 + v.denominator  # round half up at the last digit
    t = n // (2 * v.denominator)
    sign = "-" if t < 0 else ""
    t = abs(t)
    whole, frac = divmod(t, q)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


class RadicalSum:
    """Finite sum q0 + q1*sqrt(N1) + q2*sqrt(N2) + ... with rational qi.

    Supports addition and rational scaling only; the exact sign is decidable
    for at most two distinct irrational radicands.  Used for pairings whose
    value leaves a single quadratic field.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[RationalLike, int]] = ()):
        acc: dict[int, Fraction] = {}
        for coef, rad in terms:
            q = QuadNum(0, _frac(coef), rad) if rad != 1 else QuadNum(_frac(coef))
            for r, c in ((1, q.a), (q.rad, q.b)):
                if c:
                    acc[r] = acc.get(r, Fraction(0)) + c
        object.__setattr__(self, "terms", tuple(sorted((r, c) for r, c in acc.items() if c != 0)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RadicalSum is immutable")

    @classmethod
    def from_quad(cls, q: QuadNum) -> "RadicalSum":
        return cls([(q.a, 1), (q.b, q.rad)])

    def __add__(self, other: "RadicalSum | QuadNum | int | Fraction") -> "RadicalSum":
        if isinstance(other, QuadNum):
            other = RadicalSum.from_quad(other)
        elif isinstance(other, (int, Fraction)):
            other = RadicalSum([(other, 1)])
        elif not isinstance(other, RadicalSum):
            return NotImplemented
        return RadicalSum([(c, r) for r, c in self.terms] + [(c, r) for r, c in other.terms])

    __radd__ = __add__

    def __sub__(self, other: "RadicalSum | QuadNum | int | Fraction") -> "RadicalSum":
        if isinstance(other, (QuadNum, int, Fraction, RadicalSum)):
            return self + (other * -1 if isinstance(other, RadicalSum) else -other)
        return NotImplemented

    def __mul__(self, scalar: RationalLike) -> "RadicalSum":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return RadicalSum([(c * scalar, r) for r, c in self.terms])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RadicalSum) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sign(self) -> int:
        irr = [(r, c) for r, c in self.terms if r != 1]
        rat = next((c for r, c in self.terms if r == 1), Fraction(0))
        if not irr:
            return (rat > 0) - (rat < 0)
        if len(irr) == 1:
            return QuadNum(rat, irr[0][1], irr[0][0]).sign()
        if len(irr) > 2:
            raise MixedRadicandError(f"sign undecided for {len(irr)} distinct radicands")
        (n1, c1), (n2, c2) = irr
        u = QuadNum(rat, c1, n1)
        # compare u against -c2*sqrt(n2); squares settle it within Q(sqrt(n1))
        t = (u * u - c2 * c2 * n2).sign()
        assert t != 0  # equality would force sqrt(n1*n2) rational
        if c2 > 0:
            return 1 if u.sign() >= 0 else -t
        return -1 if u.sign() <= 0 else t

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for r, c in self.terms:
            piece = str(QuadNum(c) if r == 1 else QuadNum(0, c, r))
            if parts and not piece.startswith("-"):
                parts.append("+" + piece)
            else:
                parts.append(piece)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"RadicalSum({[(c, r) for r, c in self.terms]!r})"

    def decimal(self, digits: int = 6) -> str:
        """Decimal rendering, display only."""
        guard = digits + 6
        while True:
            scale = 10 ** guard
            lo = hi = Fraction(0)
            for r, c in self.terms:
                root_lo = isqrt(r * scale * scale)
                vals = [c * Fraction(t, scale) for t in (root_lo, root_lo + 1)]
                lo += min(vals)
                hi += max(vals)
            out = {_round_str(v, digits) for v in (lo, hi)}
            if len(out) == 1:
                return out.pop()
            guard *= 2

    def to_json(self) -> dict:
        return {"terms": [[c.numerator, c.denominator, r] for r, c in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "RadicalSum":
        return cls([(Fraction(num, den), rad) for num, den, rad in data["terms"]])
