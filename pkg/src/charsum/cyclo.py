"""Exact arithmetic in the cyclotomic field ``Q(zeta_p)``.

Numbers are stored in the power basis ``1, zeta, ..., zeta^(p-2)`` with
:class:`fractions.Fraction` coordinates, always reduced by
``zeta^(p-1) = -1 - zeta - ... - zeta^(p-2)``, so equality is coordinate
equality. Floating point only appears in :func:`complex_embed`.
"""
import functools
import math
import typing as t
from fractions import Fraction

import mpmath

#: Working precision of complex embeddings, in bits.
DEFAULT_PRECISION = 128

#: Lowest accepted working precision, that of a double.
MIN_PRECISION = 53

Rational = t.Union[int, Fraction]
Valuation = t.Union[Fraction, float]

INFINITY = math.inf


def format_rational(x: Rational) -> str:
    """Serialize a rational as ``"num/den"`` in lowest terms."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _reduce(p: int, powers: t.Sequence[Rational]) -> t.Tuple[Fraction, ...]:
    folded = [Fraction(0)] * p

    for j, c in enumerate(powers):
        if c:
            folded[j % p] += c

    top = folded[p - 1]
    return tuple(c - top for c in folded[: p - 1])


class CycNum:
    """An element ``sum(c_j * zeta_p^j for j < p - 1)`` of ``Q(zeta_p)``.

    :param p: the prime.
    :param powers: coefficients of ``1, zeta, zeta^2, ...`` in any length;
        they are folded with ``zeta^p = 1`` and reduced.
    """

    __slots__ = ("p", "coords")

    def __init__(self, p: int, powers: t.Sequence[Rational]) -> None:
        self.p = p
        self.coords = _reduce(p, powers)

    @classmethod
    def from_int(cls, p: int, value: Rational) -> "CycNum":
        return cls(p, [value])

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycNum":
        """``zeta_p^k``."""
        powers = [0] * p
        powers[k % p] = 1
        return cls(p, powers)

    @classmethod
    def zero(cls, p: int) -> "CycNum":
        return cls(p, [])

    @classmethod
    def one(cls, p: int) -> "CycNum":
        return cls(p, [1])

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def _coerce(self, other: t.Any) -> "CycNum":
        if isinstance(other, CycNum):
            if other.p != self.p:
                raise ValueError(
                    f"cannot combine Q(zeta_{self.p}) and Q(zeta_{other.p})"
                )

            return other

        if isinstance(other, (int, Fraction)):
            return CycNum.from_int(self.p, other)

        return NotImplemented  # type: ignore

    def __add__(self, other: t.Any) -> "CycNum":
        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        return CycNum(self.p, [x + y for x, y in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.p, [-x for x in self.coords])

    def __sub__(self, other: t.Any) -> "CycNum":
        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        return CycNum(self.p, [x - y for x, y in zip(self.coords, other.coords)])

    def __rsub__(self, other: t.Any) -> "CycNum":
        return -self + other

    def __mul__(self, other: t.Any) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            return CycNum(self.p, [x * other for x in self.coords])

        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        p = self.p
        prod = [Fraction(0)] * p

        for i, x in enumerate(self.coords):
            if not x:
                continue

            for j, y in enumerate(other.coords):
                if y:
                    prod[(i + j) % p] += x * y

        return CycNum(p, prod)

    __rmul__ = __mul__

    def conjugate(self, u: int) -> "CycNum":
        """The image under the automorphism ``zeta -> zeta^u``."""
        if u % self.p == 0:
            raise ValueError(f"{u} is not a unit mod {self.p}")

        powers = [Fraction(0)] * self.p

        for j, c in enumerate(self.coords):
            powers[(j * u) % self.p] += c

        return CycNum(self.p, powers)

    def norm(self) -> Fraction:
        """The rational norm, the product of all conjugates."""
        total = CycNum.one(self.p)

        for u in range(1, self.p):
            total = total * self.conjugate(u)

        return total.coords[0]

    def inverse(self) -> "CycNum":
        """Product of the other conjugates over the rational norm."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero in Q(zeta_p)")

        total = CycNum.one(self.p)

        for u in range(2, self.p):
            total = total * self.conjugate(u)

        return total * (1 / (self * total).coords[0])

    def __truediv__(self, other: t.Any) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")

            return CycNum(self.p, [x / other for x in self.coords])

        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        return self * other.inverse()

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)

        result = CycNum.one(self.p)
        base = self

        while e:
            if e & 1:
                result = result * base

            e >>= 1

            if e:
                base = base * base

        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_int(self.p, other)

        if not isinstance(other, CycNum):
            return NotImplemented

        return self.p == other.p and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.p, self.coords))

    def __reduce__(self) -> t.Any:
        return CycNum, (self.p, self.coords)

    def to_json(self) -> t.List[str]:
        """Coordinates ``c_0, c_1, ...`` as ``"num/den"`` strings."""
        return [format_rational(c) for c in self.coords]

    def __str__(self) -> str:
        parts = []

        for j, c in enumerate(self.coords):
            if not c:
                continue

            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{j}")

        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        return f"<CycNum {self} in Q(zeta_{self.p})>"


def _vp(n: int, p: int) -> int:
    v = 0

    while n % p == 0:
        n //= p
        v += 1

    return v


@functools.lru_cache(maxsize=None)
def _cofactor(p: int) -> CycNum:
    # prod((1 - zeta^j) for j in 2..p-1); times (1 - zeta) it is p.
    total = CycNum.one(p)

    for j in range(2, p):
        total = total * (1 - CycNum.zeta(p, j))

    return total


def ord(x: CycNum) -> Valuation:
    """The valuation of ``x`` normalized by ``ord(p) = 1``.

    Write ``x = z / N`` with ``z`` integral in the power basis. Then
    ``ord(x) = v(z) / (p - 1) - v_p(N)`` where ``v(z)`` counts how often
    ``1 - zeta`` divides ``z``. ``z`` is divisible by ``1 - zeta`` iff its
    coordinate sum is divisible by ``p``, and the division is a
    multiplication by :func:`_cofactor` followed by an exact division by
    ``p``. Returns :data:`INFINITY` for zero.
    """
    if x.is_zero:
        return INFINITY

    p = x.p
    denominator = 1

    for c in x.coords:
        denominator = denominator * c.denominator // math.gcd(
            denominator, c.denominator
        )

    z = [int(c * denominator) for c in x.coords]
    cofactor = _cofactor(p)
    v = 0

    while sum(z) % p == 0:
        w = CycNum(p, z) * cofactor
        z = [int(c) // p for c in w.coords]
        v += 1

    return Fraction(v, p - 1) - _vp(denominator, p)


def ord_q(x: CycNum, a: int) -> Valuation:
    """The valuation normalized by ``ord_q(q) = 1`` for ``q = p^a``."""
    if a < 1:
        raise ValueError("extension degree must be positive")

    v = ord(x)
    return v if v == INFINITY else v / a


def is_algebraic_integer(x: CycNum) -> bool:
    """The power basis generates the ring of integers of ``Q(zeta_p)``,
    so integrality is integrality of every coordinate.
    """
    return all(c.denominator == 1 for c in x.coords)


def complex_embed(
    x: CycNum, k: int = 1, precision: int = DEFAULT_PRECISION
) -> mpmath.mpc:
    """Evaluate ``x`` at ``zeta -> exp(2 pi i k / p)`` with ``precision``
    bits of working precision.
    """
    if k % x.p == 0:
        raise ValueError(f"{k} is not a unit mod {x.p}")

    with mpmath.workprec(precision):
        root = mpmath.expjpi(mpmath.mpf(2 * k) / x.p)
        total = mpmath.mpc(0)
        power = mpmath.mpc(1)

        for c in x.coords:
            if c:
                total += power * mpmath.mpf(c.numerator) / c.denominator

            power *= root

        return +total
