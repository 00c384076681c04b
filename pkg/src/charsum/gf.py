"""Finite fields
=============

Exact arithmetic in ``F_p``, ``F_q = F_p[t]/(g)`` and extension towers
``F_{q^i} = F_q[s]/(h)``. Extensions are always built over ``F_q`` and
never over ``F_p`` directly, which makes the relative trace a plain
coordinate read-off and needs no choice of embedding.

.. code-block:: python

    from charsum.gf import build_field, extend, relative_trace

    f4 = build_field(2, 2)
    f16 = extend(f4, 2)
    w = f16.element(5)
    relative_trace(w)  # an element of f4

Field descriptions and elements are immutable and may be shared freely
between worker processes.
"""
import functools
import itertools
import typing as t

from sympy import factorint
from sympy import isprime

from ._internal import _log
from .exceptions import BudgetExceeded
from .exceptions import DimensionMismatch
from .exceptions import InvalidField

#: Default number of elements :func:`enumerate_field` may yield.
DEFAULT_ENUMERATION_BUDGET = 10**9

_Coeff = t.Any


class _PrimeCoeffs:
    """Coefficient arithmetic for polynomials over ``F_p``, on ints."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.zero = 0
        self.one = 1
        self.size = p

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.p

    def inv(self, x: int) -> int:
        return pow(x, self.p - 2, self.p)

    def is_zero(self, x: int) -> bool:
        return x % self.p == 0

    def elements(self) -> t.Iterator[int]:
        return iter(range(self.p))


class _FieldCoeffs:
    """Coefficient arithmetic for polynomials over a constructed field,
    on :class:`FieldElement`.
    """

    def __init__(self, field: "FieldDesc") -> None:
        self.field = field
        self.zero = field.zero
        self.one = field.one
        self.size = field.order

    def add(self, x: "FieldElement", y: "FieldElement") -> "FieldElement":
        return x + y

    def sub(self, x: "FieldElement", y: "FieldElement") -> "FieldElement":
        return x - y

    def mul(self, x: "FieldElement", y: "FieldElement") -> "FieldElement":
        return x * y

    def inv(self, x: "FieldElement") -> "FieldElement":
        return x.inverse()

    def is_zero(self, x: "FieldElement") -> bool:
        return x.is_zero

    def elements(self) -> t.Iterator["FieldElement"]:
        return (self.field.element(k) for k in range(self.field.order))


# Univariate polynomials over a coefficient ring are lists, constant first.


def _ptrim(ops: t.Any, a: t.List[_Coeff]) -> t.List[_Coeff]:
    a = list(a)

    while a and ops.is_zero(a[-1]):
        a.pop()

    return a


def _pmod(ops: t.Any, a: t.List[_Coeff], m: t.List[_Coeff]) -> t.List[_Coeff]:
    a = _ptrim(ops, a)
    m = _ptrim(ops, m)
    lead_inv = ops.inv(m[-1])

    while len(a) >= len(m):
        factor = ops.mul(a[-1], lead_inv)
        shift = len(a) - len(m)

        for j, c in enumerate(m):
            a[shift + j] = ops.sub(a[shift + j], ops.mul(factor, c))

        a = _ptrim(ops, a)

    return a


def _pdivmod(
    ops: t.Any, a: t.List[_Coeff], m: t.List[_Coeff]
) -> t.Tuple[t.List[_Coeff], t.List[_Coeff]]:
    a = _ptrim(ops, a)
    m = _ptrim(ops, m)
    lead_inv = ops.inv(m[-1])
    quotient = [ops.zero] * max(len(a) - len(m) + 1, 0)

    while len(a) >= len(m):
        factor = ops.mul(a[-1], lead_inv)
        shift = len(a) - len(m)
        quotient[shift] = factor

        for j, c in enumerate(m):
            a[shift + j] = ops.sub(a[shift + j], ops.mul(factor, c))

        a = _ptrim(ops, a)

    return _ptrim(ops, quotient), a


def _pmul(ops: t.Any, a: t.List[_Coeff], b: t.List[_Coeff]) -> t.List[_Coeff]:
    if not a or not b:
        return []

    rv = [ops.zero] * (len(a) + len(b) - 1)

    for i, x in enumerate(a):
        if ops.is_zero(x):
            continue

        for j, y in enumerate(b):
            rv[i + j] = ops.add(rv[i + j], ops.mul(x, y))

    return _ptrim(ops, rv)


def _ppowmod(
    ops: t.Any, a: t.List[_Coeff], e: int, m: t.List[_Coeff]
) -> t.List[_Coeff]:
    result = [ops.one]
    base = _pmod(ops, a, m)

    while e:
        if e & 1:
            result = _pmod(ops, _pmul(ops, result, base), m)

        e >>= 1

        if e:
            base = _pmod(ops, _pmul(ops, base, base), m)

    return result


def _pgcd(ops: t.Any, a: t.List[_Coeff], b: t.List[_Coeff]) -> t.List[_Coeff]:
    a = _ptrim(ops, a)
    b = _ptrim(ops, b)

    while b:
        a, b = b, _pmod(ops, a, b)

    return a


def _is_irreducible(ops: t.Any, g: t.List[_Coeff]) -> bool:
    """Rabin's test: a polynomial of degree k over a field with Q elements
    is irreducible iff it shares no factor with ``s^{Q^j} - s`` for every
    ``j <= k / 2``.
    """
    g = _ptrim(ops, g)
    k = len(g) - 1

    if k < 1:
        return False

    if k == 1:
        return True

    s = [ops.zero, ops.one]
    power = s

    for _ in range(k // 2):
        power = _ppowmod(ops, power, ops.size, g)
        diff = list(power) + [ops.zero] * max(0, 2 - len(power))
        diff[1] = ops.sub(diff[1], ops.one)

        if len(_pgcd(ops, g, diff)) > 1:
            return False

    return True


def _find_irreducible(ops: t.Any, degree: int) -> t.List[_Coeff]:
    """The first monic irreducible of the given degree, iterating the lower
    coefficients in lexicographic order (constant term slowest).
    """
    for lower in itertools.product(list(ops.elements()), repeat=degree):
        candidate = list(lower) + [ops.one]

        if _is_irreducible(ops, candidate):
            return candidate

    raise AssertionError(f"no irreducible polynomial of degree {degree}")


class FieldElement:
    """An element of a :class:`FieldDesc` or :class:`ExtFieldDesc`.

    ``coords`` are the coordinates in the power basis of the owning field
    over its coefficient field: ints mod ``p`` for :class:`FieldDesc`,
    base field elements for :class:`ExtFieldDesc`. Elements are values;
    arithmetic returns new elements. Ints are coerced through the prime
    field.
    """

    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: "_Field", coords: t.Sequence[_Coeff]) -> None:
        if len(coords) != field.degree:
            raise DimensionMismatch(
                f"expected {field.degree} coordinates, got {len(coords)}"
            )

        self.field = field
        self.coords = tuple(coords)
        self._hash: t.Optional[int] = None

    @property
    def owner(self) -> "_Field":
        return self.field

    @property
    def is_zero(self) -> bool:
        return all(self.field._coeffs.is_zero(c) for c in self.coords)

    @property
    def is_one(self) -> bool:
        return self == self.field.one

    def _coerce(self, other: t.Any) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                try:
                    return self.field.embed(other)
                except TypeError:
                    return NotImplemented  # type: ignore

            return other

        if isinstance(other, int):
            return self.field.from_int(other)

        return NotImplemented  # type: ignore

    def __add__(self, other: t.Any) -> "FieldElement":
        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        ops = self.field._coeffs
        return FieldElement(
            self.field, [ops.add(x, y) for x, y in zip(self.coords, other.coords)]
        )

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        ops = self.field._coeffs
        return FieldElement(self.field, [ops.sub(ops.zero, x) for x in self.coords])

    def __sub__(self, other: t.Any) -> "FieldElement":
        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        ops = self.field._coeffs
        return FieldElement(
            self.field, [ops.sub(x, y) for x, y in zip(self.coords, other.coords)]
        )

    def __rsub__(self, other: t.Any) -> "FieldElement":
        return -self + other

    def __mul__(self, other: t.Any) -> "FieldElement":
        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        return self.field._mul(self, other)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero in a finite field")

        return self ** (self.field.order - 2)

    def __truediv__(self, other: t.Any) -> "FieldElement":
        other = self._coerce(other)

        if other is NotImplemented:
            return NotImplemented  # type: ignore

        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)

        result = self.field.one
        base = self

        while e:
            if e & 1:
                result = result * base

            e >>= 1

            if e:
                base = base * base

        return result

    def frobenius(self, k: int = 1) -> "FieldElement":
        """``x^{p^k}``."""
        return self ** (self.field.characteristic**k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.field.from_int(other)

        if not isinstance(other, FieldElement):
            return NotImplemented

        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.coords))

        return self._hash

    def __reduce__(self) -> t.Any:
        return FieldElement, (self.field, self.coords)

    def __repr__(self) -> str:
        return f"<FieldElement {self} in {self.field}>"

    def __str__(self) -> str:
        if self.field.degree == 1:
            return str(self.coords[0])

        return f"({','.join(str(c) for c in self.coords)})"


class _Field:
    """Shared behaviour of :class:`FieldDesc` and :class:`ExtFieldDesc`:
    a quotient ``K[s]/(h)`` of a polynomial ring over a coefficient field.
    """

    degree: int
    order: int
    characteristic: int
    _coeffs: t.Any
    _modulus: t.Optional[t.List[_Coeff]]

    def _key(self) -> t.Tuple[t.Any, ...]:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _Field):
            return NotImplemented

        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @functools.cached_property
    def zero(self) -> FieldElement:
        return FieldElement(self, [self._coeffs.zero] * self.degree)

    @functools.cached_property
    def one(self) -> FieldElement:
        return FieldElement(
            self, [self._coeffs.one] + [self._coeffs.zero] * (self.degree - 1)
        )

    @property
    def generator(self) -> FieldElement:
        """The class of ``t`` (or ``s``), the power basis generator."""
        if self.degree == 1:
            raise ValueError("a degree one field has no power basis generator")

        return FieldElement(
            self,
            [self._coeffs.zero, self._coeffs.one]
            + [self._coeffs.zero] * (self.degree - 2),
        )

    @property
    def prime_degree(self) -> int:
        """The degree over the prime field."""
        raise NotImplementedError

    def from_int(self, k: int) -> FieldElement:
        raise NotImplementedError

    def embed(self, x: FieldElement) -> FieldElement:
        raise NotImplementedError

    def _mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        ops = self._coeffs

        if self._modulus is None:
            return FieldElement(self, [ops.mul(x.coords[0], y.coords[0])])

        prod = _pmul(ops, list(x.coords), list(y.coords))
        rem = _pmod(ops, prod, self._modulus)
        rem += [ops.zero] * (self.degree - len(rem))
        return FieldElement(self, rem)

    def _coeff_index(self, c: _Coeff) -> int:
        raise NotImplementedError

    def _coeff_element(self, k: int) -> _Coeff:
        raise NotImplementedError

    def index(self, x: FieldElement) -> int:
        """Position of ``x`` in the lexicographic enumeration order."""
        size = self._coeffs.size
        rv = 0

        for c in x.coords:
            rv = rv * size + self._coeff_index(c)

        return rv

    def element(self, k: int) -> FieldElement:
        """The element at position ``k`` of the enumeration order."""
        if not 0 <= k < self.order:
            raise IndexError(f"{k} is not an element index of {self}")

        size = self._coeffs.size
        digits = []

        for _ in range(self.degree):
            k, r = divmod(k, size)
            digits.append(self._coeff_element(r))

        return FieldElement(self, digits[::-1])

    def __iter__(self) -> t.Iterator[FieldElement]:
        return (self.element(k) for k in range(self.order))

    def __len__(self) -> int:
        return self.order

    @functools.cached_property
    def _prime_trace_of_basis(self) -> t.List[t.List[int]]:
        # Tr down to F_p of every F_p-basis element, by the definition.
        rv = []
        m = self.prime_degree

        for j in range(self.degree):
            row = []

            for k in range(self._coeffs_prime_degree):
                basis = self._basis_element(j, k)
                total = self.zero

                for _ in range(m):
                    total = total + basis
                    basis = basis.frobenius()

                row.append(_prime_value(total))

            rv.append(row)

        return rv

    @property
    def _coeffs_prime_degree(self) -> int:
        raise NotImplementedError

    def _basis_element(self, j: int, k: int) -> FieldElement:
        raise NotImplementedError

    def primitive_element(self) -> FieldElement:
        """The first element in enumeration order that generates the
        multiplicative group.
        """
        return self._primitive_element

    @functools.cached_property
    def _primitive_element(self) -> FieldElement:
        group_order = self.order - 1

        if group_order == 1:
            return self.one

        cofactors = [group_order // r for r in factorint(group_order)]

        for k in range(1, self.order):
            x = self.element(k)

            if all(not (x**c).is_one for c in cofactors):
                _log("debug", f"primitive element of {self}: {x}")
                return x

        raise AssertionError(f"{self} has no primitive element")

    def pth_root(self, x: FieldElement) -> FieldElement:
        """The unique ``y`` with ``y^p = x``, namely ``x^{p^{m-1}}`` where
        ``p^m`` is the field order.
        """
        return x ** (self.characteristic ** (self.prime_degree - 1))


def _prime_value(x: FieldElement) -> int:
    """Read an element known to lie in ``F_p`` as an int."""
    while isinstance(x, FieldElement):
        if any(not x.field._coeffs.is_zero(c) for c in x.coords[1:]):
            raise AssertionError(f"{x!r} does not lie in the prime field")

        x = x.coords[0]

    return x


class FieldDesc(_Field):
    """The field ``F_q`` with ``q = p^a``, realized as ``F_p[t]/(g)``.

    :param p: the characteristic, a prime.
    :param a: the degree over ``F_p``.
    :param modulus: coefficients of the monic irreducible ``g``, constant
        first, length ``a + 1``. ``None`` for ``a = 1``.
    """

    def __init__(
        self, p: int, a: int = 1, modulus: t.Optional[t.Sequence[int]] = None
    ) -> None:
        if not isprime(p):
            raise InvalidField(f"{p} is not prime")

        if a < 1:
            raise InvalidField(f"extension degree must be positive, got {a}")

        self.p = p
        self.a = a
        self.degree = a
        self.q = self.order = p**a
        self.characteristic = p
        self._coeffs = _PrimeCoeffs(p)

        if a == 1:
            modulus = None
        elif modulus is None:
            modulus = _find_irreducible(self._coeffs, a)
            _log("debug", f"F_{self.q}: modulus {modulus}")
        else:
            modulus = [c % p for c in modulus]

            if len(modulus) != a + 1 or modulus[-1] != 1:
                raise InvalidField(f"modulus must be monic of degree {a}")

            if not _is_irreducible(self._coeffs, modulus):
                raise InvalidField(f"modulus {modulus} is reducible over F_{p}")

        self.modulus: t.Optional[t.Tuple[int, ...]] = (
            None if modulus is None else tuple(modulus)
        )
        self._modulus = None if modulus is None else list(modulus)

    def _key(self) -> t.Tuple[t.Any, ...]:
        return (self.p, self.a, self.modulus)

    def __reduce__(self) -> t.Any:
        return FieldDesc, (self.p, self.a, self.modulus)

    @property
    def prime_degree(self) -> int:
        return self.a

    @property
    def _coeffs_prime_degree(self) -> int:
        return 1

    def _basis_element(self, j: int, k: int) -> FieldElement:
        coords = [0] * self.degree
        coords[j] = 1
        return FieldElement(self, coords)

    def from_int(self, k: int) -> FieldElement:
        return FieldElement(self, [k % self.p] + [0] * (self.a - 1))

    def embed(self, x: FieldElement) -> FieldElement:
        if x.field == self:
            return x

        raise TypeError(f"cannot embed {x!r} into {self}")

    def _coeff_index(self, c: int) -> int:
        return c

    def _coeff_element(self, k: int) -> int:
        return k

    def __repr__(self) -> str:
        return f"<FieldDesc F_{self.q} modulus={self.modulus}>"

    def __str__(self) -> str:
        return f"F_{self.q}"


class ExtFieldDesc(_Field):
    """The field ``F_{q^i} = F_q[s]/(h)`` over a :class:`FieldDesc`.

    ``extend(base, 1)`` is a wrapper with ``h = s`` whose elements are
    single base field coordinates.
    """

    def __init__(
        self,
        base: FieldDesc,
        i: int,
        ext_modulus: t.Optional[t.Sequence[FieldElement]] = None,
    ) -> None:
        if i < 1:
            raise InvalidField(f"extension degree must be positive, got {i}")

        self.base = base
        self.i = i
        self.degree = i
        self.order = base.order**i
        self.characteristic = base.characteristic
        self._coeffs = _FieldCoeffs(base)

        if i == 1:
            modulus = [base.zero, base.one]
        elif ext_modulus is None:
            modulus = _find_irreducible(self._coeffs, i)
            _log("debug", f"F_{self.order} over {base}: modulus {modulus}")
        else:
            modulus = [base.embed(c) for c in ext_modulus]

            if len(modulus) != i + 1 or not modulus[-1].is_one:
                raise InvalidField(f"extension modulus must be monic of degree {i}")

            if not _is_irreducible(self._coeffs, modulus):
                raise InvalidField(f"extension modulus is reducible over {base}")

        self.ext_modulus: t.Tuple[FieldElement, ...] = tuple(modulus)
        self._modulus = None if i == 1 else list(modulus)

    def _key(self) -> t.Tuple[t.Any, ...]:
        return (self.base, self.i, self.ext_modulus)

    def __reduce__(self) -> t.Any:
        return ExtFieldDesc, (self.base, self.i, self.ext_modulus)

    @property
    def prime_degree(self) -> int:
        return self.base.a * self.i

    @property
    def _coeffs_prime_degree(self) -> int:
        return self.base.a

    def _basis_element(self, j: int, k: int) -> FieldElement:
        coords = [self.base.zero] * self.degree
        coords[j] = self.base._basis_element(k, 0)
        return FieldElement(self, coords)

    def from_int(self, k: int) -> FieldElement:
        return self.embed(self.base.from_int(k))

    def embed(self, x: FieldElement) -> FieldElement:
        """The canonical inclusion ``F_q -> F_q[s]/(h)``."""
        if x.field == self:
            return x

        if x.field != self.base:
            raise TypeError(f"cannot embed {x!r} into {self}")

        return FieldElement(self, [x] + [self.base.zero] * (self.i - 1))

    def _coeff_index(self, c: FieldElement) -> int:
        return self.base.index(c)

    def _coeff_element(self, k: int) -> FieldElement:
        return self.base.element(k)

    @functools.cached_property
    def _relative_trace_of_basis(self) -> t.List[FieldElement]:
        # Tr_{F_{q^i}/F_q}(s^j) = sum of the q-power conjugates.
        q = self.base.order
        rv = []

        for j in range(self.i):
            coords = [self.base.zero] * self.i
            coords[j] = self.base.one
            x = FieldElement(self, coords)
            total = self.zero

            for _ in range(self.i):
                total = total + x
                x = x**q

            if any(not c.is_zero for c in total.coords[1:]):
                raise AssertionError(f"trace of s^{j} is not in the base field")

            rv.append(total.coords[0])

        return rv

    def __repr__(self) -> str:
        return f"<ExtFieldDesc F_{self.order} over {self.base}>"

    def __str__(self) -> str:
        return f"F_{self.base.q}^{self.i}"


def build_field(
    p: int, a: int = 1, modulus: t.Optional[t.Sequence[int]] = None
) -> FieldDesc:
    """Build ``F_{p^a}``. Without a modulus the first monic irreducible of
    degree ``a`` in lexicographic coefficient order is used, so the same
    field is built on every run.

    :raises InvalidField: if ``p`` is not prime or ``modulus`` is not a
        monic irreducible of degree ``a``.
    """
    return FieldDesc(p, a, modulus)


@functools.lru_cache(maxsize=None)
def extend(field: FieldDesc, i: int) -> ExtFieldDesc:
    """Realize ``F_{q^i}`` as ``F_q[s]/(h_i)``, with ``h_i`` chosen by the
    same deterministic search as :func:`build_field`.
    """
    return ExtFieldDesc(field, i)


def relative_trace(x: FieldElement) -> FieldElement:
    """``Tr_{F_{q^i}/F_q}(x) = sum(x^{q^j} for j < i)``, an element of the
    base field. Computed from the traces of the power basis, which are
    obtained from the definition once per field.
    """
    field = x.field

    if not isinstance(field, ExtFieldDesc):
        raise TypeError("relative trace needs an element of an extension field")

    total = field.base.zero

    for c, tr in zip(x.coords, field._relative_trace_of_basis):
        total = total + c * tr

    return total


def relative_trace_by_definition(x: FieldElement) -> FieldElement:
    """Same as :func:`relative_trace`, summing the conjugates directly."""
    field = x.field

    if not isinstance(field, ExtFieldDesc):
        raise TypeError("relative trace needs an element of an extension field")

    q = field.base.order
    total = field.zero

    for _ in range(field.i):
        total = total + x
        x = x**q

    if any(not c.is_zero for c in total.coords[1:]):
        raise AssertionError("trace does not lie in the base field")

    return total.coords[0]


def absolute_trace(x: FieldElement) -> int:
    """``Tr_{K/F_p}(x)`` as an int in ``range(p)``. The trace is
    ``F_p``-linear, so it is the dot product of the prime-field
    coordinates of ``x`` with the traces of the ``F_p``-basis.
    """
    field = x.field
    p = field.characteristic
    table = field._prime_trace_of_basis
    total = 0

    for j, c in enumerate(x.coords):
        if isinstance(c, FieldElement):
            for k, digit in enumerate(c.coords):
                total += digit * table[j][k]
        else:
            total += c * table[j][0]

    return total % p


def enumerate_field(
    field: _Field, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> t.Iterator[FieldElement]:
    """Yield every element exactly once, in lexicographic order of the
    coordinates.

    :raises BudgetExceeded: if the field has more than ``budget`` elements.
    """
    if field.order > budget:
        raise BudgetExceeded(field.order, budget, what="field elements")

    return iter(field)
