"""Exponential sums
================

``S_i = sum(Psi(Tr_{F_{q^i}/F_q} f(x)) for x in F_{q^i}^n)`` computed
exactly by exhaustive enumeration. With ``Psi(y) = zeta_p^Tr(b*y)`` every
point contributes a power ``zeta_p^c`` with ``c = Tr_{F_{q^i}/F_p}(b f(x))``,
so the engine only counts how many points land in each residue class
``c`` and builds the cyclotomic value once at the end.

The hot loop touches only ints. Every nonzero element of ``F_{q^i}`` is a
power of a primitive element ``g``, and the trace is ``F_p``-linear, so

.. code-block:: text

    Tr(b f(x)) = sum over terms c_u x^u of Tr(b g^(log c_u + u . log x))

which is one table lookup per term. The enumeration domain is split into
contiguous blocks of the leading coordinate; each block is counted on its
own and the count vectors are added, so the result does not depend on the
number of workers.
"""
import itertools
import typing as t
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ._internal import _log
from .cyclo import CycNum
from .exceptions import BudgetExceeded
from .exceptions import DimensionMismatch
from .exceptions import InconsistencyError
from .exceptions import InputError
from .gf import absolute_trace
from .gf import ExtFieldDesc
from .gf import extend
from .gf import FieldDesc
from .gf import FieldElement
from .mpoly import evaluate
from .mpoly import MultiPoly

#: Default maximum number of points a single sum may enumerate.
DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class CharacterSpec:
    """The additive character ``Psi(y) = zeta_p^Tr(b*y)`` of ``F_q``."""

    b: FieldElement

    def __post_init__(self) -> None:
        if self.b.is_zero:
            raise InputError("the character twist b must be nonzero")

    @classmethod
    def default(cls, field: FieldDesc) -> "CharacterSpec":
        return cls(field.one)

    @property
    def field(self) -> FieldDesc:
        return self.b.field  # type: ignore

    def exponent(self, y: FieldElement) -> int:
        """``Tr(b*y)`` for ``y`` in ``F_q`` or an extension of it."""
        return absolute_trace(y.field.embed(self.b) * y)

    def twisted(self, u: t.Union[FieldElement, int]) -> "CharacterSpec":
        return CharacterSpec(self.b * u)

    def to_json(self) -> t.List[str]:
        return [str(c) for c in self.b.coords]


def character_value(chi: CharacterSpec, y: FieldElement) -> CycNum:
    """``Psi(y)`` as an element of ``Q(zeta_p)``."""
    p = chi.field.characteristic
    return CycNum.zeta(p, chi.exponent(y))


@dataclass(frozen=True)
class SumValue:
    """The counts ``N_0 .. N_{p-1}`` of points by trace class and the sum
    ``sum(N_c * zeta_p^c)``.
    """

    i: int
    counts: t.Tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.counts)

    @property
    def value(self) -> CycNum:
        return CycNum(self.p, self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "i": self.i,
            "counts": list(self.counts),
            "value": self.value.to_json(),
        }


class _Tables(t.NamedTuple):
    p: int
    size: int
    n: int
    log: t.List[int]
    trace: t.List[int]
    terms: t.List[t.Tuple[int, t.Tuple[t.Tuple[int, int], ...]]]


class SumKernel:
    """Log and trace tables of ``F_{q^i}`` for one polynomial and one
    character. ``log[k]`` is the discrete log of the element with index
    ``k`` (``-1`` for zero) and ``trace[j] = Tr(b g^j)``.
    """

    def __init__(self, f: MultiPoly, ext: ExtFieldDesc, chi: CharacterSpec) -> None:
        self.f = f
        self.ext = ext
        self.chi = chi
        size = ext.order
        g = ext.primitive_element()
        b = ext.embed(chi.b)
        log = [-1] * size
        trace = [0] * (size - 1)
        y = ext.one

        for k in range(size - 1):
            log[ext.index(y)] = k
            trace[k] = absolute_trace(b * y)
            y = y * g

        terms = []

        for u, c in f.sorted_terms():
            clog = log[ext.index(ext.embed(c))]
            factors = tuple((v, e) for v, e in enumerate(u) if e)
            terms.append((clog, factors))

        self.tables = _Tables(ext.characteristic, size, f.n, log, trace, terms)

    def blocks(self, workers: int) -> t.List[t.Tuple[int, int]]:
        """Contiguous ranges of the leading coordinate index."""
        size = self.tables.size
        workers = max(1, min(workers, size))
        step, extra = divmod(size, workers)
        rv = []
        lo = 0

        for w in range(workers):
            hi = lo + step + (1 if w < extra else 0)
            rv.append((lo, hi))
            lo = hi

        return rv

    def counts(self, workers: int = 1) -> t.List[int]:
        blocks = self.blocks(workers)

        if len(blocks) == 1:
            parts = [_count_block(self.tables, *blocks[0])]
        else:
            with ProcessPoolExecutor(max_workers=len(blocks)) as executor:
                parts = list(
                    executor.map(
                        _count_block,
                        [self.tables] * len(blocks),
                        [lo for lo, _ in blocks],
                        [hi for _, hi in blocks],
                    )
                )

        totals = [0] * self.tables.p

        for part in parts:
            for c, k in enumerate(part):
                totals[c] += k

        return totals


def _count_block(tables: _Tables, lo: int, hi: int) -> t.List[int]:
    p, size, n, log, trace, terms = tables
    order = size - 1
    counts = [0] * p
    ranges = [range(lo, hi)] + [range(size)] * (n - 1)

    for point in itertools.product(*ranges):
        c = 0

        for clog, factors in terms:
            s = clog

            for v, e in factors:
                k = log[point[v]]

                if k < 0:
                    break

                s += e * k
            else:
                c += trace[s % order]

        counts[c % p] += 1

    return counts


def _check_problem(f: MultiPoly, field: FieldDesc, chi: CharacterSpec) -> None:
    if f.field != field:
        raise DimensionMismatch(f"polynomial is over {f.field}, not {field}")

    if chi.field != field:
        raise DimensionMismatch(f"character is on {chi.field}, not {field}")


def point_count(field: FieldDesc, n: int, i: int) -> int:
    return field.order ** (n * i)


def exponential_sum(
    f: MultiPoly,
    field: FieldDesc,
    i: int,
    chi: CharacterSpec,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SumValue:
    """``S(A^n(F_{q^i}), f)`` by exhaustive enumeration.

    :param workers: number of processes; the result is identical for any
        value.
    :raises BudgetExceeded: if ``q^{ni}`` exceeds ``budget``.
    """
    if i < 1:
        raise ValueError("extension degree must be positive")

    _check_problem(f, field, chi)
    required = point_count(field, f.n, i)

    if required > budget:
        raise BudgetExceeded(required, budget)

    ext = extend(field, i)
    kernel = SumKernel(f, ext, chi)
    counts = kernel.counts(workers)

    if sum(counts) != required:
        raise InconsistencyError(
            f"counted {sum(counts)} points over F_{ext.order}^{f.n},"
            f" expected {required}"
        )

    rv = SumValue(i, tuple(counts))
    _log("info", f"S_{i} over F_{ext.order}^{f.n}: {rv.value} ({required} points)")
    return rv


def direct_sum(
    f: MultiPoly,
    field: FieldDesc,
    i: int,
    chi: CharacterSpec,
    budget: int = DEFAULT_BUDGET,
) -> SumValue:
    """Reference implementation of :func:`exponential_sum` that evaluates
    ``f`` at every point with field arithmetic and takes the trace of
    ``b f(x)`` directly. Slow; used to cross-check the table kernel.
    """
    _check_problem(f, field, chi)
    required = point_count(field, f.n, i)

    if required > budget:
        raise BudgetExceeded(required, budget)

    ext = extend(field, i)
    elements = list(ext)
    counts = [0] * field.characteristic

    for point in itertools.product(elements, repeat=f.n):
        counts[chi.exponent(evaluate(f, point))] += 1

    return SumValue(i, tuple(counts))


def sum_sequence(
    f: MultiPoly,
    field: FieldDesc,
    chi: CharacterSpec,
    i_max: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> t.List[SumValue]:
    """``[S_1, ..., S_{i_max}]``. The budget is checked for the largest
    term before anything is enumerated.
    """
    if i_max < 1:
        return []

    required = point_count(field, f.n, i_max)

    if required > budget:
        raise BudgetExceeded(required, budget)

    return [
        exponential_sum(f, field, i, chi, budget, workers)
        for i in range(1, i_max + 1)
    ]
