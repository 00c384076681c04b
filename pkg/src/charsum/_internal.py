import logging
import sys
import typing as t

if t.TYPE_CHECKING:
    from .gf import FieldElement

_logger: t.Optional[logging.Logger] = None


def _has_level_handler(logger: logging.Logger) -> bool:
    """Check if there is a handler in the logging chain that will handle
    the given logger's effective level.
    """
    level = logger.getEffectiveLevel()
    current = logger

    while current:
        if any(handler.level <= level for handler in current.handlers):
            return True

        if not current.propagate:
            break

        current = current.parent  # type: ignore

    return False


def _get_logger() -> logging.Logger:
    global _logger

    if _logger is None:
        _logger = logging.getLogger("charsum")

        if _logger.level == logging.NOTSET:
            _logger.setLevel(logging.INFO)

        if not _has_level_handler(_logger):
            _logger.addHandler(logging.StreamHandler(sys.stderr))

    return _logger


def _log(type: str, message: str, *args: t.Any, **kwargs: t.Any) -> None:
    """Log a message to the 'charsum' logger.

    The logger is created the first time it is needed. If there is no
    level set, it is set to :data:`logging.INFO`. If there is no handler
    for the logger's effective level, a :class:`logging.StreamHandler`
    is added.
    """
    getattr(_get_logger(), type)(message.rstrip(), *args, **kwargs)


def _set_log_level(level: int) -> None:
    _get_logger().setLevel(level)


# Exact linear algebra over a finite field. Vectors are lists of
# FieldElement; only the arithmetic operators and ``is_zero`` are used.


def _reduce_against(
    vector: t.List["FieldElement"],
    pivots: t.Dict[int, t.List["FieldElement"]],
) -> t.Optional[int]:
    """Reduce ``vector`` in place by the stored pivot vectors, scanning
    positions from the front. Returns the first position that stays
    nonzero, which becomes the vector's pivot, or ``None`` if it reduces
    to zero. Stored pivot vectors are normalized to 1 at their pivot.
    """
    for pos, value in enumerate(vector):
        if value.is_zero:
            continue

        pivot_vector = pivots.get(pos)

        if pivot_vector is None:
            return pos

        for j in range(pos, len(vector)):
            if not pivot_vector[j].is_zero:
                vector[j] = vector[j] - value * pivot_vector[j]

    return None


def _echelon(
    vectors: t.Iterable[t.List["FieldElement"]],
) -> t.Dict[int, t.List["FieldElement"]]:
    """Bring the span of ``vectors`` to echelon form. The result maps each
    pivot position to a vector that is 1 there and 0 at all earlier pivot
    positions. The set of pivot positions depends only on the span, not
    on the order of the input vectors.
    """
    pivots: t.Dict[int, t.List["FieldElement"]] = {}

    for vector in vectors:
        work = list(vector)
        pos = _reduce_against(work, pivots)

        if pos is None:
            continue

        inv = work[pos].inverse()
        pivots[pos] = [x * inv for x in work]

    return pivots


def _rank(vectors: t.Iterable[t.List["FieldElement"]]) -> int:
    return len(_echelon(vectors))


def _det(matrix: t.Sequence[t.Sequence["FieldElement"]]) -> "FieldElement":
    """Determinant of a square matrix by Gaussian elimination."""
    n = len(matrix)

    if n == 0:
        raise ValueError("determinant of an empty matrix")

    rows = [list(row) for row in matrix]

    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")

    det = rows[0][0].field.one

    for col in range(n):
        pivot_row = next((r for r in range(col, n) if not rows[r][col].is_zero), None)

        if pivot_row is None:
            return det.field.zero

        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det

        pivot = rows[col][col]
        det = det * pivot
        inv = pivot.inverse()

        for r in range(col + 1, n):
            factor = rows[r][col] * inv

            if factor.is_zero:
                continue

            for c in range(col, n):
                rows[r][c] = rows[r][c] - factor * rows[col][c]

    return det
