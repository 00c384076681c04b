"""Exceptions raised by charsum. Every exception carries the process exit
code the command line uses when it is not caught, so a failed check can be
told apart from a refused hypothesis or a bad input file in scripts.

Usage Example
-------------

.. code-block:: python

    from charsum.exceptions import CharsumError, HypothesisRefused

    try:
        report = cmd_verify(spec)
    except HypothesisRefused as e:
        print("refused at", e.stage, e.description)
    except CharsumError as e:
        sys.exit(e.code)

The exit codes are:

== ==========================================================
0  every check passed
2  the regular-sequence hypothesis fails, nothing computed
3  a verification check failed
4  a resource budget would be exceeded
5  the input is invalid
== ==========================================================
"""
import typing as t

if t.TYPE_CHECKING:
    import typing_extensions as te


class CharsumError(Exception):
    """The base class for all charsum errors. Subclasses set ``code`` to
    the exit code and ``description`` to a default message.
    """

    code: t.Optional[int] = None
    description: t.Optional[str] = None

    def __init__(
        self, description: t.Optional[str] = None, stage: t.Optional[str] = None
    ) -> None:
        super().__init__()
        if description is not None:
            self.description = description
        #: The pipeline stage the error was raised in, filled in by the
        #: pipeline if the raising code did not know it.
        self.stage = stage

    @property
    def name(self) -> str:
        """The exception class name, used in reports."""
        return type(self).__name__

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "error": self.name,
            "code": self.code,
            "stage": self.stage,
            "description": self.description,
        }

    def __str__(self) -> str:
        code = self.code if self.code is not None else "?"
        stage = f" [{self.stage}]" if self.stage else ""
        return f"{code} {self.name}{stage}: {self.description}"

    def __repr__(self) -> str:
        code = self.code if self.code is not None else "?"
        return f"<{self.name} '{code}: {self.description}'>"


class HypothesisRefused(CharsumError):
    """*2* The regular-sequence hypothesis, or another precondition of the
    predictions being checked, does not hold. No numerical conclusion is
    produced.
    """

    code = 2
    description = "The regular-sequence hypothesis does not hold."


class VerificationFailed(CharsumError):
    """*3* A computed object disagrees with what the theory predicts."""

    code = 3
    description = "A verification check failed."


class InconsistencyError(VerificationFailed):
    """An internal self-check failed, for example the leading coefficient
    of the L-polynomial vanished or a measured Hilbert function differs
    from the expected one.
    """

    description = "An internal consistency check failed."


class RootFindingError(VerificationFailed):
    """The numerical root finder did not meet its residual contract."""

    description = "The complex roots could not be found to the requested accuracy."


class BudgetExceeded(CharsumError):
    """*4* An enumeration would touch more points than allowed. The
    required count is reported so the budget can be raised deliberately.
    """

    code = 4
    description = "The enumeration budget would be exceeded."

    def __init__(
        self,
        required: t.Optional[int] = None,
        budget: t.Optional[int] = None,
        what: str = "points",
        stage: t.Optional[str] = None,
        description: t.Optional[str] = None,
    ) -> None:
        if description is None and required is not None:
            description = f"{what} required: {required}, budget: {budget}"
        super().__init__(description, stage=stage)
        self.required = required
        self.budget = budget

    def to_json(self) -> t.Dict[str, t.Any]:
        rv = super().to_json()
        rv["required"] = self.required
        rv["budget"] = self.budget
        return rv


class InputError(CharsumError):
    """*5* The input is malformed or describes an invalid object."""

    code = 5
    description = "The input is invalid."


class ParseError(InputError):
    """A problem file could not be parsed. ``lineno`` is 1-based."""

    def __init__(self, description: str, lineno: t.Optional[int] = None) -> None:
        if lineno is not None:
            description = f"line {lineno}: {description}"
        super().__init__(description, stage="parse")
        self.lineno = lineno


class InvalidField(InputError):
    """The characteristic is not prime or a modulus is reducible."""

    description = "The field description is invalid."


class DimensionMismatch(InputError):
    """A point or exponent vector has the wrong number of coordinates."""

    description = "Dimension mismatch."


class QuadraticFormError(InputError):
    """A polynomial is not of the shape the quadratic evaluation needs,
    or the form is degenerate or has an odd number of variables.
    """

    description = "The quadratic form cannot be evaluated in closed form."


default_exceptions: t.Dict[int, t.Type[CharsumError]] = {}


def _find_exceptions() -> None:
    for obj in globals().values():
        try:
            is_charsum_error = issubclass(obj, CharsumError)
        except TypeError:
            is_charsum_error = False
        if not is_charsum_error or obj.code is None:
            continue
        old_obj = default_exceptions.get(obj.code, None)
        if old_obj is not None and issubclass(obj, old_obj):
            continue
        default_exceptions[obj.code] = obj


_find_exceptions()
del _find_exceptions


def abort(code: int, description: t.Optional[str] = None) -> "te.NoReturn":
    """Raise the registered exception for an exit code::

        abort(3, "Newton polygon lies below the bound")

    :raises LookupError: if no exception is registered for ``code``.
    """
    if code not in default_exceptions:
        raise LookupError(f"no exception for {code!r}")

    raise default_exceptions[code](description=description)
