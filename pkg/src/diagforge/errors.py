"""Exception types shared across the workbench."""


class DiagforgeError(Exception):
    """Base class for all workbench errors."""


class ParseError(DiagforgeError):
    """Malformed S-expression or malformed value text."""


class UnknownConstructorError(ParseError):
    """An S-expression head that names no kernel constructor."""

    def __init__(self, name: str):
        super().__init__(f"unknown constructor: {name!r}")
        self.name = name


class TypeCheckError(DiagforgeError):
    """Base class for well-formedness failures."""


class SortMismatchError(TypeCheckError):
    def __init__(self, path: tuple, expected, found):
        super().__init__(f"sort mismatch at {list(path)}: expected {expected.value}, found {found.value}")
        self.path = path
        self.expected = expected
        self.found = found


class UnboundVariableError(TypeCheckError):
    def __init__(self, name: str, path: tuple):
        super().__init__(f"unbound variable {name!r} at {list(path)}")
        self.name = name
        self.path = path


class ResourceExhaustedError(DiagforgeError):
    """Evaluation budget exceeded (step count or value-size cap).

    `index` is set when the failure happened while evaluating the n-th
    function of a machine stream, so diagonal constructions can report
    the offending index instead of silently skipping it.
    """

    def __init__(self, steps_used: int, reason: str = "steps", index: int | None = None):
        at = f" at index {index}" if index is not None else ""
        super().__init__(f"evaluation budget exhausted ({reason}, {steps_used} steps used{at})")
        self.steps_used = steps_used
        self.reason = reason
        self.index = index


class NotInTierError(DiagforgeError):
    """Program is not a well-formed member of the requested tier."""


class EmptyClassifierError(DiagforgeError):
    """Classifier accepted fewer programs than requested within the horizon."""

    def __init__(self, found: int, requested: int, horizon: int):
        super().__init__(
            f"classifier accepted only {found} of {requested} requested programs "
            f"within the first {horizon} enumeration indices"
        )
        self.found = found
        self.requested = requested
        self.horizon = horizon


class DuplicateProbeError(DiagforgeError):
    """A probe value occurs twice in a space's domain."""


class EmptyProbesError(DiagforgeError):
    """A space needs at least one probe value."""
