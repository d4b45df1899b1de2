"""Exception hierarchy shared by the whole package."""


class SyncReactError(Exception):
    """Base class for all errors raised by this package."""


class UnknownSymbol(SyncReactError):
    pass


class UnknownState(SyncReactError):
    pass


class SignatureMismatch(SyncReactError):
    """Two systems were combined whose input/output alphabets do not line up."""


class NotAProductSymbol(SyncReactError):
    pass


class NotReactive(SyncReactError):
    """An operation that requires a reactive state was given a non-reactive one."""


class PreconditionFailed(SyncReactError):
    pass


class FormatError(SyncReactError):
    """Malformed `.sls` or report text; carries file/line context in the message."""


class PsySyntaxError(SyncReactError):
    """Concrete-syntax error in a `.psy` program, with line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class PsyTypeError(SyncReactError):
    """A typing rule was violated; the message names the rule."""


class StuckConfiguration(SyncReactError):
    """No reduction rule applies. Signals an evaluator bug for typed programs."""


class StateBudgetExceeded(SyncReactError):
    def __init__(self, bound: int):
        super().__init__(f"state budget of {bound} states exceeded")
        self.bound = bound


class NonFiniteIntRange(SyncReactError):
    """An integer variable has no declared finite range."""


class IntRangeExceeded(SyncReactError):
    """A program assigned an integer outside its declared range."""


class RoundDivergence(SyncReactError):
    """A program ran for too many reduction steps without reaching a tick."""


class BuildError(SyncReactError):
    """A program cannot be realized as a finite synchronous system."""
