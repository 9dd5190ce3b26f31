"""Shared exception types.

Budget errors are recoverable control flow: the decomposition driver turns
them into "inconclusive" branch markings, never into a definite verdict.
"""


class VasskitError(Exception):
    pass


class NegativityError(VasskitError):
    """A step drove a finite counter below zero.

    ``component`` is 1-based, matching the usual convention for naming
    counter coordinates.
    """

    def __init__(self, component: int):
        self.component = component
        super().__init__(f"counter {component} would become negative")


class MalformedPath(VasskitError):
    pass


class DimensionMismatch(VasskitError):
    pass


class NotDominated(VasskitError):
    pass


class UnsatInput(VasskitError):
    pass


class NotEulerian(VasskitError):
    pass


class ViolationStale(VasskitError):
    pass


class ParseError(VasskitError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class BudgetExceeded(VasskitError):
    """A configurable resource budget ran out; the result is inconclusive."""

    def __init__(self, kind: str, detail: str = ""):
        self.kind = kind
        self.detail = detail
        super().__init__(f"budget exceeded: {kind}" + (f" ({detail})" if detail else ""))


class NodeBudgetExceeded(BudgetExceeded):
    def __init__(self, detail: str = ""):
        super().__init__("coverability nodes", detail)


class StateBudgetExceeded(BudgetExceeded):
    def __init__(self, detail: str = ""):
        super().__init__("unfolding states", detail)


class CapExceeded(VasskitError):
    """A search exceeded a cap that theory says cannot bind; signals a bug."""
