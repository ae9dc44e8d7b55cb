"""Exception hierarchy shared by every module."""


class LeibnizError(Exception):
    pass


class FieldMismatch(LeibnizError, ValueError):
    pass


class DimensionMismatch(LeibnizError, ValueError):
    pass


class NotLeibnizError(LeibnizError, ValueError):
    """Structure constants violate the left Leibniz identity."""

    def __init__(self, violations, msg=None):
        self.violations = list(violations)
        head = ", ".join(str(t) for t in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(msg or f"left Leibniz identity fails on triples {head}{more}")


class NotASubalgebra(LeibnizError, ValueError):
    pass


class NotAnIdeal(LeibnizError, ValueError):
    pass


class NotInvariant(LeibnizError, ValueError):
    pass


class Unsupported(LeibnizError):
    pass


class Indeterminate(LeibnizError):
    """An exact procedure could not certify its answer.  Never a silent guess."""


class InfinitelyMany(Indeterminate):
    """The requested family is infinite (e.g. minimal ideals of an abelian algebra over Q)."""

    def __init__(self, msg, found=()):
        super().__init__(msg)
        self.found = list(found)


class BudgetExceeded(LeibnizError):
    pass


class CartanNotFound(LeibnizError):
    pass


class PreconditionError(LeibnizError, ValueError):
    pass


class TheoremViolation(LeibnizError):
    """A solver was infeasible where the theorem guarantees feasibility.

    ``instance`` carries a JSON-serialisable dump of the offending input.
    """

    def __init__(self, msg, instance=None):
        super().__init__(msg)
        self.instance = instance
