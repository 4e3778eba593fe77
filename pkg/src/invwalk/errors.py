"""Exception types; the CLI maps each to a distinct exit code."""


class InvwalkError(Exception):
    pass


class BudgetExceeded(InvwalkError):
    """A resource budget (e.g. number of enumerated words) would be exceeded."""


class TheoremViolation(InvwalkError, ArithmeticError):
    """An exact mathematical assertion failed (non-integer d_r, n-dependent g_r, broken bound)."""
