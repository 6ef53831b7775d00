"""Exception hierarchy.

Every failure raised by the library derives from :class:`InvSLError`. The
``exit_code`` class attribute is what the command-line front end returns
when the exception escapes a command.
"""


class InvSLError(Exception):
    exit_code = 1


class ParseError(InvSLError, ValueError):
    """Malformed input file; ``row`` is the 1-based line number when known."""
    exit_code = 2

    def __init__(self, msg, row=None):
        self.row = row
        if row is not None:
            msg = f"row {row}: {msg}"
        super().__init__(msg)


# -- data-class violations (exit 4) -----------------------------------------

class DataClassError(InvSLError):
    exit_code = 4


class InterlacingViolation(DataClassError):
    """``mu_n < lambda_n < mu_{n+1}`` fails at index ``n`` (1-based)."""

    def __init__(self, n, detail=""):
        self.n = n
        msg = f"interlacing (N1) fails at n={n}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SeparationViolation(DataClassError):
    def __init__(self, observed, required):
        self.observed = observed
        self.required = required
        super().__init__(
            f"separation {observed:.6g} is below required h={required:.6g}")


class NormBudgetExceeded(DataClassError):
    def __init__(self, observed, budget):
        self.observed = observed
        self.budget = budget
        super().__init__(
            f"sequence norm {observed:.6g} exceeds budget r={budget:.6g}")


class NonPositiveFactor(DataClassError):
    """A paired product factor ``1 + a_{k,n}`` is not positive."""

    def __init__(self, k, n, value):
        self.k = k
        self.n = n
        self.value = value
        super().__init__(
            f"product factor for k={k}, n={n} is {value:.6g} <= 0")


class NormingNotPositive(DataClassError):
    def __init__(self, n, value):
        self.n = n
        self.value = value
        super().__init__(f"norming constant alpha_{n} = {value:.6g} <= 0")


# -- grid / transform misuse --------------------------------------------------

class AliasGuard(InvSLError, ValueError):
    """Requested frequency is too high for the sampling grid."""


class GridMismatch(InvSLError, ValueError):
    pass


class UnsupportedOrder(InvSLError, ValueError):
    pass


# -- forward solver (exit 3) ---------------------------------------------------

class ForwardError(InvSLError):
    exit_code = 3


class RootCountMismatch(ForwardError):
    def __init__(self, which, found, wanted):
        self.which = which
        self.found = found
        self.wanted = wanted
        super().__init__(
            f"{which}: sign scan found {found} roots, {wanted} requested")


class NotAnEigenvalue(ForwardError):
    pass


# -- linear algebra (exit 5) ---------------------------------------------------

class SingularRowSystem(InvSLError):
    exit_code = 5

    def __init__(self, row, detail=""):
        self.row = row
        super().__init__(f"GLM row system {row} is numerically singular {detail}".rstrip())


class SeriesDivergence(InvSLError):
    exit_code = 5


# -- sampling (exit 6) ---------------------------------------------------------

class RejectionExhausted(InvSLError):
    exit_code = 6
