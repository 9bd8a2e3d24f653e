"""Exception types that callers need to distinguish from plain ValueError."""


class ConsistencyError(ArithmeticError):
    """Two independent numerical routes disagreed beyond tolerance.

    Raised by kernel-window construction when the hypergeometric-series
    evaluation and the quadrature evaluation of the same weight differ by
    more than the cross-check tolerance.  Indicates a special-function bug,
    not bad user input.
    """


class CsvParseError(ValueError):
    """Malformed CSV input; message carries file:line:column."""


class ConvergenceError(RuntimeError):
    """An iterative series or scheme failed to converge within its cap."""
