"""Exception hierarchy shared by every module."""


class BornError(Exception):
    """Base class for all package errors."""


class ParseError(BornError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InfeasibleError(BornError):
    def __init__(self, message, constraint_index=None):
        self.constraint_index = constraint_index
        super().__init__(message)


class ConvergenceError(BornError):
    def __init__(self, message, iterate=None, grad_norm=None):
        self.iterate = iterate
        self.grad_norm = grad_norm
        super().__init__(message)


class NumericalError(BornError):
    """Raised when an input violates a numerical invariant beyond tolerance."""
