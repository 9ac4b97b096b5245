"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class CvolError(Exception):
    exit_code = 1


class PDSyntaxError(CvolError, ValueError):
    exit_code = 2

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PDError(CvolError, ValueError):
    """Well-formed text that does not describe a valid diagram."""
    exit_code = 2


class DiagramError(PDError):
    pass


class ColoringError(CvolError, ValueError):
    exit_code = 3


class SolverError(CvolError, RuntimeError):
    exit_code = 3


class DegeneracyError(CvolError, ArithmeticError):
    exit_code = 4


class ReducibleColoringError(DegeneracyError):
    pass


class NumericalError(CvolError, ArithmeticError):
    exit_code = 5
