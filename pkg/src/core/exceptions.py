"""
Simulator Exceptions

Exception hierarchy shared by every module of the simulator. The CLI maps
these classes to process exit codes.

Author: Adryan R A
"""

from typing import Optional


class SimulationError(Exception):
    """Base exception for all simulator errors."""
    pass


class ArgumentError(SimulationError):
    """Custom exception for invalid arguments (shapes, lengths, preconditions)."""
    pass


class ConfigurationError(SimulationError):
    """Custom exception for invalid or unsupported configuration."""
    pass


class NumericalError(SimulationError):
    """
    Custom exception for numerical failures.

    Attributes:
        abscissa (Optional[float]): Point at which a non-finite value was met, if known
    """

    def __init__(self, message: str, abscissa: Optional[float] = None):
        super().__init__(message)
        self.abscissa = abscissa
