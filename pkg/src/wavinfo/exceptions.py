"""Exception types raised by wavinfo."""


class WaveletError(Exception):
    """Base class for all wavinfo errors."""


class UnknownWaveletError(WaveletError, KeyError):
    """Requested wavelet or filter name is not in the catalog."""

    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(f"unknown wavelet {name!r}; available: {', '.join(self.available)}")

    def __str__(self):
        return self.args[0]


class QuadratureError(WaveletError, ArithmeticError):
    """Quadrature did not converge to the requested tolerance."""


class SupportError(WaveletError, ValueError):
    """Effective support could not be located inside the search window."""


class AdmissibilityError(WaveletError, ValueError):
    """Admissibility integral diverges (the wavelet has non-zero mean)."""


class CoverageError(WaveletError, ValueError):
    """A truncated CWT grid captured too little of the signal energy."""


class SignalError(WaveletError, ValueError):
    """Invalid input signal (empty, non-finite, zero energy, bad length)."""
