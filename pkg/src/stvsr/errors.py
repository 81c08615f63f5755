"""Exception types shared across the package."""


class SpectrumSymmetryError(ValueError):
    """Inverse 3-D FFT produced an imaginary residue too large to discard.

    Raised when the spectrum handed to ``ifft3`` is not conjugate-symmetric
    within tolerance, which means it does not correspond to a real video.
    """


class SingularSystemError(RuntimeError):
    """Dense reference solve failed or left a residual above tolerance."""


class FrameIoError(OSError):
    """A frame directory or sidecar file violates the on-disk contract.

    The message always names the offending file or directory.
    """
