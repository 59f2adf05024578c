"""Exception types raised by the su2factor library."""


class SU2Error(ValueError):
    """Base class for all library errors."""


class NotInAlgebra(SU2Error):
    """Matrix is not skew-Hermitian and traceless within tolerance."""


class NotUnitary(SU2Error):
    """Matrix is not in SU(2) within tolerance."""


class NotARotation(SU2Error):
    """Matrix is not in SO(3) within tolerance."""


class DependentGenerators(SU2Error):
    """Generator pair is (numerically) linearly dependent."""


class SingularMixing(SU2Error):
    """Mixing matrix is rank deficient; indicates a broken canonical frame."""


class DegenerateDirection(SU2Error):
    """Factor direction has no component along the first generator."""


class NoViableFrame(SU2Error):
    """Every in-plane frame angle on the search grid is degenerate."""


class InvalidBound(SU2Error):
    """Bound on the second coefficient is not strictly positive."""


class ResidualTooLarge(SU2Error):
    """Reassembled product misses the target by more than the tolerance."""

    def __init__(self, residual, tol, sequence=None, report=None):
        super().__init__(f"reassembly residual {residual:.3e} exceeds tolerance {tol:.3e}")
        self.residual = residual
        self.tol = tol
        self.sequence = sequence
        self.report = report
