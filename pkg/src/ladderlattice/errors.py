"""Exception types raised by the package."""


class LadderLatticeError(Exception):
    """Base class for all computation errors in the package."""


class ParameterError(LadderLatticeError, ValueError):
    """A family parameter is outside its admissible range."""


class UnknownFamilyError(LadderLatticeError, KeyError):
    """The requested family name is not in the catalog."""


class PearsonError(LadderLatticeError):
    """The weight does not satisfy the Pearson relation for the given sigma and tau."""


class WindowTooSmallError(LadderLatticeError):
    """A grid function has too few sites for the requested difference operation."""


class DegenerateLatticeSiteError(LadderLatticeError, ZeroDivisionError):
    """A lattice step vanishes at a site where a divided difference is needed."""


class ConstructionMismatchError(LadderLatticeError):
    """Two independent constructions of the same polynomial disagree."""


class CoefficientMismatchError(LadderLatticeError):
    """Two closed forms of the same ladder coefficient disagree."""


class DegenerateCoefficientError(LadderLatticeError, ZeroDivisionError):
    """A ladder operator would divide by a vanishing coefficient."""


class TruncationError(LadderLatticeError):
    """An infinite lattice sum did not converge within the site budget."""
