"""Exception types shared across the library.

Every failure names the violated structural condition so that callers
(and the CLI) can report which invariant broke rather than a bare stack
trace.
"""


class HktoricError(Exception):
    """Base class for all library errors."""


class InputFormatError(HktoricError):
    """Malformed text input; carries line/column diagnostics."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class NotFullRank(HktoricError):
    """Matrix does not have full row rank over the rationals."""


class NonPrimitive(HktoricError):
    """The gcd of the maximal minors exceeds 1; the integer cokernel has torsion."""


class VariableCountMismatch(HktoricError):
    """Polynomials over different variable counts were combined."""


class RankDeficient(HktoricError):
    """Sample set does not determine the interpolant."""


class Inconsistent(HktoricError):
    """Sampled function is not a homogeneous polynomial of the stated degree."""


class InfeasibleSlice(HktoricError):
    """The polyhedron {u >= 0 : Au = theta} is empty."""


class NonGenericTheta(HktoricError):
    """theta lies on a hyperplane spanned by d-1 columns of the configuration."""


class DegeneratePsi(HktoricError):
    """Arrangement cells are not simple; psi lies on a wall."""


class NegativeBetti(HktoricError):
    """Alternating-sum formula produced a negative entry; the face counts are wrong."""


class UnboundedRegion(HktoricError):
    """Requested region of the arrangement is unbounded (or empty)."""


class NonGenericDirection(HktoricError):
    """Sweep vector has equal inner products with two bounded-complex vertices."""


class LoopPresent(HktoricError):
    """A Gale-dual vector b_i is zero; the bilinear relations are degenerate."""


class ColoopPresent(HktoricError):
    """A column a_i is zero (a coloop of the Gale-dual matroid); hyperkaehler
    builds require coloop-free input."""


class ChamberCrossed(HktoricError):
    """Volume sampling left the chamber; interpolation became inconsistent."""


class AnnihilatorMismatch(HktoricError):
    """Annihilator of the cogenerators disagrees with the presentation ideal."""


class NotInImage(HktoricError):
    """Polynomial is not constant along ker(A); it has no d-variable preimage."""


class NotInjective(HktoricError):
    """A multiplication map that the hard Lefschetz theorem predicts to be
    injective has a kernel; signals a bug upstream."""


class NonGenericD(HktoricError):
    """Sampled degree-1 class showed a rank anomaly; resample."""


class Disconnected(HktoricError):
    """Quiver's underlying graph is not connected."""


class NotASpanningTree(HktoricError):
    """Edge subset is not a spanning tree."""


class VerificationFailure(HktoricError):
    """A paper-level cross-check failed; message names the invariant."""
