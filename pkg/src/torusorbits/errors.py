"""Exception taxonomy for the torusorbits package.

Every error raised by the library derives from TorusOrbitsError, so callers
(and the CLI) can distinguish domain failures from programming bugs.
"""


class TorusOrbitsError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(TorusOrbitsError):
    """Malformed textual or JSON input."""


# ---------------------------------------------------------------------------
# integer linear algebra


class NonSquareMatrixError(TorusOrbitsError):
    """A determinant was requested for a non-square matrix."""


class NotCompletableError(TorusOrbitsError):
    """The given rows span a sublattice that is not a direct summand, so no
    unimodular completion exists."""


# ---------------------------------------------------------------------------
# weighted orbit spaces


class RankTooSmallError(TorusOrbitsError):
    """Weighted orbit spaces need rank at least 2."""


class IllegalOrbitSpaceError(TorusOrbitsError):
    """Some cyclically adjacent weight pair is not extendable to a lattice
    basis, so the boundary pattern is not realizable by a smooth action."""


class RankMismatchError(TorusOrbitsError):
    """Two orbit spaces of different rank were compared."""


class UnsupportedRankError(TorusOrbitsError):
    """Canonicalization is implemented for ranks 2 and 3 only."""


class UnsupportedWeightCountError(TorusOrbitsError):
    """The operation handles a fixed number of boundary weights and was given
    a different count."""


class NotCanonicalPositionError(TorusOrbitsError):
    """The operation requires the first two weights to be the first two
    standard basis vectors."""


class OrientationMismatchError(TorusOrbitsError):
    """The two orientations of a legal orbit space classified to different
    manifolds; this would indicate an implementation bug and is surfaced
    rather than silently resolved."""


# ---------------------------------------------------------------------------
# dimension-5 parameter extraction


class GcdConditionViolatedError(TorusOrbitsError):
    """One of the coprimality conditions required of a legal, simply
    connected rank-3 boundary pattern fails; the message names it."""


class InconsistentShearError(TorusOrbitsError):
    """The two independent determinations of a shear parameter disagree;
    indicates an internal inconsistency, not bad user input."""


# ---------------------------------------------------------------------------
# torus actions on products of two 3-spheres


class DegenerateActionError(TorusOrbitsError):
    """All exponents vanish, so the circle acts trivially."""


class NotFreeError(TorusOrbitsError):
    """The action has a nontrivial stabilizer, but the operation requires a
    free action."""


class NotFreeSubtorusError(TorusOrbitsError):
    """The chosen subtorus has a nontrivial stabilizer on some stratum, so it
    does not act freely."""


class UnrealizableSupportError(TorusOrbitsError):
    """The coordinate support pattern misses one of the two unit-sphere
    factors, so no point of the space has exactly that support."""


class StabilizerRankUnexpectedError(TorusOrbitsError):
    """An induced stratum stabilizer does not have the structure a free
    action forces (circle on arcs, 2-torus at vertices)."""


class EpsilonClassMismatchError(TorusOrbitsError):
    """The sign invariant of a free 2-torus action contradicts the manifold
    type computed from its induced orbit space."""


class NotRealizableError(TorusOrbitsError):
    """No action in the implemented families induces the requested orbit
    space."""


class SlopesNotCoprimeError(TorusOrbitsError):
    """A subcircle slope (p, q) must be a primitive vector."""
