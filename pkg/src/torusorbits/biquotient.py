"""Torus actions on the product of two unit 3-spheres.

The ambient 4-torus acts coordinatewise on the two pairs of complex
coordinates (alpha1, beta1) and (alpha2, beta2); a weight matrix records the
character of each coordinate.  Subtori are given by integer slope rows.  This
module decides freeness, computes the isotropy diagram of the residual torus
action on the quotient, realizes target orbit spaces, searches for torus
extensions of circle actions, and classifies circle-bundle total spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .classify import (
    CP2_MINUS_CP2,
    CP2_PLUS_CP2,
    S2XS2,
    S3TWISTS2,
    S3XS2,
    Dim5Params,
    ManifoldType,
    classify_dim4,
    extract_dim5_params,
    in_canonical_position,
)
from .errors import (
    DegenerateActionError,
    EpsilonClassMismatchError,
    IllegalOrbitSpaceError,
    NotFreeError,
    NotFreeSubtorusError,
    NotRealizableError,
    SlopesNotCoprimeError,
    StabilizerRankUnexpectedError,
    UnrealizableSupportError,
    UnsupportedRankError,
    UnsupportedWeightCountError,
)
from .lattice import (
    AbelianGroup,
    IntMatrix,
    determinant,
    gcd_ext,
    hermite_normal_form,
    integer_kernel,
    invert_unimodular,
    quotient_group,
    smith_normal_form,
    unimodular_complete,
)
from .orbit_space import (
    WeightedOrbitSpace,
    are_equivalent,
    canonicalize,
    is_legal,
    normalize_weight,
)

# Coordinate indices into (alpha1, beta1, alpha2, beta2).
ALPHA1, BETA1, ALPHA2, BETA2 = 0, 1, 2, 3

# Points where one coordinate of each sphere vanishes; cyclic order of the
# corners of the quotient disk.
VERTEX_SUPPORTS: tuple[frozenset[int], ...] = (
    frozenset({ALPHA1, ALPHA2}),
    frozenset({ALPHA1, BETA2}),
    frozenset({BETA1, BETA2}),
    frozenset({BETA1, ALPHA2}),
)
# Boundary arcs join consecutive vertices; exactly one coordinate vanishes.
ARC_SUPPORTS: tuple[frozenset[int], ...] = tuple(
    VERTEX_SUPPORTS[i] | VERTEX_SUPPORTS[(i + 1) % 4] for i in range(4)
)
FULL_SUPPORT: frozenset[int] = frozenset({ALPHA1, BETA1, ALPHA2, BETA2})

# Common subtori of the ambient (u, v, w, z) torus.
Z_CIRCLE: tuple[tuple[int, ...], ...] = ((0, 0, 0, 1),)
WZ_TORUS: tuple[tuple[int, ...], ...] = ((0, 0, 1, 0), (0, 0, 0, 1))


def is_realizable_support(support: Iterable[int]) -> bool:
    """A support occurs on the spheres iff each factor keeps a coordinate."""
    s = frozenset(support)
    return bool(s & {ALPHA1, BETA1}) and bool(s & {ALPHA2, BETA2})


def realizable_supports() -> tuple[frozenset[int], ...]:
    """All nine support patterns of points of the product of two 3-spheres."""
    return VERTEX_SUPPORTS + ARC_SUPPORTS + (FULL_SUPPORT,)


@dataclass(frozen=True)
class CircleActionParams:
    """Circle acting with exponents a, b, c, d on (alpha1, beta1, alpha2, beta2)."""

    a: int
    b: int
    c: int
    d: int


@dataclass(frozen=True)
class T2ActionParams:
    """Two-torus action: z-exponents (a,b,c,d), w-exponents (-n,k,m,l)."""

    a: int
    b: int
    c: int
    d: int
    n: int
    k: int
    m: int
    l: int


def split_t2_family(r: int, lam: int) -> T2ActionParams:
    """Free family whose z-circle rotates only the first sphere.

    Quotients are the sphere product for lam even and the twisted sum for
    lam odd; the induced orbit space carries the weight (2r+lam, 1).
    """
    return T2ActionParams(a=1, b=1, c=0, d=0, n=r, k=r + lam, m=1, l=1)


def mixed_t2_family() -> T2ActionParams:
    """The free action whose z-circle turns both spheres; quotient CP2#CP2."""
    return T2ActionParams(a=1, b=0, c=-1, d=1, n=0, k=1, m=1, l=1)


def is_free_circle(p: CircleActionParams) -> bool:
    """Whether the circle with these exponents acts freely.

    Freeness is exactly the four pairwise gcd conditions across the factors.

    Raises:
        DegenerateActionError: all four exponents vanish (trivial action).
    """
    if p.a == 0 and p.b == 0 and p.c == 0 and p.d == 0:
        raise DegenerateActionError("all exponents are zero")
    return (
        gcd(p.a, p.c) == 1
        and gcd(p.a, p.d) == 1
        and gcd(p.b, p.c) == 1
        and gcd(p.b, p.d) == 1
    )


def w2_class(p: CircleActionParams) -> ManifoldType:
    """Type of the 5-manifold quotient by a free circle: parity of a+b+c+d.

    Raises:
        NotFreeError: the circle does not act freely.
    """
    if not is_free_circle(p):
        raise NotFreeError(f"circle {p} has a common exponent divisor across factors")
    total = p.a + p.b + p.c + p.d
    evens = sum(1 for v in (p.a, p.b, p.c, p.d) if v % 2 == 0)
    # Under freeness an odd sum is the same as a unique even exponent.
    assert (total % 2 == 1) == (evens == 1)
    return S3TWISTS2 if total % 2 else S3XS2


@dataclass(frozen=True)
class T2Freeness:
    """Verdict of the four freeness equations, with the signs on success."""

    free: bool
    eps: tuple[int, int, int] | None  # (e2, e3, e4) when free
    failing: str | None  # first violated condition otherwise


def is_free_t2(p: T2ActionParams) -> T2Freeness:
    """Whether the two-torus with these parameters acts freely.

    Freeness needs a*m + c*n = 1 on the nose and the three sign expressions
    a*l + d*n, b*m - c*k, b*l - d*k each equal to +1 or -1.
    """
    det1 = p.a * p.m + p.c * p.n
    if det1 != 1:
        return T2Freeness(free=False, eps=None, failing=f"a*m + c*n = {det1}")
    e2 = p.a * p.l + p.d * p.n
    e3 = p.b * p.m - p.c * p.k
    e4 = p.b * p.l - p.d * p.k
    for name, value in (("a*l + d*n", e2), ("b*m - c*k", e3), ("b*l - d*k", e4)):
        if value not in (1, -1):
            return T2Freeness(free=False, eps=None, failing=f"{name} = {value}")
    return T2Freeness(free=True, eps=(e2, e3, e4), failing=None)


def torus_weight_matrix(params: T2ActionParams | Dim5Params) -> IntMatrix:
    """Character matrix of the ambient 4-torus determined by the parameters.

    Row i is the character acting on coordinate i of (alpha1, beta1, alpha2,
    beta2); columns are the (u, v, w, z) circles.  The determinant is
    a*m + c*n and must be a unit for the action to be effective.
    """
    w = IntMatrix.from_rows(
        [
            [0, 0, -params.n, params.a],
            [1, 0, params.k, params.b],
            [0, 0, params.m, params.c],
            [0, 1, params.l, params.d],
        ]
    )
    det = determinant(w)
    assert det == params.a * params.m + params.c * params.n
    if det not in (1, -1):
        raise ValueError(f"weight matrix determinant {det}, expected a unit")
    return w


def subtorus_acts_freely(w: IntMatrix, h_rows: Sequence[Sequence[int]]) -> bool:
    """Whether the subtorus spanned by h_rows acts freely on the spheres.

    The stabilizer of a point with support S inside the subtorus is the
    kernel of the |S| x h exponent matrix on the subtorus; freeness means a
    trivial kernel for every realizable support, i.e. full rank h with all
    Smith invariant factors 1.
    """
    e = IntMatrix.from_rows(h_rows)
    assert e.cols == 4
    et = e.transpose()
    for support in realizable_supports():
        rows = [w.entries[i] for i in sorted(support)]
        restricted = IntMatrix.from_rows(rows) @ et
        snf = smith_normal_form(restricted)
        if snf.rank != e.rows or any(f != 1 for f in snf.invariant_factors):
            return False
    return True


@dataclass(frozen=True)
class StabilizerSubgroup:
    """Stabilizer inside the residual torus: abstract group plus slopes.

    slopes generate the identity component, written in the chosen complement
    coordinates; there is one slope per free rank.
    """

    group: AbelianGroup
    slopes: tuple[tuple[int, ...], ...]


def _resolve_complement(
    h_rows: Sequence[Sequence[int]],
    complement: Sequence[Sequence[int]] | None,
) -> tuple[tuple[int, ...], ...]:
    h = len(h_rows)
    if complement is None:
        basis = unimodular_complete(h_rows)
        return basis.entries[h:]
    c_rows = tuple(tuple(int(x) for x in row) for row in complement)
    p = IntMatrix.from_rows(list(h_rows) + list(c_rows))
    if p.rows != 4 or p.cols != 4 or determinant(p) not in (1, -1):
        raise ValueError("complement rows do not complete the subtorus to a basis")
    return c_rows


def induced_stabilizer(
    w: IntMatrix,
    h_rows: Sequence[Sequence[int]],
    support: Iterable[int],
    complement: Sequence[Sequence[int]] | None = None,
) -> StabilizerSubgroup:
    """Stabilizer, in the residual torus, of a point with the given support.

    The ambient stabilizer of the point is the joint kernel of the characters
    indexed by the support; its image in the residual torus (ambient torus
    modulo the free subtorus, coordinatized by the complement) is computed
    through annihilator lattices, exactly.

    Args:
        w: 4x4 unimodular character matrix of the ambient torus.
        h_rows: slope rows spanning the subtorus to quotient by.
        support: nonvanishing coordinate indices of the point.
        complement: optional complement rows; defaults to the deterministic
            completion of h_rows.

    Raises:
        UnrealizableSupportError: no point of the spheres has this support.
        NotFreeSubtorusError: the subtorus does not act freely.
    """
    if w.rows != 4 or w.cols != 4 or determinant(w) not in (1, -1):
        raise ValueError("character matrix must be 4x4 and unimodular")
    sup = frozenset(support)
    if not is_realizable_support(sup):
        raise UnrealizableSupportError(f"support {sorted(sup)}")
    if not subtorus_acts_freely(w, h_rows):
        raise NotFreeSubtorusError(f"subtorus rows {h_rows}")
    c_rows = _resolve_complement(h_rows, complement)
    h = len(h_rows)
    p = IntMatrix.from_rows(list(h_rows) + list(c_rows))
    return _support_stabilizer(w, invert_unimodular(p), h, sup)


def _support_stabilizer(
    w: IntMatrix, p_inv: IntMatrix, h: int, sup: frozenset[int]
) -> StabilizerSubgroup:
    """Stabilizer computation after all validation; p_inv inverts the basis."""
    m = 4 - h
    ws_rows = [w.entries[i] for i in sorted(sup)]
    # Residual characters psi pull back along the last m columns of the
    # inverse basis matrix; the pullback must land in the row span of the
    # support characters for psi to annihilate the projected stabilizer.
    stacked = IntMatrix.from_rows(
        [
            [p_inv.entries[r][h + j] for j in range(m)]
            + [-row[r] for row in ws_rows]
            for r in range(4)
        ]
    )
    kernel = integer_kernel(stacked)
    annihilator = hermite_normal_form([vec[:m] for vec in kernel], m)
    if annihilator:
        group = quotient_group(IntMatrix.from_rows(annihilator))
        slopes = integer_kernel(IntMatrix.from_rows(annihilator))
    else:
        group = AbelianGroup(m, ())
        slopes = IntMatrix.identity(m).entries
    assert len(slopes) == group.free_rank
    return StabilizerSubgroup(group=group, slopes=slopes)


@dataclass(frozen=True)
class ArcStratum:
    """Boundary arc of the quotient disk with its circle-stabilizer slope."""

    support: frozenset[int]
    weight: tuple[int, ...]


@dataclass(frozen=True)
class VertexStratum:
    """Corner of the quotient disk with its rank-2 stabilizer."""

    support: frozenset[int]
    group: AbelianGroup


@dataclass(frozen=True)
class IsotropyDiagram:
    """Weighted orbit space of the residual action plus its strata."""

    orbit_space: WeightedOrbitSpace
    arcs: tuple[ArcStratum, ...]
    vertices: tuple[VertexStratum, ...]
    complement: tuple[tuple[int, ...], ...]


def induced_orbit_space(
    w: IntMatrix,
    h_rows: Sequence[Sequence[int]],
    complement: Sequence[Sequence[int]] | None = None,
) -> IsotropyDiagram:
    """Isotropy diagram of the residual torus acting on the quotient.

    Quotienting the spheres by the free subtorus spanned by h_rows leaves an
    action of the residual torus; its orbit space is a disk whose four arcs
    carry the slopes of their circle stabilizers, in the fixed cyclic order
    of the vertex supports.

    Raises:
        NotFreeSubtorusError: the subtorus does not act freely.
        StabilizerRankUnexpectedError: some stratum has a stabilizer of the
            wrong rank (signals an invalid character matrix).
    """
    if w.rows != 4 or w.cols != 4 or determinant(w) not in (1, -1):
        raise ValueError("character matrix must be 4x4 and unimodular")
    if not subtorus_acts_freely(w, h_rows):
        raise NotFreeSubtorusError(f"subtorus rows {h_rows}")
    c_rows = _resolve_complement(h_rows, complement)
    h = len(h_rows)
    p_inv = invert_unimodular(IntMatrix.from_rows(list(h_rows) + list(c_rows)))
    full = _support_stabilizer(w, p_inv, h, FULL_SUPPORT)
    assert full.group.is_trivial, "free subtorus must leave generic orbits free"
    vertices = []
    for sup in VERTEX_SUPPORTS:
        stab = _support_stabilizer(w, p_inv, h, sup)
        if stab.group != AbelianGroup(2, ()):
            raise StabilizerRankUnexpectedError(
                f"vertex {sorted(sup)} has stabilizer {stab.group}, expected a 2-torus"
            )
        vertices.append(VertexStratum(support=sup, group=stab.group))
    arcs = []
    for sup in ARC_SUPPORTS:
        stab = _support_stabilizer(w, p_inv, h, sup)
        if stab.group != AbelianGroup(1, ()):
            raise StabilizerRankUnexpectedError(
                f"arc {sorted(sup)} has stabilizer {stab.group}, expected a circle"
            )
        (slope,) = stab.slopes
        arcs.append(ArcStratum(support=sup, weight=normalize_weight(slope)))
    space = WeightedOrbitSpace(4 - len(h_rows), tuple(arc.weight for arc in arcs))
    return IsotropyDiagram(
        orbit_space=space,
        arcs=tuple(arcs),
        vertices=tuple(vertices),
        complement=c_rows,
    )


def classify_t2_quotient(p: T2ActionParams) -> ManifoldType:
    """Diffeomorphism type of the 4-manifold quotient by a free two-torus.

    Computed structurally: build the ambient character matrix, quotient by
    the (w, z) torus, and classify the induced orbit space.  The sign product
    e2*e3*e4 gives an independent dichotomy that must agree.

    Raises:
        NotFreeError: the parameters fail a freeness equation.
        EpsilonClassMismatchError: diagram type and sign product disagree
            (cannot happen; guards the implementation).
    """
    freeness = is_free_t2(p)
    if not freeness.free:
        raise NotFreeError(freeness.failing)
    diagram = induced_orbit_space(torus_weight_matrix(p), WZ_TORUS)
    mtype = classify_dim4(diagram.orbit_space)
    assert freeness.eps is not None
    e2, e3, e4 = freeness.eps
    if e2 * e3 * e4 == -1:
        expected = (CP2_PLUS_CP2,)
    else:
        expected = (S2XS2, CP2_MINUS_CP2)
    if mtype not in expected:
        raise EpsilonClassMismatchError(
            f"sign product {e2 * e3 * e4} but diagram classifies as {mtype}"
        )
    return mtype


# --- realization of target orbit spaces


def _dihedral_match(observed: tuple, reference: tuple) -> bool:
    """Whether two weight cycles agree up to rotation and reversal."""
    n = len(reference)
    for seq in (reference, reference[::-1]):
        for r in range(n):
            if observed == seq[r:] + seq[:r]:
                return True
    return False


# Natural coordinate complements: residual slopes come out in the leading
# coordinates, making the induced diagram directly comparable to the target.
_WZ_COMPLEMENT = ((1, 0, 0, 0), (0, 1, 0, 0))
_Z_COMPLEMENT = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))


def realize_dim4(target: WeightedOrbitSpace) -> T2ActionParams:
    """Free two-torus action whose quotient realizes a rank-2 target.

    The canonical form of a legal, simply connected four-weight target is
    either the (k, 1) family, realized by the split family with 2r+lam = k,
    or the twisted form realized by the mixed action.  The round trip through
    the induced orbit space is verified before returning.

    Raises:
        UnsupportedRankError: target rank is not 2.
        IllegalOrbitSpaceError: target is not legal.
        NotRealizableError: target is not a four-weight quotient type.
    """
    if target.rank != 2:
        raise UnsupportedRankError(f"rank {target.rank} target in the dimension-4 realizer")
    canon, _ = canonicalize(target)
    if target.n_weights != 4:
        raise NotRealizableError(
            f"{target.n_weights} weights: not a quotient of the product of two 3-spheres"
        )
    ws = canon.weights
    if ws == ((1, 0), (0, 1), (1, 1), (2, 1)):
        params = mixed_t2_family()
    elif ws[:3] == ((1, 0), (0, 1), (1, 0)) and ws[3][1] == 1 and ws[3][0] >= 0:
        k = ws[3][0]
        params = split_t2_family(k // 2, k % 2)
    else:
        raise NotRealizableError(f"canonical form {canon} outside the realizable families")
    diagram = induced_orbit_space(torus_weight_matrix(params), WZ_TORUS, _WZ_COMPLEMENT)
    # Rotation and reversal are equivalences, so a dihedral match against the
    # canonical form already certifies the round trip.
    assert _dihedral_match(diagram.orbit_space.weights, ws) or are_equivalent(
        diagram.orbit_space, target
    )
    return params


def realize_dim5(target: WeightedOrbitSpace) -> Dim5Params:
    """Free-circle parameters whose residual 3-torus realizes a rank-3 target.

    Canonical-position targets are used as given (so the worked parameter
    values are reproducible); others are canonicalized first.  The round trip
    through the induced orbit space of the z-circle is verified.

    Raises:
        UnsupportedRankError: target rank is not 3.
        UnsupportedWeightCountError: target does not have four weights.
        IllegalOrbitSpaceError: target is not legal.
        GcdConditionViolatedError: target is not simply connected or fails
            another gcd condition.
    """
    if target.rank != 3:
        raise UnsupportedRankError(f"rank {target.rank} target in the dimension-5 realizer")
    report = is_legal(target)
    if not report.legal:
        raise IllegalOrbitSpaceError(f"failing adjacent pairs: {report.failing_pairs}")
    if target.n_weights != 4:
        raise UnsupportedWeightCountError(f"{target.n_weights} weights, expected 4")
    positioned = target if in_canonical_position(target) else canonicalize(target)[0]
    params = extract_dim5_params(positioned)
    diagram = induced_orbit_space(torus_weight_matrix(params), Z_CIRCLE, _Z_COMPLEMENT)
    assert _dihedral_match(
        diagram.orbit_space.weights, positioned.weights
    ) or are_equivalent(diagram.orbit_space, target)
    return params


# --- extension of circle actions to torus actions


class ExtensionStatus(Enum):
    EXTENDED = "extended"  # witness torus found and re-verified
    NECESSARY_CONDITION_FAILS = "necessary-condition-fails"  # proved: no extension
    NO_SOLUTION = "no-solution"  # proved: sign equations have no integer solution
    SEARCH_EXHAUSTED = "search-exhausted"  # inconclusive; unused by the exact solver


@dataclass(frozen=True)
class ExtensionOutcome:
    """Result of the torus-extension decision.

    On success the witness torus contains the given circle as its z-circle
    (embedding slope (0, 1) in the (w, z) parameters).
    """

    status: ExtensionStatus
    witness: T2ActionParams | None
    detail: str

    @property
    def extended(self) -> bool:
        return self.status is ExtensionStatus.EXTENDED


def _solve_extension(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int] | None:
    """Exact solution (m, n, k, l) of the extension equations, or None.

    The equations are a*m + c*n = 1 with |a*l + d*n|, |b*m - c*k| and
    |b*l - d*k| all 1.  Shifting (m, n) along its Bezout line while shearing
    (k, l) by (-b, -d) times the same step leaves all four expressions
    unchanged, so one point per line decides; the remaining freedom is a
    finite sign choice with a divisibility test each.
    """
    if a != 0 and c != 0:
        g, m0, n0 = gcd_ext(a, c)
        assert g == 1
        for e2 in (1, -1):
            if (e2 - d * n0) % a:
                continue
            l0 = (e2 - d * n0) // a
            for e3 in (1, -1):
                if (b * m0 - e3) % c:
                    continue
                k0 = (b * m0 - e3) // c
                if abs(b * l0 - d * k0) == 1:
                    return (m0, n0, k0, l0)
        return None
    if a == 0:
        # Freeness forces |c| = |d| = 1; the Bezout equation pins n = c.
        n0 = c
        if b == 0:
            return (0, n0, c, 0)
        for e3 in (1, -1):
            k0 = -c * e3
            for e4 in (1, -1):
                if (e4 + d * k0) % b == 0:
                    return (0, n0, k0, (e4 + d * k0) // b)
        return None
    # c == 0: freeness forces |a| = |b| = 1 and the Bezout equation m = a.
    m0 = a
    if d == 0:
        return (m0, 0, 0, b)
    for e2 in (1, -1):
        l0 = a * e2
        for e4 in (1, -1):
            if (b * l0 - e4) % d == 0:
                return (m0, 0, (b * l0 - e4) // d, l0)
    return None


def extend_circle_to_t2(
    p: CircleActionParams, bound: int | None = None
) -> ExtensionOutcome:
    """Decide whether a free circle action extends to a free two-torus action.

    First the necessary condition: some sign combination of
    b*d +- a*c +- a*d +- b*c must vanish; if none does, no extension exists.
    Otherwise the extension equations are solved exactly, so the outcome is
    always a verified witness or a proof of non-existence.

    Args:
        p: free circle exponents.
        bound: accepted for compatibility with bounded searches; the solver
            is exact and ignores it.

    Raises:
        NotFreeError: the circle does not act freely.
        DegenerateActionError: all exponents vanish.
    """
    del bound
    if not is_free_circle(p):
        raise NotFreeError(f"circle {p} has a common exponent divisor across factors")
    a, b, c, d = p.a, p.b, p.c, p.d
    values = [
        b * d + s1 * a * c + s2 * a * d + s3 * b * c
        for s1, s2, s3 in product((1, -1), repeat=3)
    ]
    if all(v != 0 for v in values):
        return ExtensionOutcome(
            status=ExtensionStatus.NECESSARY_CONDITION_FAILS,
            witness=None,
            detail=f"b*d +- a*c +- a*d +- b*c takes the values {sorted(set(values))}",
        )
    solution = _solve_extension(a, b, c, d)
    if solution is None:
        return ExtensionOutcome(
            status=ExtensionStatus.NO_SOLUTION,
            witness=None,
            detail="the sign equations have no integer solution",
        )
    m, n, k, l = solution
    witness = T2ActionParams(a=a, b=b, c=c, d=d, n=n, k=k, m=m, l=l)
    check = is_free_t2(witness)
    assert check.free, f"extension witness fails: {check.failing}"
    return ExtensionOutcome(
        status=ExtensionStatus.EXTENDED,
        witness=witness,
        detail="circle embeds as the z-circle of the witness torus",
    )


def circle_bundle_total_space(base: T2ActionParams, p: int, q: int) -> ManifoldType:
    """Type of the 5-manifold over the quotient of a free two-torus action.

    The circle embedded at slope (p, q) in the (w, z) torus leaves a
    complementary free circle on the spheres; the total space of the induced
    bundle over the 4-manifold quotient is its 5-manifold quotient, whose
    type is the parity class of the composed exponents.

    Raises:
        SlopesNotCoprimeError: (p, q) is not primitive.
        NotFreeError: the base parameters do not act freely.
    """
    if gcd(p, q) != 1:
        raise SlopesNotCoprimeError(f"slope ({p},{q})")
    freeness = is_free_t2(base)
    if not freeness.free:
        raise NotFreeError(freeness.failing)
    sub = CircleActionParams(
        a=q * base.a - p * base.n,
        b=q * base.b + p * base.k,
        c=q * base.c + p * base.m,
        d=q * base.d + p * base.l,
    )
    # Subcircles of free torus actions are free.
    assert is_free_circle(sub)
    return w2_class(sub)


# --- circle subactions on quotients


def project_slope_to_residual(
    h_rows: Sequence[Sequence[int]],
    c_rows: Sequence[Sequence[int]],
    slope: Sequence[int],
) -> tuple[int, ...]:
    """Coordinates of an ambient circle in the residual torus.

    Decomposes the slope over the basis (h_rows, c_rows) and returns the
    complement coefficients, which describe the circle's image in the
    quotient torus (unreduced, so isotropy orders read off correctly).
    """
    p = IntMatrix.from_rows(list(h_rows) + list(c_rows))
    p_inv = invert_unimodular(p)
    coeffs = tuple(
        sum(slope[i] * p_inv.entries[i][j] for i in range(4)) for j in range(4)
    )
    residual = coeffs[len(h_rows):]
    assert any(x != 0 for x in residual), "circle lies inside the quotiented subtorus"
    return residual


def circle_arc_isotropy_orders(
    diagram: IsotropyDiagram, slope: Sequence[int]
) -> tuple[int, ...]:
    """Isotropy order of a residual circle along each arc of a rank-2 diagram.

    The circle at the given slope meets the arc's stabilizer circle in a
    cyclic group of order |cross product|; order 0 means the two circles
    coincide (the arc is fixed).
    """
    assert diagram.orbit_space.rank == 2, "arc orders need a rank-2 residual torus"
    s0, s1 = slope
    return tuple(
        abs(s0 * arc.weight[1] - s1 * arc.weight[0]) for arc in diagram.arcs
    )


def circle_quotient_orbifold_orders(r: int, s: int) -> tuple[int, int, int, int]:
    """Arc isotropy orders of the residual circle over the (r, s) family.

    Quotient the spheres by the free two-torus of the split family with odd
    twist (parameters (r, 1)); the circle with ambient exponents
    (-s, s, -1, 1) survives to the 4-manifold quotient, and quotienting by it
    gives a 3-orbifold whose four boundary arcs see isotropy of orders
    2, |2(r-s)+1|, 2, |2(r+s)+1|.
    """
    t2 = split_t2_family(r, 1)
    h_rows = ((t2.a, t2.b, t2.c, t2.d), (-t2.n, t2.k, t2.m, t2.l))
    c_rows = ((0, 1, 0, 0), (0, 0, 0, 1))
    diagram = induced_orbit_space(IntMatrix.identity(4), h_rows, complement=c_rows)
    residual = project_slope_to_residual(h_rows, c_rows, (-s, s, -1, 1))
    orders = circle_arc_isotropy_orders(diagram, residual)
    assert len(orders) == 4
    return orders
