"""Diffeomorphism type of the manifold behind a legal weighted orbit space.

Rank-2 weights describe closed simply connected 4-manifolds, rank-3 weights
describe 5-manifolds.  Both classifications read everything off the weight
sequence: the 4-dimensional one by pattern on the canonical form, the
5-dimensional one through the parameter tuple (a, b, c, d, k, l, m, n)
recovered by extract_dim5_params.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    GcdConditionViolatedError,
    IllegalOrbitSpaceError,
    InconsistentShearError,
    NotCanonicalPositionError,
    OrientationMismatchError,
    UnsupportedRankError,
    UnsupportedWeightCountError,
)
from .lattice import AbelianGroup, cyclic_group, gcd_ext
from .orbit_space import (
    WeightedOrbitSpace,
    canonicalize,
    is_legal,
    pi1_bound,
    reversed_space,
)


@dataclass(frozen=True)
class ManifoldType:
    """Diffeomorphism type tag, with a count or group payload where needed."""

    tag: str
    count: int | None = None  # only for ConnectedSumDim4
    group: AbelianGroup | None = None  # only for NotSimplyConnected

    def __str__(self) -> str:
        if self.count is not None:
            return f"{self.tag}({self.count})"
        if self.group is not None:
            return f"{self.tag}({self.group})"
        return self.tag


S4 = ManifoldType("S4")
CP2 = ManifoldType("CP2")  # orientation not determined by the weights
S2XS2 = ManifoldType("S2xS2")
CP2_PLUS_CP2 = ManifoldType("CP2#CP2")
CP2_MINUS_CP2 = ManifoldType("CP2#-CP2")
S5 = ManifoldType("S5")
S3XS2 = ManifoldType("S3xS2")
S3TWISTS2 = ManifoldType("S3twistS2")
PRODUCT_WITH_CIRCLE = ManifoldType("ProductWithCircle")


def connected_sum_dim4(count: int) -> ManifoldType:
    """Connected sum with second Betti number `count`; no finer type known."""
    assert count >= 3
    return ManifoldType("ConnectedSumDim4", count=count)


def not_simply_connected(group: AbelianGroup) -> ManifoldType:
    assert not group.is_trivial
    return ManifoldType("NotSimplyConnected", group=group)


def _dim4_type_from_canonical(weights: tuple[tuple[int, ...], ...]) -> ManifoldType:
    # In a based legal four-weight sequence e1, e2, (1,b), (c,d) the adjacent
    # determinant conditions force b*c to be 0 or +-2; the two cases are the
    # sphere-bundle parity family and the twisted double respectively.
    assert weights[0] == (1, 0) and weights[1] == (0, 1)
    (_, b), (c, _) = weights[2], weights[3]
    if b * c == 0:
        k = b + c
        return S2XS2 if k % 2 == 0 else CP2_MINUS_CP2
    if abs(b * c) == 2:
        return CP2_PLUS_CP2
    raise AssertionError(f"based weights {weights} escape the legal trichotomy")


def classify_dim4(s: WeightedOrbitSpace) -> ManifoldType:
    """Diffeomorphism type of the 4-manifold over a rank-2 orbit space.

    Two weights give the 4-sphere, three the complex projective plane, four
    one of the three sphere-bundle/connected-sum types, and more weights a
    connected sum whose summand count is all the weights determine.

    The four-weight type is computed on the canonical forms of both boundary
    orientations; they must agree.

    Raises:
        UnsupportedRankError: rank is not 2.
        IllegalOrbitSpaceError: some adjacent pair is not legal.
        OrientationMismatchError: the two orientations disagree (no legal
            input is known to trigger this; surfaced rather than resolved).
    """
    if s.rank != 2:
        raise UnsupportedRankError(f"rank {s.rank} orbit space in the 4-manifold classifier")
    report = is_legal(s)
    if not report.legal:
        raise IllegalOrbitSpaceError(f"failing adjacent pairs: {report.failing_pairs}")
    if report.simply_connected_certificate is None:
        # Unreachable for legal rank 2 (any adjacent pair certifies), but the
        # contract covers it: no spanning pair means a circle splits off.
        if not report.spans:
            return PRODUCT_WITH_CIRCLE
        return not_simply_connected(pi1_bound(s))
    n = s.n_weights
    if n == 2:
        return S4
    if n == 3:
        return CP2
    if n > 4:
        return connected_sum_dim4(n - 2)
    forward, _ = canonicalize(s, oriented=True)
    backward, _ = canonicalize(reversed_space(s), oriented=True)
    type_fwd = _dim4_type_from_canonical(forward.weights)
    type_bwd = _dim4_type_from_canonical(backward.weights)
    if type_fwd != type_bwd:
        raise OrientationMismatchError(
            f"{type_fwd} with the given orientation, {type_bwd} reversed"
        )
    return type_fwd


# --- dimension 5


def _require_canonical_position(s: WeightedOrbitSpace) -> None:
    if s.rank != 3:
        raise UnsupportedRankError(f"rank {s.rank}, expected 3")
    if s.n_weights != 4:
        raise UnsupportedWeightCountError(f"{s.n_weights} weights, expected 4")
    if s.weights[0] != (1, 0, 0) or s.weights[1] != (0, 1, 0):
        raise NotCanonicalPositionError(
            f"weights start {s.weights[0]}, {s.weights[1]}; expected e1, e2"
        )


def in_canonical_position(s: WeightedOrbitSpace) -> bool:
    """Whether the weights read e1, e2, x3, x4."""
    try:
        _require_canonical_position(s)
    except (
        UnsupportedRankError,
        UnsupportedWeightCountError,
        NotCanonicalPositionError,
    ):
        return False
    return True


def pi1_dim5_exact(s: WeightedOrbitSpace) -> AbelianGroup:
    """Fundamental group of the 5-manifold over a canonical-position space.

    For weights e1, e2, (p,q,r), (x,y,z) the group is cyclic of order
    gcd(r, z).  Unlike pi1_bound this is exact, and the two must agree here.
    """
    _require_canonical_position(s)
    report = is_legal(s)
    if not report.legal:
        raise IllegalOrbitSpaceError(f"failing adjacent pairs: {report.failing_pairs}")
    (_, _, r), (_, _, z) = s.weights[2], s.weights[3]
    return cyclic_group(gcd(r, z))


@dataclass(frozen=True)
class Dim5Params:
    """Parameters (a, b, c, d) plus shears (k, l) and Bezout pair (m, n).

    These determine a torus action on a product of two 3-spheres whose
    orbit space has weights e1, e2 and

        x3 = (b*m - c*k, d*m - c*l, c),
        x4 = (-b*n - a*k, -d*n - a*l, a).
    """

    a: int
    b: int
    c: int
    d: int
    k: int
    l: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.a * self.m + self.c * self.n != 1:
            raise ValueError(
                f"a*m + c*n = {self.a * self.m + self.c * self.n}, expected 1"
            )
        for left, right in (("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")):
            g = gcd(getattr(self, left), getattr(self, right))
            if g != 1:
                raise ValueError(f"gcd({left},{right}) = {g}, expected 1")


def dim5_orbit_space(params: Dim5Params) -> WeightedOrbitSpace:
    """The canonical-position orbit space with the weights the params encode."""
    a, b, c, d, k, l, m, n = (
        params.a,
        params.b,
        params.c,
        params.d,
        params.k,
        params.l,
        params.m,
        params.n,
    )
    x3 = (b * m - c * k, d * m - c * l, c)
    x4 = (-b * n - a * k, -d * n - a * l, a)
    return WeightedOrbitSpace(3, ((1, 0, 0), (0, 1, 0), x3, x4))


def extract_dim5_params(s: WeightedOrbitSpace) -> Dim5Params:
    """Recover the action parameters from a canonical-position orbit space.

    With weights e1, e2, (p,q,r), (x,y,z):

        a = z,  b = p*z - r*x,  c = r,  d = q*z - r*y,

    (m, n) is the deterministic Bezout pair for a*m + c*n = 1 (minimal |n|,
    ties broken by n >= 0), and the shears are k = -(x*m + p*n),
    l = -(y*m + q*n).  All four defining weight equations are re-checked.

    Raises:
        GcdConditionViolatedError: one of the four gcd conditions fails,
            named in the message.
        InconsistentShearError: the recovered parameters do not reproduce the
            weights (cannot happen; guards the implementation).
    """
    _require_canonical_position(s)
    report = is_legal(s)
    if not report.legal:
        raise IllegalOrbitSpaceError(f"failing adjacent pairs: {report.failing_pairs}")
    (p, q, r), (x, y, z) = s.weights[2], s.weights[3]
    conditions = (
        ("gcd(r,z)", gcd(r, z)),
        ("gcd(p,r)", gcd(p, r)),
        ("gcd(y,z)", gcd(y, z)),
        ("gcd(p*y-q*x, r*x-p*z, q*z-r*y)", gcd(p * y - q * x, r * x - p * z, q * z - r * y)),
    )
    for name, value in conditions:
        if value != 1:
            raise GcdConditionViolatedError(f"{name} = {value}, expected 1")
    a, b, c, d = z, p * z - r * x, r, q * z - r * y
    _, bezout_n, bezout_m = gcd_ext(c, a)
    m, n = bezout_m, bezout_n
    assert a * m + c * n == 1
    k = -(x * m + p * n)
    l = -(y * m + q * n)
    # Both determinations of the shears must agree with the weights.
    checks = (
        ("p", p, b * m - c * k),
        ("q", q, d * m - c * l),
        ("x", x, -b * n - a * k),
        ("y", y, -d * n - a * l),
    )
    for name, want, got in checks:
        if want != got:
            raise InconsistentShearError(f"{name}: weights give {want}, params give {got}")
    return Dim5Params(a=a, b=b, c=c, d=d, k=k, l=l, m=m, n=n)


def classify_dim5(s: WeightedOrbitSpace) -> ManifoldType:
    """Diffeomorphism type of the 5-manifold over a rank-3 orbit space.

    Three weights give the 5-sphere when simply connected.  Four weights give
    one of the two 3-sphere bundles over the 2-sphere, twisted exactly when
    a + b + c + d is odd.  Inputs not already in canonical position are
    canonicalized first; the type is constant on equivalence classes.

    Raises:
        UnsupportedRankError: rank is not 3.
        UnsupportedWeightCountError: more than four weights.
        IllegalOrbitSpaceError: some adjacent pair is not legal.
    """
    if s.rank != 3:
        raise UnsupportedRankError(f"rank {s.rank} orbit space in the 5-manifold classifier")
    report = is_legal(s)
    if not report.legal:
        raise IllegalOrbitSpaceError(f"failing adjacent pairs: {report.failing_pairs}")
    if s.n_weights == 3:
        bound = pi1_bound(s)
        # The bound is only proved exact for four weights; with three it is
        # still conclusive when trivial.
        if bound.is_trivial:
            return S5
        return not_simply_connected(bound)
    if s.n_weights > 4:
        raise UnsupportedWeightCountError(
            f"{s.n_weights} weights; the classification covers at most 4"
        )
    positioned = s if in_canonical_position(s) else canonicalize(s)[0]
    pi1 = pi1_dim5_exact(positioned)
    if not pi1.is_trivial:
        return not_simply_connected(pi1)
    params = extract_dim5_params(positioned)
    total = params.a + params.b + params.c + params.d
    evens = sum(1 for v in (params.a, params.b, params.c, params.d) if v % 2 == 0)
    # The pairwise gcd conditions make the two parity readings equivalent.
    assert (total % 2 == 1) == (evens == 1)
    return S3TWISTS2 if total % 2 else S3XS2


@dataclass(frozen=True)
class LensSpace:
    """Lens space L(order; twist); order 1 is the 3-sphere, order 0 is S2xS1."""

    order: int
    twist: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", abs(self.order))
        if self.order >= 1:
            object.__setattr__(self, "twist", self.twist % self.order)

    def describe(self) -> str:
        if self.order == 0:
            return "S2xS1"
        if self.order == 1:
            return "S3"
        return f"L({self.order};{self.twist})"


def boundary_lens_spaces(s: WeightedOrbitSpace) -> tuple[LensSpace, LensSpace]:
    """The two lens spaces splitting the 5-manifold over a canonical-position space.

    With weights e1, e2, (p,q,r), (x,y,z) and a Bezout pair lam*y + mu*z = 1:

        L1 = L(r; p),    L2 = L(q*z - r*y; p - (lam*q + mu*r)*x).

    Raises:
        NotCanonicalPositionError: weights do not start e1, e2.
        GcdConditionViolatedError: gcd(y, z) != 1, so no Bezout pair exists.
    """
    _require_canonical_position(s)
    (p, q, r), (x, y, z) = s.weights[2], s.weights[3]
    g, lam, mu = gcd_ext(y, z)
    if g != 1:
        raise GcdConditionViolatedError(f"gcd(y,z) = {g}, expected 1")
    first = LensSpace(order=r, twist=p)
    second = LensSpace(order=q * z - r * y, twist=p - (lam * q + mu * r) * x)
    return (first, second)
