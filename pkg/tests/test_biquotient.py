"""Tests for torus actions on the product of two 3-spheres."""

import random
from itertools import product
from math import gcd

import numpy as np
import pytest

from torusorbits.biquotient import (
    ARC_SUPPORTS,
    FULL_SUPPORT,
    VERTEX_SUPPORTS,
    WZ_TORUS,
    Z_CIRCLE,
    CircleActionParams,
    ExtensionStatus,
    T2ActionParams,
    circle_arc_isotropy_orders,
    circle_bundle_total_space,
    circle_quotient_orbifold_orders,
    classify_t2_quotient,
    extend_circle_to_t2,
    induced_orbit_space,
    induced_stabilizer,
    is_free_circle,
    is_free_t2,
    is_realizable_support,
    mixed_t2_family,
    project_slope_to_residual,
    realizable_supports,
    realize_dim4,
    realize_dim5,
    split_t2_family,
    subtorus_acts_freely,
    torus_weight_matrix,
    w2_class,
)
from torusorbits.classify import (
    CP2_MINUS_CP2,
    CP2_PLUS_CP2,
    S2XS2,
    S3TWISTS2,
    S3XS2,
    Dim5Params,
    dim5_orbit_space,
)
from torusorbits.errors import (
    DegenerateActionError,
    GcdConditionViolatedError,
    NotFreeError,
    NotFreeSubtorusError,
    NotRealizableError,
    SlopesNotCoprimeError,
    UnrealizableSupportError,
    UnsupportedRankError,
)
from torusorbits.lattice import AbelianGroup, IntMatrix, determinant, gcd_ext, invert_unimodular
from torusorbits.orbit_space import are_equivalent, normalize_weight

from support import random_legal_space, space

E2_COMPLEMENT = ((1, 0, 0, 0), (0, 1, 0, 0))
E3_COMPLEMENT = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))

DIM5_EXAMPLE = Dim5Params(3, 1, 2, 1, 0, 0, 1, -1)


def rotations(seq):
    n = len(seq)
    return [tuple(seq[(i + r) % n] for i in range(n)) for r in range(n)]


def dihedral_matches(observed, expected):
    """Cyclic sequences agree up to rotation and reflection."""
    observed = tuple(observed)
    return any(observed == cand for s in (tuple(expected), tuple(reversed(expected))) for cand in rotations(s))


def test_support_realizability():
    assert len(realizable_supports()) == 9
    assert is_realizable_support({0, 2})
    assert is_realizable_support({0, 1, 2, 3})
    assert not is_realizable_support({0, 1})
    assert not is_realizable_support({2, 3})
    assert not is_realizable_support({3})
    assert not is_realizable_support(set())
    # every realizable pattern keeps a coordinate on each sphere
    for sup in realizable_supports():
        assert sup & {0, 1} and sup & {2, 3}


def test_support_tables_cyclic_consistency():
    for i in range(4):
        union = VERTEX_SUPPORTS[i] | VERTEX_SUPPORTS[(i + 1) % 4]
        assert ARC_SUPPORTS[i] == union
        assert len(ARC_SUPPORTS[i]) == 3
    assert ARC_SUPPORTS == (
        frozenset({0, 2, 3}),
        frozenset({0, 1, 3}),
        frozenset({1, 2, 3}),
        frozenset({0, 1, 2}),
    )
    assert FULL_SUPPORT == frozenset({0, 1, 2, 3})


def test_family_parameter_values():
    assert split_t2_family(2, 1) == T2ActionParams(a=1, b=1, c=0, d=0, n=2, k=3, m=1, l=1)
    assert split_t2_family(0, 0) == T2ActionParams(a=1, b=1, c=0, d=0, n=0, k=0, m=1, l=1)
    assert mixed_t2_family() == T2ActionParams(a=1, b=0, c=-1, d=1, n=0, k=1, m=1, l=1)
    assert is_free_t2(split_t2_family(-3, 1)).free
    assert is_free_t2(mixed_t2_family()).free


def test_free_circle_examples():
    assert is_free_circle(CircleActionParams(1, 1, 1, 1))
    assert is_free_circle(CircleActionParams(-1, 3, 16, 5))
    assert not is_free_circle(CircleActionParams(2, 3, 4, 5))
    assert is_free_circle(CircleActionParams(0, 0, 1, 1))
    assert not is_free_circle(CircleActionParams(0, 0, 2, 1))


def test_free_circle_matches_support_gcds():
    # Stabilizer at a support is cyclic of order gcd of the exponents there;
    # freeness is triviality over every realizable support.
    rng = random.Random(11)
    exps = [(rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(300)]
    for a, b, c, d in exps:
        if a == b == c == d == 0:
            continue
        p = CircleActionParams(a, b, c, d)
        brute = all(gcd(*[(a, b, c, d)[i] for i in sorted(sup)]) == 1 for sup in realizable_supports())
        assert is_free_circle(p) == brute


def test_degenerate_circle_raises():
    with pytest.raises(DegenerateActionError):
        is_free_circle(CircleActionParams(0, 0, 0, 0))


def test_w2_class_examples():
    assert w2_class(CircleActionParams(1, 1, 1, 1)) == S3XS2
    assert w2_class(CircleActionParams(-1, 3, 16, 5)) == S3TWISTS2
    assert w2_class(CircleActionParams(1, -1, 1, 0)) == S3TWISTS2
    assert w2_class(CircleActionParams(0, 0, 1, 1)) == S3XS2
    with pytest.raises(NotFreeError):
        w2_class(CircleActionParams(2, 3, 4, 5))


def test_w2_class_parity_property():
    rng = random.Random(23)
    seen = {S3XS2: 0, S3TWISTS2: 0}
    for _ in range(400):
        p = CircleActionParams(*(rng.randint(-9, 9) for _ in range(4)))
        if p == CircleActionParams(0, 0, 0, 0) or not is_free_circle(p):
            continue
        t = w2_class(p)
        assert t == (S3TWISTS2 if (p.a + p.b + p.c + p.d) % 2 else S3XS2)
        seen[t] += 1
    assert seen[S3XS2] > 10 and seen[S3TWISTS2] > 10


def test_t2_freeness_examples():
    for r, lam in product(range(-4, 5), (0, 1)):
        assert is_free_t2(split_t2_family(r, lam)).eps == (1, 1, 1)
    assert is_free_t2(mixed_t2_family()).eps == (1, 1, -1)
    verdict = is_free_t2(T2ActionParams(1, 1, 0, 3, 0, 1, 1, 1))
    assert not verdict.free
    assert verdict.failing == "b*l - d*k = -2"
    assert not is_free_t2(T2ActionParams(1, 0, 0, 1, 0, 0, 2, 0)).free


def test_weight_matrix_determinant():
    rng = random.Random(37)
    units = 0
    for _ in range(600):
        vals = [rng.randint(-5, 5) for _ in range(8)]
        p = T2ActionParams(*vals)
        expected = p.a * p.m + p.c * p.n
        if expected in (1, -1):
            units += 1
            assert determinant(torus_weight_matrix(p)) == expected
        else:
            with pytest.raises(ValueError):
                torus_weight_matrix(p)
    assert units > 20


def test_subtorus_freeness():
    w_split = torus_weight_matrix(split_t2_family(1, 1))
    assert subtorus_acts_freely(w_split, WZ_TORUS)
    assert subtorus_acts_freely(torus_weight_matrix(mixed_t2_family()), WZ_TORUS)
    assert subtorus_acts_freely(torus_weight_matrix(DIM5_EXAMPLE), Z_CIRCLE)
    # A coordinate circle acting on a single coordinate fixes points.
    assert not subtorus_acts_freely(IntMatrix.identity(4), ((1, 0, 0, 0),))
    # A non-free torus: w-circle with a common factor on one coordinate pair.
    bad = T2ActionParams(1, 1, 0, 3, 0, 1, 1, 1)
    assert not subtorus_acts_freely(torus_weight_matrix(bad), WZ_TORUS)


def test_stabilizer_arc_slopes_split():
    for r, lam in product(range(-3, 4), (0, 1)):
        w = torus_weight_matrix(split_t2_family(r, lam))
        stab = induced_stabilizer(w, WZ_TORUS, {0, 1, 3}, E2_COMPLEMENT)
        assert stab.group == AbelianGroup(1, ())
        assert normalize_weight(stab.slopes[0]) == normalize_weight((2 * r + lam, 1))


def test_stabilizer_dim5_arc_closed_form():
    w = torus_weight_matrix(DIM5_EXAMPLE)
    p = DIM5_EXAMPLE
    stab = induced_stabilizer(w, Z_CIRCLE, {1, 2, 3}, E3_COMPLEMENT)
    assert stab.group == AbelianGroup(1, ())
    expected = (p.b * p.m - p.c * p.k, p.d * p.m - p.c * p.l, p.c)
    assert normalize_weight(stab.slopes[0]) == normalize_weight(expected)
    assert normalize_weight(expected) == (1, 1, 2)


def test_stabilizer_vertex_full_residual():
    w = torus_weight_matrix(split_t2_family(2, 0))
    stab = induced_stabilizer(w, WZ_TORUS, {0, 2}, E2_COMPLEMENT)
    assert stab.group == AbelianGroup(2, ())
    assert stab.slopes == ((1, 0), (0, 1))


def test_stabilizer_full_support_trivial():
    w = torus_weight_matrix(split_t2_family(-1, 1))
    stab = induced_stabilizer(w, WZ_TORUS, FULL_SUPPORT, E2_COMPLEMENT)
    assert stab.group.is_trivial
    assert stab.slopes == ()


def test_stabilizer_errors():
    w = torus_weight_matrix(split_t2_family(1, 0))
    with pytest.raises(UnrealizableSupportError):
        induced_stabilizer(w, WZ_TORUS, {0, 1})
    with pytest.raises(NotFreeSubtorusError):
        induced_stabilizer(IntMatrix.identity(4), ((1, 0, 0, 0),), FULL_SUPPORT)
    with pytest.raises(ValueError):
        induced_stabilizer(IntMatrix.identity(3), WZ_TORUS, FULL_SUPPORT)
    with pytest.raises(ValueError):
        induced_stabilizer(w, WZ_TORUS, FULL_SUPPORT, ((1, 0, 0, 0), (1, 0, 0, 0)))


def test_induced_diagram_split_exact():
    for r, lam in product(range(-3, 4), (0, 1)):
        w = torus_weight_matrix(split_t2_family(r, lam))
        diagram = induced_orbit_space(w, WZ_TORUS, E2_COMPLEMENT)
        expected = [(1, 0), normalize_weight((2 * r + lam, 1)), (1, 0), (0, 1)]
        assert [a.weight for a in diagram.arcs] == expected
        assert [a.support for a in diagram.arcs] == list(ARC_SUPPORTS)
        assert all(v.group == AbelianGroup(2, ()) for v in diagram.vertices)
        assert diagram.orbit_space.rank == 2
        # matches the closed-form disk up to starting corner and reflection
        closed_form = [(1, 0), (0, 1), (1, 0), normalize_weight((2 * r + lam, 1))]
        assert dihedral_matches([a.weight for a in diagram.arcs], closed_form)


def test_induced_diagram_mixed_exact():
    diagram = induced_orbit_space(torus_weight_matrix(mixed_t2_family()), WZ_TORUS, E2_COMPLEMENT)
    assert [a.weight for a in diagram.arcs] == [(1, 0), (1, 1), (1, 2), (0, 1)]
    assert are_equivalent(diagram.orbit_space, space(2, (1, 0), (0, 1), (1, 1), (2, 1)))


def test_induced_diagram_dim5_exact():
    p = DIM5_EXAMPLE
    diagram = induced_orbit_space(torus_weight_matrix(p), Z_CIRCLE, E3_COMPLEMENT)
    assert [a.weight for a in diagram.arcs] == [(1, 0, 0), (1, 1, 3), (1, 1, 2), (0, 1, 0)]
    assert diagram.orbit_space.rank == 3
    closed_form = dim5_orbit_space(p)
    assert are_equivalent(diagram.orbit_space, closed_form)
    assert dihedral_matches([a.weight for a in diagram.arcs], closed_form.weights)


def test_induced_diagram_default_complement_equivalent():
    w = torus_weight_matrix(split_t2_family(2, 1))
    explicit = induced_orbit_space(w, WZ_TORUS, E2_COMPLEMENT)
    default = induced_orbit_space(w, WZ_TORUS)
    assert are_equivalent(default.orbit_space, explicit.orbit_space)
    assert [a.support for a in default.arcs] == [a.support for a in explicit.arcs]


def test_classify_t2_quotient_trio():
    assert classify_t2_quotient(split_t2_family(0, 0)) == S2XS2
    assert classify_t2_quotient(split_t2_family(1, 1)) == CP2_MINUS_CP2
    assert classify_t2_quotient(mixed_t2_family()) == CP2_PLUS_CP2
    for r in range(-3, 4):
        assert classify_t2_quotient(split_t2_family(r, 0)) == S2XS2
        assert classify_t2_quotient(split_t2_family(r, 1)) == CP2_MINUS_CP2
    with pytest.raises(NotFreeError):
        classify_t2_quotient(T2ActionParams(1, 1, 0, 3, 0, 1, 1, 1))


def test_realize_dim4_examples():
    assert realize_dim4(space(2, (1, 0), (0, 1), (1, 0), (4, 1))) == split_t2_family(2, 0)
    assert realize_dim4(space(2, (1, 0), (0, 1), (1, 0), (3, 1))) == split_t2_family(1, 1)
    assert realize_dim4(space(2, (1, 0), (0, 1), (1, 1), (2, 1))) == mixed_t2_family()
    assert realize_dim4(space(2, (0, 1), (1, 0), (0, 1), (1, 2))) == split_t2_family(1, 0)


def test_realize_dim4_errors():
    with pytest.raises(UnsupportedRankError):
        realize_dim4(space(3, (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)))
    with pytest.raises(NotRealizableError):
        realize_dim4(space(2, (1, 0), (0, 1), (1, 1)))  # CP2 is not such a quotient


def test_realize_dim4_round_trip_random():
    rng = random.Random(51)
    for _ in range(40):
        target = random_legal_space(rng, 2)
        params = realize_dim4(target)  # round trip asserted internally
        assert is_free_t2(params).free


def test_realize_dim5_examples():
    target = space(3, (1, 0, 0), (0, 1, 0), (1, 1, 2), (1, 1, 3))
    assert realize_dim5(target) == DIM5_EXAMPLE
    other = space(3, (1, 0, 0), (0, 1, 0), (1, 1, 1), (0, 0, 1))
    assert realize_dim5(other) == Dim5Params(1, 1, 1, 1, 0, 0, 1, 0)


def test_realize_dim5_round_trip_random():
    rng = random.Random(67)
    realized = 0
    for _ in range(40):
        target = random_legal_space(rng, 3)
        try:
            params = realize_dim5(target)
        except GcdConditionViolatedError:
            continue  # not simply connected
        realized += 1
        assert are_equivalent(dim5_orbit_space(params), target)
    assert realized > 10


def test_extension_examples():
    out = extend_circle_to_t2(CircleActionParams(2, 1, 1, 3))
    assert out.status is ExtensionStatus.EXTENDED
    assert out.witness == T2ActionParams(a=2, b=1, c=1, d=3, n=1, k=-1, m=0, l=-2)

    out = extend_circle_to_t2(CircleActionParams(1, 1, 1, 1))
    assert out.extended
    assert (out.witness.a, out.witness.b, out.witness.c, out.witness.d) == (1, 1, 1, 1)
    assert is_free_t2(out.witness).free

    out = extend_circle_to_t2(CircleActionParams(1, 1, 0, 0))
    assert out.extended
    assert out.witness == split_t2_family(0, 0)

    out = extend_circle_to_t2(CircleActionParams(-1, 3, 16, 5))
    assert out.status is ExtensionStatus.NECESSARY_CONDITION_FAILS
    assert out.witness is None

    with pytest.raises(NotFreeError):
        extend_circle_to_t2(CircleActionParams(2, 3, 4, 5))


def test_extension_obstructed_family():
    for j in range(7):
        p = CircleActionParams(-1, 3, 15 * j + 1, 5)
        assert is_free_circle(p)
        a, b, c, d = p.a, p.b, p.c, p.d
        values = [
            b * d + s1 * a * c + s2 * a * d + s3 * b * c
            for s1, s2, s3 in product((1, -1), repeat=3)
        ]
        assert all(v != 0 for v in values)
        out = extend_circle_to_t2(p)
        assert out.status is ExtensionStatus.NECESSARY_CONDITION_FAILS


def brute_extension_exists(a, b, c, d, window=6):
    """Bounded search over the Bezout line and small shears."""
    g, m0, n0 = gcd_ext(a, c)
    assert g == 1
    for x in range(-window, window + 1):
        m, n = m0 - c * x, n0 + a * x
        for k in range(-window, window + 1):
            if abs(b * m - c * k) != 1:
                continue
            for l in range(-window, window + 1):
                if abs(a * l + d * n) == 1 and abs(b * l - d * k) == 1:
                    return True
    return False


def test_extension_exhaustive_small():
    # Exact decision agrees with a bounded witness search on small exponents.
    for a, b, c, d in product(range(-2, 3), repeat=4):
        if a == b == c == d == 0:
            continue
        p = CircleActionParams(a, b, c, d)
        if not is_free_circle(p):
            continue
        out = extend_circle_to_t2(p)
        assert out.extended == brute_extension_exists(a, b, c, d)
        if out.extended:
            w = out.witness
            assert (w.a, w.b, w.c, w.d) == (a, b, c, d)
            assert is_free_t2(w).free


def coprime_slopes(bound):
    return [(p, q) for p in range(-bound, bound + 1) for q in range(-bound, bound + 1) if gcd(p, q) == 1]


def test_bundle_parities():
    slopes = coprime_slopes(4)
    for r in (-2, 0, 1, 3):
        for p, q in slopes:
            assert circle_bundle_total_space(split_t2_family(r, 0), p, q) == S3XS2
        for p, q in slopes:
            expected = S3TWISTS2 if p % 2 else S3XS2
            assert circle_bundle_total_space(split_t2_family(r, 1), p, q) == expected
    for p, q in slopes:
        expected = S3TWISTS2 if (p + q) % 2 else S3XS2
        assert circle_bundle_total_space(mixed_t2_family(), p, q) == expected


def test_bundle_errors():
    with pytest.raises(SlopesNotCoprimeError):
        circle_bundle_total_space(split_t2_family(1, 0), 2, 4)
    with pytest.raises(NotFreeError):
        circle_bundle_total_space(T2ActionParams(1, 1, 0, 3, 0, 1, 1, 1), 1, 0)


def test_orbifold_orders():
    assert circle_quotient_orbifold_orders(0, 0) == (2, 1, 2, 1)
    assert circle_quotient_orbifold_orders(1, 0) == (2, 3, 2, 3)
    for r in range(-3, 4):
        for s in range(-3, 4):
            orders = circle_quotient_orbifold_orders(r, s)
            assert orders == (2, abs(2 * (r - s) + 1), 2, abs(2 * (r + s) + 1))
            assert sorted(orders) == sorted([2, 2, abs(2 * (r + s) + 1), abs(2 * (r - s) + 1)])


def test_orbifold_presentation_consistency():
    # The coordinatewise presentation of the split quotient agrees with the
    # parameter presentation.
    for r in range(-2, 3):
        t2 = split_t2_family(r, 1)
        h_rows = ((t2.a, t2.b, t2.c, t2.d), (-t2.n, t2.k, t2.m, t2.l))
        coordinatewise = induced_orbit_space(IntMatrix.identity(4), h_rows)
        parametric = induced_orbit_space(torus_weight_matrix(t2), WZ_TORUS)
        assert are_equivalent(coordinatewise.orbit_space, parametric.orbit_space)


def brute_residual_stabilizer_order(w, h_rows, c_rows, support, modulus):
    """Count the projected stabilizer inside the discretized residual torus."""
    grid = np.indices((modulus,) * 4).reshape(4, -1).T
    rows = np.array([w.entries[i] for i in sorted(support)], dtype=np.int64)
    kernel_pts = grid[((grid @ rows.T) % modulus == 0).all(axis=1)]
    p = IntMatrix.from_rows(list(h_rows) + list(c_rows))
    p_inv = invert_unimodular(p)
    h = len(h_rows)
    b_t = np.array(
        [[p_inv.entries[r][h + j] for j in range(4 - h)] for r in range(4)],
        dtype=np.int64,
    )
    projected = (kernel_pts @ b_t) % modulus
    return len(np.unique(projected, axis=0))


def test_finite_sampling_stabilizer_oracle():
    modulus = 12
    configs = [
        (torus_weight_matrix(split_t2_family(1, 0)), WZ_TORUS, E2_COMPLEMENT),
        (torus_weight_matrix(mixed_t2_family()), WZ_TORUS, E2_COMPLEMENT),
        (torus_weight_matrix(DIM5_EXAMPLE), Z_CIRCLE, E3_COMPLEMENT),
    ]
    for w, h_rows, c_rows in configs:
        for support in realizable_supports():
            stab = induced_stabilizer(w, h_rows, support, c_rows)
            predicted = modulus ** stab.group.free_rank
            for t in stab.group.torsion:
                predicted *= gcd(t, modulus)
            brute = brute_residual_stabilizer_order(w, h_rows, c_rows, support, modulus)
            assert brute == predicted
