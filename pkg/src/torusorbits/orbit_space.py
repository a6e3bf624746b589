"""Weighted orbit spaces of cohomogeneity-two torus actions.

A weighted orbit space is a disk whose boundary carries a cyclic sequence of
primitive integer vectors (weights), each recording the slope of a circle
isotropy group.  This module provides the legality check on adjacent weight
pairs, the fundamental-group bound, simply-connectedness certificates, and a
canonical form under the full symmetry group of the data:

  (i)   one unimodular matrix applied to all weights,
  (ii)  cyclic rotation of the sequence,
  (iii) reversal of the sequence,
  (iv)  per-weight sign flips.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd
from typing import Iterable, Iterator, Sequence

from .errors import (
    IllegalOrbitSpaceError,
    RankMismatchError,
    RankTooSmallError,
    UnsupportedRankError,
)
from .lattice import (
    AbelianGroup,
    IntMatrix,
    determinant,
    invert_unimodular,
    quotient_group,
    unimodular_complete,
)

Weight = tuple[int, ...]


def normalize_weight(w: Sequence[int]) -> Weight:
    """Scale an integer vector to a primitive one with positive leading entry.

    The weight records a circle subgroup, which is the same for v and -v and
    for any nonzero multiple, so this representative is canonical.

    Raises:
        ValueError: the vector is zero (no circle subgroup).
    """
    v = tuple(int(x) for x in w)
    g = gcd(*v)
    if g == 0:
        raise ValueError("zero vector is not a weight")
    v = tuple(x // g for x in v)
    lead = next(x for x in v if x != 0)
    return v if lead > 0 else tuple(-x for x in v)


@dataclass(frozen=True)
class WeightedOrbitSpace:
    """Disk orbit space with a cyclic boundary sequence of weights.

    Weights are normalized on construction, so two instances are equal as
    dataclasses iff they carry the same sign-canonical weight sequence.
    """

    rank: int
    weights: tuple[Weight, ...]

    def __post_init__(self) -> None:
        if self.rank < 2:
            raise RankTooSmallError(f"rank {self.rank} < 2")
        normalized = tuple(normalize_weight(w) for w in self.weights)
        for w in normalized:
            if len(w) != self.rank:
                raise ValueError(f"weight {w} does not have {self.rank} entries")
        if len(normalized) < self.rank:
            raise ValueError(
                f"{len(normalized)} weights cannot cover a rank-{self.rank} boundary"
            )
        object.__setattr__(self, "weights", normalized)

    @property
    def n_weights(self) -> int:
        return len(self.weights)

    def weight_matrix(self) -> IntMatrix:
        """The N x rank matrix whose rows are the weights."""
        return IntMatrix.from_rows(self.weights)

    def rotated(self, steps: int) -> "WeightedOrbitSpace":
        k = steps % self.n_weights
        return WeightedOrbitSpace(self.rank, self.weights[k:] + self.weights[:k])

    def __str__(self) -> str:
        inner = ",".join("(" + ",".join(str(x) for x in w) + ")" for w in self.weights)
        return f"rank {self.rank}: {inner}"


def reversed_space(s: WeightedOrbitSpace) -> WeightedOrbitSpace:
    """The same disk with the opposite boundary orientation."""
    return WeightedOrbitSpace(s.rank, tuple(reversed(s.weights)))


@dataclass(frozen=True)
class LegalityReport:
    """Outcome of the adjacency checks plus spanning certificates.

    simply_connected_certificate holds indices of rank-many weights whose
    determinant is +-1 (a sufficient condition for simple connectedness), or
    None when no such subset exists.  spans records whether some rank-many
    weights are merely independent; when False the manifold splits off a
    circle factor.
    """

    legal: bool
    failing_pairs: tuple[tuple[int, int], ...]
    spans: bool
    simply_connected_certificate: tuple[int, ...] | None


def pair_is_legal(x: Sequence[int], y: Sequence[int]) -> bool:
    """Whether the 2 x n matrix [x; y] extends to a unimodular matrix.

    Equivalent to its Smith invariant factors being (1, 1), which in turn is
    the gcd of all 2 x 2 minors being 1.  For n = 2 this is |det| = 1.
    """
    assert len(x) == len(y)
    minors = [
        x[i] * y[j] - x[j] * y[i] for i, j in combinations(range(len(x)), 2)
    ]
    return gcd(*minors) == 1


def _adjacent_pairs(n_weights: int) -> list[tuple[int, int]]:
    # With two weights the two boundary arcs impose the same condition.
    if n_weights == 2:
        return [(0, 1)]
    return [(i, (i + 1) % n_weights) for i in range(n_weights)]


def is_legal(s: WeightedOrbitSpace) -> LegalityReport:
    """Check every cyclically adjacent weight pair and fill the certificates."""
    failing = tuple(
        (i, j)
        for i, j in _adjacent_pairs(s.n_weights)
        if not pair_is_legal(s.weights[i], s.weights[j])
    )
    spans = False
    certificate = None
    for idx in combinations(range(s.n_weights), s.rank):
        d = determinant(IntMatrix.from_rows([s.weights[i] for i in idx]))
        if d != 0:
            spans = True
        if d in (1, -1):
            certificate = idx
            break
    return LegalityReport(
        legal=not failing,
        failing_pairs=failing,
        spans=spans,
        simply_connected_certificate=certificate,
    )


def pi1_bound(s: WeightedOrbitSpace) -> AbelianGroup:
    """The quotient Z^rank / (span of the weights).

    An upper bound for the fundamental group of the manifold; exact for the
    five-dimensional four-weight case.
    """
    return quotient_group(s.weight_matrix())


def simply_connected_witness(s: WeightedOrbitSpace) -> tuple[int, ...] | None:
    """Indices of rank-many weights with determinant +-1, if any exist."""
    return is_legal(s).simply_connected_certificate


# --- canonical forms
#
# Total order on weight sequences: compare entry by entry under
# 0 < 1 < -1 < 2 < -2 < ..., i.e. by (|e|, sign), weights lexicographically,
# sequences lexicographically.  The canonical form of an orbit space is the
# minimum over its symmetry class, so small nonnegative entries come first.


def entry_key(e: int) -> tuple[int, int]:
    return (abs(e), 0 if e >= 0 else 1)


def weight_key(w: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple(entry_key(e) for e in w)


def sequence_key(
    weights: Iterable[Sequence[int]],
) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(weight_key(w) for w in weights)


def base_change_for_pair(x1: Sequence[int], x2: Sequence[int]) -> IntMatrix:
    """Unimodular matrix sending x1 to e1 and x2 to e2.

    Exists iff the pair is legal; built by completing (x1, x2) to a basis and
    inverting its transpose.
    """
    basis = unimodular_complete([x1, x2])
    return invert_unimodular(basis.transpose())


def _nearest_shears(lead: int, third: int) -> tuple[int, ...]:
    # Integer u minimizing |lead + u*third| is a floor or ceiling; return both.
    base = (-lead) // third
    return (base, base + 1)


def _residual_candidates(
    based: Sequence[Weight], rank: int
) -> Iterator[tuple[tuple[Weight, ...], IntMatrix]]:
    """All residual moves fixing the based pair e1, e2 up to sign.

    For rank 2 these are the diagonal sign matrices.  For rank 3 they are
    upper-triangular with signs on the diagonal and shears u, v feeding the
    third coordinate into the first two.  Only the shears nearest to zeroing
    the first affected entry can yield the minimum, so the search is finite
    and exact.
    """
    if rank == 2:
        for s1, s2 in product((1, -1), repeat=2):
            images = tuple((s1 * w[0], s2 * w[1]) for w in based)
            yield (
                tuple(normalize_weight(im) for im in images),
                IntMatrix.from_rows([[s1, 0], [0, s2]]),
            )
        return
    assert rank == 3
    pivot = next((w for w in based if w[2] != 0), None)
    for s1, s2, s3 in product((1, -1), repeat=3):
        if pivot is None:
            u_candidates: tuple[int, ...] = (0,)
            v_candidates: tuple[int, ...] = (0,)
        else:
            # The first weight with nonzero third coordinate is the earliest
            # sequence position the shears touch; minimize it first.
            u_candidates = _nearest_shears(s1 * pivot[0], pivot[2])
            v_candidates = _nearest_shears(s2 * pivot[1], pivot[2])
        for u in u_candidates:
            for v in v_candidates:
                images = tuple(
                    (s1 * w[0] + u * w[2], s2 * w[1] + v * w[2], s3 * w[2])
                    for w in based
                )
                yield (
                    tuple(normalize_weight(im) for im in images),
                    IntMatrix.from_rows([[s1, 0, u], [0, s2, v], [0, 0, s3]]),
                )


def canonicalize(
    s: WeightedOrbitSpace, oriented: bool = False
) -> tuple[WeightedOrbitSpace, IntMatrix]:
    """Minimum of the symmetry class of s, with the matrix that achieves it.

    Enumerates rotations, optionally the reversal, and for each choice maps
    the leading adjacent pair to e1, e2 and minimizes over the residual
    stabilizer.  The returned matrix, applied to the winning rotation or
    reversal of the input weights followed by sign normalization, yields the
    canonical weights.

    Args:
        s: a legal orbit space of rank 2 or 3.
        oriented: when True, skip the reversal move, refining classes to
            orientation-preserving equivalence.

    Raises:
        IllegalOrbitSpaceError: some adjacent pair is not legal.
        UnsupportedRankError: rank is not 2 or 3.
    """
    report = is_legal(s)
    if not report.legal:
        raise IllegalOrbitSpaceError(f"failing adjacent pairs: {report.failing_pairs}")
    if s.rank not in (2, 3):
        raise UnsupportedRankError(f"canonical forms implemented for ranks 2 and 3, not {s.rank}")
    e1 = tuple(int(i == 0) for i in range(s.rank))
    e2 = tuple(int(i == 1) for i in range(s.rank))
    best_key = None
    best_weights: tuple[Weight, ...] | None = None
    best_transform: IntMatrix | None = None
    orientations = (False,) if oriented else (False, True)
    for flip in orientations:
        ordered = tuple(reversed(s.weights)) if flip else s.weights
        for r in range(s.n_weights):
            seq = ordered[r:] + ordered[:r]
            a0 = base_change_for_pair(seq[0], seq[1])
            based = tuple(a0.apply(w) for w in seq)
            assert based[0] == e1 and based[1] == e2
            for weights, b in _residual_candidates(based, s.rank):
                key = sequence_key(weights)
                if best_key is None or key < best_key:
                    best_key = key
                    best_weights = weights
                    best_transform = b @ a0
    assert best_weights is not None and best_transform is not None
    return WeightedOrbitSpace(s.rank, best_weights), best_transform


def are_equivalent(
    s1: WeightedOrbitSpace, s2: WeightedOrbitSpace, oriented: bool = False
) -> bool:
    """Whether two legal orbit spaces have the same canonical form.

    Raises:
        RankMismatchError: the ranks differ (no common symmetry group).
    """
    if s1.rank != s2.rank:
        raise RankMismatchError(f"rank {s1.rank} vs rank {s2.rank}")
    c1, _ = canonicalize(s1, oriented=oriented)
    c2, _ = canonicalize(s2, oriented=oriented)
    return c1.weights == c2.weights
