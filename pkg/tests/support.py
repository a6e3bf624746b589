"""Shared helpers for the test suite: random symmetry moves and seed spaces."""

from torusorbits.lattice import IntMatrix
from torusorbits.orbit_space import WeightedOrbitSpace, is_legal


def space(rank, *weights):
    return WeightedOrbitSpace(rank, tuple(weights))


def random_unimodular_rows(rng, n, ops=6):
    """Rows of a determinant +-1 matrix built from elementary operations."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        f = rng.randint(-2, 2)
        m[i] = [x + f * y for x, y in zip(m[i], m[j])]
    return m


def random_symmetry_move(rng, s):
    """One random element of the orbit-space symmetry group applied to s."""
    a = IntMatrix.from_rows(random_unimodular_rows(rng, s.rank))
    weights = [a.apply(w) for w in s.weights]
    weights = [tuple(-x for x in w) if rng.random() < 0.5 else w for w in weights]
    k = rng.randrange(len(weights))
    weights = weights[k:] + weights[:k]
    if rng.random() < 0.5:
        weights.reverse()
    return WeightedOrbitSpace(s.rank, tuple(weights))


def random_legal_space(rng, rank, n_weights=4):
    """Random legal orbit space built by symmetry moves on a seed space."""
    if rank == 2:
        k = rng.randint(0, 4)
        if rng.random() < 0.3:
            s = space(2, (1, 0), (0, 1), (1, 1), (2, 1))
        else:
            s = space(2, (1, 0), (0, 1), (1, 0), (k, 1))
    else:
        while True:
            third = (rng.randint(0, 2), rng.randint(0, 2), 1)
            fourth = (rng.randint(0, 2), rng.randint(0, 2), 1)
            s = space(3, (1, 0, 0), (0, 1, 0), third, fourth)
            if is_legal(s).legal:
                break
    for _ in range(3):
        s = random_symmetry_move(rng, s)
    return s
