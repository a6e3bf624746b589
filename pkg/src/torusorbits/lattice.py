"""Exact integer linear algebra over arbitrary-precision integers.

Everything in this module is deterministic: pivot choices and normalizations
are fixed so that repeated runs (and the census built on top) are
byte-for-byte reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import NonSquareMatrixError, NotCompletableError

Vector = tuple[int, ...]


def gcd_ext(a: int, c: int) -> tuple[int, int, int]:
    """Extended gcd with a deterministic coefficient choice.

    Returns (g, s, t) with a*s + c*t == g == gcd(a, c) >= 0.  Among all valid
    coefficient pairs, |s| is minimal, with ties broken by s >= 0; t is then
    forced (t = 0 when c == 0).  gcd_ext(0, 0) == (0, 0, 0).
    """
    if a == 0 and c == 0:
        return (0, 0, 0)
    # Plain extended Euclid for a base solution.
    old_r, r = a, c
    old_s, s = 1, 0
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    g, s0 = old_r, old_s
    if g < 0:
        g, s0 = -g, -s0
    if c == 0:
        return (g, s0, 0)
    # Valid s values form s0 + (c/g)Z; pick the smallest by (|s|, s < 0).
    step = abs(c // g)
    if step:
        rem = s0 % step
        s0 = min(rem, rem - step, key=lambda x: (abs(x), x < 0))
    t = (g - a * s0) // c
    assert a * s0 + c * t == g
    return (g, s0, t)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    entries: tuple[Vector, ...]

    def __post_init__(self) -> None:
        widths = {len(row) for row in self.entries}
        assert len(widths) <= 1, "ragged rows"

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else IntMatrix(())

    def apply(self, v: Sequence[int]) -> Vector:
        """Matrix-vector product (v as a column)."""
        assert len(v) == self.cols
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        assert self.cols == other.rows
        cols = other.transpose().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )

    def minor(self, drop_row: int, drop_col: int) -> "IntMatrix":
        return IntMatrix(
            tuple(
                tuple(x for j, x in enumerate(row) if j != drop_col)
                for i, row in enumerate(self.entries)
                if i != drop_row
            )
        )

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and determinant(self) in (1, -1)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def determinant(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise NonSquareMatrixError(f"matrix is {m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact division is a Bareiss invariant.
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Vector:
        return tuple(
            self.D.entries[i][i] for i in range(min(self.D.rows, self.D.cols))
        )

    @property
    def invariant_factors(self) -> Vector:
        return tuple(d for d in self.diagonal if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with tracked unimodular row/column operations.

    Pivot rule: the entry of minimal absolute value in the trailing
    submatrix, ties broken row-major, making the decomposition deterministic.

    Returns:
        SmithDecomposition(U, D, V) with U @ m @ V == D, all diagonal entries
        of D nonnegative and each dividing the next.
    """
    nrows, ncols = m.rows, m.cols
    a = m.to_lists()
    u = IntMatrix.identity(nrows).to_lists()
    v = IntMatrix.identity(ncols).to_lists()

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, f: int) -> None:
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, f: int) -> None:
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    limit = min(nrows, ncols)
    for t in range(limit):
        piv = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (
                    piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])
                ):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # Clear column t; a nonzero remainder becomes a smaller pivot.
            i = t + 1
            while i < nrows:
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        i = t
                i += 1
            # Clear row t; a column swap can re-dirty column t, so restart.
            dirty = False
            j = t + 1
            while j < ncols:
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
                        j = t
                j += 1
            if dirty:
                continue
            # Enforce divisibility of the trailing submatrix by the pivot.
            d = a[t][t]
            bad = next(
                (
                    (i, j)
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if a[i][j] % d != 0
                ),
                None,
            )
            if bad is None:
                break
            add_col(t, bad[1], 1)
    for t in range(limit):
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SmithDecomposition(
        IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v)
    )


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group Z^free_rank x Z/t1 x Z/t2 x ...

    The torsion orders form a divisibility chain t1 | t2 | ... with each
    ti >= 2, so equality of dataclasses is equality of groups.
    """

    free_rank: int
    torsion: Vector = ()

    def __post_init__(self) -> None:
        assert self.free_rank >= 0
        assert all(t >= 2 for t in self.torsion)
        assert all(
            self.torsion[i + 1] % self.torsion[i] == 0
            for i in range(len(self.torsion) - 1)
        ), "torsion coefficients must form a divisibility chain"

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.torsion, start=1)

    def __str__(self) -> str:
        parts: list[str] = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " x ".join(parts) if parts else "1"


def cyclic_group(order: int) -> AbelianGroup:
    """Z/order, with the conventions Z/0 = Z and Z/1 = 1."""
    order = abs(order)
    if order == 0:
        return AbelianGroup(1, ())
    if order == 1:
        return AbelianGroup(0, ())
    return AbelianGroup(0, (order,))


def quotient_group(m: IntMatrix) -> AbelianGroup:
    """Structure of Z^cols / (row span of m)."""
    snf = smith_normal_form(m)
    factors = snf.invariant_factors
    return AbelianGroup(
        free_rank=m.cols - len(factors),
        torsion=tuple(d for d in factors if d > 1),
    )


def hermite_normal_form(
    rows: Iterable[Sequence[int]], ncols: int | None = None
) -> tuple[Vector, ...]:
    """Canonical row-echelon basis of the lattice spanned by the given rows.

    Row-style Hermite form: positive pivots, entries above each pivot reduced
    into [0, pivot).  Zero rows are dropped, so the result is a basis.
    """
    work = [list(row) for row in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    assert all(len(row) == ncols for row in work)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(r + 1, len(work)):
            if work[i][c] == 0:
                continue
            x, y = work[r][c], work[i][c]
            g, s, t = gcd_ext(x, y)
            new_r = [s * p + t * q for p, q in zip(work[r], work[i])]
            new_i = [(x // g) * q - (y // g) * p for p, q in zip(work[r], work[i])]
            work[r], work[i] = new_r, new_i
        if work[r][c] < 0:
            work[r] = [-x for x in work[r]]
        for i in range(r):
            q = work[i][c] // work[r][c]
            if q:
                work[i] = [p - q * h for p, h in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r])


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1 (adjugate method)."""
    d = determinant(m)
    if d not in (1, -1):
        raise ValueError(f"matrix has determinant {d}, not +-1")
    n = m.rows
    inv = [
        [d * (-1) ** (i + j) * determinant(m.minor(j, i)) for j in range(n)]
        for i in range(n)
    ]
    out = IntMatrix.from_rows(inv)
    assert (m @ out).entries == IntMatrix.identity(n).entries
    return out


def unimodular_complete(vectors: Sequence[Sequence[int]]) -> IntMatrix:
    """Extend k independent integer n-vectors to a determinant +-1 matrix.

    The inputs become the first k rows.  The completion is the deterministic
    one read off the Smith decomposition, with each added row reduced against
    the input row lattice so repeated calls agree.

    Raises:
        NotCompletableError: the rows do not span a direct summand of Z^n
            (some invariant factor differs from 1).
    """
    vecs = [tuple(int(x) for x in v) for v in vectors]
    if not vecs:
        raise ValueError("need at least one row")
    n = len(vecs[0])
    assert all(len(v) == n for v in vecs)
    k = len(vecs)
    if k > n:
        raise ValueError(f"{k} rows cannot extend to a {n}x{n} basis")
    a = IntMatrix.from_rows(vecs)
    snf = smith_normal_form(a)
    if snf.rank != k or any(f != 1 for f in snf.invariant_factors):
        raise NotCompletableError(
            f"rows span a sublattice with invariant factors {snf.diagonal}"
        )
    vinv = invert_unimodular(snf.V)
    completion = [list(vinv.entries[i]) for i in range(k, n)]
    reduced_basis = hermite_normal_form(vecs, n)
    pivots = [next(j for j, x in enumerate(row) if x != 0) for row in reduced_basis]
    for w in completion:
        for row, c in zip(reduced_basis, pivots):
            q = w[c] // row[c]
            if q:
                for j in range(n):
                    w[j] -= q * row[j]
    out = IntMatrix.from_rows(vecs + [tuple(w) for w in completion])
    assert abs(determinant(out)) == 1
    return out


def integer_kernel(m: IntMatrix) -> tuple[Vector, ...]:
    """Hermite-canonical basis of {v in Z^cols : m @ v == 0}.

    The kernel of an integer matrix is a saturated sublattice, so every basis
    row returned is a primitive vector.
    """
    snf = smith_normal_form(m)
    rank = snf.rank
    gens = [snf.V.column(j) for j in range(rank, m.cols)]
    for g in gens:
        assert all(x == 0 for x in m.apply(g))
    basis = hermite_normal_form(gens, m.cols)
    assert all(gcd(*row) == 1 if len(row) > 1 else abs(row[0]) == 1 for row in basis)
    return basis
