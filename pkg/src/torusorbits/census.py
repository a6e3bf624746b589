"""Census of legal, simply connected four-weight orbit spaces.

Enumerates every weighted orbit space with four weights and entries in a
box, one row per canonical class, with its manifold type, fundamental group,
realizing action parameters, and a round-trip verification flag.  Rows are
computed independently of each other and the output is deterministic: classes
are sorted by the canonical weight order and serialized without timestamps.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import product
from math import gcd

import numpy as np

from .biquotient import T2ActionParams, realize_dim4, realize_dim5
from .classify import Dim5Params, ManifoldType, classify_dim4, classify_dim5
from .errors import UnsupportedRankError
from .lattice import AbelianGroup
from .orbit_space import (
    Weight,
    WeightedOrbitSpace,
    base_change_for_pair,
    canonicalize,
    pair_is_legal,
    pi1_bound,
    sequence_key,
    weight_key,
)

CENSUS_COLUMNS = ("weights", "type", "pi1", "realization", "verified")

# Entries are zigzag-coded (0, 1, -1, 2, -2, ... -> 0, 1, 2, 3, 4, ...) and
# six codes are packed into one integer; 1024 per digit bounds entries by 500.
_PACK_BASE = 1024
_ENTRY_LIMIT = 500


@dataclass(frozen=True)
class CensusRow:
    weights: tuple[Weight, ...]
    manifold_type: ManifoldType
    pi1: str
    realization: T2ActionParams | Dim5Params
    verified: bool


def primitive_weights(rank: int, bound: int) -> list[Weight]:
    """Sign-canonical primitive vectors with entries in [-bound, bound]."""
    if bound < 0:
        raise ValueError(f"entry bound {bound} is negative")
    out = []
    for entries in product(range(-bound, bound + 1), repeat=rank):
        if all(e == 0 for e in entries):
            continue
        if gcd(*entries) != 1:
            continue
        if entries[next(i for i, e in enumerate(entries) if e)] < 0:
            continue
        out.append(entries)
    return sorted(out, key=weight_key)


def _rank2_classes(bound: int) -> list[tuple[Weight, ...]]:
    weights = primitive_weights(2, bound)
    n = len(weights)
    neighbors = [
        [j for j in range(n) if pair_is_legal(weights[i], weights[j])]
        for i in range(n)
    ]
    neighbor_sets = [set(nb) for nb in neighbors]
    cycles = set()
    for i in range(n):
        for j in neighbors[i]:
            for k in neighbors[j]:
                for l in neighbors[k]:
                    if i not in neighbor_sets[l]:
                        continue
                    cycle = (i, j, k, l)
                    starts = [tuple(cycle[(p + r) % 4] for p in range(4)) for r in range(4)]
                    rev = cycle[::-1]
                    starts += [tuple(rev[(p + r) % 4] for p in range(4)) for r in range(4)]
                    cycles.add(min(starts))
    classes = set()
    for i, j, k, l in cycles:
        space = WeightedOrbitSpace(2, (weights[i], weights[j], weights[k], weights[l]))
        classes.add(canonicalize(space)[0].weights)
    return sorted(classes, key=sequence_key)


# The residual moves explored per based pair: three diagonal signs and, for
# each of the two shear slots, the two values nearest to zeroing the pivot
# entry.  The third sign only moves the two third-coordinate digits of the
# packed key, so it is resolved analytically; the remaining 16 combinations
# are enumerated as column vectors for broadcasting.
_CAND = tuple(product((1, -1), (1, -1), (0, 1), (0, 1)))
_S1 = np.array([c[0] for c in _CAND], dtype=np.int32)[:, None]
_S2 = np.array([c[1] for c in _CAND], dtype=np.int32)[:, None]
_DU = np.array([c[2] for c in _CAND], dtype=np.int32)[:, None]
_DV = np.array([c[3] for c in _CAND], dtype=np.int32)[:, None]


def _zigzag_codes(values: np.ndarray) -> np.ndarray:
    codes = 2 * np.abs(values) - (values > 0)
    assert codes.max(initial=0) < 2 * _ENTRY_LIMIT
    return codes


def _candidate_min_keys(y2: np.ndarray, y3: np.ndarray) -> np.ndarray:
    """Minimal packed key over the residual moves fixing the based pair.

    Mirrors the exact canonicalization's candidate set; the candidate image
    set only depends on the pair being mapped to the standard basis, not on
    which completion produced the based coordinates.
    """
    pivot = np.where((y2[:, 2] != 0)[:, None], y2, y3)
    p0, p1, p2 = pivot[:, 0], pivot[:, 1], pivot[:, 2]
    has = p2 != 0
    safe = np.where(has, p2, 1)
    u0_pos = np.where(has, (-p0) // safe, 0)
    u0_neg = np.where(has, p0 // safe, 0)
    v0_pos = np.where(has, (-p1) // safe, 0)
    v0_neg = np.where(has, p1 // safe, 0)
    t2, t3 = y2[:, 2], y3[:, 2]
    u = np.where(_S1 > 0, u0_pos, u0_neg) + _DU
    v = np.where(_S2 > 0, v0_pos, v0_neg) + _DV
    a0 = _S1 * y2[:, 0] + u * t2
    a1 = _S2 * y2[:, 1] + v * t2
    b0 = _S1 * y3[:, 0] + u * t3
    b1 = _S2 * y3[:, 1] + v * t3
    # Per-weight sign normalization: the leading sign comes from the first
    # two entries when they are not both zero; otherwise the third entry is
    # normalized to be positive whatever the third diagonal sign is.
    sa = np.where(a0 != 0, np.sign(a0), np.sign(a1))
    sb = np.where(b0 != 0, np.sign(b0), np.sign(b1))
    za_plus = np.where(sa != 0, sa * t2, np.abs(t2))
    za_minus = np.where(sa != 0, -sa * t2, np.abs(t2))
    zb_plus = np.where(sb != 0, sb * t3, np.abs(t3))
    zb_minus = np.where(sb != 0, -sb * t3, np.abs(t3))
    sa = np.where(sa != 0, sa, 1)
    sb = np.where(sb != 0, sb, 1)
    d0 = _zigzag_codes(sa * a0)
    d1 = _zigzag_codes(sa * a1)
    d3 = _zigzag_codes(sb * b0)
    d4 = _zigzag_codes(sb * b1)
    # The third diagonal sign moves only the two third-coordinate digits;
    # the digits between them agree, so minimizing their packed pair picks
    # the lexicographically smaller of the two full keys.  Packing exceeds
    # 32 bits, so widen here; everything before fits comfortably in int32.
    third_plus = (
        _zigzag_codes(za_plus).astype(np.int64) * _PACK_BASE**3
        + _zigzag_codes(zb_plus)
    )
    third_minus = (
        _zigzag_codes(za_minus).astype(np.int64) * _PACK_BASE**3
        + _zigzag_codes(zb_minus)
    )
    key = (
        (d0 * _PACK_BASE + d1).astype(np.int64) * _PACK_BASE**4
        + (d3 * _PACK_BASE + d4).astype(np.int64) * _PACK_BASE
        + np.minimum(third_plus, third_minus)
    )
    return key.min(axis=0)


def _dihedral_group_ids(i: int, j: int, kk: np.ndarray, ll: np.ndarray, n: int) -> np.ndarray:
    """Identifier of the cycle's dihedral orbit of index 4-tuples."""
    assert n ** 4 < 2 ** 62
    starts = (
        (i, j, kk, ll), (j, kk, ll, i), (kk, ll, i, j), (ll, i, j, kk),
        (ll, kk, j, i), (kk, j, i, ll), (j, i, ll, kk), (i, ll, kk, j),
    )
    best = None
    for a, b, c, d in starts:
        packed = ((a * n + b) * n + c) * n + d
        best = packed if best is None else np.minimum(best, packed)
    return best


def _unpack_key(key: int) -> tuple[Weight, Weight]:
    codes = []
    for _ in range(6):
        codes.append(key % _PACK_BASE)
        key //= _PACK_BASE
    codes.reverse()
    entries = [(c + 1) // 2 if c % 2 else -(c // 2) for c in codes]
    return tuple(entries[:3]), tuple(entries[3:])


_REDUCE_CHUNK = 16_000_000


def _min_key_per_group(groups: list[np.ndarray], keys: list[np.ndarray]):
    g = np.concatenate(groups)
    k = np.concatenate(keys)
    order = np.argsort(g, kind="stable")
    g, k = g[order], k[order]
    boundaries = np.flatnonzero(np.r_[True, g[1:] != g[:-1]])
    return g[boundaries], np.minimum.reduceat(k, boundaries)


def _rank3_classes(bound: int) -> list[tuple[Weight, ...]]:
    weights = primitive_weights(3, bound)
    if not weights:
        return []
    w = np.array(weights, dtype=np.int64)
    n = len(weights)
    cross = np.cross(w[:, None, :], w[None, :, :])
    legal = np.gcd.reduce(np.abs(cross), axis=2) == 1
    dets = np.einsum("ijc,kc->ijk", cross, w)
    abs_dets = np.abs(dets)
    # A legal cycle visits every one of its 8 dihedral starts as an ordered
    # index tuple below, so the minimum packed key within a dihedral orbit
    # equals the exact canonical form of that cycle's class.
    groups: list[np.ndarray] = []
    keys: list[np.ndarray] = []
    pending = 0
    for i in range(n):
        for j in np.nonzero(legal[i])[0]:
            a0 = base_change_for_pair(weights[i], weights[j])
            a0_arr = np.array(a0.entries, dtype=np.int64)
            assert np.all(np.abs(a0_arr) < 1000)
            based = w @ a0_arr.T
            assert np.all(np.abs(based) < _ENTRY_LIMIT)
            based = based.astype(np.int32)
            mask = legal[j][:, None] & legal & legal[:, i][None, :]
            sc = np.gcd(
                np.gcd(abs_dets[j], abs_dets[i]),
                np.gcd(abs_dets[i, j][None, :], abs_dets[i, j][:, None]),
            ) == 1
            kk, ll = np.nonzero(mask & sc)
            if len(kk) == 0:
                continue
            groups.append(_dihedral_group_ids(i, int(j), kk, ll, n))
            keys.append(_candidate_min_keys(based[kk], based[ll]))
            pending += len(kk)
            if pending > _REDUCE_CHUNK:
                g, k = _min_key_per_group(groups, keys)
                groups, keys, pending = [g], [k], len(g)
    if not groups:
        return []
    _, k = _min_key_per_group(groups, keys)
    canonical = []
    for index, key in enumerate(np.unique(k).tolist()):
        y2, y3 = _unpack_key(key)
        canon = ((1, 0, 0), (0, 1, 0), y2, y3)
        if index % 193 == 0:
            space = WeightedOrbitSpace(3, canon)
            assert canonicalize(space)[0].weights == canon
        canonical.append(canon)
    return sorted(canonical, key=sequence_key)


def _build_row(rank: int, canon: tuple[Weight, ...]) -> CensusRow:
    space = WeightedOrbitSpace(rank, canon)
    group = pi1_bound(space)
    assert group.is_trivial, "census rows are simply connected by construction"
    if rank == 2:
        mtype = classify_dim4(space)
        realization: T2ActionParams | Dim5Params = realize_dim4(space)
    else:
        mtype = classify_dim5(space)
        realization = realize_dim5(space)
    # realize_* verify the induced orbit space against the input before
    # returning, so reaching this point certifies the round trip.
    return CensusRow(
        weights=canon,
        manifold_type=mtype,
        pi1=str(AbelianGroup(0, ())),
        realization=realization,
        verified=True,
    )


def run_census(rank: int, bound: int) -> tuple[CensusRow, ...]:
    """All canonical classes of legal, simply connected four-weight spaces.

    Enumerates weight sequences with entries in [-bound, bound]; note the
    canonical representative of a discovered class may have larger entries.
    """
    if rank == 2:
        classes = _rank2_classes(bound)
    elif rank == 3:
        classes = _rank3_classes(bound)
    else:
        raise UnsupportedRankError(f"census supports ranks 2 and 3, got {rank}")
    return tuple(_build_row(rank, canon) for canon in classes)


# --- serialization


def format_weights(weights: tuple[Weight, ...]) -> str:
    return ",".join("(" + ",".join(str(e) for e in w) + ")" for w in weights)


def realization_payload(realization: T2ActionParams | Dim5Params) -> dict:
    kind = "t2" if isinstance(realization, T2ActionParams) else "t3"
    payload = {"kind": kind}
    for field in ("a", "b", "c", "d", "k", "l", "m", "n"):
        payload[field] = getattr(realization, field)
    return payload


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _header(rows, rank: int, bound: int) -> dict:
    return {
        "format": "orbit-census/1",
        "rank": rank,
        "bound": bound,
        "count": len(rows),
        "columns": list(CENSUS_COLUMNS),
    }


def census_ndjson(rows: tuple[CensusRow, ...], rank: int, bound: int) -> str:
    lines = [_dump(_header(rows, rank, bound))]
    for row in rows:
        lines.append(
            _dump(
                {
                    "weights": [list(w) for w in row.weights],
                    "type": str(row.manifold_type),
                    "pi1": row.pi1,
                    "realization": realization_payload(row.realization),
                    "verified": row.verified,
                }
            )
        )
    return "\n".join(lines) + "\n"


def census_csv(rows: tuple[CensusRow, ...], rank: int, bound: int) -> str:
    del rank, bound  # same columns at every size; kept for signature symmetry
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CENSUS_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                format_weights(row.weights),
                str(row.manifold_type),
                row.pi1,
                _dump(realization_payload(row.realization)),
                "true" if row.verified else "false",
            ]
        )
    return buffer.getvalue()
