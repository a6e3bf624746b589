"""Walk through the rank-2 classification on a one-parameter family.

The orbit spaces with weights e1, e2, e1, (k, 1) alternate between the two
sphere bundles over the sphere as k changes parity, and the remaining
simply connected type shows up once the third weight moves off e1.
"""

from torusorbits.census import run_census
from torusorbits.classify import classify_dim4
from torusorbits.orbit_space import WeightedOrbitSpace


def family_member(k):
    return WeightedOrbitSpace(2, ((1, 0), (0, 1), (1, 0), (k, 1)))


def main():
    print("weights (1,0),(0,1),(1,0),(k,1) as k varies:")
    for k in range(0, 7):
        print(f"  k = {k}: {classify_dim4(family_member(k))}")
    mixed = WeightedOrbitSpace(2, ((1, 0), (0, 1), (1, 1), (2, 1)))
    print(f"weights (1,0),(0,1),(1,1),(2,1): {classify_dim4(mixed)}")

    print()
    print("census of canonical classes with entries <= 2:")
    rows = run_census(2, 2)
    for row in rows:
        ws = ",".join(str(w) for w in row.weights)
        print(f"  {ws}  ->  {row.manifold_type}")
    counts = {}
    for row in rows:
        counts[str(row.manifold_type)] = counts.get(str(row.manifold_type), 0) + 1
    print(f"type counts: {counts}")


if __name__ == "__main__":
    main()
