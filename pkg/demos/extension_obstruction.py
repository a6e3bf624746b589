"""Free circle actions that do, and do not, sit inside a free torus action.

Every free torus action here contains plenty of free circles, but the
converse fails: an infinite family of free circles admits no extension.
The decision is exact; when it fails, a sign-combination invariant that any
extension would have to kill is nonzero for all eight sign choices.
"""

from torusorbits.biquotient import (
    CircleActionParams,
    extend_circle_to_t2,
    is_free_circle,
    w2_class,
)


def inspect(params):
    p = CircleActionParams(*params)
    print(f"circle exponents {params}:")
    print(f"  free: {is_free_circle(p)}")
    print(f"  quotient type: {w2_class(p)}")
    outcome = extend_circle_to_t2(p)
    print(f"  extension: {outcome.status.value}")
    print(f"  detail: {outcome.detail}")
    if outcome.witness is not None:
        print(f"  witness torus: {outcome.witness}")
    print()


def main():
    print("an extendable free circle:")
    inspect((1, 1, 1, 2))

    print("the obstructed family (-1, 3, 15k+1, 5):")
    for k in range(3):
        inspect((-1, 3, 15 * k + 1, 5))


if __name__ == "__main__":
    main()
