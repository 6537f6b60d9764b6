"""Canonical forms under M -> P M Q with P, Q signed permutation matrices.

Two matrices are equivalent exactly when their orbit minima agree.  The
minimum depends on the order used; both orders are shown.
"""

from nthroots import exact
from nthroots.canon import Order, canonicalize, elimination_steps, equivalent, orbit


def main():
    A = ((1, 1), (-2, 4))
    At = ((1, 2), (-1, 4))
    for order in Order:
        print(f"{order.value:>10}: canon(A) = {exact.format_matrix(canonicalize(A, order)):>12}"
              f"   canon(A~) = {exact.format_matrix(canonicalize(At, order))}")
    print("A ~ A~ ?", equivalent(A, At))

    orb = orbit(A)
    print(f"\n|orbit(A)| = {len(orb)}")
    corner = [x for x in orb if x[0][0] == 1]
    print(f"{len(corner)} members have 1 in the corner; narrowing entry by entry (structural order):")
    for step in elimination_steps(corner, Order.STRUCTURAL)[1:]:
        print("   ", [exact.format_matrix(x) for x in step])

    # the 4x4 optimum is its own canonical form
    M4 = ((1, 1, 1, 2), (1, 1, 2, 1), (1, 2, 2, 2), (2, 1, 2, 2))
    print("\ncanon(M4) == M4:", canonicalize(M4, Order.STRUCTURAL) == M4)


if __name__ == "__main__":
    main()
