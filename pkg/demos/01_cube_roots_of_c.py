"""Roots of X^n = C^n for C = (1 -2; 2 -1).

C has eigenvalues +-i sqrt(3), so every root lives over a cyclotomic field.
For odd n there are n^2 roots and exactly n of them are real.
"""

import numpy as np

from nthroots import exact, roots
from nthroots.cyclotomic import matrix_approx


def show(label, x):
    print(label)
    print(np.array(matrix_approx(x)).round(6), "\n")


def main():
    C = roots.C
    print("C =", exact.format_matrix(C), "   C^3 =", exact.format_matrix(exact.matpow(C, 3)))

    rs = roots.odd_c_roots(3)
    print(f"{len(rs)} cube roots over Q(zeta_{rs.field.N}); real ones:")
    for x in roots.real_roots(rs):
        print("   ", exact.format_matrix(x))

    # the complex roots are root-of-unity multiples of real ones
    w2 = rs.field.root_of_unity(3, 2)
    x10 = rs.get((1, 0))
    print("\nX(3,1,0) == w^2 X(3,2,1):", x10 == tuple(tuple(w2 * e for e in r) for r in rs.get((2, 1))))
    show("X(3,1,0) numerically:", x10)

    # n = 5: 25 roots, 5 real; X(5,1,4) is C itself
    rs5 = roots.odd_c_roots(5)
    print(f"n=5: {len(rs5)} roots, {len(rs5.real_subset)} real")
    show("X(5,3,2):", rs5.get((3, 2)))

    # even n behaves differently: C^2 = -3 I has a two-parameter family of roots
    y = roots.even_family(2, 1, 3)
    print("C^2 =", exact.format_matrix(exact.matpow(C, 2)))
    show("Y(2, 1, 3), one member of the family:", y)


if __name__ == "__main__":
    main()
