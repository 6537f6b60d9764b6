"""n-th roots of A^n when A has distinct integer eigenvalues.

Write A = M diag(l_1..l_m) M^-1; then M diag(l_i w^j_i) M^-1 runs over n^m
roots, w = exp(2 pi i / n).  A good M (small, zerofree, with small inverse)
makes a good test matrix, which motivates the searches in the next demos.
"""

from nthroots import exact, roots, search


def main():
    B = ((-1, 6), (-2, 6))
    spec = roots.integer_spectrum(B)
    print("B =", exact.format_matrix(B), " eigenvalues", spec.eigenvalues)
    print("eigenvector columns:", exact.format_matrix(spec.eigenvectors))
    print("B^4 =", exact.format_matrix(exact.matpow(B, 4)))

    rs = roots.roots_of_power(B, 4)
    print(f"\n{len(rs)} fourth roots, real ones:")
    for x in roots.real_roots(rs):
        print("   ", exact.format_matrix(x))

    # the 3x3 example: a zerofree unimodular M with small inverse
    M = ((1, 2, 2), (2, 1, 2), (2, 2, 3))
    A = search.conjugate_diagonal(M, (1, 2, 3))
    print("\nM =", exact.format_matrix(M), "  M^-1 =", exact.format_matrix(exact.integer_inverse(M)))
    print("A = M diag(1,2,3) M^-1 =", exact.format_matrix(A))
    rs3 = roots.roots_of_power(A, 4)
    real = roots.real_roots(rs3)
    print(f"{len(rs3)} fourth roots of A^4, {len(real)} real, for instance")
    for x in real[:4]:
        print("   ", exact.format_matrix(x))


if __name__ == "__main__":
    main()
