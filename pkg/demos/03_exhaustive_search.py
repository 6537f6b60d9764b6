"""Problem (i): the unimodular zerofree M of least ||(M M^-1)||.

The search enumerates only row-normalized matrices (each row starts with a
positive entry, rows increasing) and multiplies the count by 2^n n!.
Pass --slow to include n = 4 (a few seconds with numpy).
"""

import sys
from collections import Counter

from nthroots import exact, search
from nthroots.canon import Order


def main(slow=False):
    for n in (2, 3) + ((4,) if slow else ()):
        r = search.exhaustive_problem_i(n, order=Order.STRUCTURAL)
        print(f"n={n}: minimal norm {r.minimal_norm}, {r.count} solutions, "
              f"{r.explored} nodes, {r.runtime:.2f}s")
        for cf, k in r.classes:
            print(f"    class of {k}: {exact.format_matrix(cf)}")

    # problem (ii): which M make M diag(2,3) M^-1 smallest?
    r = search.exhaustive_problem_ii((2, 3), m_bound=3)
    print(f"\nlambda=(2,3): product norm {r.minimal_norm}, {r.count} distinct products "
          f"from {r.optimal_m} optimal M")
    by_product = Counter(search.conjugate_diagonal(m, (2, 3)) for m in r.solutions)
    for a, k in sorted(by_product.items()):
        print(f"    {exact.format_matrix(a):>14}  from {k} choices of M")

    # (iii): also insist that the product is zerofree
    r3 = search.exhaustive_problem_ii((1, 2), m_bound=3, zerofree_product=True)
    print(f"\nlambda=(1,2), zerofree product: norm {r3.minimal_norm}, e.g.",
          exact.format_matrix(r3.products[0]))


if __name__ == "__main__":
    main(slow="--slow" in sys.argv)
