"""Randomized search in dimensions where exhaustive search is out of reach.

Each iteration builds a random unimodular matrix from elementary operations
and then walks downhill with +-1 row/column moves.  Seed 2 reaches a 5x5
matrix with ||(M M^-1)|| = 3, below the norm-4 examples usually quoted.
"""

import json
import os
import tempfile

from nthroots import exact, search


def main():
    r = search.randomized_zerofree_search(5, budget=2000, seed=2, target_norm=3)
    print(f"best norm {r.minimal_norm} after {r.explored} iterations ({r.runtime:.1f}s)")
    M = r.solutions[0]
    inv = exact.integer_inverse(M)
    print("M    =", exact.format_matrix(M))
    print("M^-1 =", exact.format_matrix(inv))
    p = exact.profile(M)
    print(f"det {p.determinant}, zerofree {p.zerofree}, concatenated norm {p.concat_norm}")

    # checkpoints make long runs resumable with identical results
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "state.json")

        def save(state):
            with open(path, "w") as fh:
                json.dump(state, fh)

        search.randomized_zerofree_search(4, 50, seed=7, checkpoint=save, checkpoint_every=10)
        with open(path) as fh:
            state = json.load(fh)
        resumed = search.randomized_zerofree_search(4, 120, seed=7, state=state)
        straight = search.randomized_zerofree_search(4, 120, seed=7)
        print("\nresumed run matches uninterrupted run:", resumed.solutions == straight.solutions)


if __name__ == "__main__":
    main()
