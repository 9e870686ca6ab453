"""Displacement-pattern counting: closed forms, sweeps, and near-independence.

The size of the set of permutations that keep I in place and push J ahead
by s has a clean factorial form; the "exactly I and exactly J" variant does
not, but a full sweep settles it at desk scale. Layering both shows why two
shift-class sizes are almost uncorrelated.
"""

import math
from math import factorial

from permlab import (IndexSet, compatible_pair_stats,
                     count_exact_displacements,
                     count_optional_displacements,
                     count_required_displacements, covariance_estimate,
                     feasible_set_stats, joint_shift_pmf, shift_count_pmf)


def main():
    n, s = 10, 1
    I, J = IndexSet.of(n, [0]), IndexSet.of(n, [2])
    req = count_required_displacements(I, J, s)
    exact = count_exact_displacements(I, J, s)
    print(f"n={n}, s={s}, I={I.elements}, J={J.elements}")
    print(f"  required (at least): {req} = (n-2)! = {factorial(n - 2)}")
    print(f"  exact (no extras):   {exact}  ratio to (n-2)!: "
          f"{exact / factorial(n - 2):.4f}  vs 1/e^2 = {math.e ** -2:.4f}")
    K = IndexSet.of(n, [5, 7])
    opt = count_optional_displacements(K, I, J, s)
    print(f"  each of K={K.elements} fixed-or-pushed: {opt} "
          f"= 2^|K| (n-4)! = {4 * factorial(n - 4)}")

    print("\nhow common are the clean configurations?")
    comp = compatible_pair_stats(100, 2, 1, mode="sampled", trials=50_000,
                                 seed=1)
    print(f"  disjoint pairs compatible for the shift: {comp.probability:.4f}"
          f" (closed-form floor {float(comp.closed_form_bound):.4f})")
    feas = feasible_set_stats(100, 2, 3, 1, mode="sampled", trials=50_000,
                              seed=2)
    print(f"  K of size 3 feasible:                    {feas.probability:.4f}"
          f" (floor {float(feas.closed_form_bound):.4f})")

    print("\njoint size of two shift classes vs the product of marginals:")
    for n in (6, 7, 8):
        joint = joint_shift_pmf(n, 0, 1, 1)
        marg = shift_count_pmf(n, 1)
        print(f"  n={n}: joint {float(joint):.5f}  product "
              f"{float(marg) ** 2:.5f}")
    stat = covariance_estimate(2000, 2, 0, 1, trials=50_000, seed=3)
    print(f"\nsampled at n=2000, t=2: cov {stat.cov:+.2e} "
          f"(3 std-err = {3 * stat.se_cov:.1e}) -- indistinguishable from "
          f"independent, which is what makes the crowding estimate sharp.")


if __name__ == "__main__":
    main()
