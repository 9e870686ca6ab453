"""Partition fields at n=3: the whole landscape fits in one table.

The field of a partition (total magnet intensity) caps the success
probability of its strategy at field / (n * n!). Exhaustive search over all
class counts m shows the cap rising from no-advice to full-information, and
the Alice-In-Chains restriction pinning the naive strategy's 2*n! as the
optimum.
"""

from math import factorial

from permlab import (aic_check, brute_force_field, deduplicate_magnets,
                     field_of_partition, partition_from_hint,
                     success_upper_bound)


def main():
    n = 3
    print(f"maximum field over partitions of the {factorial(n)} "
          f"permutations of order {n}, by message count m")
    print(f"{'m':>3} {'F(3,m)':>7} {'cap':>7} {'nodes':>7}")
    for m in range(1, 7):
        r = brute_force_field(n, m)
        cap = r.field / (n * factorial(n))
        print(f"{m:>3} {r.field:>7} {cap:>7.3f} {r.nodes:>7}")
    print("m=1 is no advice (cap 1/n); m=n!=6 is full information (cap 1);"
          "\nthe increments stay flat after the first jump, consistent with"
          "\na concave growth in m.")

    aic = brute_force_field(n, n, restriction="aic")
    print(f"\nwith the rule-out restriction: best field {aic.field} "
          f"= 2*{n}! , witness passes the restriction: "
          f"{aic_check(aic.witness)}")

    naive = partition_from_hint(n, n, lambda p: p.image[0])
    print(f"naive partition field {field_of_partition(naive)} and cap "
          f"{success_upper_bound(naive)} -- the cap is met exactly, "
          f"so the bound is tight here")

    print("\nmagnet deduplication on one lopsided class:")
    result = deduplicate_magnets([[(0, 1, 2), (0, 2, 1)], []])
    for step in result.steps:
        print(f"  elements {step.k1},{step.k2} shared position {step.i1}; "
              f"element {step.k2} re-anchored at {step.i2} "
              f"({step.replaced} members rewritten), intensities "
              f"{step.intensities_before} -> {step.intensities_after}")
    print(f"  final magnets per element: {result.final_magnets[0]}")


if __name__ == "__main__":
    main()
