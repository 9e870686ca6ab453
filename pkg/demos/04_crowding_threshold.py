"""How big does the most common displacement class get?

For a uniform permutation the class sizes behave like Poisson(1) counts,
but with enough classes some crowding is guaranteed. The threshold
typical_max_shift(n) (largest k with 2e k! <= n) predicts the scale; the
sampled mean stays within a small constant of it across three decades.
"""

from permlab import typical_max_shift
from permlab.simulate import max_shift_distribution


def main():
    print("exhaustive at n=4 and n=6 (exact distributions):")
    for n in (4, 6):
        r = max_shift_distribution(n, exhaustive=True)
        print(f"  n={n}: histogram {r.histogram}  mean {r.mean:.3f}")

    print("\nsampled, 10k permutations per n:")
    print(f"{'n':>6} {'threshold':>9} {'mean max':>9} {'q50':>4} {'q90':>4} "
          f"{'q99':>4}")
    for exp in (6, 8, 10, 12, 14):
        n = 2 ** exp
        r = max_shift_distribution(n, trials=10_000, seed=exp)
        print(f"{n:>6} {typical_max_shift(n):>9} {r.mean:>9.3f} "
              f"{r.quantiles['q50']:>4} {r.quantiles['q90']:>4} "
              f"{r.quantiles['q99']:>4}")
    print("\nthe mean hugs the threshold from above; growth is log n over "
          "log log n, far slower than n itself, which is exactly the edge "
          "a single-number hint can buy.")


if __name__ == "__main__":
    main()
