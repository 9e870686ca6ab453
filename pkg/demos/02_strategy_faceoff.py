"""Exact and sampled success rates of every built-in strategy.

Small orders are settled by full enumeration (exact rationals); larger
orders by seeded Monte Carlo, with the no-advice rate 1/n and the naive
rate 2/n printed for scale.
"""

from permlab import evaluate_success_exact, strategy_by_name
from permlab.simulate import GameConfig, simulate_needle


def main():
    print("exact success probabilities by full enumeration")
    print(f"{'n':>3} {'baseline':>10} {'naive':>10} {'shift':>10}")
    for n in range(3, 8):
        row = []
        for name in ("baseline", "naive", "shift"):
            ev = evaluate_success_exact(strategy_by_name(name, n))
            row.append(str(ev.overall))
        print(f"{n:>3} {row[0]:>10} {row[1]:>10} {row[2]:>10}")
    print("\nshift matches naive at n=3 and pulls ahead from n=4 on "
          "(7/12 > 1/2): the most common displacement class outweighs any "
          "single fixed probe.")

    print("\nMonte Carlo at larger n (100k trials each, fixed seeds)")
    print(f"{'n':>6} {'shift est':>12} {'naive 2/n':>12} {'no advice':>12} "
          f"{'lead':>6}")
    for n in (100, 1000, 10_000):
        r = simulate_needle(GameConfig(n=n, trials=100_000, seed=n,
                                       strategy="shift", workers=2))
        print(f"{n:>6} {r.estimate:>12.2e} {2 / n:>12.2e} {1 / n:>12.2e} "
              f"{r.estimate * n:>6.2f}/n")
    print("\nthe lead tracks the crowding threshold (the largest k with "
          "2e k! <= n): 3/n at n=100 grows to ~6/n at n=10000.")


if __name__ == "__main__":
    main()
