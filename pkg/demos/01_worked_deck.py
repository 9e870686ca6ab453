"""A full tour of the shipped 52-card deck: hints, probes, and the locker trick.

Cards are numbered 0..51 (clubs, diamonds, hearts, spades; 2..A within each
suit). The deck fixture is one concrete shuffle; we compute its displacement
profile, derive the advice a helper would send, and replay both games.
"""

from permlab import (apply_transposition, argmax_shift, example_deck,
                     shift_histogram, shift_vector)
from permlab.simulate import GameConfig, simulate_locker

SUITS = "♣♦♥♠"  # clubs diamonds hearts spades
RANKS = ["2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K", "A"]


def card_name(value: int) -> str:
    return SUITS[value // 13] + RANKS[value % 13]


def main():
    deck = example_deck()
    print(f"deck of n={deck.n}: locker 0 holds {card_name(deck.image[0])}, "
          f"locker 51 holds {card_name(deck.image[51])}")

    v = shift_vector(deck)
    hist = shift_histogram(deck)
    hint = argmax_shift(hist)
    print(f"\ndisplacements v(i) = (i - sigma(i)) mod 52, first ten: {v[:10]}")
    print(f"most common displacement: {hint} "
          f"(appears {hist.counts[hint]} times)")
    print(f"runner-up classes of size 3: "
          f"{[l for l, c in enumerate(hist.counts) if c == 3]}")

    wins = [s for s in range(52) if deck.image[(s + hint) % 52] == s]
    print(f"\nneedle game: probing (target + {hint}) mod 52 finds the target")
    print(f"for exactly {len(wins)} of 52 targets: {wins} "
          f"({', '.join(card_name(w) for w in wins)})")

    pos = deck.inverse_of(hint)
    swapped = apply_transposition(deck, 0, pos)
    print(f"\nlocker game: the helper swaps lockers 0 and {pos}, moving "
          f"{card_name(hint)} to the front (and {card_name(deck.image[0])} "
          f"to locker {pos})")
    print(f"locker 0 now holds card {swapped.image[0]} = the hint")

    sweep = simulate_locker(
        GameConfig(n=52, trials=1, seed=0, target_mode="sweep"),
        perm_stream=lambda t: deck.image)
    winners = [ts.target for ts in sweep.per_target if ts.successes]
    print(f"\nsweeping every target through the two-locker protocol: "
          f"{sweep.successes} winners {winners}")
    print("(the four probe hits survive the swap, and the hint card itself "
          "is found at the first locker)")


if __name__ == "__main__":
    main()
