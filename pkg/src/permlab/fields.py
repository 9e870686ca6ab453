"""Partition view of advice strategies: magnets, intensities, fields.

A deterministic advice function is the same thing as a partition of all n!
permutations into m classes (class h = permutations that elicit message h).
For a class C, element k and position i:

* magneticity mag(C, i, k) = number of members of C placing k at i;
* the magnet of k is the position with the greatest magneticity (ties go to
  the lowest position);
* the intensity of k is that greatest magneticity.

The field of a partition is the sum of all its intensities; (field / n!) / n
bounds the success probability of the corresponding strategy from above.
``brute_force_field`` maximizes the field over all partitions by exhaustive
branch-and-bound search, optionally restricted to partitions that obey the
Alice-In-Chains rule.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .enumeration import check_guard
from .errors import BudgetExceeded, IndexOutOfRange
from .perms import Permutation

PARTITION_GUARD = 8
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class PartitionStrategy:
    """Assignment of every permutation (by lex rank) to a class in 0..m-1."""

    n: int
    m: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != factorial(self.n):
            raise IndexOutOfRange(
                f"assignment length {len(self.assignment)} != {self.n}!")
        if self.m < 1 or any(not 0 <= a < self.m for a in self.assignment):
            raise IndexOutOfRange(f"class indices must lie in 0..{self.m - 1}")

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "m": self.m, "assignment": list(self.assignment)})

    @classmethod
    def from_json(cls, text: str) -> "PartitionStrategy":
        data = json.loads(text)
        return cls(int(data["n"]), int(data["m"]),
                   tuple(int(a) for a in data["assignment"]))


def class_members(p: PartitionStrategy, guard: int = PARTITION_GUARD,
                  ) -> list[list[tuple[int, ...]]]:
    """Image tuples of each class, lex order within a class."""
    check_guard(p.n, guard, "class_members")
    classes: list[list[tuple[int, ...]]] = [[] for _ in range(p.m)]
    for rank, img in enumerate(itertools.permutations(range(p.n))):
        classes[p.assignment[rank]].append(img)
    return classes


def _magnetism(members: list[tuple[int, ...]], n: int,
               ) -> tuple[list[list[int]], list[int], list[int]]:
    """(mag[i][k], magnet[k], intensity[k]) for one class."""
    mag = [[0] * n for _ in range(n)]
    for img in members:
        for i, k in enumerate(img):
            mag[i][k] += 1
    magnets, intensities = [], []
    for k in range(n):
        column = [mag[i][k] for i in range(n)]
        best = max(column)
        magnets.append(column.index(best))
        intensities.append(best)
    return mag, magnets, intensities


def magneticity(p: PartitionStrategy, j: int, i: int, k: int,
                guard: int = PARTITION_GUARD) -> int:
    """How many members of class j place element k at position i."""
    if not (0 <= j < p.m and 0 <= i < p.n and 0 <= k < p.n):
        raise IndexOutOfRange(f"(j={j}, i={i}, k={k}) out of range")
    members = class_members(p, guard)[j]
    return sum(1 for img in members if img[i] == k)


def magnet_and_intensity(p: PartitionStrategy, j: int, k: int,
                         guard: int = PARTITION_GUARD) -> tuple[int, int]:
    """Lowest position attaining the maximal magneticity for k, and that max."""
    if not (0 <= j < p.m and 0 <= k < p.n):
        raise IndexOutOfRange(f"(j={j}, k={k}) out of range")
    members = class_members(p, guard)[j]
    _, magnets, intensities = _magnetism(members, p.n)
    return magnets[k], intensities[k]


@dataclass(frozen=True)
class MagnetTable:
    """Per class j and element k: the magnet position and its intensity."""

    n: int
    m: int
    magnets: tuple[tuple[int, ...], ...]      # [j][k] -> position
    intensities: tuple[tuple[int, ...], ...]  # [j][k] -> count


def magnet_table(p: PartitionStrategy, guard: int = PARTITION_GUARD) -> MagnetTable:
    magnets, intensities = [], []
    for members in class_members(p, guard):
        _, mg, it = _magnetism(members, p.n)
        magnets.append(tuple(mg))
        intensities.append(tuple(it))
    return MagnetTable(p.n, p.m, tuple(magnets), tuple(intensities))


def field_of_partition(p: PartitionStrategy, guard: int = PARTITION_GUARD) -> int:
    """Sum of the intensities of every element in every class."""
    table = magnet_table(p, guard)
    return sum(sum(row) for row in table.intensities)


def success_upper_bound(p: PartitionStrategy, guard: int = PARTITION_GUARD) -> Fraction:
    """(1/n) * field / n!: the best success probability the partition allows."""
    return Fraction(field_of_partition(p, guard),
                    p.n * factorial(p.n))


def aic_check(p: PartitionStrategy, guard: int = PARTITION_GUARD) -> bool:
    """Alice-In-Chains rule: some target s exists such that for every
    position i, some actually-used message class contains no permutation
    placing s at i.

    Empty classes are not valid warnings: a message that is never sent
    rules nothing out.
    """
    classes = class_members(p, guard)
    nonempty = [c for c in classes if c]
    n = p.n
    for s in range(n):
        if all(any(all(img[i] != s for img in c) for c in nonempty)
               for i in range(n)):
            return True
    return False


@dataclass(frozen=True)
class FieldSearchResult:
    field: int
    witness: PartitionStrategy
    nodes: int
    restriction: str | None


def brute_force_field(n: int, m: int, restriction: str | None = None,
                      budget: int = DEFAULT_BUDGET,
                      guard: int = PARTITION_GUARD) -> FieldSearchResult:
    """Maximum field over all partitions of the n! permutations into m classes.

    Depth-first search in base-m counter order over the assignment vector,
    pruned by the bound field + n * (permutations still unassigned) and by
    canonical class labeling (labels appear in first-use order, which is
    harmless because the field ignores labels). ``restriction="aic"`` keeps
    only partitions passing :func:`aic_check`. Raises
    :class:`~permlab.errors.BudgetExceeded` after ``budget`` search nodes.
    """
    if restriction not in (None, "aic"):
        raise ValueError(f"unknown restriction {restriction!r}")
    check_guard(n, guard, "brute_force_field")
    perms = list(itertools.permutations(range(n)))
    total = len(perms)

    mag = [[[0] * n for _ in range(n)] for _ in range(m)]
    intensity = [[0] * n for _ in range(m)]
    assignment = [0] * total
    best_field = -1
    best_assignment: tuple[int, ...] | None = None
    nodes = 0

    def push(idx: int, h: int) -> tuple[int, list[int]]:
        gained = 0
        raised = []
        mh, ih = mag[h], intensity[h]
        for i, k in enumerate(perms[idx]):
            cell = mh[i]
            cell[k] += 1
            if cell[k] > ih[k]:
                ih[k] += 1
                gained += 1
                raised.append(k)
        return gained, raised

    def pop(idx: int, h: int, raised: list[int]) -> None:
        mh, ih = mag[h], intensity[h]
        for i, k in enumerate(perms[idx]):
            mh[i][k] -= 1
        for k in raised:
            ih[k] -= 1

    def leaf_ok() -> bool:
        if restriction != "aic":
            return True
        return _aic_on_members(n, m, perms, assignment)

    def dfs(depth: int, field: int, used: int) -> None:
        nonlocal best_field, best_assignment, nodes
        if depth == total:
            if field > best_field and leaf_ok():
                best_field = field
                best_assignment = tuple(assignment)
            return
        if field + n * (total - depth) <= best_field:
            return
        limit = min(m, used + 1)  # first-use canonical labels
        for h in range(limit):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(
                    f"field search exceeded {budget} nodes; "
                    f"re-run with a larger --budget")
            gained, raised = push(depth, h)
            assignment[depth] = h
            dfs(depth + 1, field + gained, max(used, h + 1))
            pop(depth, h, raised)
        assignment[depth] = 0

    dfs(0, 0, 0)
    if best_assignment is None:
        # only possible if every leaf failed the restriction; cannot happen
        # for aic (the one-class-per-first-image partition always passes)
        raise RuntimeError("search found no admissible partition")
    return FieldSearchResult(
        best_field, PartitionStrategy(n, m, best_assignment), nodes, restriction)


def _aic_on_members(n: int, m: int, perms: list[tuple[int, ...]],
                    assignment: list[int]) -> bool:
    classes: list[list[tuple[int, ...]]] = [[] for _ in range(m)]
    for rank, h in enumerate(assignment):
        classes[h].append(perms[rank])
    nonempty = [c for c in classes if c]
    for s in range(n):
        if all(any(all(img[i] != s for img in c) for c in nonempty)
               for i in range(n)):
            return True
    return False


@dataclass(frozen=True)
class DedupStep:
    """One rewrite: elements (k1, k2) shared magnet i1; k2 re-anchored at i2."""

    class_index: int
    k1: int
    k2: int
    i1: int
    i2: int
    replaced: int                       # members rewritten by the transposition
    intensities_before: tuple[int, ...]
    intensities_after: tuple[int, ...]


@dataclass(frozen=True)
class DedupResult:
    classes: tuple[tuple[Permutation, ...], ...]
    steps: tuple[DedupStep, ...]
    final_magnets: tuple[tuple[int, ...] | None, ...]  # None for empty classes


def deduplicate_magnets(classes, guard: int = PARTITION_GUARD) -> DedupResult:
    """Rewrite each class until its n magnets are pairwise distinct.

    While two elements k1 < k2 share a magnet i1 (the smallest such pair is
    processed first), pick the smallest position i2 that is no element's
    magnet, and for every member placing k2 at i1 swap its images at i1 and
    i2 unless the result is already present. k2's magnet moves to i2. Class
    sizes are preserved and no intensity ever decreases; the audit trail
    records every step.
    """
    out_classes: list[tuple[Permutation, ...]] = []
    out_magnets: list[tuple[int, ...] | None] = []
    steps: list[DedupStep] = []
    for ci, raw in enumerate(classes):
        members = {p.image if isinstance(p, Permutation) else tuple(p)
                   for p in raw}
        if members:
            n = len(next(iter(members)))
            check_guard(n, guard, "deduplicate_magnets")
            class_steps, magnets = _dedup_one_class(ci, members, n)
            steps.extend(class_steps)
            out_magnets.append(tuple(magnets))
        else:
            out_magnets.append(None)
        out_classes.append(tuple(Permutation(img) for img in sorted(members)))
    return DedupResult(tuple(out_classes), tuple(steps), tuple(out_magnets))


def _dedup_one_class(ci: int, members: set[tuple[int, ...]], n: int,
                     ) -> tuple[list[DedupStep], list[int]]:
    _, magnets, intensities = _magnetism(sorted(members), n)
    steps: list[DedupStep] = []
    cap = n * factorial(n) + n  # the rewrite provably terminates well before
    while True:
        pair = _first_shared_pair(magnets)
        if pair is None:
            return steps, magnets
        if len(steps) >= cap:
            raise RuntimeError("magnet deduplication failed to terminate")
        k1, k2 = pair
        i1 = magnets[k1]
        free = sorted(set(range(n)) - set(magnets))
        i2 = free[0]
        before = tuple(intensities)
        replaced = 0
        for img in sorted(m for m in members if m[i1] == k2):
            swapped = list(img)
            swapped[i1], swapped[i2] = swapped[i2], swapped[i1]
            swapped = tuple(swapped)
            if swapped not in members:
                members.discard(img)
                members.add(swapped)
                replaced += 1
        mag, fresh_magnets, fresh_intensities = _magnetism(sorted(members), n)
        # keep designations sticky: move a magnet only when its old position
        # no longer attains the (possibly grown) maximum; k2 moves to i2,
        # which attains the maximum by construction.
        new_magnets = []
        for k in range(n):
            if k == k2:
                new_magnets.append(i2)
            elif mag[magnets[k]][k] == fresh_intensities[k]:
                new_magnets.append(magnets[k])
            else:
                new_magnets.append(fresh_magnets[k])
        magnets = new_magnets
        intensities = fresh_intensities
        steps.append(DedupStep(ci, k1, k2, i1, i2, replaced, before,
                               tuple(intensities)))


def _first_shared_pair(magnets: list[int]) -> tuple[int, int] | None:
    n = len(magnets)
    for k1 in range(n):
        for k2 in range(k1 + 1, n):
            if magnets[k1] == magnets[k2]:
                return k1, k2
    return None


def partition_from_hint(n: int, m: int, hint_fn,
                        guard: int = PARTITION_GUARD) -> PartitionStrategy:
    """Partition whose class h holds the permutations with hint_fn(p) == h."""
    check_guard(n, guard, "partition_from_hint")
    assignment = tuple(hint_fn(Permutation(img))
                       for img in itertools.permutations(range(n)))
    return PartitionStrategy(n, m, assignment)
