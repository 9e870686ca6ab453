"""Displacement-pattern counts and the statistics behind joint shift sizes.

For a nonzero shift s, these tools count permutations by where they keep
points in place (sigma(i) = i) and where they push points s ahead
(sigma(j) = (j + s) mod n):

* ``count_required_displacements`` -- all of I fixed, all of J pushed (free
  elsewhere); a closed-form factorial count;
* ``count_exact_displacements``  -- fixed exactly on I, pushed exactly on J;
  exact by exhaustive sweep;
* ``count_optional_displacements`` -- all of I fixed, all of J pushed, and
  every position in K either fixed or pushed; closed form 2^|K| (n-|I u J u K|)!
  whenever K is feasible, exhaustive otherwise.

A pair (I, J) is *compatible* for s when I, J, I-s, J+s are pairwise
disjoint; K is *feasible* when it also avoids itself shifted and all four of
those sets. The sampled estimators report how common compatibility and
feasibility are, and ``covariance_estimate`` measures how nearly independent
the sizes of two shift classes are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

import numpy as np

from . import counting
from .enumeration import check_guard, displacement_matrix, perm_matrix
from .errors import (EqualIndices, HypothesisViolated, ParameterOutOfRange,
                     ShiftZero)
from .rng import BatchRng, Rng, batch_seeds, derive_seed


@dataclass(frozen=True)
class IndexSet:
    """A set of positions inside the cyclic index space 0..n-1."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements) or any(
                not 0 <= e < self.n for e in self.elements):
            raise ParameterOutOfRange(
                f"{self.elements!r} is not a set of indices in 0..{self.n - 1}")
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    @classmethod
    def of(cls, n: int, elements) -> "IndexSet":
        return cls(n, tuple(int(e) for e in elements))

    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def shift_set(L: IndexSet, l: int) -> IndexSet:
    """Elementwise modular shift L + l."""
    return IndexSet(L.n, tuple((e + l) % L.n for e in L.elements))


def _require_same_n(*sets: IndexSet) -> int:
    ns = {S.n for S in sets}
    if len(ns) != 1:
        raise ParameterOutOfRange(f"mixed ambient orders {sorted(ns)}")
    return ns.pop()


def _require_nonzero_shift(n: int, s: int) -> int:
    s %= n
    if s == 0:
        raise ShiftZero("shift s must be nonzero modulo n")
    return s


def is_compatible(I: IndexSet, J: IndexSet, s: int) -> bool:
    """True iff I, J, I-s, J+s are pairwise disjoint."""
    n = _require_same_n(I, J)
    s = _require_nonzero_shift(n, s)
    parts = [I.as_set(), J.as_set(),
             shift_set(I, -s).as_set(), shift_set(J, s).as_set()]
    union = set()
    for part in parts:
        if union & part:
            return False
        union |= part
    return True


def is_feasible(K: IndexSet, I: IndexSet, J: IndexSet, s: int) -> bool:
    """True iff (I, J) is compatible for s, K avoids K+s, and K avoids
    I, J, I-s and J+s."""
    n = _require_same_n(K, I, J)
    s = _require_nonzero_shift(n, s)
    if not is_compatible(I, J, s):
        return False
    k = K.as_set()
    if k & shift_set(K, s).as_set():
        return False
    blocked = (I.as_set() | J.as_set()
               | shift_set(I, -s).as_set() | shift_set(J, s).as_set())
    return not (k & blocked)


def count_required_displacements(I: IndexSet, J: IndexSet, s: int) -> int:
    """Permutations fixing all of I and pushing all of J by s (free elsewhere).

    Zero when the constraints clash (I meets J, or I meets J+s); otherwise
    exactly (n - |I u J|)! permutations.
    """
    n = _require_same_n(I, J)
    s = _require_nonzero_shift(n, s)
    if I.as_set() & J.as_set() or I.as_set() & shift_set(J, s).as_set():
        return 0
    return factorial(n - len(I.as_set() | J.as_set()))


def count_exact_displacements(I: IndexSet, J: IndexSet, s: int,
                              guard: int | None = None) -> int:
    """Permutations fixed exactly on I and pushed by s exactly on J.

    No closed form; counted by a full sweep of the n! permutations.
    """
    n = _require_same_n(I, J)
    s = _require_nonzero_shift(n, s)
    p = perm_matrix(n, guard)
    idx = np.arange(n, dtype=np.int8)
    fixed = p == idx[None, :]
    pushed = p == ((idx + s) % n)[None, :]
    want_fixed = np.zeros(n, dtype=bool)
    want_fixed[list(I.elements)] = True
    want_pushed = np.zeros(n, dtype=bool)
    want_pushed[list(J.elements)] = True
    rows = ((fixed == want_fixed[None, :]).all(axis=1)
            & (pushed == want_pushed[None, :]).all(axis=1))
    return int(rows.sum())


def count_optional_displacements(K: IndexSet, I: IndexSet, J: IndexSet, s: int,
                                 guard: int | None = None) -> int:
    """Permutations fixing I, pushing J, and fixing-or-pushing every k in K.

    Feasible K: closed form 2^|K| * (n - |I u J u K|)!. Infeasible K falls
    back to an exhaustive sweep (guarded).
    """
    n = _require_same_n(K, I, J)
    s = _require_nonzero_shift(n, s)
    if is_feasible(K, I, J, s):
        rest = n - len(I.as_set() | J.as_set() | K.as_set())
        return (1 << len(K)) * factorial(rest)
    p = perm_matrix(n, guard)
    idx = np.arange(n, dtype=np.int8)
    rows = np.ones(len(p), dtype=bool)
    for i in I.elements:
        rows &= p[:, i] == i
    for j in J.elements:
        rows &= p[:, j] == (j + s) % n
    for k in K.elements:
        rows &= (p[:, k] == k) | (p[:, k] == (k + s) % n)
    return int(rows.sum())


@dataclass(frozen=True)
class ProbabilityReport:
    """Exact or sampled probability together with its reference bound."""

    kind: str
    params: dict
    probability: float
    exact: Fraction | None        # set in exact mode
    std_err: float | None         # set in sampled mode
    trials: int | None
    closed_form_bound: Fraction


def compatible_pair_stats(n: int, t: int, s: int, mode: str = "exact",
                          trials: int = 100_000, seed: int = 0,
                          ) -> ProbabilityReport:
    """Probability that uniformly chosen disjoint I, J of size t are
    compatible for shift s, with the closed-form lower bound
    (1 - 4t/(n-2t))^(2t) attached for comparison."""
    if t < 1 or 2 * t >= n:
        raise ParameterOutOfRange(f"need 1 <= t and 2t < n, got t={t}, n={n}")
    s = _require_nonzero_shift(n, s)
    bound = (1 - Fraction(4 * t, n - 2 * t)) ** (2 * t)
    params = {"n": n, "t": t, "s": s, "mode": mode}
    if mode == "exact":
        hits = total = 0
        universe = range(n)
        for I in combinations(universe, t):
            iset = IndexSet.of(n, I)
            rest = [x for x in universe if x not in I]
            for J in combinations(rest, t):
                total += 1
                if is_compatible(iset, IndexSet.of(n, J), s):
                    hits += 1
        exact = Fraction(hits, total)
        return ProbabilityReport("compatible_pair", params, float(exact),
                                 exact, None, None, bound)
    if mode != "sampled":
        raise ParameterOutOfRange(f"mode must be exact or sampled, not {mode!r}")
    hits = 0
    for trial in range(trials):
        rng = Rng(derive_seed(seed, trial))
        I, J = _sample_disjoint_pair(n, t, rng)
        if is_compatible(I, J, s):
            hits += 1
    est = hits / trials
    se = math.sqrt(est * (1 - est) / trials)
    params["seed"] = seed
    return ProbabilityReport("compatible_pair", params, est, None, se,
                             trials, bound)


def _sample_disjoint_pair(n: int, t: int, rng: Rng) -> tuple[IndexSet, IndexSet]:
    pool = list(range(n))
    for i in range(2 * t):
        j = i + rng.randbelow(n - i)
        pool[i], pool[j] = pool[j], pool[i]
    return IndexSet.of(n, pool[:t]), IndexSet.of(n, pool[t:2 * t])


def canonical_compatible_pair(n: int, t: int, s: int) -> tuple[IndexSet, IndexSet]:
    """The lexicographically first compatible (I, J) with |I| = |J| = t.

    Note {0..t-1} itself is never a valid I when s < t (it meets its own
    shift I-s), so I ranges over all t-sets in lex order.
    """
    s = _require_nonzero_shift(n, s)
    for I in combinations(range(n), t):
        iset = IndexSet.of(n, I)
        if iset.as_set() & shift_set(iset, -s).as_set():
            continue
        rest = [x for x in range(n) if x not in I]
        for J in combinations(rest, t):
            jset = IndexSet.of(n, J)
            if is_compatible(iset, jset, s):
                return iset, jset
    raise HypothesisViolated(
        f"no compatible pair of size {t} exists for n={n}, s={s}")


def feasible_set_stats(n: int, t: int, k: int, s: int, mode: str = "exact",
                       trials: int = 100_000, seed: int = 0,
                       ) -> ProbabilityReport:
    """Probability that a uniform K of size k inside the complement of the
    canonical compatible (I, J) is feasible, with the closed-form lower
    bound (1 - (2t+k)/(n-2t-k))^k attached."""
    if k < 0 or 2 * k > n - 4 * t:
        raise HypothesisViolated(f"need 2k <= n - 4t, got k={k}, t={t}, n={n}")
    s = _require_nonzero_shift(n, s)
    I, J = canonical_compatible_pair(n, t, s)
    complement = sorted(set(range(n)) - I.as_set() - J.as_set())
    bound = (1 - Fraction(2 * t + k, n - 2 * t - k)) ** k
    params = {"n": n, "t": t, "k": k, "s": s, "mode": mode,
              "I": list(I.elements), "J": list(J.elements)}
    if mode == "exact":
        hits = total = 0
        for K in combinations(complement, k):
            total += 1
            if is_feasible(IndexSet.of(n, K), I, J, s):
                hits += 1
        exact = Fraction(hits, total)
        return ProbabilityReport("feasible_set", params, float(exact),
                                 exact, None, None, bound)
    if mode != "sampled":
        raise ParameterOutOfRange(f"mode must be exact or sampled, not {mode!r}")
    hits = 0
    pool_size = len(complement)
    for trial in range(trials):
        rng = Rng(derive_seed(seed, trial))
        pool = list(complement)
        for i in range(k):
            j = i + rng.randbelow(pool_size - i)
            pool[i], pool[j] = pool[j], pool[i]
        if is_feasible(IndexSet.of(n, pool[:k]), I, J, s):
            hits += 1
    est = hits / trials
    se = math.sqrt(est * (1 - est) / trials)
    params["seed"] = seed
    return ProbabilityReport("feasible_set", params, est, None, se,
                             trials, bound)


def joint_shift_table(n: int, i: int, j: int,
                      guard: int | None = None) -> dict[tuple[int, int], Fraction]:
    """Exact joint distribution of the sizes of shift classes i and j."""
    if i == j:
        raise EqualIndices("shift classes i and j must differ")
    if not (0 <= i < n and 0 <= j < n):
        raise ParameterOutOfRange(f"classes ({i}, {j}) not in 0..{n - 1}")
    v = displacement_matrix(n, guard)
    si = (v == i).sum(axis=1)
    sj = (v == j).sum(axis=1)
    pairs = si.astype(np.int64) * (n + 1) + sj
    counts = np.bincount(pairs, minlength=(n + 1) * (n + 1))
    total = factorial(n)
    table: dict[tuple[int, int], Fraction] = {}
    for ti in range(n + 1):
        for tj in range(n + 1):
            c = int(counts[ti * (n + 1) + tj])
            if c:
                table[(ti, tj)] = Fraction(c, total)
    return table


def joint_shift_pmf(n: int, i: int, j: int, t: int,
                    guard: int | None = None) -> Fraction:
    """Exact probability that shift classes i and j both have size t."""
    if not 0 <= t <= n:
        raise ParameterOutOfRange(f"t={t} not in 0..{n}")
    return joint_shift_table(n, i, j, guard).get((t, t), Fraction(0))


@dataclass(frozen=True)
class IndicatorStat:
    """Moments of the indicators [size of class i = t], [size of class j = t]."""

    n: int
    t: int
    i: int
    j: int
    mode: str
    trials: int | None
    e_zi: float
    e_zj: float
    e_zz: float
    cov: float
    se_zi: float
    se_zj: float
    se_cov: float
    exact_marginal: Fraction   # shift_count_pmf(n, t), the common marginal


def covariance_estimate(n: int, t: int, i: int, j: int,
                        trials: int = 100_000, seed: int = 0,
                        mode: str = "sampled", batch: int = 4096,
                        guard: int | None = None) -> IndicatorStat:
    """Covariance of the two indicator variables, sampled or exact.

    Sampled mode draws ``trials`` seeded permutations (trial index keyed, so
    results do not depend on batching) and reports standard errors; exact
    mode sweeps all n! permutations and reports zero standard errors.
    """
    if i == j:
        raise EqualIndices("shift classes i and j must differ")
    if not (0 <= i < n and 0 <= j < n):
        raise ParameterOutOfRange(f"classes ({i}, {j}) not in 0..{n - 1}")
    marginal = counting.shift_count_pmf(n, t)
    if mode == "exact":
        e_zz = joint_shift_pmf(n, i, j, t, guard)
        cov = e_zz - marginal * marginal
        return IndicatorStat(n, t, i, j, "exact", None,
                             float(marginal), float(marginal), float(e_zz),
                             float(cov), 0.0, 0.0, 0.0, marginal)
    if mode != "sampled":
        raise ParameterOutOfRange(f"mode must be exact or sampled, not {mode!r}")
    if trials < 1:
        raise ParameterOutOfRange("trials must be positive")
    cnt_i = cnt_j = cnt_ij = 0
    idx = np.arange(n, dtype=np.int32)
    done = 0
    while done < trials:
        width = min(batch, trials - done)
        rng = BatchRng(batch_seeds(seed, done, width))
        perms = rng.permutations(n)
        v = (idx[None, :] - perms) % n
        zi = (v == i).sum(axis=1) == t
        zj = (v == j).sum(axis=1) == t
        cnt_i += int(zi.sum())
        cnt_j += int(zj.sum())
        cnt_ij += int((zi & zj).sum())
        done += width
    p_i, p_j, p_ij = cnt_i / trials, cnt_j / trials, cnt_ij / trials
    cov = p_ij - p_i * p_j
    se_i = math.sqrt(p_i * (1 - p_i) / trials)
    se_j = math.sqrt(p_j * (1 - p_j) / trials)
    # delta method, treating the three estimators as uncorrelated
    var_cov = (p_ij * (1 - p_ij)
               + p_j * p_j * p_i * (1 - p_i)
               + p_i * p_i * p_j * (1 - p_j)) / trials
    se_cov = math.sqrt(var_cov)
    return IndicatorStat(n, t, i, j, "sampled", trials, p_i, p_j, p_ij,
                         cov, se_i, se_j, se_cov, marginal)
