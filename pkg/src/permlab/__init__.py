"""Advice-aided permutation search: exact verification and Monte Carlo study.

Library layout:

* :mod:`permlab.perms` -- permutations, shift vectors/histograms, surgery;
* :mod:`permlab.counting` -- exact derangement/rencontres combinatorics;
* :mod:`permlab.strategies` -- hint+guess strategies and exact evaluation;
* :mod:`permlab.fields` -- partition magnets, intensities, field search;
* :mod:`permlab.structures` -- displacement-pattern counts and estimates;
* :mod:`permlab.simulate` -- seeded game simulators;
* :mod:`permlab.cli` -- the ``permlab`` command-line front end.
"""

from .counting import (derangements, factorial, rencontres,
                       rencontres_upper_bound_holds, shift_count_pmf,
                       typical_max_shift)
from .fields import (MagnetTable, PartitionStrategy, aic_check,
                     brute_force_field, deduplicate_magnets,
                     field_of_partition, magnet_and_intensity, magnet_table,
                     magneticity, partition_from_hint, success_upper_bound)
from .perms import (Permutation, ShiftHistogram, apply_transposition,
                    argmax_shift, example_deck, fixed_points,
                    identity_permutation, lex_rank, lex_unrank,
                    make_permutation, random_permutation, rotate_values,
                    shift_histogram, shift_vector)
from .rng import BatchRng, Rng, derive_seed
from .simulate import (GameConfig, MaxShiftReport, SimulationReport,
                       max_shift_distribution, simulate_locker,
                       simulate_needle, worst_case_target)
from .strategies import (LatinSquare, Strategy, baseline_strategy,
                         evaluate_success_exact, latin_strategy,
                         naive_strategy, shift_strategy, strategy_by_name)
from .structures import (IndexSet, compatible_pair_stats,
                         count_exact_displacements,
                         count_optional_displacements,
                         count_required_displacements, covariance_estimate,
                         feasible_set_stats, is_compatible, is_feasible,
                         joint_shift_pmf, joint_shift_table, shift_set)

__version__ = "0.1.0"
