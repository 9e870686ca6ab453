"""Command-line front end.

Every run prints JSON lines: a header holding the tool version, the resolved
configuration and a timestamp, then one result object per line. Re-running
the printed configuration reproduces the document byte for byte apart from
the timestamp; the worker count is an execution detail and never changes any
output. Exit codes: 0 success, 2 usage error, 3 guard or budget refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__
from .errors import GuardRefusal, PermlabError
from .reporting import dumps, json_ready


def _default_seed() -> int:
    return int(os.environ.get("PERMLAB_SEED", "0"))


def _parse_index_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="permlab",
        description="Advice-aided permutation search workbench")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="Monte Carlo game simulation")
    sim.add_argument("game", choices=["needle", "locker"])
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--trials", type=int, default=100_000)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--strategy", default="shift",
                     help="shift | naive | baseline | latin:<file>")
    sim.add_argument("--target-mode", choices=["uniform", "fixed", "sweep"],
                     default="uniform")
    sim.add_argument("--target", type=int, default=None)
    sim.add_argument("--exhaustive", action="store_true",
                     help="exact full sweep instead of sampling (n <= 8)")
    sim.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    sim.add_argument("--csv", action="store_true",
                     help="emit per-target CSV rows after the JSON document")

    ex = sub.add_parser("exact", help="exact strategy evaluation by enumeration")
    ex.add_argument("--strategy", default="shift")
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--guard", type=int, default=8,
                    help="largest n the full sweep will accept")

    pmf = sub.add_parser("pmf", help="exact shift-class size distribution")
    pmf.add_argument("--n", type=int, required=True)
    pmf.add_argument("--csv", action="store_true")

    dist = sub.add_parser("dist", help="distribution of the largest shift class")
    dist.add_argument("--n", type=int, required=True)
    dist.add_argument("--trials", type=int, default=10_000)
    dist.add_argument("--seed", type=int, default=None)
    dist.add_argument("--exhaustive", action="store_true")
    dist.add_argument("--csv", action="store_true")

    fld = sub.add_parser("field", help="partition fields and field search")
    fld.add_argument("--partition", help="JSON partition file to score")
    fld.add_argument("--brute", action="store_true",
                     help="search all partitions for the maximum field")
    fld.add_argument("--n", type=int)
    fld.add_argument("--m", type=int)
    fld.add_argument("--aic", action="store_true",
                     help="restrict the search to Alice-In-Chains partitions")
    fld.add_argument("--budget", type=int, default=None)
    fld.add_argument("--guard", type=int, default=8)
    fld.add_argument("--out", help="write the witness partition JSON here")

    st = sub.add_parser("structure", help="displacement-pattern statistics")
    st.add_argument("kind", choices=["phi", "phistar", "pset", "compatible",
                                     "feasible", "joint", "cov"])
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--s", type=int, default=1, help="shift")
    st.add_argument("--t", type=int, default=1)
    st.add_argument("--k", type=int, default=0)
    st.add_argument("--i", type=int, default=0)
    st.add_argument("--j", type=int, default=1)
    st.add_argument("--set-i", default="", help="comma list, e.g. 0,3")
    st.add_argument("--set-j", default="")
    st.add_argument("--set-k", default="")
    st.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    st.add_argument("--trials", type=int, default=100_000)
    st.add_argument("--seed", type=int, default=None)
    st.add_argument("--guard", type=int, default=None)

    dd = sub.add_parser("dedup", help="magnet deduplication rewrite")
    dd.add_argument("--partition", required=True)
    dd.add_argument("--guard", type=int, default=8)
    dd.add_argument("--out", help="write rewritten classes JSON here")

    sub.add_parser("example52", help="replay the 52-card worked example")
    return top


def _header(command: str, config: dict) -> str:
    return dumps({"document": "permlab-report", "version": __version__,
                  "command": command, "config": config,
                  "timestamp": datetime.now(timezone.utc).isoformat()})


def _print(line: str) -> None:
    sys.stdout.write(line + "\n")


def _cmd_simulate(args) -> int:
    from .simulate import GameConfig, simulate_locker, simulate_needle
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = GameConfig(n=args.n, trials=args.trials, seed=seed,
                     strategy=args.strategy, target_mode=args.target_mode,
                     target=args.target, exhaustive=args.exhaustive,
                     workers=args.workers)
    config = {"game": args.game, "n": cfg.n, "trials": cfg.trials,
              "seed": cfg.seed, "strategy": cfg.strategy,
              "target_mode": cfg.target_mode, "target": cfg.target,
              "exhaustive": cfg.exhaustive}
    _print(_header("simulate", config))
    run = simulate_needle if args.game == "needle" else simulate_locker
    report = run(cfg)
    _print(dumps(report))
    if report.per_target is not None:
        worst = min(report.per_target, key=lambda ts: (ts.estimate, ts.target))
        _print(dumps({"worst_target": worst.target,
                      "minimum": worst.estimate,
                      "minimum_exact": worst.exact,
                      "wilson_95_low": worst.wilson_95_low,
                      "wilson_95_high": worst.wilson_95_high}))
    if args.csv and report.per_target is not None:
        _print("target,trials,successes,estimate,wilson_95_low,wilson_95_high")
        for ts in report.per_target:
            _print(f"{ts.target},{ts.trials},{ts.successes},"
                   f"{ts.estimate!r},{ts.wilson_95_low!r},{ts.wilson_95_high!r}")
    return 0


def _cmd_exact(args) -> int:
    from .strategies import evaluate_success_exact, strategy_by_name
    st = strategy_by_name(args.strategy, args.n)
    _print(_header("exact", {"strategy": args.strategy, "n": args.n,
                             "guard": args.guard}))
    ev = evaluate_success_exact(st, guard=args.guard)
    _print(dumps(ev))
    return 0


def _cmd_pmf(args) -> int:
    from .counting import shift_count_pmf
    _print(_header("pmf", {"n": args.n}))
    rows = [{"k": k, "probability": shift_count_pmf(args.n, k)}
            for k in range(args.n + 1)]
    _print(dumps({"n": args.n, "pmf": rows}))
    if args.csv:
        _print("k,ratio,decimal")
        for row in rows:
            p = row["probability"]
            _print(f"{row['k']},{p.numerator}/{p.denominator},{float(p)!r}")
    return 0


def _cmd_dist(args) -> int:
    from .simulate import max_shift_distribution
    seed = args.seed if args.seed is not None else _default_seed()
    _print(_header("dist", {"n": args.n, "trials": args.trials, "seed": seed,
                            "exhaustive": args.exhaustive}))
    report = max_shift_distribution(args.n, trials=args.trials, seed=seed,
                                    exhaustive=args.exhaustive)
    _print(dumps(report))
    if args.csv:
        _print("max_shift,count")
        for k in sorted(report.histogram):
            _print(f"{k},{report.histogram[k]}")
    return 0


def _cmd_field(args) -> int:
    from .fields import (PartitionStrategy, brute_force_field,
                         field_of_partition, success_upper_bound, DEFAULT_BUDGET)
    if args.brute:
        if args.n is None or args.m is None:
            raise PermlabError("--brute needs --n and --m")
        budget = args.budget if args.budget is not None else DEFAULT_BUDGET
        restriction = "aic" if args.aic else None
        _print(_header("field", {"brute": True, "n": args.n, "m": args.m,
                                 "aic": args.aic, "budget": budget,
                                 "guard": args.guard}))
        result = brute_force_field(args.n, args.m, restriction=restriction,
                                   budget=budget, guard=args.guard)
        _print(dumps({"field": result.field, "nodes": result.nodes,
                      "restriction": result.restriction,
                      "witness": json.loads(result.witness.to_json())}))
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(result.witness.to_json() + "\n")
        return 0
    if not args.partition:
        raise PermlabError("field needs --partition FILE or --brute")
    with open(args.partition, "r", encoding="utf-8") as fh:
        part = PartitionStrategy.from_json(fh.read())
    _print(_header("field", {"partition": args.partition, "guard": args.guard}))
    _print(dumps({"n": part.n, "m": part.m,
                  "field": field_of_partition(part, args.guard),
                  "success_upper_bound": success_upper_bound(part, args.guard)}))
    return 0


def _cmd_structure(args) -> int:
    from . import structures as S
    seed = args.seed if args.seed is not None else _default_seed()
    kind = args.kind
    config = {"kind": kind, "n": args.n, "s": args.s, "t": args.t,
              "k": args.k, "i": args.i, "j": args.j,
              "set_i": args.set_i, "set_j": args.set_j, "set_k": args.set_k,
              "mode": args.mode, "trials": args.trials, "seed": seed,
              "guard": args.guard}
    _print(_header("structure", config))
    n = args.n
    if kind in ("phi", "phistar", "pset"):
        I = S.IndexSet.of(n, _parse_index_list(args.set_i))
        J = S.IndexSet.of(n, _parse_index_list(args.set_j))
        if kind == "phi":
            count = S.count_exact_displacements(I, J, args.s, guard=args.guard)
        elif kind == "phistar":
            count = S.count_required_displacements(I, J, args.s)
        else:
            K = S.IndexSet.of(n, _parse_index_list(args.set_k))
            count = S.count_optional_displacements(K, I, J, args.s,
                                                   guard=args.guard)
        _print(dumps({"kind": kind, "count": count}))
    elif kind == "compatible":
        _print(dumps(S.compatible_pair_stats(n, args.t, args.s, mode=args.mode,
                                             trials=args.trials, seed=seed)))
    elif kind == "feasible":
        _print(dumps(S.feasible_set_stats(n, args.t, args.k, args.s,
                                          mode=args.mode, trials=args.trials,
                                          seed=seed)))
    elif kind == "joint":
        p = S.joint_shift_pmf(n, args.i, args.j, args.t, guard=args.guard)
        _print(dumps({"kind": "joint", "n": n, "i": args.i, "j": args.j,
                      "t": args.t, "probability": p}))
    else:
        _print(dumps(S.covariance_estimate(n, args.t, args.i, args.j,
                                           trials=args.trials, seed=seed,
                                           mode=args.mode, guard=args.guard)))
    return 0


def _cmd_dedup(args) -> int:
    from .fields import PartitionStrategy, class_members, deduplicate_magnets
    with open(args.partition, "r", encoding="utf-8") as fh:
        part = PartitionStrategy.from_json(fh.read())
    _print(_header("dedup", {"partition": args.partition, "guard": args.guard}))
    classes = class_members(part, args.guard)
    result = deduplicate_magnets(classes, guard=args.guard)
    out_classes = [[list(p.image) for p in c] for c in result.classes]
    _print(dumps({"classes": out_classes, "steps": result.steps,
                  "step_count": len(result.steps)}))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"n": part.n, "classes": out_classes}, fh)
            fh.write("\n")
    return 0


def _cmd_example52(args) -> int:
    from .perms import (apply_transposition, argmax_shift, example_deck,
                        shift_histogram, shift_vector)
    from .simulate import GameConfig, simulate_locker
    deck = example_deck()
    _print(_header("example52", {"n": deck.n}))
    hist = shift_histogram(deck)
    hint = argmax_shift(hist)
    wins = [s for s in range(deck.n)
            if deck.image[(s + hint) % deck.n] == s]
    swap_pos = deck.inverse_of(hint)
    after = apply_transposition(deck, 0, swap_pos)
    locker = simulate_locker(
        GameConfig(n=deck.n, trials=1, seed=0, target_mode="sweep"),
        perm_stream=lambda t: deck.image)
    _print(dumps({
        "n": deck.n,
        "permutation": list(deck.image),
        "shift_vector": list(shift_vector(deck)),
        "shift_counts": list(hist.counts),
        "hint": hint,
        "hint_class_size": hist.counts[hint],
        "needle_successes": len(wins),
        "needle_success_targets": wins,
        "needle_success_probability": {"ratio": f"{len(wins)}/{deck.n}",
                                       "value": len(wins) / deck.n},
        "swap_positions": [0, swap_pos],
        "swapped_cards": [int(deck.image[0]), hint],
        "first_locker_after_swap": int(after.image[0]),
        "locker_sweep_successes": locker.successes,
    }))
    return 0


_DISPATCH = {
    "simulate": _cmd_simulate,
    "exact": _cmd_exact,
    "pmf": _cmd_pmf,
    "dist": _cmd_dist,
    "field": _cmd_field,
    "structure": _cmd_structure,
    "dedup": _cmd_dedup,
    "example52": _cmd_example52,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except GuardRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except PermlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
