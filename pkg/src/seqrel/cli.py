"""Command-line entry point: solve, evaluate, simulate, sweep, gen, recommend."""
from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .bounds import (BoundInputs, farsighted_bound, full_information_value, naive_bound,
                     universal_bound)
from .greedy import POLICIES, FarsightedSolver, evaluate_policy, get_policy, next_action
from .model import (InconsistentObservationError, InstanceError, Instance, InformationState,
                    condition, initial_state, instance_to_dict, load_instance, save_instance,
                    validate)
from .optimal import ClassSolver, RecursiveSolver
from .sim import RngStream, monte_carlo, run_session
from .structure import nondominated_classes

EXIT_USAGE, EXIT_VALIDATION, EXIT_IO, EXIT_INCONSISTENT = 2, 3, 4, 5


def g12(x: float) -> str:
    return format(x, ".12g")


def _load(args) -> Instance:
    inst = load_instance(args.instance)
    if args.beta is not None:
        inst = inst.with_beta(args.beta)
        validate(inst)
    return inst


def _names(inst: Instance, cats) -> str:
    return ",".join(inst.category_names[j] for j in cats)


def _path(inst: Instance, policy, feedback: int) -> list[str]:
    """Categories tested when every tested category answers ``feedback``."""
    st = initial_state(inst)
    out = []
    while True:
        j = policy.decide(inst, st)
        if j is None:
            return out
        out.append(inst.category_names[j])
        m = inst.relevant_masks[j] & st.types
        nxt = m if feedback == 1 else st.types & ~m
        if not nxt:   # the requested answer is impossible here; take the forced one
            nxt = st.types & ~m if feedback == 1 else m
        st = InformationState(nxt, st.categories & ~(1 << j))


def _policy_tree(inst: Instance, policy, st=None, depth=0, lines=None, limit=200):
    if lines is None:
        lines = []
        st = initial_state(inst)
    if len(lines) >= limit:
        return lines
    j = policy.decide(inst, st)
    pad = "  " * depth
    if j is None:
        return lines
    m = inst.relevant_masks[j] & st.types
    types = ",".join(str(i + 1) for i in range(inst.n_types) if st.types >> i & 1)
    lines.append(f"{pad}{{{types}}} show {inst.category_names[j]}")
    rest = st.categories & ~(1 << j)
    for y, nxt in ((1, m), (0, st.types & ~m)):
        if nxt:
            lines.append(f"{pad}  on {y}:")
            before = len(lines)
            _policy_tree(inst, policy, InformationState(nxt, rest), depth + 2, lines, limit)
            if len(lines) == before:
                lines[-1] += " stop"
    return lines


def cmd_solve(args) -> int:
    inst = _load(args)
    root = initial_state(inst)
    stats = None
    if args.policy == "optimal":
        solver = ClassSolver(inst)
        rep = solver.solve(root)
        value, ordering, stats = rep.value, rep.level_ordering, solver.stats
    elif args.policy == "optimal-naive":
        solver = RecursiveSolver(inst)
        rep = solver.solve(root)
        value, ordering, stats = rep.value, (), solver.stats
    elif args.policy == "farsighted":
        solver = FarsightedSolver(inst)
        rep = solver.solve(root)
        value, ordering, stats = rep.value, rep.level_ordering, solver.stats
    else:
        value, ordering = evaluate_policy(inst, get_policy(args.policy)), ()
    policy = get_policy(args.policy)
    first = policy.decide(inst, root)
    print(f"value: {g12(value)}")
    print(f"first action: {inst.category_names[first] if first is not None else 'none'}")
    if ordering:
        print("level ordering: " + " ".join(f"({_names(inst, c)})" for c in ordering))
    print("all-negative path: " + ",".join(_path(inst, policy, 0)))
    print("all-positive path: " + ",".join(_path(inst, policy, 1)))
    if args.explain:
        part = nondominated_classes(inst, root)
        print("classes:")
        for k, c in enumerate(part.classes):
            types = ",".join(str(i + 1) for i in c.members)
            print(f"  U{k + 1} = {{{_names(inst, c.categories)}}} types={{{types}}} products={c.products}")
        print(f"dominated: {_names(inst, part.dominated) or '-'}")
        print(f"irrelevant: {_names(inst, part.irrelevant) or '-'}")
        if stats is not None:
            print(f"states expanded: {stats.states_expanded}")
            print(f"memo hits: {stats.memo_hits}")
            if stats.levels:
                print(f"levels solved: {len(stats.levels)}, max classes per level: "
                      f"{max(l[0] for l in stats.levels)}")
        print("policy tree:")
        for line in _policy_tree(inst, policy):
            print("  " + line)
    return 0


def cmd_evaluate(args) -> int:
    inst = _load(args)
    v = evaluate_policy(inst, get_policy(args.policy))
    opt = ClassSolver(inst).solve().value
    b = BoundInputs.of(inst)
    fi = full_information_value(inst)
    print(f"value: {g12(v)}")
    print(f"optimal: {g12(opt)}")
    print(f"ratio: {g12(v / opt if opt else 1.0)}")
    print(f"full information: {g12(fi.discounted)} (undiscounted {g12(fi.expected_count)})")
    print(f"bounds: farsighted {g12(farsighted_bound(b))} naive {g12(naive_bound(b))} "
          f"any {g12(universal_bound(b))}")
    return 0


def cmd_simulate(args) -> int:
    inst = _load(args)
    policy = get_policy(args.policy)
    for r in range(args.trace):
        print(run_session(inst, policy, RngStream(args.seed, r)).dump(inst))
    res = monte_carlo(inst, policy, args.runs, args.seed, workers=args.workers)
    print(f"mean: {g12(res.mean)} +- {g12(res.stderr)} (runs={res.runs})")
    print(f"exact: {g12(evaluate_policy(inst, policy))}")
    return 0


def _products_rule(text: str):
    if "-" in text:
        lo, hi = text.split("-")
        return int(lo), int(hi)
    return int(text)


def cmd_sweep(args) -> int:
    if args.betas:
        grid = tuple(float(x) for x in args.betas.split(","))
    else:
        n = int(round(args.beta_max / args.beta_step)) + 1
        grid = tuple(round(i * args.beta_step, 10) for i in range(n))
    rule = bench.GenerationRule(products=_products_rule(args.products))
    cfg = bench.SweepConfig(args.n_types, args.n_categories, args.samples, grid, args.seed, rule)
    res = bench.ratio_sweep(cfg, workers=args.workers)
    prefix = args.prefix or f"sweep_{args.n_types}x{args.n_categories}"
    rows_path, agg_path = bench.sweep_paths(args.out_dir, prefix)
    bench.emit_csv(res.rows, res.aggregates, rows_path, agg_path)
    print(f"wrote {len(res.rows)} rows to {rows_path}")
    print(f"wrote {len(res.aggregates)} aggregates to {agg_path}")
    for a in res.aggregates:
        print(f"beta={g12(a.beta)} farsighted avg={a.avg_ratio_farsighted:.6f} "
              f"min={a.min_ratio_farsighted:.6f} naive avg={a.avg_ratio_naive:.6f} "
              f"min={a.min_ratio_naive:.6f}")
    return 0


def cmd_gen(args) -> int:
    rule = bench.GenerationRule(products=_products_rule(args.products), beta=args.beta)
    inst = bench.random_instance(args.n_types, args.n_categories, RngStream(args.seed), rule)
    if args.out:
        save_instance(inst, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(instance_to_dict(inst), indent=2))
    return 0


def cmd_recommend(args) -> int:
    inst = _load(args)
    policy = get_policy(args.policy)
    st = initial_state(inst)
    shown = [0] * inst.n_categories
    payoff = 0
    while True:
        act = next_action(policy, inst, st, tuple(shown))
        if act is None:
            break
        j, k = act
        print(inst.product_label(j, k), flush=True)
        while True:
            line = sys.stdin.readline()
            if not line:
                print(f"payoff: {payoff}")
                return 0
            line = line.strip()
            if line in ("0", "1"):
                break
            print("feedback must be 0 or 1", file=sys.stderr)
        y = int(line)
        if k == 0:
            st = condition(inst, st, j, y)
        elif y != 1:
            raise InconsistentObservationError(
                f"{inst.category_names[j]} was already found relevant")
        shown[j] += 1
        payoff += y
    print(f"payoff: {payoff}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="seqrel", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)
    policies = sorted(POLICIES)

    def with_instance(sp, policy=True):
        sp.add_argument("instance", help="instance JSON file")
        sp.add_argument("--beta", type=float, default=None, help="override beta from the file")
        if policy:
            sp.add_argument("--policy", choices=policies, default="optimal")

    sp = sub.add_parser("solve", help="compute a policy's value and plan")
    with_instance(sp)
    sp.add_argument("--explain", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("evaluate", help="exact value of a policy against the optimum")
    with_instance(sp)
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("simulate", help="Monte Carlo estimate of a policy's value")
    with_instance(sp)
    sp.add_argument("--runs", type=int, default=100000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--trace", type=int, default=0, metavar="N", help="dump the first N sessions")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep", help="heuristic/optimal ratios over a beta grid")
    sp.add_argument("--n-types", type=int, required=True)
    sp.add_argument("--n-categories", type=int, required=True)
    sp.add_argument("--samples", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--beta-step", type=float, default=0.05)
    sp.add_argument("--beta-max", type=float, default=0.95)
    sp.add_argument("--betas", default=None, help="comma-separated grid, overrides step/max")
    sp.add_argument("--products", default="1", help="products per category: N or LOW-HIGH")
    sp.add_argument("--out-dir", default=".")
    sp.add_argument("--prefix", default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("gen", help="write a random instance")
    sp.add_argument("--n-types", type=int, required=True)
    sp.add_argument("--n-categories", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--products", default="1")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("recommend", help="interactive session on stdin/stdout")
    with_instance(sp)
    sp.set_defaults(func=cmd_recommend)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InconsistentObservationError as exc:
        print(f"error: inconsistent observation: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
