"""Random instances and the heuristic-vs-optimal ratio sweep over beta."""
from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .greedy import FarsightedSolver, evaluate_policy, naive_greedy_policy
from .model import Instance, canonicalize, validate
from .optimal import ClassSolver
from .sim import RngStream

ROW_HEADER = ["beta", "sample_id", "v_opt", "v_farsighted", "v_naive",
              "ratio_farsighted", "ratio_naive"]
AGG_HEADER = ["beta", "avg_ratio_farsighted", "min_ratio_farsighted",
              "avg_ratio_naive", "min_ratio_naive"]


def default_beta_grid() -> tuple[float, ...]:
    return tuple(round(0.05 * i, 10) for i in range(20))


@dataclass(frozen=True)
class GenerationRule:
    p_relevant: float = 0.5
    products: int | tuple[int, int] = 1     # fixed count, or inclusive (low, high)
    merge_duplicates: bool = True
    beta: float = 0.5


def random_instance(n_types: int, n_categories: int, rng, rule: GenerationRule = GenerationRule()
                    ) -> Instance:
    """Bernoulli relevance rows (no all-zero rows) with a normalized-uniform prior."""
    if n_types < 1 or n_categories < 1:
        raise ValueError("n_types and n_categories must be at least 1")
    if isinstance(rng, RngStream):
        rng = rng.generator()
    q = np.zeros((n_types, n_categories), dtype=int)
    for i in range(n_types):
        row = rng.random(n_categories) < rule.p_relevant
        while not row.any():
            row = rng.random(n_categories) < rule.p_relevant
        q[i] = row
    prior = rng.random(n_types)
    while prior.sum() <= 0:
        prior = rng.random(n_types)
    prior = prior / prior.sum()
    if isinstance(rule.products, tuple):
        lo, hi = rule.products
        products = rng.integers(lo, hi + 1, size=n_categories)
    else:
        products = np.full(n_categories, int(rule.products))
    inst = Instance(q, prior, products, rule.beta)
    if rule.merge_duplicates:
        inst = canonicalize(inst)
    validate(inst)
    return inst


@dataclass(frozen=True)
class SweepConfig:
    n_types: int
    n_categories: int
    samples: int = 50
    beta_grid: tuple[float, ...] = field(default_factory=default_beta_grid)
    seed: int = 0
    rule: GenerationRule = GenerationRule()

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if any(not 0.0 <= b < 1.0 for b in self.beta_grid):
            raise ValueError("beta grid values must lie in [0, 1)")
        if list(self.beta_grid) != sorted(self.beta_grid):
            raise ValueError("beta grid must be ascending")


@dataclass(frozen=True)
class RatioRow:
    beta: float
    sample_id: int
    v_optimal: float
    v_farsighted: float
    v_naive: float
    ratio_farsighted: float
    ratio_naive: float


@dataclass(frozen=True)
class BetaAggregate:
    beta: float
    avg_ratio_farsighted: float
    min_ratio_farsighted: float
    avg_ratio_naive: float
    min_ratio_naive: float


@dataclass
class SweepResult:
    config: SweepConfig
    instances: list[Instance]
    rows: list[RatioRow]
    aggregates: list[BetaAggregate]


def _ratio(v: float, opt: float) -> float:
    return 1.0 if opt == 0.0 else v / opt


def sample_rows(instance: Instance, sample_id: int, beta_grid) -> list[RatioRow]:
    rows = []
    naive = naive_greedy_policy()
    for beta in beta_grid:
        inst = instance.with_beta(beta)
        v_opt = ClassSolver(inst).solve().value
        v_far = FarsightedSolver(inst).solve().value
        v_nai = evaluate_policy(inst, naive)
        rows.append(RatioRow(beta, sample_id, v_opt, v_far, v_nai,
                             _ratio(v_far, v_opt), _ratio(v_nai, v_opt)))
    return rows


def sweep_instances(config: SweepConfig) -> list[Instance]:
    return [random_instance(config.n_types, config.n_categories, RngStream(config.seed, s),
                            config.rule)
            for s in range(config.samples)]


def aggregate(rows: list[RatioRow]) -> list[BetaAggregate]:
    out = []
    for beta in sorted({r.beta for r in rows}):
        sel = [r for r in rows if r.beta == beta]
        far = np.array([r.ratio_farsighted for r in sel])
        nai = np.array([r.ratio_naive for r in sel])
        out.append(BetaAggregate(beta, float(far.mean()), float(far.min()),
                                 float(nai.mean()), float(nai.min())))
    return out


def _sample_job(args):
    return sample_rows(*args)


def ratio_sweep(config: SweepConfig, workers: int = 1) -> SweepResult:
    instances = sweep_instances(config)
    jobs = [(inst, s, config.beta_grid) for s, inst in enumerate(instances)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_sample_job, jobs))
    else:
        chunks = [_sample_job(j) for j in jobs]
    rows = sorted((r for c in chunks for r in c), key=lambda r: (r.sample_id, r.beta))
    return SweepResult(config, instances, rows, aggregate(rows))


def _fmt(x) -> str:
    return format(x, ".12g")


def emit_csv(rows: list[RatioRow], aggregates: list[BetaAggregate], rows_path,
             aggregates_path) -> None:
    if not rows:
        raise ValueError("no rows to write")
    with open(rows_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(ROW_HEADER)
        for r in rows:
            w.writerow([_fmt(r.beta), r.sample_id, _fmt(r.v_optimal), _fmt(r.v_farsighted),
                        _fmt(r.v_naive), _fmt(r.ratio_farsighted), _fmt(r.ratio_naive)])
    with open(aggregates_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(AGG_HEADER)
        for a in aggregates:
            w.writerow([_fmt(a.beta), _fmt(a.avg_ratio_farsighted), _fmt(a.min_ratio_farsighted),
                        _fmt(a.avg_ratio_naive), _fmt(a.min_ratio_naive)])


def read_rows_csv(path) -> list[RatioRow]:
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        return [RatioRow(float(r["beta"]), int(r["sample_id"]), float(r["v_opt"]),
                         float(r["v_farsighted"]), float(r["v_naive"]),
                         float(r["ratio_farsighted"]), float(r["ratio_naive"]))
                for r in rd]


def read_aggregates_csv(path) -> list[BetaAggregate]:
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        return [BetaAggregate(*(float(r[k]) for k in AGG_HEADER)) for r in rd]


def sweep_paths(out_dir, prefix: str) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    return out_dir / f"{prefix}_rows.csv", out_dir / f"{prefix}_aggregates.csv"
