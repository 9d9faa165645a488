"""Problem instances, information states and Bayesian elimination.

Types and categories are addressed by 0-based index. An information state
stores the surviving types and remaining categories as integer bitmasks;
because feedback is a deterministic function of the type, the posterior
depends on the history only through the surviving set.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

PROB_TOL = 1e-12
VALUE_TOL = 1e-9


class InstanceError(ValueError):
    """Raised when an instance violates one of its invariants."""


class PriorError(InstanceError):
    pass


class BetaError(InstanceError):
    pass


class ShapeError(InstanceError):
    pass


class RelevanceError(InstanceError):
    pass


class ProductCountError(InstanceError):
    pass


class UnreachableStateError(ValueError):
    """The state has zero probability mass under the prior."""


class InconsistentObservationError(ValueError):
    """Feedback that has zero probability under the current posterior."""


class DomainError(ValueError):
    """A category that is not among the remaining ones was referenced."""


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def geometric_run(length: int, beta: float) -> float:
    """Discounted count of ``length`` consecutive relevant products."""
    if beta == 0.0:
        return 1.0 if length > 0 else 0.0
    return (1.0 - beta**length) / (1.0 - beta)


@dataclass(frozen=True, eq=False)
class Instance:
    relevance: np.ndarray
    prior: np.ndarray
    products: np.ndarray
    beta: float
    category_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        q = np.array(self.relevance, dtype=float)
        if q.ndim != 2:
            raise ShapeError(f"relevance must be a 2-d matrix, got ndim={q.ndim}")
        object.__setattr__(self, "relevance", q)
        object.__setattr__(self, "prior", np.array(self.prior, dtype=float).ravel())
        object.__setattr__(self, "products", np.array(self.products).ravel())
        object.__setattr__(self, "beta", float(self.beta))
        if not self.category_names:
            names = tuple(default_category_name(j) for j in range(q.shape[1]))
            object.__setattr__(self, "category_names", names)
        else:
            object.__setattr__(self, "category_names", tuple(self.category_names))
        for arr in (self.relevance, self.prior, self.products):
            arr.setflags(write=False)

    @property
    def n_types(self) -> int:
        return self.relevance.shape[0]

    @property
    def n_categories(self) -> int:
        return self.relevance.shape[1]

    @property
    def total_products(self) -> int:
        return int(self.products.sum())

    @property
    def min_products(self) -> int:
        return int(self.products.min())

    @cached_property
    def relevant_masks(self) -> tuple[int, ...]:
        """Per category, the bitmask of types that find it relevant."""
        q = self.relevance
        return tuple(mask_of(np.flatnonzero(q[:, j] == 1)) for j in range(q.shape[1]))

    @cached_property
    def _prior_list(self) -> tuple[float, ...]:
        return tuple(float(p) for p in self.prior)

    @cached_property
    def prior_cdf(self) -> tuple[float, ...]:
        return tuple(itertools.accumulate(self._prior_list))

    @cached_property
    def support_mask(self) -> int:
        """Bitmask of types with positive prior."""
        return mask_of(np.flatnonzero(self.prior > 0))

    @cached_property
    def _mass_cache(self) -> dict[int, float]:
        return {}

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.products)

    @cached_property
    def product_offsets(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.concatenate([[0], np.cumsum(self.products)[:-1]]))

    def mass(self, type_mask: int) -> float:
        """Prior probability of the event that the type lies in ``type_mask``."""
        cache = self._mass_cache
        v = cache.get(type_mask)
        if v is None:
            p = self._prior_list
            v = math.fsum(p[i] for i in bits(type_mask))
            cache[type_mask] = v
        return v

    def with_beta(self, beta: float) -> "Instance":
        return replace(self, beta=beta)

    def category_index(self, name_or_index) -> int:
        if isinstance(name_or_index, (int, np.integer)):
            return int(name_or_index)
        try:
            return self.category_names.index(name_or_index)
        except ValueError:
            raise DomainError(f"unknown category {name_or_index!r}") from None

    def product_label(self, category: int, k: int) -> str:
        return f"{self.category_names[category]}.{k + 1}"

    def __repr__(self):
        return (f"Instance(N={self.n_types}, H={self.n_categories}, "
                f"L={self.products.tolist()}, beta={self.beta})")


def default_category_name(j: int) -> str:
    letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if j < 26:
        return letters[j]
    return f"C{j}"


@dataclass(frozen=True, order=True)
class InformationState:
    """Surviving types and remaining categories, both as bitmasks."""
    types: int
    categories: int

    @property
    def surviving_types(self) -> tuple[int, ...]:
        return tuple(bits(self.types))

    @property
    def remaining_categories(self) -> tuple[int, ...]:
        return tuple(bits(self.categories))

    @classmethod
    def from_sets(cls, types: Iterable[int], categories: Iterable[int]) -> "InformationState":
        return cls(mask_of(types), mask_of(categories))

    def __repr__(self):
        return f"InformationState(S={set(self.surviving_types)}, E={set(self.remaining_categories)})"


def validate(instance: Instance) -> None:
    q, p, L, beta = instance.relevance, instance.prior, instance.products, instance.beta
    if q.size == 0 or q.shape[0] < 1 or q.shape[1] < 1:
        raise ShapeError("relevance matrix is empty")
    if p.shape != (q.shape[0],):
        raise ShapeError(f"prior has length {p.size}, expected {q.shape[0]}")
    if L.shape != (q.shape[1],):
        raise ShapeError(f"products has length {L.size}, expected {q.shape[1]}")
    if len(instance.category_names) != q.shape[1]:
        raise ShapeError("one category name per column is required")
    if not np.all((q == 0) | (q == 1)):
        raise RelevanceError("relevance entries must be exactly 0 or 1")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise PriorError("prior entries must be finite and nonnegative")
    if abs(math.fsum(p.tolist()) - 1.0) > PROB_TOL:
        raise PriorError(f"prior sums to {p.sum()!r}, not 1")
    if not np.all(np.equal(np.mod(L, 1), 0)) or np.any(L < 1):
        raise ProductCountError("every category needs a positive integer product count")
    if not (0.0 <= beta < 1.0):
        raise BetaError(f"beta must lie in [0, 1), got {beta}")


def canonicalize(instance: Instance) -> Instance:
    """Merge duplicate type rows (summing prior mass) and drop zero-prior types."""
    rows: dict[tuple, float] = {}
    for row, p in zip(instance.relevance.astype(int).tolist(), instance.prior.tolist()):
        if p <= 0:
            continue
        key = tuple(row)
        rows[key] = rows.get(key, 0.0) + p
    q = np.array(list(rows.keys()), dtype=float).reshape(len(rows), instance.n_categories)
    prior = np.array(list(rows.values()))
    prior = prior / prior.sum()
    return replace(instance, relevance=q, prior=prior)


def initial_state(instance: Instance) -> InformationState:
    return InformationState(instance.support_mask, (1 << instance.n_categories) - 1)


def posterior(instance: Instance, state: InformationState) -> np.ndarray:
    """Posterior over the surviving types, in ascending type order."""
    total = instance.mass(state.types)
    if total <= 0:
        raise UnreachableStateError(f"{state} has zero prior mass")
    idx = list(state.surviving_types)
    return instance.prior[idx] / total


def conditional_mass(instance: Instance, state: InformationState, type_mask: int) -> float:
    """P(X in type_mask | X in S) for a reachable state."""
    total = instance.mass(state.types)
    if total <= 0:
        raise UnreachableStateError(f"{state} has zero prior mass")
    sub = type_mask & state.types
    if sub == state.types:
        return 1.0
    return instance.mass(sub) / total


def _check_remaining(state: InformationState, category: int) -> None:
    if not (state.categories >> category) & 1:
        raise DomainError(f"category {category} is not among the remaining categories")


def relevance_probability(instance: Instance, state: InformationState, category: int) -> float:
    _check_remaining(state, category)
    return conditional_mass(instance, state, instance.relevant_masks[category])


def condition(instance: Instance, state: InformationState, category: int,
              feedback: int) -> InformationState:
    """Successor state after observing ``feedback`` on ``category``."""
    _check_remaining(state, category)
    if feedback not in (0, 1):
        raise ValueError(f"feedback must be 0 or 1, got {feedback!r}")
    m = instance.relevant_masks[category]
    types = state.types & m if feedback == 1 else state.types & ~m
    if instance.mass(types) <= 0:
        raise InconsistentObservationError(
            f"feedback {feedback} on {instance.category_names[category]} "
            "has zero probability in this state")
    return InformationState(types, state.categories & ~(1 << category))


# -- instance text format ---------------------------------------------------

def instance_to_dict(instance: Instance) -> dict:
    return {
        "beta": instance.beta,
        "categories": [{"name": n, "products": int(l)}
                       for n, l in zip(instance.category_names, instance.products)],
        "types": [{"prior": float(p), "relevance": [int(x) for x in row]}
                  for p, row in zip(instance.prior, instance.relevance)],
    }


def instance_from_dict(data: dict) -> Instance:
    try:
        cats = data["categories"]
        types = data["types"]
        beta = data.get("beta", 0.0)
        names = tuple(str(c["name"]) for c in cats)
        products = [c.get("products", 1) for c in cats]
        prior = [t["prior"] for t in types]
        relevance = [t["relevance"] for t in types]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed instance document: {exc}") from exc
    if len(set(names)) != len(names):
        raise ShapeError("category names must be unique")
    if any(len(r) != len(names) for r in relevance):
        raise ShapeError("every relevance row needs one entry per category")
    if not relevance or not names:
        raise ShapeError("relevance matrix is empty")
    if any(not isinstance(x, int) or isinstance(x, bool) for x in products):
        raise ProductCountError("product counts must be integers")
    instance = Instance(np.array(relevance, dtype=float), np.array(prior, dtype=float),
                        np.array(products, dtype=int), beta, names)
    validate(instance)
    return instance


def load_instance(path) -> Instance:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ShapeError(f"{path}: not valid JSON ({exc})") from exc
    return instance_from_dict(data)


def save_instance(instance: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n")


def make_instance(relevance: Sequence[Sequence[int]], prior=None, products=None,
                  beta: float = 0.5, names: Sequence[str] = ()) -> Instance:
    """Convenience constructor; uniform prior and one product per category by default."""
    q = np.array(relevance, dtype=float)
    n, h = q.shape
    prior = np.full(n, 1.0 / n) if prior is None else np.asarray(prior, dtype=float)
    products = np.ones(h, dtype=int) if products is None else np.asarray(products, dtype=int)
    inst = Instance(q, prior, products, beta, tuple(names))
    validate(inst)
    return inst
