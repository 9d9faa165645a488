"""Worst-case approximation factors and the known-type benchmark."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Instance, geometric_run


@dataclass(frozen=True)
class BoundInputs:
    beta: float
    l_min: int
    h: int
    l_total: int

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta}")
        if self.l_min < 1 or self.h < 1:
            raise ValueError("l_min and h must be at least 1")
        if self.l_total < self.h * self.l_min:
            raise ValueError("l_total cannot be smaller than h * l_min")

    @classmethod
    def of(cls, instance: Instance) -> "BoundInputs":
        return cls(instance.beta, instance.min_products, instance.n_categories,
                   instance.total_products)


def farsighted_bound(inputs: BoundInputs) -> float:
    """(1 - b^Lmin) / (1 + b - b^H - b^Lmin)."""
    b, lm, h = inputs.beta, inputs.l_min, inputs.h
    if b == 0.0:
        return 1.0
    return (1 - b**lm) / (1 + b - b**h - b**lm)


def naive_bound(inputs: BoundInputs) -> float:
    """(1 - b^Lmin) / (1 + b - b^H), using the category minimum Lmin."""
    b, lm, h = inputs.beta, inputs.l_min, inputs.h
    if b == 0.0:
        return 1.0
    return (1 - b**lm) / (1 + b - b**h)


def universal_bound(inputs: BoundInputs) -> float:
    """Factor b^(L-1) attained by every policy that never idles."""
    if inputs.l_total == 1:
        return 1.0
    return inputs.beta ** (inputs.l_total - 1)


@dataclass(frozen=True)
class FullInformation:
    relevant_counts: np.ndarray   # r_i, relevant products per type
    expected_count: float         # R, undiscounted cap on any policy
    discounted: float             # value when the type is revealed on arrival


def full_information_value(instance: Instance) -> FullInformation:
    r = instance.relevance.astype(int) @ instance.products.astype(int)
    R = float(np.dot(r, instance.prior))
    disc = float(sum(p * geometric_run(int(ri), instance.beta)
                     for p, ri in zip(instance.prior, r)))
    return FullInformation(r, R, disc)
