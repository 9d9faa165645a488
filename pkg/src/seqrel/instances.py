"""Small named instances used in tests, demos and documentation."""
from __future__ import annotations

import numpy as np

from .model import Instance, make_instance


def identity(n: int = 2, prior=None, products=None, beta: float = 0.5) -> Instance:
    """Each type finds exactly one category relevant."""
    return make_instance(np.eye(n, dtype=int), prior, products, beta)


def triangular(n: int = 4, prior=None, products=None, beta: float = 0.5) -> Instance:
    """Nested relevant sets: type i finds the first n - i categories relevant."""
    q = [[1 if j < n - i else 0 for j in range(n)] for i in range(n)]
    return make_instance(q, prior, products, beta)


def fig1(prior=None, products=None, beta: float = 0.5) -> Instance:
    """Four types and categories A-D with relevant sets
    A: {1,2,3}, B: {2,3}, C: {1,4}, D: {2,4} (types numbered from 1)."""
    q = [[1, 0, 1, 0],
         [1, 1, 0, 1],
         [1, 1, 0, 0],
         [0, 0, 1, 1]]
    return make_instance(q, prior, products, beta)


def single(p: float, products: int, beta: float = 0.5) -> Instance:
    """One category relevant to a type of mass ``p``; the other type finds nothing relevant."""
    if p >= 1.0:
        return make_instance([[1]], [1.0], [products], beta)
    return make_instance([[1], [0]], [p, 1.0 - p], [products], beta)
