"""Dominance between categories and the non-dominated equivalence classes."""
from __future__ import annotations

from dataclasses import dataclass

from .model import Instance, InformationState, bits, condition


@dataclass(frozen=True)
class DominanceVerdict:
    dominates: bool
    equal: bool


@dataclass(frozen=True)
class CategoryClass:
    categories: tuple[int, ...]
    types: int          # common relevant-type bitmask, restricted to S
    products: int

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.types))


@dataclass(frozen=True)
class ClassPartition:
    classes: tuple[CategoryClass, ...]
    dominated: tuple[int, ...]
    irrelevant: tuple[int, ...]   # all-zero columns of Q(t)

    def __len__(self):
        return len(self.classes)

    def class_of(self, category: int) -> int | None:
        for k, c in enumerate(self.classes):
            if category in c.categories:
                return k
        return None

    @property
    def nondominated(self) -> tuple[int, ...]:
        return tuple(sorted(j for c in self.classes for j in c.categories))


def relevant_set(instance: Instance, state: InformationState, category: int) -> int:
    """Bitmask of surviving types that find ``category`` relevant."""
    return instance.relevant_masks[category] & state.types


def dominates(instance: Instance, state: InformationState, j: int, j2: int) -> DominanceVerdict:
    a = relevant_set(instance, state, j)
    b = relevant_set(instance, state, j2)
    return DominanceVerdict(dominates=(b & ~a) == 0 and a != b, equal=a == b)


def nondominated_classes(instance: Instance, state: InformationState) -> ClassPartition:
    S = state.types
    cats = bits(state.categories)
    sets = {j: instance.relevant_masks[j] & S for j in cats}
    irrelevant = tuple(j for j in cats if sets[j] == 0)
    live = [j for j in cats if sets[j]]
    distinct = set(sets[j] for j in live)
    # a set is maximal iff no other distinct set strictly contains it
    maximal = {m for m in distinct
               if not any(o != m and (m & ~o) == 0 for o in distinct)}
    groups: dict[int, list[int]] = {}
    dominated = []
    for j in live:
        if sets[j] in maximal:
            groups.setdefault(sets[j], []).append(j)
        else:
            dominated.append(j)
    lengths = instance.lengths
    classes = sorted(
        (CategoryClass(tuple(js), m, sum(lengths[j] for j in js)) for m, js in groups.items()),
        key=lambda c: c.categories[0])
    return ClassPartition(tuple(classes), tuple(dominated), irrelevant)


def known_relevant(instance: Instance, state: InformationState) -> list[int]:
    """Remaining categories relevant with posterior probability one."""
    S = state.types
    if not S:
        return []
    return [j for j in bits(state.categories) if instance.relevant_masks[j] & S == S]


def no_promotion_after_negative(instance: Instance, state: InformationState, category: int) -> bool:
    """Check that negative feedback on ``category`` creates no new class.

    A category dominated before the feedback may afterwards be dominated,
    irrelevant, or absorbed into a class that also holds a category which was
    non-dominated before; it may never sit in a class made only of formerly
    dominated categories.
    """
    before = nondominated_classes(instance, state)
    after = nondominated_classes(instance, condition(instance, state, category, 0))
    was_nondominated = set(before.nondominated)
    return all(any(j in was_nondominated for j in c.categories) for c in after.classes)


def promoted_after_negative(instance: Instance, state: InformationState, category: int) -> list[int]:
    """Formerly dominated categories that are non-dominated after negative feedback."""
    before = nondominated_classes(instance, state)
    after = nondominated_classes(instance, condition(instance, state, category, 0))
    return sorted(set(after.nondominated) & set(before.dominated))


def fusion_is_monotone(instance: Instance, state: InformationState, category: int) -> bool:
    """Each successor class is a union of whole surviving predecessor classes,
    plus possibly absorbed formerly-dominated categories."""
    before = nondominated_classes(instance, state)
    after = nondominated_classes(instance, condition(instance, state, category, 0))
    remaining = set(bits(state.categories)) - {category}
    for c in after.classes:
        cats = set(c.categories)
        touched = [set(b.categories) & remaining for b in before.classes
                   if set(b.categories) & cats]
        if not touched:
            return False
        if any(not t <= cats for t in touched):
            return False
        if not (cats - set().union(*touched)) <= set(before.dominated):
            return False
    return True


def is_block_diagonal(instance: Instance, state: InformationState) -> bool:
    """True when the class type-sets are pairwise disjoint and cover S.

    In that case each surviving type row is nonzero only on the columns of a
    single class block (its class plus categories that class dominates).
    """
    part = nondominated_classes(instance, state)
    union = 0
    for c in part.classes:
        if union & c.types:
            return False
        union |= c.types
    return union == state.types


def block_decomposition(instance: Instance, state: InformationState):
    """Split Q(t) into blocks, one per class, or return None if it does not split.

    Each block is ``(type_mask, categories)`` where the categories are the
    class itself plus every remaining category whose relevant set falls inside
    the class's type set.
    """
    if not is_block_diagonal(instance, state):
        return None
    part = nondominated_classes(instance, state)
    blocks = []
    for c in part.classes:
        cats = [j for j in bits(state.categories)
                if relevant_set(instance, state, j) and
                relevant_set(instance, state, j) & ~c.types == 0]
        blocks.append((c.types, tuple(cats)))
    return blocks
