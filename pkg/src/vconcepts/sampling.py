"""Seeded random fixtures for law checking: spaces, relations, contexts.

Raw random matrices are turned into valid artifacts by the closure
operators, so every law test runs against data that actually satisfies
the preconditions.  ``DEFAULT_SEED`` is the single seed the randomized
suites run with.
"""
from __future__ import annotations

import random
from typing import Sequence

from .concepts import FormalContext
from .predicates import VPredicate, close_predicate
from .quantale import Quantale, Value
from .relations import VRelation, repair_relation
from .spaces import (
    ApproximationSpace,
    VSpace,
    closed_approximation_space,
    closed_space,
    discrete_space,
)

DEFAULT_SEED = 1729


def random_value(rng: random.Random, q: Quantale) -> Value:
    return rng.choice(q.sample())


def random_vector(rng: random.Random, q: Quantale, n: int) -> tuple[Value, ...]:
    return tuple(random_value(rng, q) for _ in range(n))


def random_matrix(rng: random.Random, q: Quantale, n: int, m: int):
    return tuple(random_vector(rng, q, m) for _ in range(n))


def _names(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


def random_space(rng: random.Random, q: Quantale, n: int, prefix: str = "x") -> VSpace:
    return closed_space(q, _names(prefix, n), random_matrix(rng, q, n, n))


def random_approximation_space(
    rng: random.Random, q: Quantale, n: int, prefix: str = "x"
) -> ApproximationSpace:
    return closed_approximation_space(q, _names(prefix, n), random_matrix(rng, q, n, n))


def random_raw_relation(rng: random.Random, source: VSpace, target: VSpace) -> VRelation:
    return VRelation(
        source, target, random_matrix(rng, source.quantale, source.size, target.size)
    )


def random_relation(rng: random.Random, source: VSpace, target: VSpace) -> VRelation:
    """A valid relation: a raw one closed with both metrics."""
    return repair_relation(random_raw_relation(rng, source, target))


def random_predicate(rng: random.Random, space: VSpace) -> VPredicate:
    return close_predicate(space, random_vector(rng, space.quantale, space.size))


def random_context(rng: random.Random, q: Quantale, n_obj: int, n_attr: int) -> FormalContext:
    objects = random_approximation_space(rng, q, n_obj, "g")
    attributes = random_approximation_space(rng, q, n_attr, "m")
    return FormalContext(objects, attributes, random_relation(rng, objects, attributes))


def random_crisp_context(rng: random.Random, n_obj: int, n_attr: int) -> FormalContext:
    """Classical boolean context: discrete spaces, arbitrary 0/1 incidence."""
    from .quantale import Bool2

    q = Bool2()
    objects = discrete_space(q, _names("g", n_obj))
    attributes = discrete_space(q, _names("m", n_attr))
    matrix = tuple(
        tuple(rng.randint(0, 1) for _ in range(n_attr)) for _ in range(n_obj)
    )
    return FormalContext(objects, attributes, VRelation(objects, attributes, matrix))


def sizes_cycle(rng: random.Random, lo: int, hi: int) -> int:
    return rng.randint(lo, hi)
