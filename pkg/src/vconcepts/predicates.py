"""Graded predicates: characteristic vectors bounded by a space's metric.

A predicate over X assigns each element a truth value, subject to
``phi(x1) (x) mu(x1,x2) <= phi(x2)``; over a boolean space these are
exactly the up-closed subsets.  The space of all predicates is never
materialized; its metric is exposed pointwise as :func:`hom_metric`.

Rough approximation operators live here too: ``upper_approx`` is the
relational image along a symmetric metric, ``lower_approx`` the
residuation along it.  Over a boolean equivalence metric they reduce to
the classical block-based lower/upper approximations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, StructuralError
from .quantale import Value
from .relations import VRelation
from .spaces import ApproximationSpace, VSpace, unit_space
from .validation import ValidationReport


@dataclass(frozen=True)
class VPredicate:
    space: VSpace
    values: tuple[Value, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.space.size:
            raise StructuralError(
                f"predicate has {len(self.values)} entries for {self.space.size} elements"
            )
        for v in self.values:
            self.space.quantale.require(v)

    @property
    def quantale(self):
        return self.space.quantale

    def value(self, x: str) -> Value:
        return self.values[self.space.index(x)]


def check_predicate(p: VPredicate) -> ValidationReport:
    """List pairs where the vector breaks the metric constraint."""
    q = p.quantale
    rep = ValidationReport("predicate")
    n = p.space.size
    for i in range(n):
        for j in range(n):
            v = q.tensor(p.values[i], p.space.metric[i][j])
            if not q.leq(v, p.values[j]):
                rep.add(
                    "metric-constraint",
                    (p.space.elements[i], p.space.elements[j]),
                    f"{q.format(v)} not below {q.format(p.values[j])}",
                )
    return rep


def close_predicate(space: VSpace, raw: Sequence[Value]) -> VPredicate:
    """Least valid predicate above a raw vector (sup over metric images)."""
    q = space.quantale
    raw = tuple(raw)
    if len(raw) != space.size:
        raise StructuralError("vector length does not match the space")
    n = space.size
    values = tuple(
        q.sup([q.tensor(raw[i], space.metric[i][j]) for i in range(n)]) for j in range(n)
    )
    return VPredicate(space, values)


def hom_metric(p: VPredicate, r: VPredicate) -> Value:
    """Degree to which one predicate entails another: pointwise inf of implies."""
    if p.space != r.space:
        raise StructuralError("predicates live on different spaces")
    q = p.quantale
    return q.inf([q.implies(a, b) for a, b in zip(p.values, r.values)])


def entails(p: VPredicate, r: VPredicate) -> bool:
    q = p.quantale
    return q.leq(q.unit, hom_metric(p, r))


def predicate_equiv(p: VPredicate, r: VPredicate) -> bool:
    if p.space.elements != r.space.elements or p.quantale != r.quantale:
        return False
    q = p.quantale
    return all(q.equiv(a, b) for a, b in zip(p.values, r.values))


def extension(p: VPredicate) -> tuple[str, ...]:
    """Crisp subset where the predicate holds with at least the unit."""
    q = p.quantale
    return tuple(x for x, v in zip(p.space.elements, p.values) if q.leq(q.unit, v))


def _require_symmetric(space: VSpace) -> None:
    if isinstance(space, ApproximationSpace):
        return
    q = space.quantale
    for i in range(space.size):
        for j in range(i + 1, space.size):
            if not q.equiv(space.metric[i][j], space.metric[j][i]):
                raise DomainError(
                    "approximation operators need a symmetric metric; "
                    f"({space.elements[i]},{space.elements[j]}) breaks it"
                )


def upper_approx(p: VPredicate) -> VPredicate:
    """Everything indiscernibility reaches into the predicate (sup-tensor image)."""
    _require_symmetric(p.space)
    q = p.quantale
    n = p.space.size
    values = tuple(
        q.sup([q.tensor(p.space.metric[i][j], p.values[j]) for j in range(n)])
        for i in range(n)
    )
    return VPredicate(p.space, values)


def lower_approx(p: VPredicate) -> VPredicate:
    """Degree to which the whole indiscernibility class sits inside (inf-implies)."""
    _require_symmetric(p.space)
    q = p.quantale
    n = p.space.size
    values = tuple(
        q.inf([q.implies(p.space.metric[i][j], p.values[j]) for j in range(n)])
        for i in range(n)
    )
    return VPredicate(p.space, values)


def as_column_relation(p: VPredicate) -> VRelation:
    """The predicate as a relation from its space to the one-point space."""
    one = unit_space(p.quantale)
    return VRelation(p.space, one, tuple((v,) for v in p.values))


def as_row_relation(p: VPredicate) -> VRelation:
    """The predicate as a relation from the one-point space to its space."""
    one = unit_space(p.quantale)
    return VRelation(one, p.space, (tuple(p.values),))
