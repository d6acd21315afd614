"""Linguistic variables: term-indexed families of graded subsets of a data
domain, used to turn raw described data into formal contexts.

Each term names a graded subset (its membership row); granulating a
described object set through a variable evaluates memberships at each
object's datum, producing the derived context.  The built-in ``age``
variable is the classic three-term example over {0..100}.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Sequence

from .concepts import FormalContext
from .errors import StructuralError, ValidationFailure
from .predicates import VPredicate, check_predicate, close_predicate, hom_metric
from .quantale import Fuzzy01, Value
from .relations import VRelation, compose, lift_map_lower
from .spaces import (
    ApproximationSpace,
    VMap,
    discrete_space,
    pair_id,
    space_sum,
    tensor_space,
    validate_space,
)
from .validation import ValidationReport

# A description assigns each object its raw datum; it is just a map into
# the data domain.
DescriptionFunction = VMap


@dataclass
class LinguisticVariable:
    terms: ApproximationSpace
    data_domain: ApproximationSpace
    assignment: VRelation

    def __post_init__(self):
        if self.assignment.source != self.terms or self.assignment.target != self.data_domain:
            raise StructuralError("assignment does not match term/data spaces")

    @property
    def quantale(self):
        return self.terms.quantale

    def membership(self, term: str) -> VPredicate:
        row = self.assignment.matrix[self.terms.index(term)]
        return VPredicate(self.data_domain, row)


def validate_variable(var: LinguisticVariable) -> ValidationReport:
    """Check every row is a predicate and the term metric is honoured."""
    q = var.quantale
    rep = ValidationReport("linguistic variable")
    for m in var.terms.elements:
        row_rep = check_predicate(var.membership(m))
        for v in row_rep.violations:
            rep.add("term-predicate", (m,) + v.where, v.detail)
    for m1 in var.terms.elements:
        for m2 in var.terms.elements:
            bound = hom_metric(var.membership(m1), var.membership(m2))
            mu = var.terms.mu(m1, m2)
            if not q.leq(mu, bound):
                rep.add(
                    "term-metric",
                    (m1, m2),
                    f"term distance {q.format(mu)} not below row distance {q.format(bound)}",
                )
    return rep


def make_variable(
    terms: ApproximationSpace,
    data_domain: ApproximationSpace,
    assignment: Sequence[Sequence[Value]],
    repair: bool = False,
) -> LinguisticVariable:
    """Build and validate a variable from a raw membership matrix.

    With ``repair`` each row is closed into a valid predicate first.
    Remaining violations raise :class:`ValidationFailure`.
    """
    rel = VRelation(terms, data_domain, tuple(tuple(r) for r in assignment))
    var = LinguisticVariable(terms, data_domain, rel)
    if repair:
        fixed = tuple(
            close_predicate(data_domain, row).values for row in rel.matrix
        )
        var = LinguisticVariable(terms, data_domain, VRelation(terms, data_domain, fixed))
    rep = validate_variable(var)
    if not rep.ok:
        raise ValidationFailure(rep)
    return var


def piecewise_linear(points: Sequence[tuple[float, float]]) -> Callable[[float], float]:
    """Membership from breakpoints, flat beyond the first and last."""
    pts = sorted((float(x), float(y)) for x, y in points)
    xs = [x for x, _ in pts]

    def f(x: float) -> float:
        if x <= xs[0]:
            return pts[0][1]
        if x >= xs[-1]:
            return pts[-1][1]
        hi = bisect_right(xs, x)
        x0, y0 = pts[hi - 1]
        x1, y1 = pts[hi]
        if x1 == x0:
            return y1
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    return f

AGE_MEMBERSHIPS: dict[str, tuple[tuple[float, float], ...]] = {
    "young": ((20.0, 1.0), (40.0, 0.0)),
    "middle-age": ((20.0, 0.0), (40.0, 1.0), (60.0, 1.0), (80.0, 0.0)),
    "old": ((40.0, 0.0), (60.0, 1.0)),
}


def age_variable() -> LinguisticVariable:
    """The classic fuzzy age scale over {0..100}.

    ``young`` is 1 up to 20, falls linearly to 0 at 40; ``middle-age`` is
    a trapezoid rising over 20-40, flat to 60, falling to 80; ``old``
    rises over 40-60 and stays 1.  Both metrics are discrete.
    """
    q = Fuzzy01()
    data = discrete_space(q, tuple(str(i) for i in range(101)))
    terms = discrete_space(q, ("young", "middle-age", "old"))
    rows = []
    for term in terms.elements:
        f = piecewise_linear(AGE_MEMBERSHIPS[term])
        rows.append(tuple(f(float(d)) for d in data.elements))
    return make_variable(terms, data, rows)


def constraint_sum(v0: LinguisticVariable, v1: LinguisticVariable) -> LinguisticVariable:
    """Combine variables over one data domain: stack the term families."""
    if v0.quantale != v1.quantale:
        raise StructuralError("variables use different quantales")
    if v0.data_domain != v1.data_domain:
        raise StructuralError("variables live over different data domains")
    terms = space_sum(v0.terms, v1.terms)
    matrix = v0.assignment.matrix + v1.assignment.matrix
    return LinguisticVariable(
        ApproximationSpace.from_space(terms),
        v0.data_domain,
        VRelation(terms, v0.data_domain, matrix),
    )


def tensor_variables(v0: LinguisticVariable, v1: LinguisticVariable) -> LinguisticVariable:
    """Pair independent variables: product terms, product data, tensored rows."""
    if v0.quantale != v1.quantale:
        raise StructuralError("variables use different quantales")
    q = v0.quantale
    terms = tensor_space(v0.terms, v1.terms)
    data = tensor_space(v0.data_domain, v1.data_domain)
    rows = []
    for i0 in range(v0.terms.size):
        for i1 in range(v1.terms.size):
            row = []
            for j0 in range(v0.data_domain.size):
                for j1 in range(v1.data_domain.size):
                    row.append(q.tensor(v0.assignment.matrix[i0][j0], v1.assignment.matrix[i1][j1]))
            rows.append(tuple(row))
    return LinguisticVariable(
        ApproximationSpace.from_space(terms),
        ApproximationSpace.from_space(data),
        VRelation(terms, data, tuple(rows)),
    )


def _objects_space(description: VMap) -> ApproximationSpace:
    src = description.source
    if isinstance(src, ApproximationSpace):
        return src
    return ApproximationSpace.from_space(src)


def granulate(description: VMap, variable: LinguisticVariable) -> FormalContext:
    """Derived context: evaluate each term at each object's datum."""
    if description.target != variable.data_domain:
        raise StructuralError("description target differs from the variable's data domain")
    objects = _objects_space(description)
    sigma = variable.assignment.matrix
    rows = tuple(
        tuple(
            sigma[j][variable.data_domain.index(description.apply(g))]
            for j in range(variable.terms.size)
        )
        for g in objects.elements
    )
    incidence = VRelation(objects, variable.terms, rows)
    return FormalContext(objects, variable.terms, incidence)


def granulate_relational(description: VMap, variable: LinguisticVariable) -> VRelation:
    """Compositional form of granulation, for cross-checking.

    Composes the description's graph with the flipped assignment; equal
    to the pointwise form whenever the data metric is discrete, and
    above it otherwise.
    """
    if description.target != variable.data_domain:
        raise StructuralError("description target differs from the variable's data domain")
    objects = _objects_space(description)
    graph = lift_map_lower(VMap(objects, variable.data_domain, description.mapping))
    flipped = VRelation(
        variable.data_domain,
        variable.terms,
        tuple(
            tuple(variable.assignment.matrix[j][d] for j in range(variable.terms.size))
            for d in range(variable.data_domain.size)
        ),
    )
    return compose(graph, flipped)


@dataclass
class FinenessResult:
    """Induced indiscernibility plus how the given object metric compares."""

    space: ApproximationSpace
    violations: tuple[tuple[str, str, Value, Value], ...]
    metric_report: ValidationReport

    @property
    def fine(self) -> bool:
        return not self.violations


def context_indiscernibility(ctx: FormalContext) -> ApproximationSpace:
    """Agreement metric induced on objects by their incidence rows."""
    q = ctx.quantale
    inc = ctx.incidence.matrix
    m = ctx.attributes.size
    n = ctx.objects.size
    rows = tuple(
        tuple(
            q.inf([q.biimplies(inc[i][k], inc[j][k]) for k in range(m)])
            for j in range(n)
        )
        for i in range(n)
    )
    return ApproximationSpace(q, ctx.objects.elements, rows)


def induced_indiscernibility(description: VMap, variable: LinguisticVariable) -> FinenessResult:
    """Indiscernibility induced by the scale, checked against the given one.

    The given object metric must be at least as fine (pointwise below)
    as the induced one; offending pairs are reported, not raised.  The
    induced metric itself is validated rather than assumed.
    """
    ctx = granulate(description, variable)
    induced = context_indiscernibility(ctx)
    q = induced.quantale
    given = _objects_space(description)
    violations = []
    for i, g1 in enumerate(given.elements):
        for j, g2 in enumerate(given.elements):
            if not q.leq(given.metric[i][j], induced.metric[i][j]):
                violations.append((g1, g2, given.metric[i][j], induced.metric[i][j]))
    return FinenessResult(induced, tuple(violations), validate_space(induced))


def apposition(
    facets: Sequence[tuple[VMap, LinguisticVariable]], form: str = "sum"
) -> FormalContext:
    """Combine several facets over one object set into a single context.

    ``sum`` concatenates the per-facet derived contexts column-wise on
    the summed term space (the default); ``tensor`` granulates the
    tensored variables along the paired descriptions.
    """
    if not facets:
        raise StructuralError("apposition needs at least one facet")
    first_objects = _objects_space(facets[0][0])
    for d, _ in facets[1:]:
        if _objects_space(d) != first_objects:
            raise StructuralError("facets do not share one object space")
    if form == "sum":
        contexts = [granulate(d, v) for d, v in facets]
        attributes = contexts[0].attributes
        for c in contexts[1:]:
            attributes = space_sum(attributes, c.attributes)
        attributes = ApproximationSpace.from_space(attributes)
        rows = tuple(
            tuple(v for c in contexts for v in c.incidence.matrix[i])
            for i in range(first_objects.size)
        )
        return FormalContext(first_objects, attributes, VRelation(first_objects, attributes, rows))
    if form == "tensor":
        desc, var = facets[0]
        for d, v in facets[1:]:
            var = tensor_variables(var, v)
            mapping = {
                g: pair_id(desc.apply(g), d.apply(g)) for g in first_objects.elements
            }
            desc = VMap(first_objects, var.data_domain, mapping)
        return granulate(desc, var)
    raise StructuralError(f"unknown apposition form {form!r}")
