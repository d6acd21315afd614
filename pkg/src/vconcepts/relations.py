"""Relations between enriched spaces: matrices composed by sup-tensor.

A relation from X to Y is an |X| x |Y| matrix that respects both
metrics.  Composition is matrix multiplication in the (sup, tensor)
semiring; it has residuals on both sides computed with (inf, implies).
Raw matrices read from files rarely satisfy the compatibility laws, so
validation is a separate step and :func:`repair_relation` produces the
least valid relation above a raw one.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import StructuralError
from .quantale import Value
from .spaces import VMap, VSpace, dual
from .validation import ValidationReport


@dataclass(frozen=True)
class VRelation:
    source: VSpace
    target: VSpace
    matrix: tuple[tuple[Value, ...], ...]

    def __post_init__(self):
        if self.source.quantale != self.target.quantale:
            raise StructuralError("relation endpoints use different quantales")
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))
        if len(self.matrix) != self.source.size or any(
            len(row) != self.target.size for row in self.matrix
        ):
            raise StructuralError(
                f"matrix must be {self.source.size}x{self.target.size}"
            )
        for row in self.matrix:
            for v in row:
                self.source.quantale.require(v)

    @property
    def quantale(self):
        return self.source.quantale

    def tau(self, x: str, y: str) -> Value:
        return self.matrix[self.source.index(x)][self.target.index(y)]


def identity_relation(s: VSpace) -> VRelation:
    return VRelation(s, s, s.metric)


def validate_relation(r: VRelation) -> ValidationReport:
    """List all triples breaking left or right metric compatibility."""
    q = r.quantale
    mu, nu, t = r.source.metric, r.target.metric, r.matrix
    xs, ys = r.source.elements, r.target.elements
    rep = ValidationReport("relation")
    for i2, x2 in enumerate(xs):
        for i1, x1 in enumerate(xs):
            for j, y in enumerate(ys):
                v = q.tensor(mu[i2][i1], t[i1][j])
                if not q.leq(v, t[i2][j]):
                    rep.add(
                        "left-compatibility",
                        (x2, x1, y),
                        f"{q.format(v)} not below {q.format(t[i2][j])}",
                    )
    for i, x in enumerate(xs):
        for j1, y1 in enumerate(ys):
            for j2, y2 in enumerate(ys):
                v = q.tensor(t[i][j1], nu[j1][j2])
                if not q.leq(v, t[i][j2]):
                    rep.add(
                        "right-compatibility",
                        (x, y1, y2),
                        f"{q.format(v)} not below {q.format(t[i][j2])}",
                    )
    return rep


def compose(first: VRelation, second: VRelation) -> VRelation:
    """Sup-tensor matrix product; middle spaces must agree."""
    if first.target != second.source:
        raise StructuralError("relations do not compose: middle spaces differ")
    q = first.quantale
    a, b = first.matrix, second.matrix
    ny = first.target.size
    rows = tuple(
        tuple(
            q.sup([q.tensor(a[i][k], b[k][j]) for k in range(ny)])
            for j in range(second.target.size)
        )
        for i in range(first.source.size)
    )
    return VRelation(first.source, second.target, rows)


def residuate_source(s: VRelation, r: VRelation) -> VRelation:
    """Right adjoint of composing with ``s`` on the left.

    For s: X -> Y and r: X -> Z the result maps (y, z) to the infimum of
    ``implies(s(x,y), r(x,z))`` over x.
    """
    if s.source != r.source:
        raise StructuralError("residuation needs a shared source space")
    q = s.quantale
    nx = s.source.size
    rows = tuple(
        tuple(
            q.inf([q.implies(s.matrix[i][jy], r.matrix[i][jz]) for i in range(nx)])
            for jz in range(r.target.size)
        )
        for jy in range(s.target.size)
    )
    return VRelation(s.target, r.target, rows)


def residuate_target(r: VRelation, t: VRelation) -> VRelation:
    """Right adjoint on the target side.

    For r: X -> Y and t: Z -> Y the result maps (x, z) to the infimum of
    ``implies(t(z,y), r(x,y))`` over y.
    """
    if r.target != t.target:
        raise StructuralError("target residuation needs a shared target space")
    q = r.quantale
    ny = r.target.size
    rows = tuple(
        tuple(
            q.inf([q.implies(t.matrix[k][j], r.matrix[i][j]) for j in range(ny)])
            for k in range(t.source.size)
        )
        for i in range(r.source.size)
    )
    return VRelation(r.source, t.source, rows)


def transpose(r: VRelation) -> VRelation:
    """Flip the matrix; endpoints become the dual spaces."""
    rows = tuple(
        tuple(r.matrix[i][j] for i in range(r.source.size)) for j in range(r.target.size)
    )
    return VRelation(dual(r.target), dual(r.source), rows)


def lift_map_lower(f: VMap) -> VRelation:
    """Graph of a map, measured in the target: (x, y) -> nu(f(x), y)."""
    rows = tuple(
        tuple(f.target.mu(f.apply(x), y) for y in f.target.elements)
        for x in f.source.elements
    )
    return VRelation(f.source, f.target, rows)


def lift_map_upper(f: VMap) -> VRelation:
    """Reverse graph of a map: (y, x) -> nu(y, f(x))."""
    rows = tuple(
        tuple(f.target.mu(y, f.apply(x)) for x in f.source.elements)
        for y in f.target.elements
    )
    return VRelation(f.target, f.source, rows)


def repair_relation(r: VRelation) -> VRelation:
    """Least valid relation above a raw matrix: close with both metrics."""
    return compose(compose(identity_relation(r.source), r), identity_relation(r.target))


def relation_equiv(r0: VRelation, r1: VRelation) -> bool:
    if r0.source.elements != r1.source.elements or r0.target.elements != r1.target.elements:
        return False
    if r0.quantale != r1.quantale:
        return False
    q = r0.quantale
    return all(
        q.equiv(a, b) for ra, rb in zip(r0.matrix, r1.matrix) for a, b in zip(ra, rb)
    )
