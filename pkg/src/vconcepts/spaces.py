"""Enriched spaces: finite element sets with a truth-value metric matrix.

A space is valid when the unit sits below every diagonal entry and the
triangle law ``mu(x,y) (x) mu(y,z) <= mu(x,z)`` holds.  Symmetric spaces
(approximation spaces) carry graded indiscernibility; general spaces are
enriched preorders, generalized metrics, or similarity matrices,
depending on the algebra chosen.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, StructuralError
from .quantale import Quantale, Value
from .validation import ValidationReport


@dataclass(frozen=True)
class VSpace:
    """Finite element list plus a square metric matrix over a quantale.

    The constructor checks shape and carrier membership only; the order
    axioms are checked separately by :func:`validate_space`, which lists
    every violation instead of failing fast.
    """

    quantale: Quantale
    elements: tuple[str, ...]
    metric: tuple[tuple[Value, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "metric", tuple(tuple(row) for row in self.metric))
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise StructuralError("duplicate element identifiers")
        if len(self.metric) != n or any(len(row) != n for row in self.metric):
            raise StructuralError(f"metric must be {n}x{n}")
        for row in self.metric:
            for v in row:
                self.quantale.require(v)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise StructuralError(f"unknown element {x!r}") from None

    def mu(self, x: str, y: str) -> Value:
        return self.metric[self.index(x)][self.index(y)]


@dataclass(frozen=True)
class ApproximationSpace(VSpace):
    """A space whose metric is symmetric (a graded indiscernibility)."""

    def __post_init__(self):
        super().__post_init__()
        q = self.quantale
        for i in range(self.size):
            for j in range(i + 1, self.size):
                if not q.equiv(self.metric[i][j], self.metric[j][i]):
                    raise DomainError(
                        "metric is not symmetric at "
                        f"({self.elements[i]},{self.elements[j]}): "
                        f"{q.format(self.metric[i][j])} vs {q.format(self.metric[j][i])}"
                    )

    @classmethod
    def from_space(cls, s: VSpace) -> "ApproximationSpace":
        return cls(s.quantale, s.elements, s.metric)


@dataclass
class VMap:
    """Total function between spaces; valid when it never shrinks the metric."""

    source: VSpace
    target: VSpace
    mapping: Mapping[str, str]

    def __post_init__(self):
        if self.source.quantale != self.target.quantale:
            raise StructuralError("map endpoints use different quantales")
        self.mapping = dict(self.mapping)
        missing = [x for x in self.source.elements if x not in self.mapping]
        if missing:
            raise StructuralError(f"mapping not total, missing {missing}")
        for x, y in self.mapping.items():
            if x not in self.source.elements:
                raise StructuralError(f"mapping defined on foreign element {x!r}")
            if y not in self.target.elements:
                raise StructuralError(f"image {y!r} not in target space")

    def apply(self, x: str) -> str:
        return self.mapping[x]

    def then(self, other: "VMap") -> "VMap":
        if self.target != other.source:
            raise StructuralError("maps do not compose: middle spaces differ")
        return VMap(self.source, other.target, {x: other.apply(self.apply(x)) for x in self.source.elements})


@dataclass(frozen=True)
class Preorder:
    """Crisp order extracted from a space: x below y iff unit <= mu(x,y)."""

    elements: tuple[str, ...]
    relation: tuple[tuple[bool, ...], ...]
    classes: tuple[tuple[str, ...], ...]
    strict: bool

    def holds(self, x: str, y: str) -> bool:
        return self.relation[self.elements.index(x)][self.elements.index(y)]


def validate_space(s: VSpace) -> ValidationReport:
    """List every broken axiom instance (all of them, not just the first)."""
    q = s.quantale
    rep = ValidationReport(f"space on {{{', '.join(s.elements)}}}")
    for i, x in enumerate(s.elements):
        if not q.leq(q.unit, s.metric[i][i]):
            rep.add("reflexivity", (x,), f"unit not below {q.format(s.metric[i][i])}")
    n = s.size
    for i in range(n):
        for j in range(n):
            tij = s.metric[i][j]
            for k in range(n):
                step = q.tensor(tij, s.metric[j][k])
                if not q.leq(step, s.metric[i][k]):
                    rep.add(
                        "transitivity",
                        (s.elements[i], s.elements[j], s.elements[k]),
                        f"{q.format(step)} not below {q.format(s.metric[i][k])}",
                    )
    return rep


def dual(s: VSpace) -> VSpace:
    """Transpose the metric."""
    n = s.size
    return VSpace(s.quantale, s.elements, tuple(tuple(s.metric[j][i] for j in range(n)) for i in range(n)))


def space_sum(s0: VSpace, s1: VSpace) -> VSpace:
    """Disjoint union; cross-distances are bottom (fully unrelated parts)."""
    if s0.quantale != s1.quantale:
        raise StructuralError("summands use different quantales")
    q = s0.quantale
    bot = q.bottom
    elements = s0.elements + s1.elements
    n0 = s0.size
    rows = []
    for i, _ in enumerate(elements):
        row = []
        for j, _ in enumerate(elements):
            if i < n0 and j < n0:
                row.append(s0.metric[i][j])
            elif i >= n0 and j >= n0:
                row.append(s1.metric[i - n0][j - n0])
            else:
                row.append(bot)
        rows.append(tuple(row))
    cls = ApproximationSpace if isinstance(s0, ApproximationSpace) and isinstance(s1, ApproximationSpace) else VSpace
    return cls(q, elements, tuple(rows))


def pair_id(x: str, y: str) -> str:
    return f"({x},{y})"


def tensor_space(s0: VSpace, s1: VSpace) -> VSpace:
    """Product elements with tensored coordinatewise metric."""
    if s0.quantale != s1.quantale:
        raise StructuralError("factors use different quantales")
    q = s0.quantale
    elements = tuple(pair_id(x, y) for x in s0.elements for y in s1.elements)
    rows = []
    for i0 in range(s0.size):
        for i1 in range(s1.size):
            row = []
            for j0 in range(s0.size):
                for j1 in range(s1.size):
                    row.append(q.tensor(s0.metric[i0][j0], s1.metric[i1][j1]))
            rows.append(tuple(row))
    cls = ApproximationSpace if isinstance(s0, ApproximationSpace) and isinstance(s1, ApproximationSpace) else VSpace
    return cls(q, elements, tuple(rows))


def symmetrize(s: VSpace) -> ApproximationSpace:
    """Tensor each entry with its transpose twin; the two-way agreement."""
    q = s.quantale
    n = s.size
    rows = tuple(
        tuple(q.tensor(s.metric[i][j], s.metric[j][i]) for j in range(n)) for i in range(n)
    )
    return ApproximationSpace(q, s.elements, rows)


def underlying_preorder(s: VSpace) -> Preorder:
    """Crisp order, equivalence classes, and strictness of a space.

    Classes are computed by union-find; each class is listed with its
    lexicographically least member first.
    """
    q = s.quantale
    n = s.size
    rel = tuple(tuple(q.leq(q.unit, s.metric[i][j]) for j in range(n)) for i in range(n))

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if rel[i][j] and rel[j][i]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[str]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(s.elements[i])
    classes = tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda c: c[0]))
    strict = all(len(c) == 1 for c in classes)
    return Preorder(s.elements, rel, classes, strict)


def check_map(f: VMap) -> ValidationReport:
    """List pairs where the map shrinks the metric."""
    q = f.source.quantale
    rep = ValidationReport("map")
    for x1 in f.source.elements:
        for x2 in f.source.elements:
            lhs = f.source.mu(x1, x2)
            rhs = f.target.mu(f.apply(x1), f.apply(x2))
            if not q.leq(lhs, rhs):
                rep.add("measure-preservation", (x1, x2), f"{q.format(lhs)} not below {q.format(rhs)}")
    return rep


def is_isometry(f: VMap) -> bool:
    q = f.source.quantale
    return all(
        q.equiv(f.source.mu(x1, x2), f.target.mu(f.apply(x1), f.apply(x2)))
        for x1 in f.source.elements
        for x2 in f.source.elements
    )


def induced_metric(elements: Sequence[str], mapping: Mapping[str, str], target: VSpace) -> VSpace:
    """Pull the target metric back along a bare function, making it an isometry."""
    elements = tuple(elements)
    for x in elements:
        if mapping[x] not in target.elements:
            raise StructuralError(f"image {mapping[x]!r} not in target space")
    rows = tuple(
        tuple(target.mu(mapping[x1], mapping[x2]) for x2 in elements) for x1 in elements
    )
    return VSpace(target.quantale, elements, rows)


def check_adjoint(f: VMap, g: VMap) -> ValidationReport:
    """Check the two-sided hom equation ``nu(f(x), y) == mu(x, g(y))``."""
    if f.source != g.target or f.target != g.source:
        raise StructuralError("maps are not between the same pair of spaces")
    q = f.source.quantale
    rep = ValidationReport("adjoint pair")
    for x in f.source.elements:
        for y in f.target.elements:
            lhs = f.target.mu(f.apply(x), y)
            rhs = f.source.mu(x, g.apply(y))
            if not q.equiv(lhs, rhs):
                rep.add("adjointness", (x, y), f"{q.format(lhs)} differs from {q.format(rhs)}")
    return rep


def discrete_space(q: Quantale, elements: Sequence[str]) -> ApproximationSpace:
    """Unit on the diagonal, bottom elsewhere: nothing is related."""
    elements = tuple(elements)
    n = len(elements)
    rows = tuple(
        tuple(q.unit if i == j else q.bottom for j in range(n)) for i in range(n)
    )
    return ApproximationSpace(q, elements, rows)


def unit_space(q: Quantale) -> VSpace:
    return VSpace(q, ("*",), ((q.unit,),))


def quantale_space(q: Quantale, values: Iterable[Value] | None = None) -> VSpace:
    """The algebra as a space over itself, with implies as the metric."""
    vs = tuple(values) if values is not None else q.sample()
    seen: dict[str, Value] = {}
    for v in vs:
        seen.setdefault(q.format(v), v)
    elems = tuple(seen)
    vals = tuple(seen.values())
    rows = tuple(tuple(q.implies(a, b) for b in vals) for a in vals)
    return VSpace(q, elems, rows)


def closed_space(q: Quantale, elements: Sequence[str], raw: Sequence[Sequence[Value]]) -> VSpace:
    """Least valid space above a raw matrix (reflexive-transitive closure)."""
    elements = tuple(elements)
    n = len(elements)
    mat = [list(row) for row in raw]
    if len(mat) != n or any(len(r) != n for r in mat):
        raise StructuralError(f"matrix must be {n}x{n}")
    for i in range(n):
        mat[i][i] = q.sup([mat[i][i], q.unit])
    for k in range(n):
        for i in range(n):
            for j in range(n):
                mat[i][j] = q.sup([mat[i][j], q.tensor(mat[i][k], mat[k][j])])
    return VSpace(q, elements, tuple(tuple(r) for r in mat))


def closed_approximation_space(
    q: Quantale, elements: Sequence[str], raw: Sequence[Sequence[Value]]
) -> ApproximationSpace:
    """Symmetrize a raw matrix by pairwise sup, then close it."""
    n = len(elements)
    sym = [
        [q.sup([raw[i][j], raw[j][i]]) for j in range(n)] for i in range(n)
    ]
    return ApproximationSpace.from_space(closed_space(q, elements, sym))


def space_equiv(s0: VSpace, s1: VSpace) -> bool:
    """Same elements and metric up to the algebra's tolerance."""
    if s0.quantale != s1.quantale or s0.elements != s1.elements:
        return False
    q = s0.quantale
    return all(
        q.equiv(a, b) for ra, rb in zip(s0.metric, s1.metric) for a, b in zip(ra, rb)
    )
