"""Formal contexts, derivation operators, concept lattices, implications.

A context couples an object space and an attribute space through an
incidence relation.  The two derivation operators

* ``derive_intent``: attributes shared (to a degree) by the objects of a
  predicate, pointwise ``inf_g implies(phi(g), iota(g,m))``;
* ``derive_extent``: objects carrying (to a degree) all attributes of a
  predicate, pointwise ``inf_m implies(psi(m), iota(g,m))``;

form a graded Galois connection.  Hard concepts are the exact fixpoints
of the round trip.  ``enumerate_concepts`` produces every hard concept
whose vectors take values in a finite generating grid, ordering the
result by the specialization metric between extents.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import DomainError, ResourceCapError, StructuralError
from .predicates import VPredicate, hom_metric
from .quantale import Value
from .relations import VRelation, validate_relation
from .spaces import ApproximationSpace, Preorder, VSpace, underlying_preorder, validate_space
from .validation import ValidationReport

GRID_CAP = 10_000


@dataclass(frozen=True)
class FormalContext:
    objects: ApproximationSpace
    attributes: ApproximationSpace
    incidence: VRelation

    def __post_init__(self):
        if self.incidence.source != self.objects or self.incidence.target != self.attributes:
            raise StructuralError("incidence does not match the context's spaces")

    @property
    def quantale(self):
        return self.objects.quantale


@dataclass(frozen=True)
class Concept:
    extent: VPredicate
    intent: VPredicate


@dataclass
class ConceptLattice:
    """Hard concepts plus the specialization metric between their extents."""

    context: FormalContext
    concepts: tuple[Concept, ...]
    order_metric: tuple[tuple[Value, ...], ...]
    grid: tuple[Value, ...]

    def __len__(self):
        return len(self.concepts)

    def leq(self, i: int, j: int) -> bool:
        q = self.context.quantale
        return q.leq(q.unit, self.order_metric[i][j])

    def index_of(self, c: Concept) -> int:
        q = self.context.quantale
        key = tuple(q.format(v) for v in c.extent.values)
        for i, known in enumerate(self.concepts):
            if tuple(q.format(v) for v in known.extent.values) == key:
                return i
        raise DomainError("concept is not a member of this lattice")


def validate_context(ctx: FormalContext) -> ValidationReport:
    rep = ValidationReport("context")
    rep.extend(validate_space(ctx.objects))
    rep.extend(validate_space(ctx.attributes))
    rep.extend(validate_relation(ctx.incidence))
    return rep


def _extent_of(ctx: FormalContext, psi: Sequence[Value]) -> list[Value]:
    q = ctx.quantale
    inc = ctx.incidence.matrix
    imp, inf = q.implies, q.inf
    m = ctx.attributes.size
    return [inf([imp(psi[j], row[j]) for j in range(m)]) for row in inc]


def _intent_of(ctx: FormalContext, phi: Sequence[Value]) -> list[Value]:
    q = ctx.quantale
    inc = ctx.incidence.matrix
    imp, inf = q.implies, q.inf
    n = ctx.objects.size
    return [inf([imp(phi[i], inc[i][j]) for i in range(n)]) for j in range(ctx.attributes.size)]


def derive_intent(ctx: FormalContext, phi: VPredicate) -> VPredicate:
    """Attribute predicate shared by the objects of ``phi``."""
    if phi.space != ctx.objects:
        raise StructuralError("predicate does not live on the object space")
    return VPredicate(ctx.attributes, tuple(_intent_of(ctx, phi.values)))


def derive_extent(ctx: FormalContext, psi: VPredicate) -> VPredicate:
    """Object predicate carrying all attributes of ``psi``."""
    if psi.space != ctx.attributes:
        raise StructuralError("predicate does not live on the attribute space")
    return VPredicate(ctx.objects, tuple(_extent_of(ctx, psi.values)))


def adjointness_measure(ctx: FormalContext, phi: VPredicate, psi: VPredicate) -> tuple[Value, Value]:
    """Both sides of the derivation adjunction; they always agree."""
    up = derive_intent(ctx, phi)
    down = derive_extent(ctx, psi)
    return hom_metric(psi, up), hom_metric(phi, down)


def hard_concept_measure(ctx: FormalContext, c: Concept) -> Value:
    """Degree to which extent and intent determine each other.

    Tensor of the agreement between the derived intent and the given one
    with the entailment of the given extent into the derived extent.
    """
    q = ctx.quantale
    up = _intent_of(ctx, c.extent.values)
    down = _extent_of(ctx, c.intent.values)
    agree = q.inf([q.biimplies(a, b) for a, b in zip(up, c.intent.values)])
    contained = q.inf([q.implies(a, b) for a, b in zip(c.extent.values, down)])
    return q.tensor(agree, contained)


def is_hard_concept(ctx: FormalContext, c: Concept) -> tuple[bool, Value]:
    q = ctx.quantale
    m = hard_concept_measure(ctx, c)
    return q.leq(q.unit, m), m


def default_value_grid(ctx: FormalContext, cap: int = GRID_CAP) -> tuple[Value, ...]:
    """Incidence values plus bottom and unit, closed under tensor and implies.

    Raises :class:`ResourceCapError` when the closure would exceed ``cap``
    values (additive algebras can generate unbounded sums).
    """
    q = ctx.quantale
    seen: dict[str, Value] = {}

    def note(v) -> bool:
        k = q.format(v)
        if k in seen:
            return False
        seen[k] = v
        return True

    note(q.bottom)
    note(q.unit)
    for row in ctx.incidence.matrix:
        for v in row:
            note(v)
    items = list(seen.values())
    i = 0
    while i < len(items):
        a = items[i]
        for j in range(i + 1):
            b = items[j]
            for c in (q.tensor(a, b), q.implies(a, b), q.implies(b, a)):
                if note(c):
                    items.append(c)
            if len(items) > cap:
                raise ResourceCapError(
                    f"value grid exceeded the cap of {cap} values; "
                    "pass an explicit finite grid instead"
                )
        i += 1
    return tuple(sorted(items, key=q.sort_key))


def enumerate_concepts(
    ctx: FormalContext,
    value_grid: Iterable[Value] | None = None,
    grid_cap: int = GRID_CAP,
    verify: bool = True,
) -> ConceptLattice:
    """All hard concepts with vectors over a finite value grid.

    Seeds one generator per (attribute, grid value) pair, closes each
    through the derivation round trip, and saturates the result under
    pairwise intent unions re-closed by the round trip.  When the grid is
    closed under tensor and implies (the default grid is), this yields
    exactly the grid-valued fixpoints.  With ``verify`` the pairwise
    meets and joins are checked to land inside the result.
    """
    q = ctx.quantale
    if value_grid is None:
        grid = default_value_grid(ctx, cap=grid_cap)
    else:
        uniq: dict[str, Value] = {}
        for v in value_grid:
            q.require(v)
            uniq.setdefault(q.format(v), v)
        grid = tuple(sorted(uniq.values(), key=q.sort_key))

    canon = {q.format(v): v for v in grid}

    def snap(v):
        k = q.format(v)
        if k in canon:
            return canon[k]
        canon[k] = v
        return v

    m = ctx.attributes.size
    bot = q.bottom
    sup, fmt = q.sup, q.format

    found: dict[tuple[str, ...], tuple[tuple[Value, ...], tuple[Value, ...]]] = {}
    intents: list[tuple[Value, ...]] = []

    def add(raw_psi: Sequence[Value]) -> None:
        phi = tuple(snap(v) for v in _extent_of(ctx, raw_psi))
        psi = tuple(snap(v) for v in _intent_of(ctx, phi))
        key = tuple(fmt(v) for v in psi)
        if key not in found:
            found[key] = (phi, psi)
            intents.append(psi)

    add((bot,) * m)
    for j, v in product(range(m), grid):
        seed = [bot] * m
        seed[j] = v
        add(seed)

    i = 0
    while i < len(intents):
        psi1 = intents[i]
        for j in range(i):
            psi2 = intents[j]
            add(tuple(sup([a, b]) for a, b in zip(psi1, psi2)))
        i += 1

    pairs = sorted(
        found.values(),
        key=lambda fp: tuple(q.sort_key(v) for v in fp[0]),
    )
    concepts = tuple(
        Concept(VPredicate(ctx.objects, phi), VPredicate(ctx.attributes, psi))
        for phi, psi in pairs
    )
    imp, inf = q.implies, q.inf
    order = tuple(
        tuple(
            inf([imp(a, b) for a, b in zip(c1.extent.values, c2.extent.values)])
            for c2 in concepts
        )
        for c1 in concepts
    )
    lattice = ConceptLattice(ctx, concepts, order, grid)
    if verify:
        _verify_lattice(lattice)
    return lattice


def _verify_lattice(lattice: ConceptLattice) -> None:
    """Pairwise meets and joins must already be members."""
    q = lattice.context.quantale
    by_extent = {
        tuple(q.format(v) for v in c.extent.values): c for c in lattice.concepts
    }
    by_intent = {
        tuple(q.format(v) for v in c.intent.values): c for c in lattice.concepts
    }
    for c1 in lattice.concepts:
        for c2 in lattice.concepts:
            meet_ext = tuple(
                q.inf([a, b]) for a, b in zip(c1.extent.values, c2.extent.values)
            )
            if tuple(q.format(v) for v in meet_ext) not in by_extent:
                raise DomainError(
                    "concept set is not meet-closed; the value grid is "
                    "probably not closed under tensor/implies"
                )
            join_int = tuple(
                q.inf([a, b]) for a, b in zip(c1.intent.values, c2.intent.values)
            )
            if tuple(q.format(v) for v in join_int) not in by_intent:
                raise DomainError(
                    "concept set is not join-closed; the value grid is "
                    "probably not closed under tensor/implies"
                )


def concept_meet(lattice: ConceptLattice, cs: Sequence[Concept]) -> Concept:
    """Greatest common specialization: pointwise inf of extents.

    The empty meet is the top concept (extent everywhere top).
    """
    ctx = lattice.context
    q = ctx.quantale
    for c in cs:
        lattice.index_of(c)
    if cs:
        ext = tuple(q.inf([c.extent.values[i] for c in cs]) for i in range(ctx.objects.size))
    else:
        ext = (q.top,) * ctx.objects.size
    key = tuple(q.format(v) for v in ext)
    for known in lattice.concepts:
        if tuple(q.format(v) for v in known.extent.values) == key:
            return known
    raise DomainError("meet fell outside the lattice; was it fully enumerated?")


def concept_join(lattice: ConceptLattice, cs: Sequence[Concept]) -> Concept:
    """Least common generalization: pointwise inf of intents.

    The empty join is the bottom concept (intent everywhere top).
    """
    ctx = lattice.context
    q = ctx.quantale
    for c in cs:
        lattice.index_of(c)
    if cs:
        intent = tuple(
            q.inf([c.intent.values[j] for c in cs]) for j in range(ctx.attributes.size)
        )
    else:
        intent = (q.top,) * ctx.attributes.size
    key = tuple(q.format(v) for v in intent)
    for known in lattice.concepts:
        if tuple(q.format(v) for v in known.intent.values) == key:
            return known
    raise DomainError("join fell outside the lattice; was it fully enumerated?")


def lattice_preorder(lattice: ConceptLattice) -> Preorder:
    """Crisp specialization order between the concepts (c0, c1, ...)."""
    labels = tuple(f"c{i}" for i in range(len(lattice.concepts)))
    space = VSpace(lattice.context.quantale, labels, lattice.order_metric)
    return underlying_preorder(space)


def hasse_edges(lattice: ConceptLattice) -> tuple[tuple[int, int], ...]:
    """Covering pairs (lower index, upper index) of the specialization order."""
    n = len(lattice.concepts)
    below = [[lattice.leq(i, j) and i != j for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if not below[i][j]:
                continue
            if any(below[i][k] and below[k][j] for k in range(n)):
                continue
            edges.append((i, j))
    return tuple(edges)


@dataclass(frozen=True)
class Implication:
    premise: str
    conclusion: str
    measure: Value


def implication_measure(ctx: FormalContext, psi1: VPredicate, psi2: VPredicate) -> Value:
    """Degree to which having the first attribute set forces the second."""
    return hom_metric(derive_extent(ctx, psi1), derive_extent(ctx, psi2))


def singleton_attribute_predicates(ctx: FormalContext) -> tuple[tuple[str, VPredicate], ...]:
    """One crisp predicate per attribute (unit there, bottom elsewhere)."""
    q = ctx.quantale
    out = []
    for j, m in enumerate(ctx.attributes.elements):
        vec = [q.bottom] * ctx.attributes.size
        vec[j] = q.unit
        out.append((m, VPredicate(ctx.attributes, tuple(vec))))
    return tuple(out)


def list_implications(
    ctx: FormalContext,
    threshold: Value | None = None,
    candidates: Sequence[tuple[str, VPredicate]] | None = None,
) -> tuple[Implication, ...]:
    """Implications between candidate predicates meeting a threshold.

    Candidates default to the crisp single-attribute predicates; every
    ordered pair with distinct labels is scored.  The default threshold
    is the unit, which selects the maximal implications.
    """
    q = ctx.quantale
    thr = q.unit if threshold is None else threshold
    pool = candidates if candidates is not None else singleton_attribute_predicates(ctx)
    extents = [(label, derive_extent(ctx, p)) for label, p in pool]
    out = []
    for l1, e1 in extents:
        for l2, e2 in extents:
            if l1 == l2:
                continue
            measure = hom_metric(e1, e2)
            if q.leq(thr, measure):
                out.append(Implication(l1, l2, measure))
    return tuple(sorted(out, key=lambda imp: (imp.premise, imp.conclusion)))
