"""Truth-value algebras: commutative ordered monoids with a residuated tensor.

Four built-in algebras cover the usual interpretation styles:

* ``Bool2``      -- classical truth values {0,1}, tensor = and.
* ``Fuzzy01``    -- degrees in [0,1], tensor = min, Goedel residuum.
* ``CostReal``   -- costs in [0,inf] ordered downward, tensor = sum,
                    residuum = truncated difference.
* ``Powerset``   -- subsets of a fixed atom set, tensor = intersection.

``implies(a, b)`` is always the largest ``x`` with ``tensor(x, a) <= b``
(the adjunction ``tensor(x, a) <= b  iff  x <= implies(a, b)``), and
``sup``/``inf`` give least upper / greatest lower bounds of finite
collections, with ``sup([]) == bottom`` and ``inf([]) == top``.

Numeric algebras compare with an absolute tolerance of ``EPS`` so that
accumulated float error never flips an order decision.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

from .errors import DomainError

EPS = 1e-9

Value = Union[int, float, frozenset]


class Quantale:
    """Base interface; see the module docstring for the contract."""

    name: str = "abstract"
    is_cartesian: bool = False
    is_normal: bool = False

    unit: Value
    top: Value
    bottom: Value

    def contains(self, v: Value) -> bool:
        raise NotImplementedError

    def leq(self, a: Value, b: Value) -> bool:
        raise NotImplementedError

    def tensor(self, a: Value, b: Value) -> Value:
        raise NotImplementedError

    def implies(self, a: Value, b: Value) -> Value:
        raise NotImplementedError

    def sup(self, vs: Iterable[Value]) -> Value:
        raise NotImplementedError

    def inf(self, vs: Iterable[Value]) -> Value:
        raise NotImplementedError

    def parse(self, text: str) -> Value:
        raise NotImplementedError

    def format(self, v: Value) -> str:
        raise NotImplementedError

    def sort_key(self, v: Value):
        """Total deterministic order used for output sorting only."""
        raise NotImplementedError

    def sample(self) -> tuple[Value, ...]:
        """Finite grid of carrier values used for law checking."""
        raise NotImplementedError

    # derived operations

    def equiv(self, a: Value, b: Value) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    def biimplies(self, a: Value, b: Value) -> Value:
        """Symmetric agreement measure: implies both ways, combined by tensor."""
        return self.tensor(self.implies(a, b), self.implies(b, a))

    def require(self, *vs: Value) -> None:
        for v in vs:
            if not self.contains(v):
                raise DomainError(f"{v!r} is not a {self.name} value")

    def __repr__(self):
        return f"{type(self).__name__}()"

    def __eq__(self, other):
        return type(self) is type(other)

    def __hash__(self):
        return hash(type(self))


class Bool2(Quantale):
    """Two classical truth values; a space over it is a plain preorder."""

    name = "bool"
    is_cartesian = True
    is_normal = True

    def __init__(self):
        self.unit = 1
        self.top = 1
        self.bottom = 0

    def contains(self, v):
        return v in (0, 1)

    def leq(self, a, b):
        return a <= b

    def tensor(self, a, b):
        self.require(a, b)
        return a & b

    def implies(self, a, b):
        self.require(a, b)
        return 0 if a == 1 and b == 0 else 1

    def sup(self, vs):
        return max(vs, default=0)

    def inf(self, vs):
        return min(vs, default=1)

    def parse(self, text):
        t = text.strip()
        if t not in ("0", "1"):
            raise DomainError(f"bool literal must be 0 or 1, got {text!r}")
        return int(t)

    def format(self, v):
        return str(int(v))

    def sort_key(self, v):
        return int(v)

    def sample(self):
        return (0, 1)


class Fuzzy01(Quantale):
    """Degrees of truth in [0,1]: min tensor with the Goedel residuum."""

    name = "fuzzy"
    is_cartesian = True
    is_normal = True

    def __init__(self):
        self.unit = 1.0
        self.top = 1.0
        self.bottom = 0.0

    def contains(self, v):
        return isinstance(v, (int, float)) and -EPS <= v <= 1.0 + EPS

    def leq(self, a, b):
        return a <= b + EPS

    def tensor(self, a, b):
        self.require(a, b)
        return a if a <= b else b

    def implies(self, a, b):
        self.require(a, b)
        return 1.0 if a <= b + EPS else b

    def sup(self, vs):
        return max(vs, default=0.0)

    def inf(self, vs):
        return min(vs, default=1.0)

    def parse(self, text):
        try:
            v = float(text)
        except ValueError:
            raise DomainError(f"bad fuzzy literal {text!r}") from None
        self.require(v)
        return v

    def format(self, v):
        return f"{v + 0.0:.9f}"

    def sort_key(self, v):
        return float(v)

    def sample(self):
        return tuple(i / 10 for i in range(11))


class CostReal(Quantale):
    """Nonnegative costs in [0,inf], ordered downward (smaller is truer).

    Tensor is addition, the residuum is truncated subtraction:
    ``implies(a, b) = max(b - a, 0)``.  Under the downward order the
    bottom element is ``inf`` and both unit and top are ``0``.
    """

    name = "cost"
    is_cartesian = False
    is_normal = True

    def __init__(self):
        self.unit = 0.0
        self.top = 0.0
        self.bottom = math.inf

    def contains(self, v):
        return isinstance(v, (int, float)) and not math.isnan(v) and v >= -EPS

    def leq(self, a, b):
        return a >= b - EPS

    def tensor(self, a, b):
        self.require(a, b)
        return a + b

    def implies(self, a, b):
        self.require(a, b)
        if math.isinf(a):
            return 0.0
        if math.isinf(b):
            return math.inf
        return 0.0 if a >= b - EPS else b - a

    def sup(self, vs):
        return min(vs, default=math.inf)

    def inf(self, vs):
        return max(vs, default=0.0)

    def parse(self, text):
        t = text.strip()
        if t == "inf":
            return math.inf
        try:
            v = float(t)
        except ValueError:
            raise DomainError(f"bad cost literal {text!r}") from None
        self.require(v)
        return v

    def format(self, v):
        return "inf" if math.isinf(v) else f"{v + 0.0:.9f}"

    def sort_key(self, v):
        return float(v)

    def sample(self):
        return tuple(i / 2 for i in range(11)) + (math.inf,)


class Powerset(Quantale):
    """Subsets of a fixed atom set; tensor is intersection.

    The residuum is relative pseudo-complement: atoms outside ``a`` plus
    all of ``b``.  The base is capped at 16 atoms so law checks stay
    exhaustive.
    """

    is_cartesian = True
    is_normal = True

    MAX_ATOMS = 16

    def __init__(self, atoms: Sequence[str]):
        uniq = sorted(set(atoms))
        if len(uniq) > self.MAX_ATOMS:
            raise DomainError(
                f"powerset base capped at {self.MAX_ATOMS} atoms, got {len(uniq)}"
            )
        self.atoms = tuple(uniq)
        self.name = "powerset:" + ",".join(self.atoms)
        self.unit = frozenset(self.atoms)
        self.top = frozenset(self.atoms)
        self.bottom = frozenset()

    def contains(self, v):
        return isinstance(v, (set, frozenset)) and v <= set(self.atoms)

    def leq(self, a, b):
        return a <= b

    def tensor(self, a, b):
        self.require(a, b)
        return frozenset(a) & frozenset(b)

    def implies(self, a, b):
        self.require(a, b)
        return (self.top - frozenset(a)) | frozenset(b)

    def sup(self, vs):
        out = frozenset()
        empty = True
        for v in vs:
            out |= v
            empty = False
        return frozenset() if empty else out

    def inf(self, vs):
        out = self.top
        for v in vs:
            out &= v
        return out

    def parse(self, text):
        t = text.strip()
        if not (t.startswith("{") and t.endswith("}")):
            raise DomainError(f"bad set literal {text!r}")
        inner = t[1:-1].strip()
        if not inner:
            return frozenset()
        names = [a.strip() for a in inner.split(",")]
        bad = [a for a in names if a not in self.atoms]
        if bad:
            raise DomainError(f"unknown atoms {bad} in {text!r}")
        return frozenset(names)

    def format(self, v):
        return "{" + ",".join(sorted(v)) + "}"

    def sort_key(self, v):
        return (len(v), tuple(sorted(v)))

    def sample(self):
        n = len(self.atoms)
        if 2**n <= 64:
            subsets = [
                frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)
                for mask in range(2**n)
            ]
            return tuple(sorted(subsets, key=self.sort_key))
        # too large to exhaust: a small deterministic family
        fam = [self.bottom, self.top]
        fam += [frozenset([a]) for a in self.atoms]
        fam += [self.top - frozenset([a]) for a in self.atoms]
        return tuple(fam)

    def __eq__(self, other):
        return type(other) is Powerset and other.atoms == self.atoms

    def __hash__(self):
        return hash((Powerset, self.atoms))

    def __repr__(self):
        return f"Powerset({list(self.atoms)!r})"


def quantale_from_name(tag: str) -> Quantale:
    """Build an algebra from its tag: bool | fuzzy | cost | powerset:a,b,c."""
    t = tag.strip()
    if t == "bool":
        return Bool2()
    if t == "fuzzy":
        return Fuzzy01()
    if t == "cost":
        return CostReal()
    if t.startswith("powerset:"):
        atoms = [a.strip() for a in t.split(":", 1)[1].split(",") if a.strip()]
        if not atoms:
            raise DomainError("powerset tag needs at least one atom")
        return Powerset(atoms)
    raise DomainError(f"unknown quantale tag {tag!r}")


def check_quantale_laws(q: Quantale, values: Iterable[Value] | None = None):
    """Check the algebra's axioms on a finite value grid.

    Covers: preorder laws, tensor unit/commutativity/associativity and
    monotonicity, the tensor/implies adjunction, bound laws for sup/inf,
    and (when flagged normal) unit-equals-top plus sub-idempotence.
    Returns a :class:`~vconcepts.validation.ValidationReport`.
    """
    from .validation import ValidationReport

    vs = tuple(values) if values is not None else q.sample()
    rep = ValidationReport(f"quantale laws: {q.name} on {len(vs)} values")
    fmt = q.format

    for a in vs:
        if not q.leq(a, a):
            rep.add("order-reflexivity", (fmt(a),), "a is not below itself")
        if not q.equiv(q.tensor(q.unit, a), a):
            rep.add("tensor-unit", (fmt(a),), "unit does not act neutrally")
    for a in vs:
        for b in vs:
            if not q.equiv(q.tensor(a, b), q.tensor(b, a)):
                rep.add("tensor-commutativity", (fmt(a), fmt(b)), "order of arguments matters")
            s = q.sup([a, b])
            if not (q.leq(a, s) and q.leq(b, s)):
                rep.add("sup-upper-bound", (fmt(a), fmt(b)), f"sup {fmt(s)} not above both")
            i = q.inf([a, b])
            if not (q.leq(i, a) and q.leq(i, b)):
                rep.add("inf-lower-bound", (fmt(a), fmt(b)), f"inf {fmt(i)} not below both")
    for a in vs:
        for b in vs:
            for c in vs:
                if q.leq(a, b) and q.leq(b, c) and not q.leq(a, c):
                    rep.add("order-transitivity", (fmt(a), fmt(b), fmt(c)), "chain breaks")
                lhs = q.tensor(q.tensor(a, b), c)
                rhs = q.tensor(a, q.tensor(b, c))
                if not q.equiv(lhs, rhs):
                    rep.add("tensor-associativity", (fmt(a), fmt(b), fmt(c)), "grouping matters")
                if q.leq(q.tensor(a, b), c) != q.leq(a, q.implies(b, c)):
                    rep.add("adjunction", (fmt(a), fmt(b), fmt(c)), "tensor/implies adjunction fails")
                # sup/inf are least/greatest among the sampled bounds
                s = q.sup([a, b])
                if q.leq(a, c) and q.leq(b, c) and not q.leq(s, c):
                    rep.add("sup-least", (fmt(a), fmt(b), fmt(c)), f"sup {fmt(s)} above a bound")
                i = q.inf([a, b])
                if q.leq(c, a) and q.leq(c, b) and not q.leq(c, i):
                    rep.add("inf-greatest", (fmt(a), fmt(b), fmt(c)), f"inf {fmt(i)} below a bound")
    # monotonicity of the tensor in both arguments
    for a in vs:
        for a2 in vs:
            if not q.leq(a, a2):
                continue
            for b in vs:
                for b2 in vs:
                    if q.leq(b, b2) and not q.leq(q.tensor(a, b), q.tensor(a2, b2)):
                        rep.add(
                            "tensor-monotonicity",
                            (fmt(a), fmt(a2), fmt(b), fmt(b2)),
                            "tensor not monotone",
                        )
    if not q.equiv(q.sup([]), q.bottom):
        rep.add("empty-sup", (), "sup of nothing is not bottom")
    if not q.equiv(q.inf([]), q.top):
        rep.add("empty-inf", (), "inf of nothing is not top")
    if q.is_normal:
        if not q.equiv(q.unit, q.top):
            rep.add("normality-unit", (), "unit differs from top")
        for a in vs:
            for b in vs:
                if not q.leq(q.tensor(a, b), q.inf([a, b])):
                    rep.add("normality-subidempotence", (fmt(a), fmt(b)), "tensor above meet")
    return rep
