"""Immutable finite mathematical values used in specifications.

Every structure is finite, immutable, and carries a canonical total order,
so iteration and serialization are deterministic.  Booleans and integers are
represented by the native ``bool`` and ``int`` types; elements of generic
containers are opaque :class:`Ref` tokens compared by identity token.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Tuple

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class DomainError(ValueError):
    """An operation was applied outside its defined domain."""


class OverflowReported(ArithmeticError):
    """An integer escaped the 64-bit signed range."""


def check_int(n: int) -> int:
    if not (INT_MIN <= n <= INT_MAX):
        raise OverflowReported(f"integer out of 64-bit range: {n}")
    return n


class Ref:
    """Opaque identity token; equality is token equality."""

    __slots__ = ("token",)

    def __init__(self, token: str):
        self.token = token

    def __eq__(self, other):
        return isinstance(other, Ref) and self.token == other.token

    def __hash__(self):
        return hash(("Ref", self.token))

    def __repr__(self):
        return f"Ref({self.token!r})"


# A ModelValue is one of: bool, int, Ref, MSeq, MSet, MBag, MMap, MRel.
ModelValue = object

_TAG_RANK = {}


def order_key(v: ModelValue):
    """Canonical total-order key over all model values."""
    # bool must be tested before int: bool is a subtype of int in Python.
    if isinstance(v, bool):
        return (0, v)
    if isinstance(v, int):
        return (1, v)
    if isinstance(v, Ref):
        return (2, v.token)
    if isinstance(v, MSeq):
        return (3, tuple(order_key(x) for x in v.items))
    if isinstance(v, MSet):
        return (4, tuple(order_key(x) for x in v.elements))
    if isinstance(v, MBag):
        return (5, tuple((order_key(x), n) for x, n in v.pairs))
    if isinstance(v, MMap):
        return (6, tuple((order_key(k), order_key(w)) for k, w in v.pairs))
    if isinstance(v, MRel):
        return (7, tuple((order_key(x), order_key(y)) for x, y in v.pairs))
    raise TypeError(f"not a model value: {v!r}")


def to_text(v: ModelValue) -> str:
    """Canonical textual form; deterministic for equal values."""
    if isinstance(v, bool):
        return "True" if v else "False"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Ref):
        return v.token
    if isinstance(v, MSeq):
        return "⟨" + ",".join(to_text(x) for x in v.items) + "⟩"
    if isinstance(v, MSet):
        return "{" + ",".join(to_text(x) for x in v.elements) + "}"
    if isinstance(v, MBag):
        return "{" + ",".join(f"{to_text(x)}:{n}" for x, n in v.pairs) + "}"
    if isinstance(v, MMap):
        return "{" + ",".join(f"{to_text(k)}→{to_text(w)}" for k, w in v.pairs) + "}"
    if isinstance(v, MRel):
        return "{" + ",".join(f"({to_text(x)},{to_text(y)})" for x, y in v.pairs) + "}"
    raise TypeError(f"not a model value: {v!r}")


class MSeq:
    """Finite sequence; positions are 1-based."""

    __slots__ = ("items",)

    def __init__(self, items: Iterable[ModelValue] = ()):
        self.items = tuple(items)

    def __eq__(self, other):
        return isinstance(other, MSeq) and self.items == other.items

    def __hash__(self):
        return hash(("MSeq", tuple(order_key(x) for x in self.items)))

    def __repr__(self):
        return f"MSeq({list(self.items)!r})"

    def __iter__(self) -> Iterator[ModelValue]:
        return iter(self.items)

    @property
    def count(self) -> int:
        return len(self.items)

    @property
    def is_empty(self) -> bool:
        return not self.items

    def extended(self, x: ModelValue) -> "MSeq":
        return MSeq(self.items + (x,))

    def front(self, n: int) -> "MSeq":
        if not 0 <= n <= self.count:
            raise DomainError(f"front({n}) on sequence of length {self.count}")
        return MSeq(self.items[:n])

    def tail(self, n: int) -> "MSeq":
        if not 1 <= n <= self.count + 1:
            raise DomainError(f"tail({n}) on sequence of length {self.count}")
        return MSeq(self.items[n - 1:])

    def concat(self, other: "MSeq") -> "MSeq":
        return MSeq(self.items + other.items)

    def __add__(self, other: "MSeq") -> "MSeq":
        return self.concat(other)

    def interval(self, l: int, u: int) -> "MSeq":
        # Bounds are clipped to valid positions; an empty range yields <>.
        lo = max(1, l)
        hi = min(self.count, u)
        if hi < lo:
            return MSeq()
        return MSeq(self.items[lo - 1:hi])

    def item(self, i: int) -> ModelValue:
        if not 1 <= i <= self.count:
            raise DomainError(f"item({i}) on sequence of length {self.count}")
        return self.items[i - 1]

    def __getitem__(self, i: int) -> ModelValue:
        return self.item(i)

    @property
    def domain(self) -> "MSet":
        return MSet(range(1, self.count + 1))

    @property
    def range(self) -> "MSet":
        return MSet(self.items)

    def has(self, v: ModelValue) -> bool:
        return any(x == v for x in self.items)

    def occurrences(self, v: ModelValue) -> int:
        return sum(1 for x in self.items if x == v)

    def to_bag(self) -> "MBag":
        b = MBag()
        for x in self.items:
            b = b.extended(x)
        return b


class MSet:
    """Finite set of distinct model values, stored in canonical order."""

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable[ModelValue] = ()):
        seen = []
        for x in elements:
            if not any(x == y for y in seen):
                seen.append(x)
        self.elements = tuple(sorted(seen, key=order_key))

    def __eq__(self, other):
        return isinstance(other, MSet) and self.elements == other.elements

    def __hash__(self):
        return hash(("MSet", tuple(order_key(x) for x in self.elements)))

    def __repr__(self):
        return f"MSet({list(self.elements)!r})"

    def __iter__(self) -> Iterator[ModelValue]:
        return iter(self.elements)

    @property
    def count(self) -> int:
        return len(self.elements)

    @property
    def is_empty(self) -> bool:
        return not self.elements

    def has(self, v: ModelValue) -> bool:
        return any(x == v for x in self.elements)

    def union(self, other: "MSet") -> "MSet":
        return MSet(self.elements + other.elements)

    def intersection(self, other: "MSet") -> "MSet":
        return MSet(x for x in self.elements if other.has(x))

    def difference(self, other: "MSet") -> "MSet":
        return MSet(x for x in self.elements if not other.has(x))

    def __or__(self, other):
        return self.union(other)

    def __mul__(self, other):
        return self.intersection(other)

    def __sub__(self, other):
        return self.difference(other)

    def for_all(self, p: Callable[[ModelValue], bool]) -> bool:
        return all(p(x) for x in self.elements)

    def exists(self, p: Callable[[ModelValue], bool]) -> bool:
        return any(p(x) for x in self.elements)


def int_interval(l: int, u: int) -> MSet:
    """The set {l, l+1, ..., u}; empty when u < l."""
    check_int(l)
    check_int(u)
    if u < l:
        return MSet()
    if u - l >= 10**6:
        raise OverflowReported(f"interval [{l},{u}] too large to expand")
    return MSet(range(l, u + 1))


class MBag:
    """Finite multiset: canonical pairs of (element, multiplicity >= 1)."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[Tuple[ModelValue, int]] = ()):
        acc = []
        for x, n in pairs:
            if n < 0:
                raise DomainError("negative multiplicity")
            if n == 0:
                continue
            for i, (y, m) in enumerate(acc):
                if x == y:
                    acc[i] = (y, m + n)
                    break
            else:
                acc.append((x, n))
        self.pairs = tuple(sorted(acc, key=lambda p: order_key(p[0])))

    def __eq__(self, other):
        return isinstance(other, MBag) and self.pairs == other.pairs

    def __hash__(self):
        return hash(("MBag", tuple((order_key(x), n) for x, n in self.pairs)))

    def __repr__(self):
        return f"MBag({list(self.pairs)!r})"

    @property
    def domain(self) -> MSet:
        return MSet(x for x, _ in self.pairs)

    @property
    def count(self) -> int:
        return sum(n for _, n in self.pairs)

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def multiplicity(self, v: ModelValue) -> int:
        for x, n in self.pairs:
            if x == v:
                return n
        return 0

    def __getitem__(self, v: ModelValue) -> int:
        return self.multiplicity(v)

    def extended(self, v: ModelValue) -> "MBag":
        return MBag(self.pairs + ((v, 1),))

    def removed(self, v: ModelValue) -> "MBag":
        if self.multiplicity(v) == 0:
            raise DomainError("removing absent element")
        return MBag((x, n - 1 if x == v else n) for x, n in self.pairs)


class MMap:
    """Finite partial function from model values to model values."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[Tuple[ModelValue, ModelValue]] = ()):
        acc = []
        for k, v in pairs:
            for y, _ in acc:
                if k == y:
                    raise DomainError(f"duplicate key {k!r}")
            acc.append((k, v))
        self.pairs = tuple(sorted(acc, key=lambda p: order_key(p[0])))

    def __eq__(self, other):
        return isinstance(other, MMap) and self.pairs == other.pairs

    def __hash__(self):
        return hash(("MMap", tuple((order_key(k), order_key(v)) for k, v in self.pairs)))

    def __repr__(self):
        return f"MMap({list(self.pairs)!r})"

    @property
    def domain(self) -> MSet:
        return MSet(k for k, _ in self.pairs)

    @property
    def range(self) -> MSet:
        return MSet(v for _, v in self.pairs)

    @property
    def count(self) -> int:
        return len(self.pairs)

    @property
    def is_empty(self) -> bool:
        return not self.pairs

    def has_key(self, k: ModelValue) -> bool:
        return any(k == y for y, _ in self.pairs)

    def item(self, k: ModelValue) -> ModelValue:
        for y, v in self.pairs:
            if k == y:
                return v
        raise DomainError(f"absent key {k!r}")

    def __getitem__(self, k: ModelValue) -> ModelValue:
        return self.item(k)

    def replaced_at(self, k: ModelValue, v: ModelValue) -> "MMap":
        if not self.has_key(k):
            raise DomainError(f"replaced_at on absent key {k!r}")
        return MMap((y, v if y == k else w) for y, w in self.pairs)

    def updated(self, k: ModelValue, v: ModelValue) -> "MMap":
        return MMap(tuple((y, w) for y, w in self.pairs if y != k) + ((k, v),))

    def restricted(self, keys: MSet) -> "MMap":
        return MMap((y, w) for y, w in self.pairs if keys.has(y))

    def __or__(self, keys: MSet) -> "MMap":
        return self.restricted(keys)

    def is_constant(self, v: ModelValue) -> bool:
        return all(w == v for _, w in self.pairs)

    def union(self, other: "MMap") -> "MMap":
        # Disjoint-domain union; overlapping keys must agree.
        m = self
        for k, v in other.pairs:
            if m.has_key(k):
                if m[k] != v:
                    raise DomainError(f"conflicting value for key {k!r}")
            else:
                m = m.updated(k, v)
        return m


class MRel:
    """Finite set of ordered pairs."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[Tuple[ModelValue, ModelValue]] = ()):
        seen = []
        for p in pairs:
            x, y = p
            if not any(x == a and y == b for a, b in seen):
                seen.append((x, y))
        self.pairs = tuple(sorted(seen, key=lambda p: (order_key(p[0]), order_key(p[1]))))

    def __eq__(self, other):
        return isinstance(other, MRel) and self.pairs == other.pairs

    def __hash__(self):
        return hash(("MRel", tuple((order_key(x), order_key(y)) for x, y in self.pairs)))

    def __repr__(self):
        return f"MRel({list(self.pairs)!r})"

    @property
    def domain(self) -> MSet:
        return MSet(x for x, _ in self.pairs)

    @property
    def count(self) -> int:
        return len(self.pairs)

    def has(self, x: ModelValue, y: ModelValue) -> bool:
        return any(x == a and y == b for a, b in self.pairs)

    def image_of(self, x: ModelValue) -> MSet:
        return MSet(b for a, b in self.pairs if a == x)


def identity_relation(universe: Iterable[ModelValue]) -> MRel:
    return MRel((x, x) for x in universe)


def total_relation(universe: Iterable[ModelValue]) -> MRel:
    xs = list(universe)
    return MRel((x, y) for x in xs for y in xs)
