"""Zigzags, their partial maps, and the inverse semigroup they generate."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .category import BOUNDED, CategoryError, SmallCategory


class ZigzagError(CategoryError):
    pass


@dataclass(frozen=True)
class Zigzag:
    """An alternating sequence (a1, b1, ..., an, bn) with r(ai) = r(bi).

    ``src`` is s(bn), the vertex the partial map starts from, and ``dst`` is
    s(a1), the vertex it lands in.
    """

    pairs: tuple[tuple[str, str], ...]
    src: str
    dst: str

    def __len__(self) -> int:
        return len(self.pairs)

    def flat(self) -> tuple[str, ...]:
        return tuple(x for pair in self.pairs for x in pair)

    def reverse(self) -> "Zigzag":
        return Zigzag(tuple((b, a) for a, b in reversed(self.pairs)), self.dst, self.src)

    def __str__(self) -> str:
        return "(" + ",".join(self.flat()) + ")"


def make_zigzag(cat: SmallCategory, pairs: Iterable[Sequence[str]]) -> Zigzag:
    pairs = tuple((a, b) for a, b in pairs)
    if not pairs:
        raise ZigzagError("a zigzag needs at least one pair")
    for a, b in pairs:
        if a not in cat or b not in cat:
            raise ZigzagError(f"unknown morphism in pair {(a, b)}")
        if cat.dst[a] != cat.dst[b]:
            raise ZigzagError(f"pair {(a, b)} does not share a range")
    for (_, b), (a2, _) in zip(pairs, pairs[1:]):
        if cat.src[b] != cat.src[a2]:
            raise ZigzagError(f"{b} and {a2} do not share a source")
    return Zigzag(pairs, cat.src[pairs[-1][1]], cat.src[pairs[0][0]])


def flat_zigzag(cat: SmallCategory, entries: Sequence[str]) -> Zigzag:
    if len(entries) % 2:
        raise ZigzagError("a zigzag has an even number of entries")
    return make_zigzag(cat, zip(entries[::2], entries[1::2]))


def translation(cat: SmallCategory, a: str) -> Zigzag:
    """The zigzag (r(a), a), whose map is left translation by ``a``."""
    return make_zigzag(cat, [(cat.dst[a], a)])


def division(cat: SmallCategory, a: str) -> Zigzag:
    """The zigzag (a, r(a)), whose map is left division by ``a``."""
    return make_zigzag(cat, [(a, cat.dst[a])])


def zigzag_reverse(z: Zigzag) -> Zigzag:
    return z.reverse()


def zigzag_concat(z1: Zigzag, z2: Zigzag) -> Zigzag:
    """Concatenation, defined when s(z1) = r(z2)."""
    if z1.src != z2.dst:
        raise ZigzagError(f"{z1} and {z2} are not composable")
    return Zigzag(z1.pairs + z2.pairs, z2.src, z1.dst)


@dataclass(frozen=True)
class PartialInjection:
    """A finite partial injection, stored as sorted (argument, value) pairs.

    Equality ignores the witness zigzag.  ``edge`` lists arguments where a
    bounded evaluation escaped the carrier and so is undetermined.
    """

    pairs: tuple[tuple[str, str], ...]
    witness: Zigzag | None = field(default=None, compare=False)
    edge: frozenset[str] = field(default=frozenset(), compare=False)

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)

    @cached_property
    def domain(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.pairs)

    @cached_property
    def image(self) -> frozenset[str]:
        return frozenset(b for _, b in self.pairs)

    def __call__(self, a: str) -> str | None:
        return self.mapping.get(a)

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def is_zero(self) -> bool:
        return not self.pairs

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def after(self, other: "PartialInjection") -> "PartialInjection":
        """Composite ``self ∘ other``, first applying ``other``."""
        m = self.mapping
        out = tuple(sorted((a, m[b]) for a, b in other.pairs if b in m))
        return PartialInjection(out)

    def inverse(self) -> "PartialInjection":
        return PartialInjection(tuple(sorted((b, a) for a, b in self.pairs)))

    def restrict(self, subset: Iterable[str]) -> "PartialInjection":
        keep = set(subset)
        return PartialInjection(tuple(p for p in self.pairs if p[0] in keep))

    def apply_set(self, subset: Iterable[str]) -> frozenset[str]:
        m = self.mapping
        return frozenset(m[a] for a in subset if a in m)


def apply_zigzag(cat: SmallCategory, z: Zigzag, a: str) -> tuple[str | None, bool]:
    """Evaluate the zigzag map at ``a``; the flag reports escape from the carrier."""
    x = a
    for left, right in reversed(z.pairs):
        if cat.src[right] != cat.dst[x]:
            return None, False
        y = cat.compose(right, x)
        if y is None:
            return None, cat.mode == BOUNDED
        x = cat.divide(left, y)
        if x is None:
            return None, False
    return x, False


def zigzag_map(cat: SmallCategory, z: Zigzag) -> PartialInjection:
    """The partial map of ``z``: divide by a1 after translating by b1, and so on."""
    pairs = []
    edge = []
    for a in cat.with_range(z.src):
        value, escaped = apply_zigzag(cat, z, a)
        if value is not None:
            pairs.append((a, value))
        elif escaped:
            edge.append(a)
    return PartialInjection(tuple(sorted(pairs)), z, frozenset(edge))


def zigzag_set(cat: SmallCategory, z: Zigzag) -> frozenset[str]:
    """Domain of the zigzag map."""
    return zigzag_map(cat, z).domain


class Semigroup:
    """All zigzag maps of a TOTAL category, each with a witness zigzag.

    The empty map is kept as a distinguished zero when some zigzag has
    empty domain.
    """

    def __init__(self, cat: SmallCategory, elements: Sequence[PartialInjection]):
        self.cat = cat
        self.elements = tuple(elements)
        self.by_pairs = {e.pairs: e for e in self.elements}
        self.zero = self.by_pairs.get(())

    def __iter__(self) -> Iterator[PartialInjection]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: object) -> bool:
        return isinstance(item, PartialInjection) and item.pairs in self.by_pairs

    def find(self, f: PartialInjection) -> PartialInjection:
        """The stored element equal to ``f`` (which carries a witness)."""
        return self.by_pairs[f.pairs]

    def of(self, z: Zigzag) -> PartialInjection:
        return self.find(zigzag_map(self.cat, z))

    def translation(self, a: str) -> PartialInjection:
        return self.of(translation(self.cat, a))

    def division(self, a: str) -> PartialInjection:
        return self.of(division(self.cat, a))

    def product(self, f: PartialInjection, g: PartialInjection) -> PartialInjection | None:
        """``f ∘ g`` via witnesses; ``None`` when the witnesses are not composable."""
        if f.witness.src != g.witness.dst:
            return None
        return self.find(f.after(g))

    def vertex(self, f: PartialInjection) -> str:
        return f.witness.src

    def nonzero(self) -> list[PartialInjection]:
        return [e for e in self.elements if e.pairs]


def _element_key(e: PartialInjection) -> tuple:
    return (len(e.witness), e.witness.flat(), e.pairs)


def generate_semigroup(
    cat: SmallCategory, generators: Iterable[str] | None = None, limit: int = 200_000
) -> Semigroup:
    """Close the translations and divisions by ``generators`` under composition.

    By default all morphisms are used, giving every zigzag map.  Elements
    are reached breadth first by right multiplication with generators, so
    each witness is a shortest zigzag; the result is sorted by witness.
    """
    if cat.mode == BOUNDED:
        raise CategoryError("the full semigroup is only computed for TOTAL categories")
    names = cat.morphisms if generators is None else tuple(generators)
    gens: list[PartialInjection] = []
    for a in names:
        for z in (translation(cat, a), division(cat, a)):
            gens.append(zigzag_map(cat, z))
    found: dict[tuple, PartialInjection] = {}
    queue: deque[PartialInjection] = deque()
    for g in gens:
        if g.pairs not in found:
            found[g.pairs] = g
            queue.append(g)
    while queue:
        f = queue.popleft()
        fm = f.mapping
        for g in gens:
            if f.witness.src != g.witness.dst:
                continue
            pairs = tuple(sorted((a, fm[b]) for a, b in g.pairs if b in fm))
            if pairs in found:
                continue
            h = PartialInjection(pairs, _concat_pairs(f.witness, g.witness))
            found[pairs] = h
            queue.append(h)
            if len(found) > limit:
                raise ZigzagError(f"semigroup exceeds {limit} elements")
    return Semigroup(cat, sorted(found.values(), key=_element_key))


def _concat_pairs(z1: Zigzag, z2: Zigzag) -> Zigzag:
    # Drop a trivial pair at the junction so witnesses stay short.
    if z1.pairs[-1][0] == z1.pairs[-1][1] == z1.src and len(z1) > 1:
        z1 = Zigzag(z1.pairs[:-1], z1.src, z1.dst)
    return zigzag_concat(z1, z2)


def semigroup_of(cat: SmallCategory) -> Semigroup:
    if "semigroup" not in cat.cache:
        cat.cache["semigroup"] = generate_semigroup(cat)
    return cat.cache["semigroup"]
