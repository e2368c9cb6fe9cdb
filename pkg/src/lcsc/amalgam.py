"""Amalgamation of small categories over an equivalence on their vertices.

Morphisms of the amalgam are composable tuples of component morphisms up to
merging composable neighbours and deleting identities.  Each class has a
unique reduced word, which serves as its id: entries are written ``i:m``
(component index and morphism id) and joined by spaces.  Identities are
named after the least member of their vertex class.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

from .category import BOUNDED, TOTAL, CategoryError, SmallCategory, cap, cone, validate

Entry = tuple[int, str]


class AmalgamError(CategoryError):
    pass


def entry_id(e: Entry) -> str:
    return f"{e[0]}:{e[1]}"


def parse_entry(s: str) -> Entry:
    i, _, m = s.partition(":")
    if not m or not i.isdigit():
        raise AmalgamError(f"bad entry {s!r}; expected 'index:morphism'")
    return int(i), m


@dataclass
class Amalgam:
    """Components, the vertex partition, and the word arithmetic on them."""

    components: list[SmallCategory]
    classes: dict[Entry, str]

    def check_entry(self, e: Entry) -> None:
        i, m = e
        if not 0 <= i < len(self.components) or m not in self.components[i]:
            raise AmalgamError(f"unknown entry {entry_id(e)}")

    def src(self, e: Entry) -> Entry:
        return e[0], self.components[e[0]].src[e[1]]

    def dst(self, e: Entry) -> Entry:
        return e[0], self.components[e[0]].dst[e[1]]

    def is_vertex(self, e: Entry) -> bool:
        return self.components[e[0]].is_identity(e[1])

    def mergeable(self, a: Entry, b: Entry) -> bool:
        return a[0] == b[0] and self.src(a) == self.dst(b)

    def merge(self, a: Entry, b: Entry) -> Entry:
        c = self.components[a[0]].compose(a[1], b[1])
        if c is None:
            raise AmalgamError(f"component {a[0]} has no composite for {a[1]}, {b[1]}")
        return a[0], c

    def check_word(self, word: Sequence[Entry]) -> None:
        for e in word:
            self.check_entry(e)
        for a, b in zip(word, word[1:]):
            if self.classes[self.src(a)] != self.classes[self.dst(b)]:
                raise AmalgamError(f"{entry_id(a)} and {entry_id(b)} are not composable")

    def is_normal(self, word: Sequence[Entry]) -> bool:
        if any(self.is_vertex(e) for e in word):
            return False
        return not any(self.mergeable(a, b) for a, b in zip(word, word[1:]))

    def normal_form(self, word: Sequence[Entry]) -> tuple[Entry, ...]:
        """Reduced word by a left-to-right stack pass."""
        word = [tuple(e) for e in word]
        self.check_word(word)
        stack: list[Entry] = []
        for e in word:
            cur: Entry | None = e
            while cur is not None and not self.is_vertex(cur) and stack and self.mergeable(stack[-1], cur):
                cur = self.merge(stack.pop(), cur)
            if cur is not None and not self.is_vertex(cur):
                stack.append(cur)
        return tuple(stack)

    def rewrite(self, word: Sequence[Entry], rng: random.Random) -> tuple[Entry, ...]:
        """Apply the two moves in a random order until neither applies."""
        word = [tuple(e) for e in word]
        self.check_word(word)
        while True:
            moves = [("drop", j) for j, e in enumerate(word) if self.is_vertex(e)]
            moves += [("merge", j) for j in range(len(word) - 1) if self.mergeable(word[j], word[j + 1])]
            if not moves:
                return tuple(word)
            kind, j = rng.choice(moves)
            if kind == "drop":
                del word[j]
            else:
                word[j : j + 2] = [self.merge(word[j], word[j + 1])]

    def word_id(self, word: Sequence[Entry], cls: str | None = None) -> str:
        if not word:
            if cls is None:
                raise AmalgamError("empty word needs its vertex class")
            return cls
        return " ".join(entry_id(e) for e in word)

    def parse(self, s: str) -> tuple[Entry, ...]:
        if s in self.class_ids:
            return ()
        return tuple(parse_entry(t) for t in s.split())

    @property
    def class_ids(self) -> frozenset[str]:
        return frozenset(self.classes.values())

    def word_src(self, word: Sequence[Entry]) -> str:
        return self.classes[self.src(word[-1])]

    def word_dst(self, word: Sequence[Entry]) -> str:
        return self.classes[self.dst(word[0])]


def vertex_classes(components: Sequence[SmallCategory], partition: Iterable[Iterable]) -> dict[Entry, str]:
    """Map each component vertex to the id of its block.

    Blocks list vertices as ``(index, vertex)`` pairs or ``"index:vertex"``
    strings; vertices not listed form singleton blocks.
    """
    parent: dict[Entry, Entry] = {}
    for i, c in enumerate(components):
        for v in c.objects:
            parent[(i, v)] = (i, v)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in partition:
        members = [parse_entry(b) if isinstance(b, str) else (int(b[0]), str(b[1])) for b in block]
        for m in members:
            if m not in parent:
                raise AmalgamError(f"{entry_id(m)} is not a component vertex")
        for m in members[1:]:
            parent[find(m)] = find(members[0])
    groups: dict[Entry, list[Entry]] = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    out = {}
    for members in groups.values():
        name = min(entry_id(m) for m in members)
        for m in members:
            out[m] = name
    return out


def amalgamate(
    components: Sequence[SmallCategory],
    partition: Iterable[Iterable] = (),
    bound: int = 3,
    name: str = "",
) -> SmallCategory:
    """Reduced words of at most ``bound`` entries as a BOUNDED category.

    Components must be TOTAL and valid; the amalgam object is kept in
    ``cache["amalgam"]``.
    """
    components = list(components)
    if bound < 1:
        raise AmalgamError("bound must be positive")
    for i, c in enumerate(components):
        if c.mode != TOTAL:
            raise AmalgamError(f"component {i} must be TOTAL")
        report = validate(c)
        if not report.ok:
            raise AmalgamError(f"component {i} is invalid: {report.violations[0]}")
    am = Amalgam(components, vertex_classes(components, partition))
    letters = [(i, m) for i, c in enumerate(components) for m in c.morphisms if not c.is_identity(m)]
    by_dst: dict[str, list[Entry]] = {}
    for e in letters:
        by_dst.setdefault(am.classes[am.dst(e)], []).append(e)
    words: list[tuple[Entry, ...]] = []
    frontier = [(e,) for e in letters]
    while frontier:
        words.extend(frontier)
        if len(frontier[0]) >= bound:
            break
        nxt = []
        for w in frontier:
            for e in by_dst.get(am.classes[am.src(w[-1])], ()):
                if not am.mergeable(w[-1], e):
                    nxt.append(w + (e,))
        frontier = nxt
    objects = sorted(am.class_ids)
    morphisms = {v: (v, v) for v in objects}
    for w in words:
        morphisms[am.word_id(w)] = (am.word_src(w), am.word_dst(w))

    @lru_cache(maxsize=None)
    def compose(a: str, b: str) -> str | None:
        wa, wb = am.parse(a), am.parse(b)
        w = am.normal_form(wa + wb)
        if len(w) > bound:
            return None
        return am.word_id(w, morphisms[a][1])

    cat = SmallCategory(
        objects,
        morphisms,
        compose,
        BOUNDED,
        bound,
        size=lambda m: len(am.parse(m)),
        name=name or f"amalgam[{bound}]",
    )
    cat.cache["amalgam"] = am
    return cat


def amalgam_of(cat: SmallCategory) -> Amalgam:
    try:
        return cat.cache["amalgam"]
    except KeyError:
        raise AmalgamError("category was not built by amalgamate") from None


def amalgam_cap(cat: SmallCategory, a: str, b: str) -> bool:
    """Cap decided from the reduced words alone.

    Unequal lengths: the shorter word must agree with the longer one up to
    its last entry, which the corresponding entry extends in one component.
    Equal lengths: all but the last entries agree and the last entries cap
    in a common component.  The criterion needs components without
    nontrivial inverses; an invertible entry has the whole carrier as cone.
    """
    am = amalgam_of(cat)
    if any(_component_has_inverses(c) for c in am.components):
        raise AmalgamError("the cap criterion needs components without nontrivial inverses")
    if cat.dst[a] != cat.dst[b]:
        return False
    wa, wb = am.parse(a), am.parse(b)
    if not wa or not wb:
        return True
    if len(wa) > len(wb):
        wa, wb = wb, wa
    m = len(wa)
    if wa[: m - 1] != wb[: m - 1]:
        return False
    x, y = wa[-1], wb[m - 1]
    if x[0] != y[0]:
        return False
    comp = am.components[x[0]]
    if len(wa) < len(wb):
        return y[1] in cone(comp, x[1])
    return cap(comp, x[1], y[1])


def _component_has_inverses(c: SmallCategory) -> bool:
    if "has_inverses" not in c.cache:
        c.cache["has_inverses"] = has_nontrivial_inverses(c)
    return c.cache["has_inverses"]


def brute_cap(cat: SmallCategory, a: str, b: str) -> bool:
    """Cap read off the bounded carrier: the two cones meet."""
    return cap(cat, a, b)


def minimal_extension_count(cat: SmallCategory, a: str, b: str) -> int:
    """Number of cone classes of minimal common extensions in the carrier."""
    common = cone(cat, a) & cone(cat, b)
    minimal = [e for e in common if all(g in cone(cat, e) for g in common if e in cone(cat, g))]
    return len({cone(cat, e) for e in minimal})


def component_extension_count(cat: SmallCategory, a: str, b: str) -> int | None:
    """The same count predicted from the component of the last entries,
    for two reduced words of equal length with a common prefix; ``None``
    when one word extends the other or the words do not meet.
    """
    from .alignment import minimal_common_extensions

    am = amalgam_of(cat)
    wa, wb = am.parse(a), am.parse(b)
    if not wa or not wb or len(wa) != len(wb) or not amalgam_cap(cat, a, b):
        return None
    x, y = wa[-1], wb[-1]
    comp = am.components[x[0]]
    if x[1] in cone(comp, y[1]) or y[1] in cone(comp, x[1]):
        return None
    return len(minimal_common_extensions(comp, (x[1], y[1])))


def is_right_cancellative(cat: SmallCategory) -> bool:
    for b in cat.morphisms:
        seen: dict[str, str] = {}
        for a in cat.with_source(cat.dst[b]):
            c = cat.compose(a, b)
            if c is None:
                continue
            if c in seen:
                return False
            seen[c] = a
    return True


def has_nontrivial_inverses(cat: SmallCategory) -> bool:
    for a in cat.morphisms:
        if cat.is_identity(a):
            continue
        for b in cat.with_range(cat.src[a]):
            if cat.compose(a, b) == cat.dst[a]:
                return True
    return False
