"""Zigzag sets at a vertex and the ring of sets they generate.

For a finite carrier the ring is a finite Boolean ring, determined by its
atoms: the classes of morphisms that lie in exactly the same zigzag sets.
Ring elements are unions of atoms; each has a normal form as a disjoint
union of differences E minus a union of smaller zigzag sets.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .category import SmallCategory
from .zigzag import Semigroup, Zigzag, semigroup_of

Set = frozenset


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class DZeroFamily:
    """The nonempty zigzag sets at ``vertex``, each with a shortest witness."""

    vertex: str
    sets: tuple[frozenset[str], ...]
    witnesses: tuple[Zigzag, ...]
    universe: frozenset[str]

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, item: object) -> bool:
        return item in self._index

    @cached_property
    def _index(self) -> dict[frozenset[str], int]:
        return {s: i for i, s in enumerate(self.sets)}

    def witness(self, e: frozenset[str]) -> Zigzag:
        return self.witnesses[self._index[e]]

    @cached_property
    def atoms(self) -> tuple[frozenset[str], ...]:
        """Classes of elements with the same membership pattern."""
        classes: dict[frozenset[int], set[str]] = {}
        for m in sorted(self.universe):
            sig = frozenset(i for i, s in enumerate(self.sets) if m in s)
            if sig:
                classes.setdefault(sig, set()).add(m)
        return tuple(sorted((frozenset(c) for c in classes.values()), key=_set_key))

    @cached_property
    def atom_of(self) -> dict[str, frozenset[str]]:
        return {m: a for a in self.atoms for m in a}

    def smallest_containing(self, subset: Iterable[str]) -> frozenset[str] | None:
        """Least member containing ``subset`` (the family is closed under meets)."""
        subset = frozenset(subset)
        best = None
        for s in self.sets:
            if subset <= s and (best is None or len(s) < len(best)):
                best = s
        return best

    def top_atom(self, e: frozenset[str]) -> frozenset[str]:
        """What remains of ``e`` after removing its proper sub-members."""
        rest = set(e)
        for f in self.sets:
            if f < e:
                rest -= f
        return frozenset(rest)


def _set_key(s: frozenset[str]) -> tuple:
    return (len(s), sorted(s))


def build_dzero(cat: SmallCategory, v: str, semigroup: Semigroup | None = None) -> DZeroFamily:
    """Nonempty domains of zigzag maps starting at ``v``."""
    if v not in cat.objects:
        raise RingError(f"unknown vertex {v!r}")
    key = ("dzero", v)
    if semigroup is None and key in cat.cache:
        return cat.cache[key]
    sg = semigroup or semigroup_of(cat)
    seen: dict[frozenset[str], Zigzag] = {}
    for f in sg:
        if f.pairs and f.witness.src == v and f.domain not in seen:
            seen[f.domain] = f.witness
    order = sorted(seen, key=lambda s: (-len(s), sorted(s)))
    fam = DZeroFamily(v, tuple(order), tuple(seen[s] for s in order), frozenset(cat.with_range(v)))
    if semigroup is None:
        cat.cache[key] = fam
    return fam


@dataclass(frozen=True)
class Difference:
    """The set ``whole`` minus the union of ``holes``; holes lie inside whole."""

    whole: frozenset[str]
    holes: tuple[frozenset[str], ...]

    @cached_property
    def value(self) -> frozenset[str]:
        out = set(self.whole)
        for h in self.holes:
            out -= h
        return frozenset(out)


@dataclass(frozen=True)
class RingSet:
    """A ring element with a normal form as a disjoint union of differences."""

    vertex: str
    elements: frozenset[str]
    terms: tuple[Difference, ...]

    def evaluate(self) -> frozenset[str]:
        out: set[str] = set()
        for t in self.terms:
            out |= t.value
        return frozenset(out)


class SetRing:
    """The Boolean ring generated by a zigzag family, handled through atoms."""

    def __init__(self, dzero: DZeroFamily):
        self.dzero = dzero
        self.vertex = dzero.vertex
        self.atoms = dzero.atoms

    def __contains__(self, subset: object) -> bool:
        if not isinstance(subset, (set, frozenset)):
            return False
        atom_of = self.dzero.atom_of
        for m in subset:
            if m not in atom_of or not atom_of[m] <= subset:
                return False
        return True

    def size(self) -> int:
        return 2 ** len(self.atoms)

    def elements(self, limit: int = 1 << 14) -> list[frozenset[str]]:
        """Every ring element, smallest first; refuses if there are too many."""
        if self.size() > limit:
            raise RingError(f"ring has {self.size()} elements, above limit {limit}")
        out = []
        for r in range(len(self.atoms) + 1):
            for combo in combinations(self.atoms, r):
                out.append(frozenset().union(*combo))
        return out

    def atoms_in(self, subset: frozenset[str]) -> list[frozenset[str]]:
        return [a for a in self.atoms if a <= subset]

    def normal_form(self, subset: Iterable[str]) -> RingSet:
        """Greedy disjoint decomposition into differences of zigzag sets.

        Members are tried largest first.  A member E is used once its top
        atom lies in what is left; its holes are the maximal members below
        E that are not contained in what is left.
        """
        subset = frozenset(subset)
        if subset not in self:
            raise RingError("set is not in the ring")
        fam = self.dzero
        left = set(subset)
        terms = []
        for e in fam.sets:
            if not left:
                break
            top = fam.top_atom(e)
            if not top or not top <= left:
                continue
            bad = [f for f in fam.sets if f < e and not f <= left]
            holes = [f for f in bad if not any(f < g for g in bad)]
            holes.sort(key=lambda s: (fam._index[s]))
            term = Difference(e, tuple(holes))
            terms.append(term)
            left -= term.value
        if left:
            raise RingError("normal form did not exhaust the set")
        return RingSet(self.vertex, subset, tuple(terms))


def ring_of(cat: SmallCategory, v: str) -> SetRing:
    key = ("ring", v)
    if key not in cat.cache:
        cat.cache[key] = SetRing(build_dzero(cat, v))
    return cat.cache[key]


def generate_ring(cat: SmallCategory, v: str, limit: int = 1 << 14) -> list[RingSet]:
    """All ring elements at ``v`` in normal form."""
    ring = ring_of(cat, v)
    return [ring.normal_form(e) for e in ring.elements(limit)]


def boolean_closure(family: Iterable[frozenset[str]], limit: int = 1 << 16) -> set[frozenset[str]]:
    """Brute-force closure under union, intersection and difference."""
    found = {frozenset()} | {frozenset(s) for s in family}
    frontier = list(found)
    while frontier:
        new = []
        snapshot = list(found)
        for a in frontier:
            for b in snapshot:
                for c in (a | b, a & b, a - b, b - a):
                    if c not in found:
                        found.add(c)
                        new.append(c)
        if len(found) > limit:
            raise RingError("closure too large")
        frontier = new
    return found


class HomExtensionError(RingError):
    """The map on zigzag sets does not extend; ``instance`` names the failure."""

    def __init__(self, condition: str, instance: tuple):
        super().__init__(f"condition {condition} fails at {instance}")
        self.condition = condition
        self.instance = instance


@dataclass(frozen=True)
class RingHom:
    """A Boolean ring map given by its values on atoms."""

    ring: SetRing
    on_atoms: Mapping[frozenset[str], frozenset]

    def __call__(self, subset: frozenset[str]) -> frozenset:
        out: set = set()
        for a in self.ring.atoms_in(subset):
            out |= self.on_atoms[a]
        return frozenset(out)


def extend_to_ring_hom(
    dzero: DZeroFamily, mu: Mapping[frozenset[str], frozenset], max_cover: int = 16
) -> RingHom:
    """Extend a map on zigzag sets to a ring map, checking both conditions.

    Condition (1): mu(E ∩ F) = mu(E) ∩ mu(F), with mu(∅) = ∅.  Condition
    (2): mu(E) = ⋃ mu(F_i) whenever E = ⋃ F_i.  Covers are enumerated over
    the proper sub-members of E when there are at most ``max_cover`` of
    them, which is exhaustive for the families used here.
    """
    sets = dzero.sets
    missing = [s for s in sets if s not in mu]
    if missing:
        raise RingError(f"map undefined on {sorted(missing[0])}")
    empty = frozenset()
    for e, f in combinations(sets, 2):
        meet = e & f
        expect = mu[meet] if meet else empty
        if (mu[e] & mu[f]) != expect:
            raise HomExtensionError("(1)", (e, f))
    for e in sets:
        below = [f for f in sets if f < e]
        if len(below) > max_cover:
            raise RingError(f"{len(below)} sub-members exceed the cover search limit")
        for r in range(1, len(below) + 1):
            for combo in combinations(below, r):
                if frozenset().union(*combo) != e:
                    continue
                image = frozenset().union(*(mu[f] for f in combo))
                if image != mu[e]:
                    raise HomExtensionError("(2)", (e, combo))
    ring = SetRing(dzero)
    on_atoms = {}
    for a in ring.atoms:
        e = dzero.smallest_containing(a)
        value = set(mu[e])
        for f in sets:
            if f < e:
                value -= mu[f]
        on_atoms[a] = frozenset(value)
    return RingHom(ring, on_atoms)
