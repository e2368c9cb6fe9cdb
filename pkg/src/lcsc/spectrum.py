"""Points of the spectrum: filters of zigzag sets and ultrafilters of the ring.

A point at ``v`` is a filter C of zigzag sets such that no finite family
disjoint from C covers C.  Since the family of zigzag sets is finite and
closed under nonempty intersections, every filter is principal, generated
by its least member.  Each point C picks out the atom
``min(C) - union(zigzag sets not in C)``, and its ultrafilter is the set of
ring elements containing that atom.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .category import TOTAL, ModeError, SmallCategory, cone, initial_segments
from .setring import DZeroFamily, SetRing, build_dzero, ring_of


class SpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class FilterPoint:
    vertex: str
    sets: frozenset[frozenset[str]]

    @cached_property
    def least(self) -> frozenset[str]:
        return frozenset.intersection(*self.sets)

    def __contains__(self, e: object) -> bool:
        return e in self.sets

    def key(self) -> tuple:
        return (self.vertex, len(self.least), sorted(self.least))

    def label(self) -> str:
        return f"{self.vertex}:{{{','.join(sorted(self.least))}}}"


@dataclass(frozen=True)
class Ultrafilter:
    """Ultrafilter in the ring at ``vertex``; every one here is principal at ``atom``."""

    vertex: str
    atom: frozenset[str]

    def __contains__(self, e: object) -> bool:
        return isinstance(e, frozenset) and self.atom <= e

    def sets(self, ring: SetRing) -> list[frozenset[str]]:
        return [e for e in ring.elements() if self.atom <= e]


def _need_total(cat: SmallCategory) -> None:
    if cat.mode != TOTAL:
        raise ModeError("the spectrum is computed for TOTAL categories only")


def generated_filter(dzero: DZeroFamily, generators: Iterable[frozenset[str]]) -> FilterPoint | None:
    """Upward closure of the meet of ``generators``; None if the meet is empty."""
    gens = list(generators)
    meet = frozenset.intersection(*gens) if gens else dzero.universe
    if not meet or meet not in dzero:
        return None
    return FilterPoint(dzero.vertex, frozenset(s for s in dzero.sets if meet <= s))


def all_filters(dzero: DZeroFamily) -> list[FilterPoint]:
    """Filters generated by antichains, deduplicated.

    An antichain generates the same filter as its meet, so the single
    members already give every filter.
    """
    found = {generated_filter(dzero, [e]) for e in dzero.sets}
    return sorted(found, key=FilterPoint.key)


def is_filter(dzero: DZeroFamily, sets: Iterable[frozenset[str]]) -> bool:
    sets = set(sets)
    if not sets:
        return False
    for a in sets:
        for s in dzero.sets:
            if a <= s and s not in sets:
                return False
        for b in sets:
            if (a & b) not in sets:
                return False
    return True


def uncovered_part(dzero: DZeroFamily, sets: frozenset[frozenset[str]]) -> frozenset[str]:
    """Least member of C minus every zigzag set outside C."""
    rest = set(frozenset.intersection(*sets))
    for s in dzero.sets:
        if s not in sets:
            rest -= s
    return frozenset(rest)


def in_spectrum(dzero: DZeroFamily, point: FilterPoint) -> bool:
    """No finite family disjoint from C covers C.

    Families outside C only grow harder to escape, so it is enough to test
    the family of all zigzag sets outside C.
    """
    return bool(uncovered_part(dzero, point.sets))


def lambda_star(cat: SmallCategory, v: str) -> list[FilterPoint]:
    _need_total(cat)
    key = ("points", v)
    if key not in cat.cache:
        dzero = build_dzero(cat, v)
        cat.cache[key] = [c for c in all_filters(dzero) if in_spectrum(dzero, c)]
    return cat.cache[key]


def all_points(cat: SmallCategory) -> list[FilterPoint]:
    return [x for v in cat.objects for x in lambda_star(cat, v)]


def ultrafilter_of(cat: SmallCategory, point: FilterPoint) -> Ultrafilter:
    """Ultrafilter generated by the base {E - ⋃F : E in C, F not covering C}.

    The smallest base element is the least member of C with every zigzag
    set outside C removed, which is an atom of the ring.
    """
    dzero = build_dzero(cat, point.vertex)
    if not is_filter(dzero, point.sets):
        raise SpectrumError("not a filter of zigzag sets")
    atom = uncovered_part(dzero, point.sets)
    if not atom:
        raise SpectrumError("filter is covered by sets outside it")
    if atom not in ring_of(cat, point.vertex).atoms:
        raise SpectrumError("base does not reduce to an atom")
    return Ultrafilter(point.vertex, atom)


def point_of(cat: SmallCategory, u: Ultrafilter) -> FilterPoint:
    """Intersection of the ultrafilter with the zigzag sets."""
    ring = ring_of(cat, u.vertex)
    if u.atom not in ring.atoms:
        raise SpectrumError("not an ultrafilter of the ring")
    dzero = build_dzero(cat, u.vertex)
    return FilterPoint(u.vertex, frozenset(s for s in dzero.sets if u.atom <= s))


def count_ultrafilters(ring: SetRing, limit: int = 1 << 14) -> int:
    """Brute-force count over the enumerated ring.

    In a finite ring every ultrafilter is principal at its least element,
    so it suffices to test each principal up-set for the ultrafilter
    property.
    """
    elements = ring.elements(limit)
    count = 0
    for e in elements:
        if not e:
            continue
        members = [f for f in elements if e <= f]
        if all(f in members or any(not (f & g) for g in members) for f in elements):
            count += 1
    return count


def fixed_point(cat: SmallCategory, a: str) -> FilterPoint:
    _need_total(cat)
    dzero = build_dzero(cat, cat.dst[a])
    return FilterPoint(dzero.vertex, frozenset(s for s in dzero.sets if a in s))


def point_at(cat: SmallCategory, v: str, atom_or_member: Iterable[str]) -> FilterPoint:
    """The point whose atom contains the given morphisms."""
    members = frozenset(atom_or_member)
    for x in lambda_star(cat, v):
        if members <= ultrafilter_of(cat, x).atom:
            return x
    raise SpectrumError(f"no point at {v} contains {sorted(members)}")


def hereditary_of(cat: SmallCategory, point: FilterPoint) -> frozenset[str]:
    """Morphisms whose cone belongs to the point."""
    _need_total(cat)
    return frozenset(a for a in cat.with_range(point.vertex) if cone(cat, a) in point.sets)


def is_hereditary(cat: SmallCategory, h: Iterable[str]) -> bool:
    h = frozenset(h)
    return all(initial_segments(cat, b) <= h for b in h)


def is_directed(cat: SmallCategory, h: Iterable[str]) -> bool:
    h = frozenset(h)
    return bool(h) and all(h & cone(cat, a) & cone(cat, b) for a in h for b in h)


def point_of_hereditary(cat: SmallCategory, v: str, h: Iterable[str]) -> FilterPoint:
    """Zigzag sets containing the cone of some member of ``h``."""
    _need_total(cat)
    h = frozenset(h)
    if not is_hereditary(cat, h) or not is_directed(cat, h):
        raise SpectrumError("set is not directed and hereditary")
    if any(cat.dst[a] != v for a in h):
        raise SpectrumError("members must have range v")
    dzero = build_dzero(cat, v)
    return FilterPoint(v, frozenset(s for s in dzero.sets if any(cone(cat, a) <= s for a in h)))


def directed_hereditary_sets(cat: SmallCategory, v: str, limit: int = 1 << 16) -> list[frozenset[str]]:
    """Brute-force list of directed hereditary subsets of the morphisms at ``v``."""
    ms = cat.with_range(v)
    if 2 ** len(ms) > limit:
        raise SpectrumError("too many subsets to enumerate")
    out = []
    for r in range(1, len(ms) + 1):
        for combo in combinations(ms, r):
            if is_hereditary(cat, combo) and is_directed(cat, combo):
                out.append(frozenset(combo))
    return out


def is_maximal_by_order(points: list[FilterPoint], point: FilterPoint) -> bool:
    return not any(point.sets < q.sets for q in points if q.vertex == point.vertex)


def is_maximal_by_criterion(dzero: DZeroFamily, point: FilterPoint) -> bool:
    """Every zigzag set meeting all members of C contains a member of C."""
    for f in dzero.sets:
        if all(f & e for e in point.sets) and not any(e <= f for e in point.sets):
            return False
    return True


def maximal_points(cat: SmallCategory, v: str) -> list[FilterPoint]:
    """Maximal points, cross-checked by inclusion order and by the criterion."""
    points = lambda_star(cat, v)
    dzero = build_dzero(cat, v)
    by_order = [x for x in points if is_maximal_by_order(points, x)]
    by_rule = [x for x in points if is_maximal_by_criterion(dzero, x)]
    if by_order != by_rule:
        raise SpectrumError("maximality checks disagree")
    return by_rule


def minimal_neighbourhood(cat: SmallCategory, point: FilterPoint) -> frozenset[FilterPoint]:
    """Intersection of all basic open sets containing the point.

    Basic sets are hats of differences E - ⋃F with F inside E.  The least
    one around C takes E = min C and removes every zigzag set below E that
    misses the point's atom.
    """
    dzero = build_dzero(cat, point.vertex)
    e = point.least
    atom = ultrafilter_of(cat, point).atom
    region = set(e)
    for f in dzero.sets:
        if f <= e and not atom <= f:
            region -= f
    region = frozenset(region)
    return frozenset(y for y in lambda_star(cat, point.vertex) if ultrafilter_of(cat, y).atom <= region)


def closure(cat: SmallCategory, v: str, subset: Iterable[FilterPoint]) -> list[FilterPoint]:
    subset = set(subset)
    return [x for x in lambda_star(cat, v) if minimal_neighbourhood(cat, x) & subset]


def open_sets(cat: SmallCategory, v: str) -> list[frozenset[FilterPoint]]:
    """Open-set lattice generated by the minimal neighbourhoods."""
    base = {minimal_neighbourhood(cat, x) for x in lambda_star(cat, v)}
    opens = {frozenset()}
    for b in base:
        opens |= {o | b for o in opens}
    return sorted(opens, key=lambda o: (len(o), sorted(x.label() for x in o)))


def boundary_by_closure(cat: SmallCategory, v: str) -> list[FilterPoint]:
    return closure(cat, v, maximal_points(cat, v))


def satisfies_boundary_criterion(dzero: DZeroFamily, point: FilterPoint) -> bool:
    """For each non-covering family F and each E in C some zigzag set fits in E - ⋃F.

    Every non-covering family avoids some element a of min C, so it lies
    inside the family of all zigzag sets missing a.  Growing F and shrinking
    E only make the test harder, so those cases decide it.
    """
    e = point.least
    for a in e:
        rest = set(e)
        for f in dzero.sets:
            if a not in f:
                rest -= f
        if not any(g <= rest for g in dzero.sets):
            return False
    return True


def satisfies_boundary_criterion_brute(dzero: DZeroFamily, point: FilterPoint, limit: int = 14) -> bool:
    """The same criterion, enumerating every finite family directly."""
    if len(dzero.sets) > limit:
        raise SpectrumError("too many zigzag sets for brute force")
    sets = dzero.sets
    for r in range(len(sets) + 1):
        for fam in combinations(sets, r):
            union = frozenset().union(*fam) if fam else frozenset()
            if any(c <= union for c in point.sets):
                continue
            for e in point.sets:
                if not any(g <= e - union for g in sets):
                    return False
    return True


def boundary_by_criterion(cat: SmallCategory, v: str) -> list[FilterPoint]:
    dzero = build_dzero(cat, v)
    return [x for x in lambda_star(cat, v) if satisfies_boundary_criterion(dzero, x)]


def boundary_points(cat: SmallCategory, v: str) -> list[FilterPoint]:
    """Boundary points at ``v``, computed by closure and by the criterion."""
    _need_total(cat)
    a = boundary_by_closure(cat, v)
    b = boundary_by_criterion(cat, v)
    if a != b:
        raise SpectrumError(f"boundary methods disagree at {v}")
    return a


def boundary(cat: SmallCategory) -> list[FilterPoint]:
    return [x for v in cat.objects for x in boundary_points(cat, v)]


def spectrum_report(cat: SmallCategory, v: str) -> dict:
    points = lambda_star(cat, v)
    maximal = set(maximal_points(cat, v))
    bdry = set(boundary_points(cat, v))
    return {
        "vertex": v,
        "points": [
            {
                "least": sorted(x.least),
                "sets": sorted(sorted(s) for s in x.sets),
                "ultrafilter_atom": sorted(ultrafilter_of(cat, x).atom),
                "maximal": x in maximal,
                "boundary": x in bdry,
            }
            for x in points
        ],
        "open_sets": len(open_sets(cat, v)) if len(points) <= 12 else None,
    }
