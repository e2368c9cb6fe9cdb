"""Germ groupoids of a finite category under the two germ relations.

A germ is a zigzag map together with a point in its domain.  Under
relation 2 two germs at x agree when the maps agree on some member of the
ultrafilter of x; under relation 1 it is enough that the induced maps on
points agree near x.  Both are decided exactly on finite carriers.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations
from random import Random

from .category import TOTAL, ModeError, SmallCategory, cone, invertibles, inverse_of, subcategory_closed
from .setring import ring_of
from .spectrum import (
    FilterPoint,
    all_points,
    boundary,
    lambda_star,
    ultrafilter_of,
)
from .zigzag import PartialInjection, Semigroup, Zigzag, generate_semigroup, semigroup_of, zigzag_map


class GroupoidError(ValueError):
    pass


def _atoms_to_points(cat: SmallCategory, v: str) -> dict[frozenset[str], FilterPoint]:
    key = ("atom_points", v)
    if key not in cat.cache:
        cat.cache[key] = {ultrafilter_of(cat, x).atom: x for x in lambda_star(cat, v)}
    return cat.cache[key]


def atom(cat: SmallCategory, x: FilterPoint) -> frozenset[str]:
    atoms = cat.cache.setdefault("atoms", {})
    if x not in atoms:
        atoms[x] = ultrafilter_of(cat, x).atom
    return atoms[x]


def _as_map(cat: SmallCategory, z: Zigzag | PartialInjection) -> PartialInjection:
    return z if isinstance(z, PartialInjection) else zigzag_map(cat, z)


def in_domain(cat: SmallCategory, f: PartialInjection, x: FilterPoint) -> bool:
    return bool(f.pairs) and f.witness.src == x.vertex and atom(cat, x) <= f.domain


def phi_point(cat: SmallCategory, z: Zigzag | PartialInjection, x: FilterPoint) -> FilterPoint:
    """Point generated by the images of the ultrafilter members of ``x``.

    Zigzag maps carry ring elements to ring elements, so the image of the
    atom of ``x`` is an atom at the target, and it generates the image
    ultrafilter.
    """
    if cat.mode != TOTAL:
        raise ModeError("points are only computed for TOTAL categories")
    f = _as_map(cat, z)
    if not in_domain(cat, f, x):
        raise GroupoidError(f"{x.label()} is not in the domain of {f.witness}")
    image = f.apply_set(atom(cat, x))
    target = _atoms_to_points(cat, f.witness.dst)
    if image not in target:
        raise GroupoidError("image of an atom is not an atom")
    return target[image]


def ultrafilter_members(cat: SmallCategory, x: FilterPoint, limit: int = 1 << 12) -> list[frozenset[str]]:
    """Members of the ultrafilter of ``x``, smallest first.

    When the ring is too large to list, only the atom is returned; it is
    the least member, so agreement on some member is the same as agreement
    on it.
    """
    ring = ring_of(cat, x.vertex)
    a = atom(cat, x)
    if ring.size() > limit:
        return [a]
    return sorted((e for e in ring.elements(limit) if a <= e), key=len)


def germ_equal(cat: SmallCategory, i: int, z1, z2, x: FilterPoint) -> bool:
    """Decide whether the germs of ``z1`` and ``z2`` at ``x`` agree."""
    f, g = _as_map(cat, z1), _as_map(cat, z2)
    if not (in_domain(cat, f, x) and in_domain(cat, g, x)):
        raise GroupoidError("point outside a domain")
    points = lambda_star(cat, x.vertex)
    for e in ultrafilter_members(cat, x):
        if not (e <= f.domain and e <= g.domain):
            continue
        if i == 2:
            if all(f(a) == g(a) for a in e):
                return True
        elif i == 1:
            hat = [y for y in points if atom(cat, y) <= e]
            if all(phi_point(cat, f, y) == phi_point(cat, g, y) for y in hat):
                return True
        else:
            raise ValueError("germ relation index must be 1 or 2")
    return False


@dataclass(frozen=True)
class Germ:
    index: int
    key: tuple
    source: FilterPoint
    range: FilterPoint
    witness: PartialInjection = field(compare=False, hash=False)

    def label(self) -> str:
        return f"[{self.witness.witness},{self.source.label()}]"


def germ_key(cat: SmallCategory, i: int, f: PartialInjection, x: FilterPoint) -> tuple:
    if i == 2:
        return (x, tuple(sorted((a, f(a)) for a in atom(cat, x))))
    return (x, phi_point(cat, f, x))


class FiniteGroupoid:
    """Germs with their composition, inverses and the base sets [ζ, E]."""

    def __init__(self, cat: SmallCategory, index: int, semigroup: Semigroup, points: list[FilterPoint], germs: Iterable[Germ]):
        self.cat = cat
        self.index = index
        self.semigroup = semigroup
        self.points = list(points)
        self.germs = tuple(sorted(germs, key=_germ_order))
        self.by_key = {g.key: g for g in self.germs}
        point_set = set(self.points)
        self.units = {}
        for g in self.germs:
            if g.source == g.range and g.witness.is_identity() and g.source in point_set:
                self.units.setdefault(g.source, g)

    def __len__(self) -> int:
        return len(self.germs)

    def __contains__(self, g: object) -> bool:
        return isinstance(g, Germ) and g.key in self.by_key

    def germ(self, f: PartialInjection, x: FilterPoint) -> Germ:
        key = germ_key(self.cat, self.index, f, x)
        if key not in self.by_key:
            raise GroupoidError("germ not in this groupoid")
        return self.by_key[key]

    def compose(self, g: Germ, h: Germ) -> Germ:
        """``g h``: first ``h`` then ``g``; needs s(g) = r(h)."""
        if g.source != h.range:
            raise GroupoidError("germs are not composable")
        f = self.semigroup.find(g.witness.after(h.witness))
        return self.germ(f, h.source)

    def inverse(self, g: Germ) -> Germ:
        f = self.semigroup.find(g.witness.inverse())
        return self.germ(f, g.range)

    def unit(self, x: FilterPoint) -> Germ:
        return self.units[x]

    def source_fibre(self, x: FilterPoint) -> list[Germ]:
        return [g for g in self.germs if g.source == x]

    def base_set(self, f: PartialInjection, e: frozenset[str]) -> frozenset[Germ]:
        """[ζ, E]: germs of ``f`` at points whose atom lies in ``e``."""
        out = set()
        for x in lambda_star(self.cat, f.witness.src):
            if atom(self.cat, x) <= e and in_domain(self.cat, f, x):
                key = germ_key(self.cat, self.index, f, x)
                if key in self.by_key:
                    out.add(self.by_key[key])
        return frozenset(out)

    def neighbourhoods(self, g: Germ) -> list[frozenset[Germ]]:
        """Inclusion-minimal base sets containing ``g``.

        E runs over ring members in the ultrafilter of the source, and ζ over
        every semigroup element representing the germ.
        """
        x = g.source
        reps = [f for f in self.semigroup.nonzero() if in_domain(self.cat, f, x) and germ_key(self.cat, self.index, f, x) == g.key]
        members = ultrafilter_members(self.cat, x)
        cands = {self.base_set(f, e) for f in reps for e in members}
        return [c for c in cands if not any(d < c for d in cands)]

    def check_axioms(self, sample: int = 4000, seed: int = 0) -> None:
        for x in self.points:
            if x not in self.units:
                raise GroupoidError(f"no unit at {x.label()}")
        for g in self.germs:
            inv = self.inverse(g)
            if self.compose(g, inv) != self.units[g.range] or self.compose(inv, g) != self.units[g.source]:
                raise GroupoidError(f"inverse fails at {g.label()}")
            if self.compose(g, self.units[g.source]) != g or self.compose(self.units[g.range], g) != g:
                raise GroupoidError(f"unit law fails at {g.label()}")
        rng = Random(seed)
        by_range: dict[FilterPoint, list[Germ]] = {}
        for g in self.germs:
            by_range.setdefault(g.range, []).append(g)
        triples = []
        for _ in range(sample):
            k = rng.choice(self.germs)
            hs = by_range.get(k.source, [])
            if not hs:
                continue
            h = rng.choice(hs)
            gs = by_range.get(h.source, [])
            if not gs:
                continue
            g = rng.choice(gs)
            triples.append((k, h, g))
        for k, h, g in triples:
            if self.compose(self.compose(k, h), g) != self.compose(k, self.compose(h, g)):
                raise GroupoidError("associativity fails")

    def composition_table(self) -> list[tuple[int, int, int]]:
        pos = {g: i for i, g in enumerate(self.germs)}
        out = []
        for g in self.germs:
            for h in self.germs:
                if g.source == h.range:
                    out.append((pos[g], pos[h], pos[self.compose(g, h)]))
        return out

    def report(self) -> dict:
        return {
            "index": self.index,
            "units": len(self.points),
            "germs": [
                {"witness": str(g.witness.witness), "source": g.source.label(), "range": g.range.label()}
                for g in self.germs
            ],
        }


def _germ_order(g: Germ) -> tuple:
    return (g.source.key(), g.range.key(), len(g.witness.witness), g.witness.witness.flat())


def _collect(cat: SmallCategory, i: int, sg: Semigroup, points: list[FilterPoint]) -> list[Germ]:
    allowed = set(points)
    found: dict[tuple, Germ] = {}
    for f in sg.nonzero():
        for x in lambda_star(cat, f.witness.src):
            if x not in allowed or not atom(cat, x) <= f.domain:
                continue
            key = germ_key(cat, i, f, x)
            if key not in found:
                found[key] = Germ(i, key, x, phi_point(cat, f, x), f)
    return list(found.values())


def build_groupoid(cat: SmallCategory, i: int, check: bool = True) -> FiniteGroupoid:
    if cat.mode != TOTAL:
        raise ModeError("groupoids are built for TOTAL categories")
    if i not in (1, 2):
        raise ValueError("germ relation index must be 1 or 2")
    key = ("groupoid", i)
    if key in cat.cache:
        return cat.cache[key]
    sg = semigroup_of(cat)
    points = all_points(cat)
    g = FiniteGroupoid(cat, i, sg, points, _collect(cat, i, sg, points))
    if check:
        g.check_axioms()
    cat.cache[key] = g
    return g


def quotient_map(g2: FiniteGroupoid, g1: FiniteGroupoid) -> dict[Germ, Germ]:
    """Germ map from relation 2 to relation 1, checked to respect products."""
    cat = g2.cat
    out = {g: g1.by_key[germ_key(cat, 1, g.witness, g.source)] for g in g2.germs}
    if set(out.values()) != set(g1.germs):
        raise GroupoidError("quotient map is not onto")
    for a in g2.germs:
        for b in g2.germs:
            if a.source == b.range and out[g2.compose(a, b)] != g1.compose(out[a], out[b]):
                raise GroupoidError("quotient map does not respect products")
    return out


def is_hausdorff(g: FiniteGroupoid) -> bool:
    """Every two distinct germs lie in disjoint base sets."""
    nbhd = {germ: g.neighbourhoods(germ) for germ in g.germs}
    for a, b in combinations(g.germs, 2):
        if not any(not (u & v) for u in nbhd[a] for v in nbhd[b]):
            return False
    return True


def _condition_two_at(cat: SmallCategory, a: str, e: frozenset[str], mu: str) -> bool:
    mu_inv = inverse_of(cat, mu)
    for b in cat.with_range(cat.src[a]):
        if cat.compose(a, b) not in e:
            continue
        cb = cone(cat, b)
        if cat.compose(mu, b) not in cb or cat.compose(mu_inv, b) not in cb:
            return True
    return False


def condition_two(cat: SmallCategory) -> bool:
    """For every ring element E, a in E and invertible mu != s(a) at s(a),
    some b with ab in E has mu b or mu^-1 b outside the cone of b.

    Shrinking E removes candidates b, so the atoms are the hardest cases
    and deciding them decides every E.
    """
    if cat.mode != TOTAL:
        raise ModeError("condition is evaluated on TOTAL categories")
    for v in cat.objects:
        ring = ring_of(cat, v)
        for at in ring.atoms:
            for a in at:
                for mu in invertibles(cat, cat.src[a]) - {cat.src[a]}:
                    if not _condition_two_at(cat, a, at, mu):
                        return False
    return True


def condition_two_brute(cat: SmallCategory, limit: int = 1 << 12) -> bool:
    """Same condition with E running over every ring element."""
    for v in cat.objects:
        for e in ring_of(cat, v).elements(limit):
            for a in e:
                for mu in invertibles(cat, cat.src[a]) - {cat.src[a]}:
                    if not _condition_two_at(cat, a, e, mu):
                        return False
    return True


def restrict_boundary(g: FiniteGroupoid) -> FiniteGroupoid:
    bd = set(boundary(g.cat))
    germs = [x for x in g.germs if x.source in bd and x.range in bd]
    return FiniteGroupoid(g.cat, g.index, g.semigroup, [x for x in g.points if x in bd], germs)


def restrict_subcategory(cat: SmallCategory, sub: Iterable[str], i: int) -> FiniteGroupoid:
    """Germs of zigzags with entries in ``sub`` over points at its objects."""
    sub = frozenset(sub)
    unknown = [m for m in sub if m not in cat]
    if unknown:
        raise GroupoidError(f"unknown morphisms {sorted(unknown)}")
    if not subcategory_closed(cat, sub):
        raise GroupoidError("not a subcategory: missing identities or composites")
    full = build_groupoid(cat, i)
    sg = generate_semigroup(cat, sorted(sub, key=cat.order))
    verts = [v for v in cat.objects if v in sub]
    points = [x for v in verts for x in lambda_star(cat, v)]
    germs = _collect(cat, i, sg, points)
    missing = [x for x in germs if x.key not in full.by_key]
    if missing:
        raise GroupoidError("restricted germs are not germs of the full groupoid")
    germs = [full.by_key[x.key] for x in germs]
    return FiniteGroupoid(cat, i, full.semigroup, points, germs)


def is_clopen(full: FiniteGroupoid, part: FiniteGroupoid) -> bool:
    """``part`` is a union of base sets and so is its complement."""
    inside = set(part.germs)
    for g in full.germs:
        hoods = full.neighbourhoods(g)
        if g in inside:
            if not any(u <= inside for u in hoods):
                return False
        elif not any(not (u & inside) for u in hoods):
            return False
    return True


def is_subgroupoid(full: FiniteGroupoid, part: FiniteGroupoid) -> bool:
    inside = set(part.germs)
    pts = set(part.points)
    for g in part.germs:
        if g.source not in pts or g.range not in pts or full.inverse(g) not in inside:
            return False
        for h in part.germs:
            if g.source == h.range and full.compose(g, h) not in inside:
                return False
    return all(full.units[x] in inside for x in pts)
