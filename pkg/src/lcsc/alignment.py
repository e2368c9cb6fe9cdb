"""Common extensions, finite alignment, covers and exhaustive sets."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations

from .category import TOTAL, ModeError, SmallCategory, cap, cone
from .setring import build_dzero


@dataclass(frozen=True)
class ExtensionReport:
    """Common extensions of ``family`` and its minimal ones grouped by cone."""

    family: tuple[str, ...]
    common: frozenset[str]
    classes: tuple[frozenset[str], ...]

    @property
    def minimal(self) -> tuple[str, ...]:
        """One representative per cone class, the least id."""
        return tuple(min(c) for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


@dataclass
class AlignmentReport:
    aligned: bool
    pair_counts: dict[tuple[str, str], int] = field(default_factory=dict)

    @property
    def max_count(self) -> int:
        return max(self.pair_counts.values(), default=0)


def common_extensions(cat: SmallCategory, family: Iterable[str]) -> frozenset[str]:
    family = tuple(family)
    if not family:
        raise ValueError("empty family")
    if len({cat.dst[a] for a in family}) > 1:
        return frozenset()
    out = cone(cat, family[0])
    for a in family[1:]:
        out = out & cone(cat, a)
    return out


def minimal_common_extensions(cat: SmallCategory, family: Iterable[str]) -> ExtensionReport:
    """Common extensions whose cone is maximal among common extensions."""
    if cat.mode != TOTAL:
        raise ModeError("minimal extensions need a TOTAL category")
    family = tuple(family)
    common = common_extensions(cat, family)
    minimal = []
    for e in common:
        ce = cone(cat, e)
        if all(cone(cat, g) == ce for g in common if e in cone(cat, g)):
            minimal.append(e)
    classes: dict[frozenset[str], set[str]] = {}
    for e in minimal:
        classes.setdefault(cone(cat, e), set()).add(e)
    ordered = sorted((frozenset(c) for c in classes.values()), key=min)
    return ExtensionReport(family, common, tuple(ordered))


def is_finitely_aligned(cat: SmallCategory) -> AlignmentReport:
    """Finite carriers are always aligned; the report lists |∨{a, b}| per meeting pair."""
    if cat.mode != TOTAL:
        raise ModeError("alignment of a truncation is only reported pair by pair")
    counts = {}
    for v in cat.objects:
        ms = cat.with_range(v)
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if cap(cat, a, b):
                    counts[(a, b)] = len(minimal_common_extensions(cat, (a, b)))
    return AlignmentReport(True, counts)


def covers_set(cat: SmallCategory, v: str, family: Iterable[frozenset[str]], e: frozenset[str]) -> bool:
    """``family`` lies inside ``e`` and meets every zigzag set inside ``e``."""
    return find_uncovered(cat, v, family, e) is None and _inside(family, e)


def _inside(family: Iterable[frozenset[str]], e: frozenset[str]) -> bool:
    return all(f <= e for f in family)


def find_uncovered(cat: SmallCategory, v: str, family: Iterable[frozenset[str]], e: frozenset[str]) -> frozenset[str] | None:
    """A zigzag set inside ``e`` missing every member of ``family``, if any."""
    family = list(family)
    union = frozenset().union(*family) if family else frozenset()
    for g in build_dzero(cat, v).sets:
        if g <= e and not (g & union):
            return g
    return None


def covers_filter(cat: SmallCategory, family: Iterable[frozenset[str]], filt: Iterable[frozenset[str]]) -> bool:
    """Some member of the filter lies inside the union of ``family``."""
    family = list(family)
    union = frozenset().union(*family) if family else frozenset()
    return any(e <= union for e in filt)


def is_exhaustive(cat: SmallCategory, v: str, family: Iterable[str]) -> bool:
    """Every morphism with range ``v`` meets the cone of some member."""
    family = tuple(family)
    if any(cat.dst[a] != v for a in family):
        raise ValueError("family must have range v")
    return all(any(cap(cat, a, b) for a in family) for b in cat.with_range(v))


def minimal_exhaustive_sets(cat: SmallCategory, v: str, max_size: int = 3) -> list[tuple[str, ...]]:
    """Exhaustive families up to ``max_size`` with no exhaustive proper subfamily."""
    ms = cat.with_range(v)
    found: list[tuple[str, ...]] = []
    for r in range(1, max_size + 1):
        for combo in combinations(ms, r):
            if any(set(f) <= set(combo) for f in found):
                continue
            if is_exhaustive(cat, v, combo):
                found.append(combo)
    return found
