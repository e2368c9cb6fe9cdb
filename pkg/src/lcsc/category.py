"""Small categories stored as explicit morphism carriers.

A category is either TOTAL (the carrier is the whole finite category and the
composition table is closed) or BOUNDED (the carrier is a truncation of an
infinite category, and a composite may fall outside it).

Conventions: ``src``/``dst`` are source and range, ``compose(a, b)`` is the
product ``ab`` and is defined when ``src[a] == dst[b]``.  Objects are
identified with their identity morphisms, so every object id is also a
morphism id.

>>> cat = SmallCategory.from_table(
...     ["u", "v"], {"f": ("v", "u"), "g": ("v", "u")}, [])
>>> tau(cat, "u", "f")
'f'
>>> sorted(cone(cat, "u"))
['f', 'g', 'u']
"""

from __future__ import annotations

import json
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

TOTAL = "total"
BOUNDED = "bounded"


class CategoryError(ValueError):
    pass


class StructureError(CategoryError):
    """Malformed input: unknown ids or composition entries with wrong endpoints."""

    def __init__(self, message: str, entries: list[Any] | None = None):
        super().__init__(message)
        self.entries = entries or []


class ModeError(CategoryError):
    pass


class CancellationError(CategoryError):
    """Raised when left division is ambiguous, i.e. left cancellation fails."""


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: tuple


@dataclass
class ValidationReport:
    mode: str
    bound: int | None
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, kind: str) -> int:
        return sum(1 for v in self.violations if v.kind == kind)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "bound": self.bound,
            "ok": self.ok,
            "violations": [{"kind": v.kind, "detail": list(v.detail)} for v in self.violations],
        }


class SmallCategory:
    """Finite carrier of a small category.

    ``compose`` is either a mapping ``(a, b) -> ab`` or a callable returning
    the composite id or ``None``.  ``divide`` is an optional fast left
    division ``(a, c) -> b`` with ``ab == c``; ``size`` orders morphisms for
    witness searches.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Mapping[str, tuple[str, str]],
        compose: Mapping[tuple[str, str], str] | Callable[[str, str], str | None],
        mode: str = TOTAL,
        bound: int | None = None,
        *,
        divide: Callable[[str, str], str | None] | None = None,
        right_divide: Callable[[str, str], str | None] | None = None,
        size: Callable[[str], int] | None = None,
        name: str = "",
    ):
        if mode not in (TOTAL, BOUNDED):
            raise ModeError(f"unknown mode {mode!r}")
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: tuple[str, ...] = tuple(morphisms)
        self.src: dict[str, str] = {m: e[0] for m, e in morphisms.items()}
        self.dst: dict[str, str] = {m: e[1] for m, e in morphisms.items()}
        self.mode = mode
        self.bound = bound
        self.name = name
        self._table = compose if isinstance(compose, Mapping) else None
        self._fn = None if isinstance(compose, Mapping) else compose
        self._divide = divide
        self._right_divide = right_divide
        self._order = {m: i for i, m in enumerate(self.morphisms)}
        self._size = size
        self._with_range: dict[str, tuple[str, ...]] = defaultdict(tuple)
        by_range: dict[str, list[str]] = defaultdict(list)
        by_src: dict[str, list[str]] = defaultdict(list)
        for m in self.morphisms:
            by_range[self.dst[m]].append(m)
            by_src[self.src[m]].append(m)
        self._with_range.update({v: tuple(ms) for v, ms in by_range.items()})
        self._with_src = {v: tuple(ms) for v, ms in by_src.items()}
        self._quot: dict[tuple[str, str], str] | None = None
        self._ambiguous: list[tuple[str, str, str, str]] = []
        self.cache: dict[Any, Any] = {}
        objs = set(self.objects)
        bad = [m for m in self.morphisms if self.src[m] not in objs or self.dst[m] not in objs]
        bad += [v for v in self.objects if v not in self.src or self.src[v] != v or self.dst[v] != v]
        if bad:
            raise StructureError("morphisms with unknown endpoints or missing identities", bad)

    # construction -----------------------------------------------------------------

    @classmethod
    def from_table(
        cls,
        objects: Iterable[str],
        arrows: Mapping[str, tuple[str, str]],
        compose: Iterable[tuple[str, str, str]],
        mode: str = TOTAL,
        bound: int | None = None,
        name: str = "",
    ) -> "SmallCategory":
        """Build from non-identity arrows and composition triples.

        Identity morphisms and the unit laws are filled in unless the table
        already says otherwise; explicit entries always win.
        """
        objects = list(objects)
        morphisms: dict[str, tuple[str, str]] = {v: (v, v) for v in objects}
        for m, (s, r) in arrows.items():
            if m in morphisms and morphisms[m] != (s, r):
                raise StructureError(f"morphism {m!r} declared twice", [m])
            morphisms[m] = (s, r)
        table: dict[tuple[str, str], str] = {}
        for m, (s, r) in morphisms.items():
            table[(r, m)] = m
            table[(m, s)] = m
        bad = []
        for entry in compose:
            a, b, ab = entry
            if a not in morphisms or b not in morphisms or ab not in morphisms:
                bad.append(list(entry))
                continue
            if morphisms[a][0] != morphisms[b][1] or morphisms[ab] != (morphisms[b][0], morphisms[a][1]):
                bad.append(list(entry))
                continue
            table[(a, b)] = ab
        if bad:
            raise StructureError("composition entries with mismatched source or range", bad)
        return cls(objects, morphisms, table, mode, bound, name=name)

    # basic access -------------------------------------------------------------------

    def __repr__(self) -> str:
        label = self.name or "SmallCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms, {self.mode}>"

    def __contains__(self, m: object) -> bool:
        return m in self.src

    def is_identity(self, m: str) -> bool:
        return m in self.objects and self.src[m] == m

    def with_range(self, v: str) -> tuple[str, ...]:
        """The morphisms with range ``v`` (written vΛ)."""
        return self._with_range.get(v, ())

    def with_source(self, v: str) -> tuple[str, ...]:
        return self._with_src.get(v, ())

    def order(self, m: str) -> int:
        return self._order[m]

    def size(self, m: str) -> int:
        return self._size(m) if self._size else self._order[m]

    def composable(self, a: str, b: str) -> bool:
        return self.src[a] == self.dst[b]

    def compose(self, a: str, b: str) -> str | None:
        if self.src[a] != self.dst[b]:
            return None
        if self._table is not None:
            return self._table.get((a, b))
        return self._fn(a, b)

    def undefined_reason(self, a: str, b: str) -> str | None:
        if self.src[a] != self.dst[b]:
            return "not composable"
        if self.compose(a, b) is None:
            return "out of bound" if self.mode == BOUNDED else "missing composite"
        return None

    def _quotients(self) -> dict[tuple[str, str], str]:
        if self._quot is None:
            quot: dict[tuple[str, str], str] = {}
            for a in self.morphisms:
                for b in self.with_range(self.src[a]):
                    c = self.compose(a, b)
                    if c is None:
                        continue
                    if (a, c) in quot and quot[(a, c)] != b:
                        self._ambiguous.append((a, quot[(a, c)], b, c))
                    else:
                        quot[(a, c)] = b
            self._quot = quot
        return self._quot

    def divide(self, a: str, c: str) -> str | None:
        """The unique ``b`` with ``ab == c``, or ``None``."""
        if self.dst[c] != self.dst[a]:
            return None
        if self._divide is not None:
            return self._divide(a, c)
        quot = self._quotients()
        if self._ambiguous and any(x[0] == a and x[3] == c for x in self._ambiguous):
            raise CancellationError(f"{a} does not left cancel at {c}")
        return quot.get((a, c))

    def right_divide(self, c: str, b: str) -> str | None:
        """Some ``a`` with ``ab == c`` (unique when right cancellative)."""
        if self.src[c] != self.src[b]:
            return None
        if self._right_divide is not None:
            return self._right_divide(c, b)
        for a in self.with_source(self.dst[b]):
            if self.compose(a, b) == c:
                return a
        return None

    def to_json(self) -> dict:
        compose = []
        for a in self.morphisms:
            for b in self.with_range(self.src[a]):
                if self.is_identity(a) or self.is_identity(b):
                    continue
                c = self.compose(a, b)
                if c is not None:
                    compose.append([a, b, c])
        doc = {
            "objects": list(self.objects),
            "morphisms": [
                {"id": m, "src": self.src[m], "dst": self.dst[m]}
                for m in self.morphisms
                if not self.is_identity(m)
            ],
            "compose": compose,
            "mode": self.mode,
        }
        if self.bound is not None:
            doc["bound"] = self.bound
        if self.name:
            doc["name"] = self.name
        return doc


def category_from_json(doc: Mapping | str) -> SmallCategory:
    """Parse the JSON exchange format; raises StructureError on bad shape."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        objects = [str(o) for o in doc["objects"]]
        arrows = {}
        for m in doc["morphisms"]:
            mid = str(m["id"])
            if mid in objects and m["src"] == m["dst"] == mid:
                continue
            arrows[mid] = (str(m["src"]), str(m["dst"]))
        compose = [tuple(str(x) for x in e) for e in doc.get("compose", [])]
        mode = doc.get("mode", TOTAL)
        bound = doc.get("bound")
    except (KeyError, TypeError) as exc:
        raise StructureError(f"bad category document: {exc}") from exc
    if any(len(e) != 3 for e in compose):
        raise StructureError("composition entries must be triples", [list(e) for e in compose if len(e) != 3])
    return SmallCategory.from_table(objects, arrows, compose, mode, bound, name=doc.get("name", ""))


# elementary operations ------------------------------------------------------------


def tau(cat: SmallCategory, a: str, b: str) -> str | None:
    """Left translation by ``a``: returns ``ab`` or ``None`` when undefined."""
    return cat.compose(a, b)


def sigma(cat: SmallCategory, a: str, c: str) -> str | None:
    """Inverse of left translation: the ``b`` with ``ab == c``."""
    return cat.divide(a, c)


def cone(cat: SmallCategory, a: str) -> frozenset[str]:
    """The right ideal generated by ``a`` inside the carrier."""
    key = ("cone", a)
    if key not in cat.cache:
        out = {cat.compose(a, b) for b in cat.with_range(cat.src[a])}
        out.discard(None)
        cat.cache[key] = frozenset(out)
    return cat.cache[key]


def initial_segments(cat: SmallCategory, b: str) -> frozenset[str]:
    """All ``a`` such that ``b`` lies in the cone of ``a``."""
    return frozenset(a for a in cat.with_range(cat.dst[b]) if cat.divide(a, b) is not None)


def approx(cat: SmallCategory, a: str, b: str) -> bool:
    """``a`` and ``b`` generate the same cone."""
    if cat.mode != TOTAL:
        raise ModeError("cone equality needs a TOTAL category")
    return cat.dst[a] == cat.dst[b] and cone(cat, a) == cone(cat, b)


def cap(cat: SmallCategory, a: str, b: str) -> bool:
    """The cones of ``a`` and ``b`` meet."""
    return cat.dst[a] == cat.dst[b] and bool(cone(cat, a) & cone(cat, b))


def perp(cat: SmallCategory, a: str, b: str) -> bool:
    return not cap(cat, a, b)


def invertibles(cat: SmallCategory, v: str) -> frozenset[str]:
    out = set()
    for m in cat.with_range(v):
        if cat.src[m] != v:
            continue
        for n in cat.with_range(v):
            if cat.src[n] == v and cat.compose(m, n) == v and cat.compose(n, m) == v:
                out.add(m)
                break
    return frozenset(out)


def inverse_of(cat: SmallCategory, m: str) -> str | None:
    v, w = cat.src[m], cat.dst[m]
    for n in cat.with_range(v):
        if cat.src[n] == w and cat.compose(m, n) == w and cat.compose(n, m) == v:
            return n
    return None


def subcategory_closed(cat: SmallCategory, members: Iterable[str]) -> bool:
    sub = set(members)
    for m in sub:
        if cat.src[m] not in sub or cat.dst[m] not in sub:
            return False
    for a in sub:
        for b in sub:
            if cat.composable(a, b):
                c = cat.compose(a, b)
                if c is not None and c not in sub:
                    return False
    return True


def validate(cat: SmallCategory) -> ValidationReport:
    """Check the category axioms and left cancellation on the carrier."""
    report = ValidationReport(cat.mode, cat.bound)
    add = report.violations.append
    for m in cat.morphisms:
        s, r = cat.src[m], cat.dst[m]
        if cat.compose(r, m) != m or cat.compose(m, s) != m:
            add(Violation("identity", (m,)))
    for a in cat.morphisms:
        images: dict[str, str] = {}
        for b in cat.with_range(cat.src[a]):
            c = cat.compose(a, b)
            if c is None:
                if cat.mode == TOTAL:
                    add(Violation("closure", (a, b)))
                continue
            if cat.src[c] != cat.src[b] or cat.dst[c] != cat.dst[a]:
                add(Violation("coherence", (a, b, c)))
                continue
            if c in images:
                add(Violation("left_cancellation", (a, images[c], b, c)))
            else:
                images[c] = b
            for d in cat.with_range(cat.src[b]):
                bd = cat.compose(b, d)
                if bd is None:
                    continue
                left = cat.compose(c, d)
                right = cat.compose(a, bd)
                if left is None or right is None:
                    if cat.mode == TOTAL and (left is None) != (right is None):
                        add(Violation("closure", (a, b, d)))
                    continue
                if left != right:
                    add(Violation("associativity", (a, b, d)))
    return report
