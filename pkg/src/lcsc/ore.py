"""Right reversibility and the groupoid of fractions.

A pair (a, b) with r(a) = r(b) stands for a^-1 b.  Two pairs are
equivalent when some x, y give xa = yc and xb = yd.  All searches run over
the carrier in order of size, so on truncations a negative answer only
means nothing was found within the bound.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from itertools import product

from .category import TOTAL, SmallCategory, inverse_of

Pair = tuple[str, str]

TRUE = "true"
COUNTEREXAMPLE = "counterexample"
UNKNOWN = "unknown"
FALSE = "false"


class FractionError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: tuple | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.status == TRUE

    def to_json(self) -> dict:
        return {"status": self.status, "witness": list(self.witness) if self.witness else None, "note": self.note}


def _by_size(cat: SmallCategory, ms) -> list[str]:
    return sorted(ms, key=lambda m: (cat.size(m), m))


def left_multiples(cat: SmallCategory, a: str) -> dict[str, str]:
    """{xa: x} over the carrier."""
    out: dict[str, str] = {}
    for x in _by_size(cat, cat.with_source(cat.dst[a])):
        c = cat.compose(x, a)
        if c is not None:
            out.setdefault(c, x)
    return out


def common_left_multiple(cat: SmallCategory, a: str, b: str) -> tuple[str, str] | None:
    """Some (x, y) with xa = yb, smallest composite first."""
    la, lb = left_multiples(cat, a), left_multiples(cat, b)
    common = [c for c in la if c in lb]
    if not common:
        return None
    c = min(common, key=lambda m: (cat.size(m), m))
    return la[c], lb[c]


def is_right_reversible(cat: SmallCategory) -> Verdict:
    """Every co-sourced pair has a common left multiple.

    Exhaustive on TOTAL categories.  On truncations a pair without a
    witness is a counterexample only when the model proves the left ideals
    disjoint; otherwise the verdict is unknown at this bound.
    """
    model = cat.cache.get("model")
    values = cat.cache.get("values", {})
    unknown = None
    for v in cat.objects:
        ms = _by_size(cat, cat.with_source(v))
        for i, a in enumerate(ms):
            for b in ms[i + 1:]:
                if common_left_multiple(cat, a, b) is not None:
                    continue
                if cat.mode == TOTAL:
                    return Verdict(COUNTEREXAMPLE, (a, b))
                if model is not None and model.right_disjoint(values[a], values[b]):
                    return Verdict(COUNTEREXAMPLE, (a, b), "left ideals provably disjoint")
                if unknown is None:
                    unknown = (a, b)
    if unknown is not None:
        return Verdict(UNKNOWN, unknown, f"no common left multiple within bound {cat.bound}")
    note = "" if cat.mode == TOTAL else f"holds on the truncation at bound {cat.bound}"
    return Verdict(TRUE, None, note)


def check_pair(cat: SmallCategory, p: Pair) -> None:
    a, b = p
    if a not in cat or b not in cat:
        raise FractionError(f"unknown morphism in {p}")
    if cat.dst[a] != cat.dst[b]:
        raise FractionError(f"{a} and {b} have different ranges")


def fraction_equiv(cat: SmallCategory, p: Pair, q: Pair) -> Verdict:
    """Search x, y with xa = yc and xb = yd.

    Uses right division, so the answer is exact for right cancellative
    categories up to the carrier bound.
    """
    check_pair(cat, p)
    check_pair(cat, q)
    a, b = p
    c, d = q
    if cat.src[b] != cat.src[d] or cat.src[a] != cat.src[c]:
        return Verdict(FALSE, None, "sources differ")
    for x in _by_size(cat, cat.with_source(cat.dst[a])):
        xa = cat.compose(x, a)
        xb = cat.compose(x, b)
        if xa is None or xb is None:
            continue
        y = cat.right_divide(xa, c)
        if y is None or cat.dst[y] != cat.dst[x]:
            continue
        if cat.compose(y, d) == xb:
            return Verdict(TRUE, (x, y))
    return Verdict(FALSE, None, "no witness within the carrier")


def reduce_pair(cat: SmallCategory, p: Pair) -> Pair:
    """Strip the largest common left factor: (za, zb) becomes (a, b)."""
    check_pair(cat, p)
    a, b = p
    best = p
    for z in cat.with_range(cat.dst[a]):
        a2, b2 = cat.divide(z, a), cat.divide(z, b)
        if a2 is None or b2 is None:
            continue
        if (cat.size(a2) + cat.size(b2), a2, b2) < (cat.size(best[0]) + cat.size(best[1]), *best):
            best = (a2, b2)
    return best


def witnesses(cat: SmallCategory, b: str, c: str, limit: int = 2) -> list[tuple[str, str]]:
    """Up to ``limit`` pairs (x, y) with xb = yc, by composite size."""
    lb, lc = left_multiples(cat, b), left_multiples(cat, c)
    common = sorted((m for m in lb if m in lc), key=lambda m: (cat.size(m), m))
    return [(lb[m], lc[m]) for m in common[:limit]]


def fraction_product(cat: SmallCategory, p: Pair, q: Pair, verify: bool = True) -> Pair:
    """[a, b][c, d] = [xa, yd] for any x, y with xb = yc.

    With ``verify`` a second witness, when one exists in the carrier, must
    give an equivalent pair.
    """
    check_pair(cat, p)
    check_pair(cat, q)
    a, b = p
    c, d = q
    if cat.src[b] != cat.src[c]:
        raise FractionError("fractions are not composable")
    found = witnesses(cat, b, c, 2 if verify else 1)
    results = []
    for x, y in found:
        xa, yd = cat.compose(x, a), cat.compose(y, d)
        if xa is not None and yd is not None:
            results.append((xa, yd))
    if not results:
        raise FractionError(f"no common left multiple of {b} and {c} within the bound")
    if verify and len(results) > 1 and not fraction_equiv(cat, results[0], results[1]):
        raise FractionError(f"witness choice changed the product of {p} and {q}")
    return reduce_pair(cat, results[0])


def fraction_inverse(p: Pair) -> Pair:
    return p[1], p[0]


def iota(cat: SmallCategory, a: str) -> Pair:
    return cat.dst[a], a


@dataclass
class FractionGroupoid:
    """Classes of the pairs on a carrier, with reduced representatives."""

    cat: SmallCategory
    classes: list[list[Pair]]
    index: dict[Pair, int] = field(default_factory=dict)

    def __post_init__(self):
        self.index = {p: i for i, c in enumerate(self.classes) for p in c}

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, p: Pair) -> int:
        if p in self.index:
            return self.index[p]
        for i, c in enumerate(self.classes):
            if fraction_equiv(self.cat, p, c[0]):
                return i
        raise FractionError(f"{p} is not equivalent to any pair on the carrier")

    def representative(self, i: int) -> Pair:
        return self.classes[i][0]


def fraction_groupoid(cat: SmallCategory) -> FractionGroupoid:
    """Partition all pairs of the carrier into fraction classes."""
    pairs = [(a, b) for a in cat.morphisms for b in cat.with_range(cat.dst[a])]
    pairs.sort(key=lambda p: (cat.size(p[0]) + cat.size(p[1]), p))
    classes: list[list[Pair]] = []
    for p in pairs:
        for c in classes:
            if fraction_equiv(cat, p, c[0]):
                c.append(p)
                break
        else:
            classes.append([p])
    return FractionGroupoid(cat, classes)


@dataclass
class ExtendedHom:
    """pi extended to fractions: [a, b] goes to pi(a)^-1 pi(b)."""

    cat: SmallCategory
    target: SmallCategory
    pi: Mapping[str, str]

    def __call__(self, p: Pair) -> str:
        check_pair(self.cat, p)
        inv = inverse_of(self.target, self.pi[p[0]])
        return self.target.compose(inv, self.pi[p[1]])

    def agrees_on_morphisms(self) -> bool:
        return all(self(iota(self.cat, a)) == self.pi[a] for a in self.cat.morphisms)

    def respects_equivalence(self, pairs) -> bool:
        pairs = list(pairs)
        for p, q in product(pairs, repeat=2):
            if fraction_equiv(self.cat, p, q) and self(p) != self(q):
                return False
        return True

    def multiplicative(self, pairs) -> bool:
        pairs = list(pairs)
        for p, q in product(pairs, repeat=2):
            if self.cat.src[p[1]] != self.cat.src[q[0]]:
                continue
            try:
                r = fraction_product(self.cat, p, q, verify=False)
            except FractionError:
                continue
            if self(r) != self.target.compose(self(p), self(q)):
                return False
        return True


def extend_hom(cat: SmallCategory, pi: Mapping[str, str] | Callable[[str], str], target: SmallCategory) -> ExtendedHom:
    """Check that ``pi`` is a functor into the groupoid ``target`` and extend it."""
    if callable(pi) and not isinstance(pi, Mapping):
        pi = {a: pi(a) for a in cat.morphisms}
    pi = dict(pi)
    for a in cat.morphisms:
        if a not in pi or pi[a] not in target:
            raise FractionError(f"pi is undefined at {a}")
        if inverse_of(target, pi[a]) is None:
            raise FractionError(f"pi({a}) is not invertible in the target")
    for v in cat.objects:
        if not target.is_identity(pi[v]):
            raise FractionError(f"pi({v}) is not an identity")
    for a in cat.morphisms:
        for b in cat.with_range(cat.src[a]):
            ab = cat.compose(a, b)
            if ab is not None and target.compose(pi[a], pi[b]) != pi[ab]:
                raise FractionError(f"pi is not a functor at ({a}, {b})")
    return ExtendedHom(cat, target, pi)
