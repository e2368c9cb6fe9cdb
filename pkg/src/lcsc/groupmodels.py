"""Submonoids of groups given by exact word or lattice arithmetic.

A model knows the group product, inverses and exact membership in the
submonoid, so products never need a carrier bound.  ``category(bound)``
truncates the submonoid to a BOUNDED category for the algorithms that need
an explicit carrier.
"""

from __future__ import annotations

import re
from itertools import product

from .category import BOUNDED, SmallCategory


class ModelError(ValueError):
    pass


class GroupModel:
    """Group Y with a submonoid; subclasses implement the arithmetic."""

    name = "model"

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def in_sub(self, x) -> bool:
        raise NotImplementedError

    def size(self, x) -> int:
        raise NotImplementedError

    def encode(self, x) -> str:
        raise NotImplementedError

    def decode(self, s: str):
        raise NotImplementedError

    def enumerate_sub(self, bound: int) -> list:
        raise NotImplementedError

    def right_disjoint(self, a, b) -> bool:
        """True only when the left ideals generated by a and b provably miss."""
        return False

    def category(self, bound: int) -> SmallCategory:
        elems = self.enumerate_sub(bound)
        ids = [self.encode(x) for x in elems]
        value = dict(zip(ids, elems))
        one = self.encode(self.identity)
        carrier = set(ids)

        def compose(a: str, b: str) -> str | None:
            c = self.encode(self.mul(value[a], value[b]))
            return c if c in carrier else None

        def divide(a: str, c: str) -> str | None:
            b = self.mul(self.inv(value[a]), value[c])
            if not self.in_sub(b):
                return None
            b = self.encode(b)
            return b if b in carrier else None

        def right_divide(c: str, b: str) -> str | None:
            a = self.mul(value[c], self.inv(value[b]))
            if not self.in_sub(a):
                return None
            a = self.encode(a)
            return a if a in carrier else None

        cat = SmallCategory(
            [one],
            {m: (one, one) for m in ids},
            compose,
            BOUNDED,
            bound,
            divide=divide,
            right_divide=right_divide,
            size=lambda m: self.size(value[m]),
            name=f"{self.name}[{bound}]",
        )
        cat.cache["model"] = self
        cat.cache["values"] = value
        return cat


class LatticeModel(GroupModel):
    """Z^n containing N^n; the carrier at bound L is the box [0, L]^n."""

    def __init__(self, n: int):
        if n < 1:
            raise ModelError("rank must be positive")
        self.n = n
        self.name = f"N^{n}"

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    @property
    def identity(self):
        return (0,) * self.n

    def in_sub(self, x) -> bool:
        return all(c >= 0 for c in x)

    def size(self, x) -> int:
        return sum(abs(c) for c in x)

    def encode(self, x) -> str:
        return ",".join(str(c) for c in x)

    def decode(self, s: str):
        try:
            x = tuple(int(c) for c in s.split(","))
        except ValueError as exc:
            raise ModelError(f"cannot parse lattice element {s!r}") from exc
        if len(x) != self.n:
            raise ModelError(f"expected {self.n} coordinates in {s!r}")
        return x

    def enumerate_sub(self, bound: int) -> list:
        return sorted(product(range(bound + 1), repeat=self.n), key=lambda x: (sum(x), x))


_TOKEN = re.compile(r"[A-Za-z][0-9]*")


class FreeGroupModel(GroupModel):
    """Free group on named letters; inverses are written in upper case.

    The submonoid is generated by ``generators``, given as words.  Membership
    is decided by ``member``, a callable on reduced words.
    """

    def __init__(self, letters, generators, member, name="free group", disjoint=None):
        self.letters = tuple(letters)
        self.generators = tuple(self.decode(g) for g in generators)
        self._member = member
        self._disjoint = disjoint
        self.name = name

    @staticmethod
    def _flip(tok: str) -> str:
        return tok.lower() if tok[0].isupper() else tok.upper()

    def reduce(self, word):
        out: list[str] = []
        for t in word:
            if out and out[-1] == self._flip(t):
                out.pop()
            else:
                out.append(t)
        return tuple(out)

    def mul(self, a, b):
        return self.reduce(a + b)

    def inv(self, a):
        return tuple(self._flip(t) for t in reversed(a))

    @property
    def identity(self):
        return ()

    def in_sub(self, x) -> bool:
        return self._member(x)

    def size(self, x) -> int:
        return len(x)

    def encode(self, x) -> str:
        return ".".join(x) if x else "1"

    def decode(self, s: str):
        if s in ("1", ""):
            return ()
        toks = tuple(t for t in s.split(".") if t) if "." in s else tuple(_TOKEN.findall(s))
        for t in toks:
            if t.lower() not in self.letters:
                raise ModelError(f"unknown letter {t!r}")
        return self.reduce(toks)

    def enumerate_sub(self, bound: int) -> list:
        found = {()}
        frontier = [()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = self.mul(x, g)
                    if len(y) <= bound and y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(found, key=lambda w: (len(w), w))

    def right_disjoint(self, a, b) -> bool:
        return bool(self._disjoint and self._disjoint(a, b))


def _positive(word) -> bool:
    return all(t.islower() for t in word)


def _suffix_free(a, b) -> bool:
    # xa = yb in a free monoid forces one of a, b to be a suffix of the other.
    short, long_ = (a, b) if len(a) <= len(b) else (b, a)
    return long_[len(long_) - len(short):] != short


def free_monoid_model(letters=("a", "b")) -> FreeGroupModel:
    return FreeGroupModel(letters, letters, _positive, name="free monoid", disjoint=_suffix_free)


def fg_model(n: int) -> FreeGroupModel:
    """Submonoid of the free group on a, b, c1..cn generated by a, b, ci and b^-1 a ci.

    A reduced word lies in the submonoid exactly when it splits into the
    tokens a, b, ci and B a ci; the only cancellation between generators is
    b followed by B a ci, which leaves the tokens a, ci.
    """
    if n < 1:
        raise ModelError("n must be positive")
    cs = [f"c{i}" for i in range(1, n + 1)]

    def member(word) -> bool:
        i = 0
        while i < len(word):
            t = word[i]
            if t in ("a", "b") or t in cs:
                i += 1
            elif t == "B" and i + 2 < len(word) and word[i + 1] == "a" and word[i + 2] in cs:
                i += 3
            else:
                return False
        return True

    gens = ["a", "b"] + cs + [f"B.a.{c}" for c in cs]
    return FreeGroupModel(["a", "b"] + cs, gens, member, name=f"FG({n})")


def nat(bound: int) -> SmallCategory:
    """N truncated to [0, bound]."""
    if bound < 1:
        raise ModelError("bound must be positive")
    cat = LatticeModel(1).category(bound)
    cat.name = f"NAT({bound})"
    return cat


def nsq(bound: int) -> SmallCategory:
    """N^2 truncated to the box [0, bound]^2."""
    if bound < 1:
        raise ModelError("bound must be positive")
    cat = LatticeModel(2).category(bound)
    cat.name = f"NSQ({bound})"
    return cat


def free2(bound: int) -> SmallCategory:
    """Free monoid on a, b truncated to words of length at most ``bound``."""
    if bound < 1:
        raise ModelError("bound must be positive")
    cat = free_monoid_model().category(bound)
    cat.name = f"FREE2({bound})"
    return cat


def fg(n: int, bound: int) -> SmallCategory:
    if bound < 1:
        raise ModelError("bound must be positive")
    cat = fg_model(n).category(bound)
    cat.name = f"FG({n},{bound})"
    return cat
