"""Finite matrix models: regular and induced representations, relation checks,
Wiener-Hopf compressions and the shift and separation bounds.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .alignment import minimal_common_extensions, minimal_exhaustive_sets
from .category import TOTAL, SmallCategory
from .groupmodels import GroupModel
from .groupoid import FiniteGroupoid, atom, build_groupoid, in_domain, phi_point, restrict_boundary
from .setring import build_dzero
from .spectrum import FilterPoint, lambda_star
from .zigzag import PartialInjection, Semigroup, Zigzag, apply_zigzag, semigroup_of, zigzag_map

TOL = 1e-9


class OperatorError(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedBasis:
    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise OperatorError("basis labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def position(self) -> dict:
        return {b: i for i, b in enumerate(self.labels)}


@dataclass
class OperatorFamily:
    """Matrices on one basis, indexed by semigroup elements (or zigzags).

    ``edge`` marks basis vectors on which truncation made the action
    unreliable; relation checks ignore them.
    """

    basis: TruncatedBasis
    index: list[PartialInjection]
    matrices: list[np.ndarray]
    cat: SmallCategory | None = None
    semigroup: Semigroup | None = None
    edge: np.ndarray | None = None
    tol: float = TOL
    label: str = ""
    _pos: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._pos = {f.pairs: i for i, f in enumerate(self.index)}
        if self.edge is None:
            self.edge = np.zeros(self.basis.dim, dtype=bool)

    def op(self, f: PartialInjection) -> np.ndarray:
        if f.pairs in self._pos:
            return self.matrices[self._pos[f.pairs]]
        if not f.pairs:
            return self.zero()
        raise OperatorError("element not in the family")

    def zero(self) -> np.ndarray:
        return np.zeros((self.basis.dim, self.basis.dim), dtype=complex)

    def translation(self, a: str) -> np.ndarray:
        return self.op(self.semigroup.translation(a))

    def vertex(self, v: str) -> np.ndarray:
        return self.translation(v)

    def span_dimension(self) -> int:
        if not self.matrices:
            return 0
        stack = np.array([m.ravel() for m in self.matrices])
        return int(np.linalg.matrix_rank(stack, tol=1e-8))


def _perm_matrix(dim: int, moves: Iterable[tuple[int, int]]) -> np.ndarray:
    m = np.zeros((dim, dim), dtype=complex)
    for col, row in moves:
        m[row, col] = 1.0
    return m


def regular_rep(
    cat: SmallCategory,
    basis_bound: int | None = None,
    zigzags: Sequence[Zigzag] | None = None,
) -> OperatorFamily:
    """T_ζ e_a = e_{φ_ζ(a)} on the carrier, or on morphisms of size at most the bound.

    TOTAL categories are indexed by the whole zigzag semigroup; BOUNDED ones
    by the supplied zigzags, with escapes from the carrier marked as edge.
    """
    if basis_bound is None or cat.mode == TOTAL:
        labels = cat.morphisms
    else:
        labels = tuple(m for m in cat.morphisms if cat.size(m) <= basis_bound)
    basis = TruncatedBasis(tuple(labels))
    pos = basis.position()
    edge = np.zeros(basis.dim, dtype=bool)
    if cat.mode == TOTAL and zigzags is None:
        sg = semigroup_of(cat)
        elems = list(sg)
    else:
        if zigzags is None:
            raise OperatorError("BOUNDED families need an explicit zigzag list")
        sg = None
        elems = []
        for z in zigzags:
            f = _bounded_map(cat, z, labels)
            elems.append(f)
            for a in f.edge:
                if a in pos:
                    edge[pos[a]] = True
    mats = []
    for f in elems:
        moves = []
        for a, b in f.pairs:
            if a in pos:
                if b in pos:
                    moves.append((pos[a], pos[b]))
                else:
                    edge[pos[a]] = True
        mats.append(_perm_matrix(basis.dim, moves))
    return OperatorFamily(basis, elems, mats, cat, sg, edge, label="regular")


def _bounded_map(cat: SmallCategory, z: Zigzag, labels: Sequence[str]) -> PartialInjection:
    pairs, edge = [], []
    for a in labels:
        if cat.dst[a] != z.src:
            continue
        value, escaped = apply_zigzag(cat, z, a)
        if value is not None:
            pairs.append((a, value))
        elif escaped:
            edge.append(a)
    return PartialInjection(tuple(sorted(pairs)), z, frozenset(edge))


def induced_rep(g: FiniteGroupoid, points: FilterPoint | Iterable[FilterPoint]) -> OperatorFamily:
    """Direct sum over ``points`` of the germ action on the source fibres.

    T_f sends the basis vector of a germ h at x to that of f h when the
    range of h lies in the domain of f, and to zero otherwise.
    """
    points = [points] if isinstance(points, FilterPoint) else list(points)
    for x in points:
        if x not in g.units:
            raise OperatorError(f"{x.label()} is not a unit of the groupoid")
    labels = tuple(h for x in points for h in g.source_fibre(x))
    basis = TruncatedBasis(labels)
    pos = basis.position()
    sg = g.semigroup
    mats = []
    for f in sg:
        moves = []
        if f.pairs:
            for h in labels:
                if in_domain(g.cat, f, h.range):
                    prod = sg.find(f.after(h.witness))
                    target = g.germ(prod, h.source)
                    if target not in pos:
                        raise OperatorError("germ action leaves the fibre")
                    moves.append((pos[h], pos[target]))
        mats.append(_perm_matrix(basis.dim, moves))
    return OperatorFamily(basis, list(sg), mats, g.cat, sg, label=f"induced G{g.index}")


def boundary_family(cat: SmallCategory, i: int = 2) -> OperatorFamily:
    """Direct sum of the induced representations over the boundary."""
    full = build_groupoid(cat, i)
    part = restrict_boundary(full)
    return induced_rep(part, part.points)


def is_cyclic(family: OperatorFamily, vector: np.ndarray) -> bool:
    vecs = [m @ vector for m in family.matrices]
    return int(np.linalg.matrix_rank(np.array(vecs), tol=1e-8)) == family.basis.dim


# joins ----------------------------------------------------------------------------


def is_projection(p: np.ndarray, tol: float = TOL) -> bool:
    return np.allclose(p, p.conj().T, atol=tol) and np.allclose(p @ p, p, atol=tol)


def join(projections: Sequence[np.ndarray], dim: int | None = None, tol: float = TOL) -> np.ndarray:
    """Supremum of projections: range projection of their sum.

    For commuting projections the sum has integer spectrum, so
    thresholding at one half is exact.
    """
    if not projections:
        return np.zeros((dim, dim), dtype=complex)
    for p in projections:
        if not is_projection(p, tol):
            raise OperatorError("join of a non-projection")
    s = sum(projections)
    w, v = np.linalg.eigh(s)
    keep = v[:, w > 0.5]
    return keep @ keep.conj().T


def opnorm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


# relation checks ---------------------------------------------------------------------


@dataclass
class RelationResult:
    name: str
    checked: int = 0
    max_deviation: float = 0.0
    counterexample: dict | None = None
    passed: bool = True

    def record(self, dev: float, tol: float, info: Callable[[], dict]) -> None:
        self.checked += 1
        if dev > self.max_deviation:
            self.max_deviation = dev
        if dev > tol and self.counterexample is None:
            self.counterexample = info()
            self.passed = False

    def to_json(self) -> dict:
        return {
            "relation": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "max_deviation": self.max_deviation,
            "counterexample": self.counterexample,
        }


@dataclass
class RelationReport:
    results: dict[str, RelationResult]

    def passed(self, name: str) -> bool:
        return self.results[name].passed

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def to_json(self) -> dict:
        return {name: r.to_json() for name, r in self.results.items()}


MODES = {
    "toeplitz1": ("1", "2", "3", "4_1"),
    "toeplitz2": ("1", "2", "3", "4_2"),
    "aligned": ("1'", "2'", "3'"),
    "aligned1": ("1'", "2'", "3'", "4'"),
    "boundary": ("1", "2", "3", "4_2", "5"),
    "aligned_boundary": ("1'", "2'", "3'", "5'"),
}


def _masked(family: OperatorFamily, d: np.ndarray) -> np.ndarray:
    if family.edge.any():
        d = d.copy()
        d[:, family.edge] = 0
        d[family.edge, :] = 0
    return d


def _witness(family: OperatorFamily, d: np.ndarray) -> str:
    cols = np.linalg.norm(d, axis=0)
    return str(_label(family.basis.labels[int(np.argmax(cols))]))


def _label(b) -> str:
    return b.label() if hasattr(b, "label") else str(b)


class _Checker:
    def __init__(self, family: OperatorFamily, max_checks: int):
        if family.cat is None or family.semigroup is None:
            raise OperatorError("family is not attached to a TOTAL category")
        self.f = family
        self.cat = family.cat
        self.sg = family.semigroup
        self.max_checks = max_checks
        self.elems = self.sg.nonzero()

    def compare(self, res: RelationResult, lhs: np.ndarray, rhs: np.ndarray, what: Callable[[], str]) -> None:
        d = _masked(self.f, lhs - rhs)
        dev = opnorm(d)
        res.record(dev, self.f.tol, lambda: {"instance": what(), "witness_vector": _witness(self.f, d), "deviation": dev})

    def safe_join(self, res: RelationResult, projs, what) -> np.ndarray | None:
        try:
            return join(projs, self.f.basis.dim, self.f.tol)
        except OperatorError:
            res.record(np.inf, self.f.tol, lambda: {"instance": what(), "reason": "non-projection in join"})
            return None

    def r1(self) -> RelationResult:
        res = RelationResult("1")
        T = self.f.op
        for a in self.sg:
            for b in self.sg:
                if res.checked >= self.max_checks:
                    return res
                if a.witness.src == b.witness.dst:
                    rhs = T(self.sg.find(a.after(b)))
                else:
                    rhs = self.f.zero()
                self.compare(res, T(a) @ T(b), rhs, lambda: f"T{a.witness} T{b.witness}")
        return res

    def r2(self) -> RelationResult:
        res = RelationResult("2")
        T = self.f.op
        for a in self.sg:
            self.compare(res, T(self.sg.find(a.inverse())), T(a).conj().T, lambda: f"reverse of {a.witness}")
        return res

    def r3(self) -> RelationResult:
        res = RelationResult("3")
        T = self.f.op
        for a in self.elems:
            below = [b for b in self.elems if b.domain <= a.domain]
            families = [[b] for b in below if b.domain == a.domain]
            for b, c in combinations(below, 2):
                if len(families) > 40:
                    break
                if (b.domain | c.domain) == a.domain:
                    families.append([b, c])
            families.append(below)
            lhs = T(a).conj().T @ T(a)
            for fam in families:
                what = lambda: f"{a.witness} over {[str(x.witness) for x in fam]}"
                rhs = self.safe_join(res, [T(b).conj().T @ T(b) for b in fam], what)
                if rhs is not None:
                    self.compare(res, lhs, rhs, what)
        return res

    def r4(self, which: int) -> RelationResult:
        res = RelationResult(f"4_{which}")
        T = self.f.op
        for a in self.elems:
            if which == 2:
                trivial = a.is_identity()
            else:
                pts = [x for x in lambda_star(self.cat, a.witness.src) if in_domain(self.cat, a, x)]
                trivial = a.witness.src == a.witness.dst and all(phi_point(self.cat, a, x) == x for x in pts)
            if trivial:
                self.compare(res, T(a), T(a).conj().T @ T(a), lambda: f"{a.witness}")
        return res

    def t(self, m: str) -> np.ndarray:
        return self.f.translation(m)

    def r1p(self) -> RelationResult:
        res = RelationResult("1'")
        for m in self.cat.morphisms:
            self.compare(res, self.t(m).conj().T @ self.t(m), self.t(self.cat.src[m]), lambda: f"{m}")
        return res

    def r2p(self) -> RelationResult:
        res = RelationResult("2'")
        for a in self.cat.morphisms:
            for b in self.cat.with_range(self.cat.src[a]):
                ab = self.cat.compose(a, b)
                if ab is not None:
                    self.compare(res, self.t(a) @ self.t(b), self.t(ab), lambda: f"{a}*{b}")
        return res

    def r3p(self) -> RelationResult:
        res = RelationResult("3'")
        for v in self.cat.objects:
            ms = self.cat.with_range(v)
            for a in ms:
                for b in ms:
                    if res.checked >= self.max_checks:
                        return res
                    ext = minimal_common_extensions(self.cat, (a, b))
                    gammas = [g for c in ext.classes for g in c]
                    pa = self.t(a) @ self.t(a).conj().T
                    pb = self.t(b) @ self.t(b).conj().T
                    what = lambda: f"{a} v {b}"
                    rhs = self.safe_join(res, [self.t(g) @ self.t(g).conj().T for g in gammas], what)
                    if rhs is not None:
                        self.compare(res, pa @ pb, rhs, what)
        return res

    def r4p(self) -> RelationResult:
        res = RelationResult("4'")
        maps = {}
        for m in self.cat.morphisms:
            f = self.sg.translation(m)
            pts = [x for x in lambda_star(self.cat, f.witness.src) if in_domain(self.cat, f, x)]
            maps[m] = (f.witness.dst, frozenset((x, phi_point(self.cat, f, x)) for x in pts))
        for a, b in combinations(self.cat.morphisms, 2):
            if maps[a] == maps[b]:
                self.compare(res, self.t(a), self.t(b), lambda: f"{a} ~ {b}")
        return res

    def r5(self) -> RelationResult:
        res = RelationResult("5")
        T = self.f.op
        for v in self.cat.objects:
            dzero = build_dzero(self.cat, v)
            rep = {}
            for f in self.elems:
                if f.witness.src == v:
                    rep.setdefault(f.domain, f)
            for e in dzero.sets:
                below = [s for s in dzero.sets if s < e]
                covers = [[e]]
                for r in range(1, min(3, len(below)) + 1):
                    for fam in combinations(below, r):
                        if len(covers) > 60:
                            break
                        if _set_covers(dzero, fam, e) and not any(set(c) < set(fam) for c in covers):
                            covers.append(list(fam))
                if below and _set_covers(dzero, below, e):
                    covers.append(below)
                lhs = T(rep[e]).conj().T @ T(rep[e])
                for fam in covers:
                    what = lambda: f"{sorted(e)} covered by {[sorted(s) for s in fam]}"
                    rhs = self.safe_join(res, [T(rep[s]).conj().T @ T(rep[s]) for s in fam], what)
                    if rhs is not None:
                        self.compare(res, lhs, rhs, what)
        return res

    def r5p(self) -> RelationResult:
        res = RelationResult("5'")
        for v in self.cat.objects:
            for fam in minimal_exhaustive_sets(self.cat, v):
                what = lambda: f"{v} = join over {list(fam)}"
                rhs = self.safe_join(res, [self.t(a) @ self.t(a).conj().T for a in fam], what)
                if rhs is not None:
                    self.compare(res, self.t(v), rhs, what)
        return res


def _set_covers(dzero, family, e) -> bool:
    union = frozenset().union(*family)
    if not union <= e:
        return False
    return all(g & union for g in dzero.sets if g <= e)


def check_relations(family: OperatorFamily, mode: str | Sequence[str], max_checks: int = 200_000) -> RelationReport:
    """Evaluate each relation of ``mode`` on every instance the finite data offers."""
    names = MODES[mode] if isinstance(mode, str) else tuple(mode)
    chk = _Checker(family, max_checks)
    table = {
        "1": chk.r1,
        "2": chk.r2,
        "3": chk.r3,
        "4_1": lambda: chk.r4(1),
        "4_2": lambda: chk.r4(2),
        "1'": chk.r1p,
        "2'": chk.r2p,
        "3'": chk.r3p,
        "4'": chk.r4p,
        "5": chk.r5,
        "5'": chk.r5p,
    }
    unknown = [n for n in names if n not in table]
    if unknown:
        raise OperatorError(f"unknown relations {unknown}")
    return RelationReport({n: table[n]() for n in names})


# weak containment shadow ---------------------------------------------------------------


def generator_term(family: OperatorFamily, gamma: str, eps: str, nus: Sequence[str]) -> np.ndarray:
    """t_gamma t_eps^* t_nu1 t_nu1^* ... t_nuk t_nuk^*."""
    t = family.translation
    m = t(gamma) @ t(eps).conj().T
    for nu in nus:
        m = m @ t(nu) @ t(nu).conj().T
    return m


def matching_vector(cat: SmallCategory, x: FilterPoint, terms: Sequence[tuple[str, str, Sequence[str]]]) -> str | None:
    """A morphism eta whose vector state under the regular representation
    matches the state of the induced representation at the unit of ``x``
    on every term; candidates in the atom of ``x`` are tried first.
    """
    g = build_groupoid(cat, 2)
    ind = induced_rep(g, x)
    reg = regular_rep(cat)
    unit = ind.basis.position()[g.units[x]]
    target = [generator_term(ind, *t)[unit, unit] for t in terms]
    pos = reg.basis.position()
    mats = [generator_term(reg, *t) for t in terms]
    first = sorted(atom(cat, x))
    rest = [m for m in cat.with_range(x.vertex) if m not in first]
    for eta in first + rest:
        j = pos[eta]
        if all(abs(m[j, j] - want) <= TOL for m, want in zip(mats, target)):
            return eta
    return None


# numerics --------------------------------------------------------------------------------


def shift_spectral_bound(p: int) -> float:
    """Least eigenvalue of the real part of the cyclic shift on C^p."""
    if p < 3 or p % 2 == 0:
        raise OperatorError("the bound is stated for odd p > 1")
    s = np.roll(np.eye(p), 1, axis=0)
    return float(np.linalg.eigvalsh((s + s.T) / 2).min())


def separation_constant(p: int) -> float:
    return float(0.5 * (1 - np.cos(np.pi / p)))


@dataclass
class SeparationReport:
    p: int
    m: int
    trials: int
    seed: int
    c: float
    min_lhs: float
    passed: bool
    structured: dict
    limit_pattern: tuple[int, int, int]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "M": self.m,
            "trials": self.trials,
            "seed": self.seed,
            "c": float(self.c),
            "min_lhs": self.min_lhs,
            "passed": self.passed,
            "structured": self.structured,
            "limit_pattern": list(self.limit_pattern),
        }


def _twist_maps(p: int, m: int):
    from .fixtures import sep, sep_twist
    from .zigzag import make_zigzag

    cat = sep(p, m)
    maps = [zigzag_map(cat, make_zigzag(cat, sep_twist(k))) for k in (1, 2, 3)]
    return cat, maps


def _pairing_arrays(cat, maps):
    pos = {b: i for i, b in enumerate(cat.morphisms)}
    arrays = []
    for f in maps:
        dom = np.array([pos[a] for a, _ in f.pairs], dtype=int)
        img = np.array([pos[b] for _, b in f.pairs], dtype=int)
        arrays.append((dom, img))
    return pos, arrays


def separation_lhs(xi: np.ndarray, arrays) -> np.ndarray:
    """|<T1 ξ, ξ>| + |<T2 ξ, ξ>| + 1 - Re <T3 ξ, ξ> for unit rows ξ."""
    norms = np.linalg.norm(xi, axis=-1)
    if not np.allclose(norms, 1.0, atol=1e-12):
        raise OperatorError("separation vectors must have unit norm")
    vals = [np.sum(np.conj(xi[..., img]) * xi[..., dom], axis=-1) for dom, img in arrays]
    return np.abs(vals[0]) + np.abs(vals[1]) + 1 - vals[2].real


def limit_pattern(p: int, m: int) -> tuple[int, int, int]:
    """Pairings of the twists at the point generated by B, read off in the limit.

    The point lies over cofinite parts of B, so a twist pairs to 1 when it
    fixes B pointwise and to 0 when the part of B it moves grows with the
    number of rows (doubling m doubles it).
    """
    out = []
    small = _moved_in_b(p, m)
    large = _moved_in_b(p, 2 * m)
    for a, b in zip(small, large):
        if a == 0 and b == 0:
            out.append(1)
        elif b == 2 * a:
            out.append(0)
        else:
            raise OperatorError("moved part of B does not scale with the rows")
    return tuple(out)


def _moved_in_b(p: int, m: int) -> list[int]:
    cat, maps = _twist_maps(p, m)
    from .zigzag import make_zigzag

    b_set = zigzag_map(cat, make_zigzag(cat, [("beta4", "alpha4")])).domain
    return [sum(1 for a in b_set if f(a) != a) for f in maps]


def separation_test(p: int, m: int, trials: int, seed: int, block: int = 1000) -> SeparationReport:
    """Random unit vectors against the separation inequality on the wrapped model."""
    if p < 3 or p % 2 == 0:
        raise OperatorError("p must be odd and greater than 1")
    cat, maps = _twist_maps(p, m)
    pos, arrays = _pairing_arrays(cat, maps)
    dim = len(pos)
    c = separation_constant(p)
    best = np.inf
    seqs = np.random.SeedSequence(seed).spawn((trials + block - 1) // block)
    done = 0
    for ss in seqs:
        n = min(block, trials - done)
        rng = np.random.default_rng(ss)
        xi = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
        xi /= np.linalg.norm(xi, axis=1, keepdims=True)
        best = min(best, float(separation_lhs(xi, arrays).min()))
        done += n
    structured = {}
    for name, label in (("basis_in_A_minus_B", "gamma0_0"), ("off_A", "v")):
        e = np.zeros((1, dim), dtype=complex)
        e[0, pos[label]] = 1.0
        structured[name] = float(separation_lhs(e, arrays)[0])
    return SeparationReport(p, m, trials, seed, c, best, bool(best >= c - TOL), structured, limit_pattern(p, m))


# Wiener-Hopf ------------------------------------------------------------------------------


def wiener_hopf(model: GroupModel, t, basis_bound: int) -> tuple[np.ndarray, list]:
    """Compression of left translation by ``t`` to the submonoid elements of
    size at most ``basis_bound``: e_a goes to e_{ta} when ta is in the submonoid.
    """
    t = model.decode(t) if isinstance(t, str) else t
    basis = model.enumerate_sub(basis_bound)
    pos = {b: i for i, b in enumerate(basis)}
    moves = []
    for a in basis:
        ta = model.mul(t, a)
        if model.in_sub(ta) and ta in pos:
            moves.append((pos[a], pos[ta]))
    return _perm_matrix(len(basis), moves).real, basis


def in_double_coset(model: GroupModel, t, bound: int) -> bool:
    """Whether t = mu nu^-1 with mu, nu of size at most ``bound``."""
    t = model.decode(t) if isinstance(t, str) else t
    return any(model.in_sub(model.mul(t, nu)) for nu in model.enumerate_sub(bound))


def model_zigzag_value(model: GroupModel, pairs, x):
    """Apply the zigzag ((a1, b1), ..., (an, bn)) of group elements to x."""
    for a, b in reversed(pairs):
        y = model.mul(b, x)
        x = model.mul(model.inv(a), y)
        if not model.in_sub(x):
            return None
    return x


def model_zigzag_matrix(model: GroupModel, pairs, basis) -> tuple[np.ndarray, set]:
    pos = {b: i for i, b in enumerate(basis)}
    moves, dom = [], set()
    for a in basis:
        val = model_zigzag_value(model, pairs, a)
        if val is not None:
            dom.add(a)
            if val in pos:
                moves.append((pos[a], pos[val]))
    return _perm_matrix(len(basis), moves).real, dom


@dataclass
class Certificate:
    t: object
    zigzags: list
    deviation: float
    covered: int

    def to_json(self, model: GroupModel) -> dict:
        return {
            "t": model.encode(self.t),
            "zigzags": [[[model.encode(a), model.encode(b)] for a, b in z] for z in self.zigzags],
            "deviation": self.deviation,
            "covered": self.covered,
        }


def wh_membership(model: GroupModel, t, search_bound: int, basis_bound: int | None = None) -> Certificate | None:
    """Search for zigzags whose maps equal t on their domains and whose
    domains together give the set of a with ta in the submonoid.

    Candidates are single pairs (g, d) with g^-1 d = t and double pairs
    (1, mu), (nu, 1) with mu nu^-1 = t, entries of size at most
    ``search_bound``.  A greedy cover is checked on the truncated basis and
    the join of the candidate operators is compared with the compression
    of W_t.
    """
    t = model.decode(t) if isinstance(t, str) else t
    basis_bound = search_bound if basis_bound is None else basis_bound
    basis = model.enumerate_sub(basis_bound)
    target = {a for a in basis if model.in_sub(model.mul(t, a))}
    one = model.identity
    cands = []
    for g in model.enumerate_sub(search_bound):
        d = model.mul(g, t)
        if model.in_sub(d) and model.size(d) <= search_bound:
            cands.append(((g, d),))
        mu = model.mul(t, g)
        if model.in_sub(mu) and model.size(mu) <= search_bound:
            cands.append(((one, mu), (g, one)))
    chosen, covered = [], set()
    doms = {}
    for z in cands:
        action = {a: model_zigzag_value(model, z, a) for a in basis}
        dom = {a for a, val in action.items() if val is not None}
        if any(action[a] != model.mul(t, a) for a in dom):
            continue
        doms[z] = dom
    while covered != target:
        best = max(doms, key=lambda z: len(doms[z] - covered), default=None)
        if best is None or not doms[best] - covered:
            return None
        chosen.append(best)
        covered |= doms[best]
    if covered - target:
        return None
    wt, _ = wiener_hopf(model, t, basis_bound)
    joined = np.zeros_like(wt)
    filled = np.zeros(len(basis), dtype=bool)
    pos = {b: i for i, b in enumerate(basis)}
    for z in chosen:
        wz, dom = model_zigzag_matrix(model, z, basis)
        for a in dom:
            j = pos[a]
            if not filled[j]:
                joined[:, j] = wz[:, j]
                filled[j] = True
    dev = opnorm(wt - joined)
    return Certificate(t, chosen, dev, len(covered))


def wh_factorization_deviation(model: GroupModel, mu, nu, basis_bound: int) -> float:
    """Operator-norm gap between W_t and W_mu W_nu^* for t = mu nu^-1.

    Columns where an intermediate or final element leaves the truncation
    are excluded.
    """
    mu = model.decode(mu) if isinstance(mu, str) else mu
    nu = model.decode(nu) if isinstance(nu, str) else nu
    t = model.mul(mu, model.inv(nu))
    wt, basis = wiener_hopf(model, t, basis_bound)
    pos = {b: i for i, b in enumerate(basis)}
    prod = np.zeros_like(wt)
    keep = np.ones(len(basis), dtype=bool)
    for b in basis:
        j = pos[b]
        tb = model.mul(t, b)
        if model.in_sub(tb) and tb not in pos:
            keep[j] = False
        mid = model.mul(model.inv(nu), b)
        if model.in_sub(mid):
            out = model.mul(mu, mid)
            if out in pos:
                prod[pos[out], j] = 1.0
            else:
                keep[j] = False
    return opnorm((wt - prod)[:, keep])
