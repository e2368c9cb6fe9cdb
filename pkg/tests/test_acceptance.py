"""The twelve acceptance criteria; each prints one PASS/FAIL line."""

import math
import random
import time
from itertools import product

import pytest

from acceptance_log import LINES
from lcsc.alignment import minimal_common_extensions
from lcsc.amalgam import amalgam_cap, amalgam_of, amalgamate, brute_cap
from lcsc.fixtures import TOTAL_FIXTURES, fixture, sep_twist
from lcsc.groupmodels import LatticeModel, fg_model, nat, nsq
from lcsc.groupoid import build_groupoid, germ_equal, in_domain
from lcsc.operators import (
    check_relations,
    boundary_family,
    induced_rep,
    regular_rep,
    separation_test,
    shift_spectral_bound,
    wh_factorization_deviation,
    wh_membership,
)
from lcsc.ore import FractionError, fraction_equiv, fraction_groupoid, fraction_product, iota, witnesses
from lcsc.setring import ring_of
from lcsc.spectrum import (
    boundary_by_closure,
    boundary_by_criterion,
    count_ultrafilters,
    directed_hereditary_sets,
    hereditary_of,
    lambda_star,
    point_of,
    point_of_hereditary,
    ultrafilter_of,
)
from lcsc.zigzag import semigroup_of
from oracles import signature_atoms, zigzag_apply, zigzag_sets


def report(n, title, ok, detail=""):
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    LINES[n] = line
    print(line)
    assert ok, line


def test_01_group_dichotomy():
    start = time.perf_counter()
    g2 = fixture("GROUP(2)")
    x = lambda_star(g2, "e")[0]
    one, two = build_groupoid(g2, 1), build_groupoid(g2, 2)
    dims = (induced_rep(one, x).span_dimension(), induced_rep(two, x).span_dimension())
    elapsed = time.perf_counter() - start
    ok = (len(one), len(two)) == (1, 2) and dims == (1, 2) and elapsed < 1
    report(1, "group dichotomy on Z/2", ok, f"|G1|={len(one)} |G2|={len(two)} spans={dims} {elapsed:.2f}s")


def test_02_relations_coincide_without_inverses():
    checked = mismatches = 0
    for name in ("PAR", "KG(2)"):
        cat = fixture(name)
        sg = semigroup_of(cat)
        for v in cat.objects:
            elems = [f for f in sg.nonzero() if f.witness.src == v]
            for x in lambda_star(cat, v):
                here = [f for f in elems if in_domain(cat, f, x)]
                for f, g in product(here, repeat=2):
                    checked += 1
                    mismatches += germ_equal(cat, 1, f, g, x) != germ_equal(cat, 2, f, g, x)
    report(2, "~1 and ~2 agree on PAR and KG(2)", mismatches == 0, f"{checked} triples, {mismatches} mismatches")


def _ultrafilter_count(cat, v):
    ring = ring_of(cat, v)
    if ring.size() <= 1 << 12:
        return count_ultrafilters(ring)
    # one ultrafilter per atom of the independently computed membership partition
    return len(signature_atoms(zigzag_sets(cat, v)))


def test_03_spectrum_bijection():
    bad = []
    for name in TOTAL_FIXTURES:
        cat = fixture(name)
        for v in cat.objects:
            pts = lambda_star(cat, v)
            if len(pts) != _ultrafilter_count(cat, v):
                bad.append(f"{name}@{v} count")
            if any(point_of(cat, ultrafilter_of(cat, p)) != p for p in pts):
                bad.append(f"{name}@{v} round trip")
    report(3, "spectrum points biject with ultrafilters", not bad, ", ".join(bad) or f"{len(TOTAL_FIXTURES)} fixtures")


def test_04_hereditary_correspondence():
    bad = []
    for name in ("PAR", "KG(2)"):
        cat = fixture(name)
        for v in cat.objects:
            hs = directed_hereditary_sets(cat, v)
            pts = lambda_star(cat, v)
            to_point = {h: point_of_hereditary(cat, v, h) for h in hs}
            if set(to_point.values()) != set(pts) or len(set(to_point.values())) != len(hs):
                bad.append(f"{name}@{v} not a bijection")
            if any(hereditary_of(cat, p) not in to_point or to_point[hereditary_of(cat, p)] != p for p in pts):
                bad.append(f"{name}@{v} not inverse")
            for h, k in product(hs, repeat=2):
                if (h <= k) != (to_point[h].sets <= to_point[k].sets):
                    bad.append(f"{name}@{v} order")
                    break
    report(4, "hereditary sets correspond to points", not bad, ", ".join(bad) or "PAR, KG(2)")


def test_05_boundary_consistency():
    bad = []
    for name in TOTAL_FIXTURES:
        cat = fixture(name)
        for v in cat.objects:
            if set(boundary_by_closure(cat, v)) != set(boundary_by_criterion(cat, v)):
                bad.append(f"{name}@{v}")
    report(5, "boundary by closure equals boundary by criterion", not bad, ", ".join(bad) or "all TOTAL fixtures")


def test_06_relation_suites():
    names = ["1", "2", "3", "4_2", "1'", "2'", "3'"]
    bad = []
    for fx in ("PAR", "KG(2)"):
        cat = fixture(fx)
        rep = check_relations(regular_rep(cat), names + ["5'"])
        for n in names:
            r = rep.results[n]
            if not r.passed or r.max_deviation != 0:
                bad.append(f"{fx} regular {n}")
        r5 = rep.results["5'"]
        if r5.passed or (r5.counterexample or {}).get("witness_vector") != "u":
            bad.append(f"{fx} regular 5' should fail at e_u")
        bd = check_relations(boundary_family(cat), ["5'", "5"])
        if not bd.all_passed:
            bad.append(f"{fx} boundary 5/5'")
    report(6, "relation suites on regular and boundary families", not bad, ", ".join(bad) or "PAR, KG(2)")


def test_07_shift_bound():
    start = time.perf_counter()
    errs = {p: abs(shift_spectral_bound(p) + math.cos(math.pi / p)) for p in (3, 5, 7, 9)}
    elapsed = time.perf_counter() - start
    ok = max(errs.values()) <= 1e-9 and elapsed < 1
    report(7, "shift bound equals -cos(pi/p)", ok, f"max error {max(errs.values()):.1e}")


def _pairings(cat, label):
    out = []
    for k in (1, 2, 3):
        y = zigzag_apply(cat, sep_twist(k), label)
        out.append(1 if y == label else 0)
    return out


def test_08_separation():
    start = time.perf_counter()
    rep = separation_test(3, 4, 10_000, 42)
    elapsed = time.perf_counter() - start
    cat = fixture("SEP(3,4)")
    # independent pairings <T_k e, e> for a basis vector e
    expect = {}
    for key, label in (("basis_in_A_minus_B", "gamma0_0"), ("off_A", "v")):
        a, b, c = _pairings(cat, label)
        expect[key] = float(a + b + 1 - c)
    ok = (
        rep.min_lhs >= 0.25 - 1e-9
        and abs(rep.c - 0.25) < 1e-12
        and rep.structured == expect
        and tuple(rep.limit_pattern) == (0, 0, 1)
        and elapsed < 30
    )
    detail = f"min LHS {rep.min_lhs:.4f}, structured {rep.structured}, limit {tuple(rep.limit_pattern)}, {elapsed:.1f}s"
    report(8, "separation inequality on SEP(3,4)", ok, detail)


def _diff(p):
    a, b = (tuple(int(c) for c in x.split(",")) for x in p)
    return tuple(y - x for x, y in zip(a, b))


def test_09_ore_groupoid():
    bad = []
    cases = 0
    for cat, expected in ((nat(8), 17), (nsq(3), 49)):
        g = fraction_groupoid(cat)
        by_diff = {}
        for i, cls in enumerate(g.classes):
            ds = {_diff(p) for p in cls}
            if len(ds) != 1:
                bad.append(f"{cat.name} class {i} mixes differences")
            by_diff.setdefault(next(iter(ds)), set()).add(i)
        if len(g) != expected or any(len(s) != 1 for s in by_diff.values()):
            bad.append(f"{cat.name} classes")
        images = [g.class_of(iota(cat, a)) for a in cat.morphisms]
        if len(set(images)) != len(images):
            bad.append(f"{cat.name} iota")
    for cat, top in ((nat(16), 4), (nsq(6), 1)):
        elems = [m for m in cat.morphisms if max(int(c) for c in m.split(",")) <= top]
        pairs = [(a, b) for a in elems for b in elems]
        for p, q in product(pairs, repeat=2):
            found = witnesses(cat, p[1], q[0], limit=3)
            results = [(cat.compose(x, p[0]), cat.compose(y, q[1])) for x, y in found]
            results = [r for r in results if None not in r]
            if any(not fraction_equiv(cat, results[0], r) for r in results[1:]):
                bad.append(f"{cat.name} witness choice at {p},{q}")
        for p, q, r in product(pairs, repeat=3):
            try:
                left = fraction_product(cat, fraction_product(cat, p, q, False), r, False)
                right = fraction_product(cat, p, fraction_product(cat, q, r, False), False)
            except FractionError:
                continue
            cases += 1
            if not fraction_equiv(cat, left, right):
                bad.append(f"{cat.name} associativity at {p},{q},{r}")
                break
    ok = not bad and 0 < cases <= 100_000
    report(9, "fraction groupoid of N and N^2", ok, ", ".join(bad[:3]) or f"{cases} associativity triples")


def _random_word(am, rng, length):
    entries = [(i, m) for i, c in enumerate(am.components) for m in c.morphisms]
    word = [rng.choice(entries)]
    while len(word) < length:
        need = am.classes[am.src(word[-1])]
        word.append(rng.choice([e for e in entries if am.classes[am.dst(e)] == need]))
    return word


def test_10_amalgam():
    bad = []
    kg = fixture("KG(2)")
    kg_monoid = amalgamate([kg], [[f"0:{v}" for v in kg.objects]], bound=3)
    sep = fixture("SEP(3,1)")
    sep_monoid = amalgamate([sep], [[f"0:{v}" for v in sep.objects]], bound=2)
    rng = random.Random(20240611)
    ams = [amalgam_of(kg_monoid), amalgam_of(sep_monoid)]
    for k in range(10_000):
        am = ams[k % 2]
        w = _random_word(am, rng, rng.randint(1, 8))
        nf = am.normal_form(w)
        if am.normal_form(nf) != nf or am.rewrite(w, rng) != nf or not am.is_normal(nf):
            bad.append(f"normal form of {w}")
            break
    pairs = 0
    for a in kg_monoid.morphisms:
        for b in kg_monoid.morphisms:
            pairs += 1
            if amalgam_cap(kg_monoid, a, b) != brute_cap(kg_monoid, a, b):
                bad.append(f"KG cap {a} | {b}")
    sep_as_amalgam = amalgamate([sep], bound=2)
    for a in sep_as_amalgam.morphisms:
        for b in sep_as_amalgam.morphisms:
            pairs += 1
            if amalgam_cap(sep_as_amalgam, a, b) != brute_cap(sep_as_amalgam, a, b):
                bad.append(f"SEP cap {a} | {b}")
    # seeded word set closed under prefixes on the glued SEP monoid
    longs = [m for m in sep_monoid.morphisms if len(m.split()) == 2]
    words = set(rng.sample(longs, 10))
    words |= {w.split()[0] for w in words}
    words |= set(rng.sample([m for m in sep_monoid.morphisms if len(m.split()) == 1], 5))
    for a in sorted(words):
        for b in sorted(words):
            pairs += 1
            if amalgam_cap(sep_monoid, a, b) != brute_cap(sep_monoid, a, b):
                bad.append(f"SEP monoid cap {a} | {b}")
    report(10, "amalgam normal forms and cap criterion", not bad, ", ".join(bad[:3]) or f"10000 words, {pairs} cap pairs")


def test_11_wiener_hopf():
    start = time.perf_counter()
    bad = []
    z2 = LatticeModel(2)
    rng = random.Random(11)
    ts = set()
    while len(ts) < 10:
        mu = (rng.randint(0, 10), rng.randint(0, 10))
        nu = (rng.randint(0, 10), rng.randint(0, 10))
        ts.add(z2.mul(mu, z2.inv(nu)))
    for t in sorted(ts):
        cert = wh_membership(z2, t, 20)
        if cert is None or cert.deviation != 0 or not cert.zigzags:
            bad.append(f"Z^2 t={t}")
    fg = fg_model(2)
    cert = wh_membership(fg, "a.B", 4, 4)
    if cert is None or cert.deviation != 0:
        bad.append("FG certificate for a.B")
    elif [tuple(fg.encode(x) for x in pair) for pair in cert.zigzags[0]] != [("1", "a"), ("b", "1")]:
        bad.append(f"FG certificate shape {cert.zigzags[0]}")
    if wh_factorization_deviation(fg, "a", "b", 4) != 0:
        bad.append("FG W_t = W_mu W_nu*")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    report(11, "Wiener-Hopf membership on Z^2 and FG", ok, ", ".join(bad) or f"{len(ts)} t values, {elapsed:.1f}s")


@pytest.mark.parametrize("n", [2, 4, 8])
def test_12_alignment_trend(n):
    count = len(minimal_common_extensions(fixture(f"KG({n})"), ("alpha", "beta")))
    prev = LINES.get(12, "")
    detail = (prev.split("[", 1)[1].rstrip("]") + ", " if "[" in prev else "") + f"KG({n}): {count}"
    failed = "FAIL" in prev or count != n
    report(12, "minimal extensions of alpha, beta grow with n", not failed, detail)
