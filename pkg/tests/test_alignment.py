import pytest
from hypothesis import given

from lcsc.alignment import (
    common_extensions,
    covers_filter,
    covers_set,
    find_uncovered,
    is_exhaustive,
    is_finitely_aligned,
    minimal_common_extensions,
    minimal_exhaustive_sets,
)
from lcsc.category import cap, cone
from lcsc.fixtures import fixture
from oracles import min_extensions
from strategies import path_categories


def fs(*xs):
    return frozenset(xs)


def test_common_extensions():
    kg = fixture("KG(2)")
    assert common_extensions(kg, ["alpha", "beta"]) == {"alpha.gamma1", "alpha.gamma2"}
    assert common_extensions(fixture("PAR"), ["f", "g"]) == set()


def test_minimal_extensions():
    kg = fixture("KG(2)")
    rep = minimal_common_extensions(kg, ["alpha", "beta"])
    assert len(rep) == 2
    assert set(rep.minimal) == {"alpha.gamma1", "alpha.gamma2"}
    g2 = minimal_common_extensions(fixture("GROUP(2)"), ["e", "g"])
    assert len(g2) == 1
    assert g2.classes[0] == {"e", "g"}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_kg_alignment_count(n):
    kg = fixture(f"KG({n})")
    rep = is_finitely_aligned(kg)
    assert rep.aligned
    assert rep.pair_counts[("alpha", "beta")] == n


def test_covers():
    par = fixture("PAR")
    u_all = fs("u", "f", "g")
    assert covers_set(par, "u", [fs("f"), fs("g")], u_all)
    assert not covers_set(par, "u", [fs("f")], u_all)
    assert find_uncovered(par, "u", [fs("f")], u_all) == fs("g")
    assert not covers_filter(par, [fs("f"), fs("g")], [u_all])


def test_exhaustive():
    par = fixture("PAR")
    assert is_exhaustive(par, "u", ["f", "g"])
    assert not is_exhaustive(par, "u", ["f"])
    assert ("u",) in minimal_exhaustive_sets(par, "u")
    assert ("f", "g") in minimal_exhaustive_sets(par, "u")


@given(path_categories())
def test_minimal_extensions_match_oracle(cat):
    for v in cat.objects:
        ms = cat.with_range(v)
        for a in ms:
            for b in ms:
                rep = minimal_common_extensions(cat, [a, b])
                assert {cone(cat, m) for m in rep.minimal} == min_extensions(cat, a, b)
                # every common extension lies below a minimal one
                for e in rep.common:
                    assert any(e in cone(cat, m) for m in rep.minimal)
                assert bool(rep.common) == cap(cat, a, b)
