import pytest
from hypothesis import given

from lcsc.fixtures import TOTAL_FIXTURES, fixture
from lcsc.zigzag import (
    ZigzagError,
    division,
    flat_zigzag,
    make_zigzag,
    semigroup_of,
    translation,
    zigzag_concat,
    zigzag_map,
    zigzag_reverse,
    zigzag_set,
)
from oracles import naive_maps, zigzag_sets
from strategies import groups, path_categories

# sizes from the brute-force closure in tests/oracles.py
SEMIGROUP_SIZES = {"GROUP(2)": 2, "GROUP(3)": 3, "PAR": 11, "KG(2)": 68, "KG(3)": 119}


@pytest.mark.parametrize("name", sorted(SEMIGROUP_SIZES))
def test_semigroup_size_frozen(name):
    cat = fixture(name)
    assert len(semigroup_of(cat)) == SEMIGROUP_SIZES[name]
    assert len(naive_maps(cat)) == SEMIGROUP_SIZES[name]


@pytest.mark.parametrize("name", TOTAL_FIXTURES)
def test_semigroup_matches_oracle(name):
    cat = fixture(name)
    assert {e.pairs for e in semigroup_of(cat)} == {tuple(sorted(f)) for f in naive_maps(cat)}


def test_kg2_concat_is_composition():
    kg = fixture("KG(2)")
    ab, ba = make_zigzag(kg, [("alpha", "beta")]), make_zigzag(kg, [("beta", "alpha")])
    # the right factor acts first
    assert zigzag_map(kg, zigzag_concat(ab, ba)).mapping == {"gamma1": "gamma1", "gamma2": "gamma2"}
    assert zigzag_map(kg, zigzag_concat(ba, ab)).mapping == {"delta1": "delta1", "delta2": "delta2"}
    assert zigzag_reverse(ba) == ab


def test_kg2_contains_gamma_to_delta():
    kg = fixture("KG(2)")
    f = zigzag_map(kg, make_zigzag(kg, [("beta", "alpha")]))
    assert f("gamma1") == "delta1"
    assert f("gamma2") == "delta2"
    assert f in semigroup_of(kg)


def test_group2_elements():
    g2 = fixture("GROUP(2)")
    sg = semigroup_of(g2)
    assert len(sg) == 2
    assert any(e.is_identity() for e in sg)


def test_par_contains_zero_and_shifts():
    par = fixture("PAR")
    sg = semigroup_of(par)
    assert sg.zero is not None
    for a in ("f", "g"):
        assert sg.translation(a).mapping == {"v": a}
        assert sg.division(a).mapping == {a: "v"}
    cross = zigzag_map(par, make_zigzag(par, [("f", "g")]))
    assert cross.is_zero


def test_make_zigzag_errors():
    par = fixture("PAR")
    with pytest.raises(ZigzagError):
        make_zigzag(par, [])
    with pytest.raises(ZigzagError):
        make_zigzag(par, [("f", "v")])
    with pytest.raises(ZigzagError):
        flat_zigzag(par, ["f"])


def test_zigzag_sets_par():
    par = fixture("PAR")
    assert zigzag_sets(par, "u") == {frozenset({"u", "f", "g"}), frozenset({"f"}), frozenset({"g"})}
    assert zigzag_set(par, translation(par, "u")) == {"u", "f", "g"}


@given(path_categories())
def test_semigroup_closure_matches_oracle(cat):
    assert {e.pairs for e in semigroup_of(cat)} == {tuple(sorted(f)) for f in naive_maps(cat)}


@given(path_categories())
def test_inverse_semigroup_laws(cat):
    sg = semigroup_of(cat)
    for f in sg:
        if not f.pairs:
            continue
        inv = f.inverse()
        assert inv in sg
        assert f.after(inv).after(f).pairs == f.pairs
        assert zigzag_map(cat, zigzag_reverse(f.witness)).pairs == inv.pairs
        assert zigzag_map(cat, f.witness).pairs == f.pairs


@given(groups)
def test_group_translation_division_inverse(cat):
    for a in cat.morphisms:
        t, d = zigzag_map(cat, translation(cat, a)), zigzag_map(cat, division(cat, a))
        assert t.after(d).is_identity()
        assert d.after(t).is_identity()
