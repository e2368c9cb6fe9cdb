import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcsc.fixtures import TOTAL_FIXTURES, fixture
from lcsc.setring import build_dzero, ring_of
from lcsc.spectrum import (
    SpectrumError,
    all_points,
    boundary,
    boundary_by_closure,
    boundary_by_criterion,
    count_ultrafilters,
    directed_hereditary_sets,
    fixed_point,
    hereditary_of,
    in_spectrum,
    is_maximal_by_criterion,
    is_maximal_by_order,
    lambda_star,
    maximal_points,
    point_of,
    point_of_hereditary,
    satisfies_boundary_criterion,
    satisfies_boundary_criterion_brute,
    ultrafilter_of,
)
from oracles import maximal_points as oracle_maximal
from oracles import signature_atoms, spectrum_points, zigzag_sets
from strategies import path_categories


def fs(*xs):
    return frozenset(xs)


def ultrafilter_count(cat, v):
    """Brute force when the ring is small; otherwise one ultrafilter per
    atom of the independently computed membership partition."""
    ring = ring_of(cat, v)
    if ring.size() <= 1 << 12:
        return count_ultrafilters(ring)
    return len(signature_atoms(zigzag_sets(cat, v)))


def small_vertices(cat):
    return [v for v in cat.objects if len(zigzag_sets(cat, v)) <= 16]


def test_par_points():
    par = fixture("PAR")
    u_all = fs("u", "f", "g")
    pts = {p.sets for p in lambda_star(par, "u")}
    assert pts == {fs(u_all), fs(fs("f"), u_all), fs(fs("g"), u_all)}


def test_group2_single_point():
    assert len(all_points(fixture("GROUP(2)"))) == 1


def test_kg2_u_has_five_points():
    # the filter at {αγ1, αγ2} is covered by the disjoint pair {αγ1}, {αγ2}
    kg = fixture("KG(2)")
    assert len(lambda_star(kg, "u")) == 5
    assert len(spectrum_points(kg, "u")) == 5


def test_ultrafilter_of_par_point():
    par = fixture("PAR")
    x = fixed_point(par, "f")
    uf = ultrafilter_of(par, x)
    members = {e for e in ring_of(par, "u").elements() if e in uf}
    assert members == {e for e in ring_of(par, "u").elements() if "f" in e}


def test_fixed_points():
    par = fixture("PAR")
    assert fixed_point(par, "f").sets == {fs("f"), fs("u", "f", "g")}
    kg = fixture("KG(2)")
    x = fixed_point(kg, "alpha.gamma1")
    assert len(x.sets) == 5
    assert fs("alpha.gamma1") in x


def test_hereditary_examples():
    par = fixture("PAR")
    assert hereditary_of(par, fixed_point(par, "f")) == {"u", "f"}
    assert point_of_hereditary(par, "u", {"u"}).sets == {fs("u", "f", "g")}
    with pytest.raises(SpectrumError):
        point_of_hereditary(par, "u", {"u", "f", "g"})


def test_maximal_and_boundary_par():
    par = fixture("PAR")
    expect = {fixed_point(par, "f"), fixed_point(par, "g")}
    assert set(maximal_points(par, "u")) == expect
    assert set(boundary_by_closure(par, "u")) == expect
    assert set(boundary_by_criterion(par, "u")) == expect


def test_kg2_boundary_is_fixed_points():
    kg = fixture("KG(2)")
    expect = {fixed_point(kg, "alpha.gamma1"), fixed_point(kg, "alpha.gamma2")}
    assert set(boundary_by_closure(kg, "u")) == expect


def test_lambda_star_refuses_bounded():
    with pytest.raises(Exception):
        lambda_star(fixture("NAT(3)"), "0")


@pytest.mark.parametrize("name", TOTAL_FIXTURES)
def test_spectrum_matches_oracle(name):
    cat = fixture(name)
    for v in small_vertices(cat):
        mine = {p.sets for p in lambda_star(cat, v)}
        oracle = set(spectrum_points(cat, v))
        assert mine == oracle
        assert {p.sets for p in maximal_points(cat, v)} == set(oracle_maximal(list(oracle)))


@pytest.mark.parametrize("name", TOTAL_FIXTURES)
def test_bijection_and_boundary(name):
    cat = fixture(name)
    for v in cat.objects:
        pts = lambda_star(cat, v)
        assert len(pts) == ultrafilter_count(cat, v)
        for p in pts:
            assert point_of(cat, ultrafilter_of(cat, p)) == p
        assert set(boundary_by_closure(cat, v)) == set(boundary_by_criterion(cat, v))


@pytest.mark.parametrize("name", ["PAR", "KG(2)", "KG(3)"])
def test_hereditary_correspondence(name):
    cat = fixture(name)
    for v in cat.objects:
        hs = directed_hereditary_sets(cat, v)
        pts = lambda_star(cat, v)
        assert {point_of_hereditary(cat, v, h) for h in hs} <= set(pts)
        for p in pts:
            assert point_of_hereditary(cat, v, hereditary_of(cat, p)) == p


@given(path_categories(), st.data())
def test_random_paths_spectrum(cat, data):
    v = data.draw(st.sampled_from(cat.objects))
    d = build_dzero(cat, v)
    pts = lambda_star(cat, v)
    if len(d) <= 12:
        assert {p.sets for p in pts} == set(spectrum_points(cat, v))
    assert len(pts) == count_ultrafilters(ring_of(cat, v))
    for p in pts:
        assert in_spectrum(d, p)
        assert is_maximal_by_order(pts, p) == is_maximal_by_criterion(d, p)
        assert satisfies_boundary_criterion(d, p) == satisfies_boundary_criterion_brute(d, p)
        assert point_of(cat, ultrafilter_of(cat, p)) == p
    assert set(boundary_by_closure(cat, v)) == set(boundary_by_criterion(cat, v))


@given(path_categories())
def test_hereditary_order_preserving(cat):
    for v in cat.objects:
        pts = lambda_star(cat, v)
        for p in pts:
            for q in pts:
                if p.sets <= q.sets:
                    assert hereditary_of(cat, p) <= hereditary_of(cat, q)


def test_boundary_overall_par():
    assert len(boundary(fixture("PAR"))) == 3
