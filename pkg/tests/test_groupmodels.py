import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcsc.category import BOUNDED, validate
from lcsc.fixtures import fixture
from lcsc.groupmodels import LatticeModel, ModelError, fg_model, free_monoid_model, nat


def test_lattice_codec():
    m = LatticeModel(2)
    assert m.encode((1, -1)) == "1,-1"
    assert m.decode("1,-1") == (1, -1)
    with pytest.raises(ModelError):
        m.decode("1")
    with pytest.raises(ModelError):
        m.decode("x,y")
    with pytest.raises(ModelError):
        LatticeModel(0)


@pytest.mark.parametrize("name", ["NAT(5)", "NSQ(2)", "FREE2(2)", "FG(1,2)"])
def test_truncations_validate(name):
    cat = fixture(name)
    assert cat.mode == BOUNDED
    assert validate(cat).ok


def test_truncation_sizes():
    assert len(fixture("NAT(5)").morphisms) == 6
    assert len(fixture("NSQ(2)").morphisms) == 9
    assert len(fixture("FREE2(2)").morphisms) == 7


def test_nat_composition_respects_bound():
    n = nat(4)
    assert n.compose("1", "2") == "3"
    assert n.compose("3", "2") is None
    assert n.divide("1", "3") == "2"


def test_fg_membership():
    fg = fg_model(2)
    for w in ("a", "b", "c1", "B.a.c2", "a.B.a.c1"):
        assert fg.in_sub(fg.decode(w)), w
    for w in ("B", "a.B", "B.c1", "A"):
        assert not fg.in_sub(fg.decode(w)), w
    # b followed by b^-1 a c1 cancels to a c1
    assert fg.encode(fg.mul(fg.decode("b"), fg.decode("B.a.c1"))) == "a.c1"


def test_free_monoid_disjointness():
    fm = free_monoid_model()
    assert fm.right_disjoint(fm.decode("a"), fm.decode("b"))
    assert not fm.right_disjoint(fm.decode("a"), fm.decode("b.a"))


vec = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@given(vec, vec)
def test_lattice_group_laws(x, y):
    m = LatticeModel(2)
    assert m.mul(m.inv(x), x) == m.identity
    assert m.mul(x, y) == m.mul(y, x)
    assert m.decode(m.encode(x)) == x


words = st.lists(st.sampled_from(["a", "A", "b", "B", "c1", "C1"]), max_size=6).map(lambda w: ".".join(w) or "")


@given(words, words)
def test_free_group_laws(u, v):
    fg = fg_model(1)
    x, y = fg.decode(u), fg.decode(v)
    assert fg.mul(fg.inv(x), x) == fg.identity
    assert fg.mul(fg.mul(x, y), fg.inv(y)) == x
    assert fg.decode(fg.encode(x)) == x
