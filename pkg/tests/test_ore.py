from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcsc.fixtures import fixture
from lcsc.groupmodels import nat, nsq
from lcsc.ore import (
    COUNTEREXAMPLE,
    TRUE,
    FractionError,
    extend_hom,
    fraction_equiv,
    fraction_groupoid,
    fraction_inverse,
    fraction_product,
    iota,
    is_right_reversible,
    reduce_pair,
)


def diff(p):
    a, b = (tuple(int(c) for c in x.split(",")) for x in p)
    return tuple(y - x for x, y in zip(a, b))


def test_nat_examples():
    n = nat(8)
    v = fraction_equiv(n, ("2", "5"), ("1", "4"))
    assert v and v.witness == ("0", "1")
    assert not fraction_equiv(n, ("2", "5"), ("1", "3"))


def test_products():
    n = nat(8)
    assert fraction_product(n, ("0", "2"), ("0", "3")) == ("0", "5")
    assert fraction_product(n, ("2", "0"), ("0", "3")) == ("0", "1")
    assert fraction_product(n, ("2", "5"), ("5", "2")) == ("0", "0")
    assert reduce_pair(n, ("3", "7")) == ("0", "4")
    assert fraction_inverse(("1", "2")) == ("2", "1")


@pytest.mark.parametrize("bound,count", [(6, 13), (8, 17)])
def test_nat_classes_by_difference(bound, count):
    g = fraction_groupoid(nat(bound))
    assert len(g) == count
    diffs = [{diff(p) for p in c} for c in g.classes]
    assert all(len(d) == 1 for d in diffs)
    assert len({next(iter(d)) for d in diffs}) == count


def test_nsq_classes_by_difference():
    g = fraction_groupoid(nsq(3))
    assert len(g) == 49
    diffs = [{diff(p) for p in c} for c in g.classes]
    assert all(len(d) == 1 for d in diffs)
    assert len({next(iter(d)) for d in diffs}) == 49


def test_iota_injective():
    for cat in (nat(6), nsq(2)):
        g = fraction_groupoid(cat)
        images = [g.class_of(iota(cat, a)) for a in cat.morphisms]
        assert len(set(images)) == len(images)


def test_right_reversible_verdicts():
    assert is_right_reversible(fixture("NSQ(3)")).status == TRUE
    assert is_right_reversible(fixture("GROUP(2)")).status == TRUE
    v = is_right_reversible(fixture("FREE2(3)"))
    assert v.status == COUNTEREXAMPLE and v.witness == ("a", "b")
    assert is_right_reversible(fixture("PAR")).witness == ("f", "g")
    assert is_right_reversible(fixture("KG(2)")).status == COUNTEREXAMPLE


def test_product_needs_common_multiple():
    with pytest.raises(FractionError):
        fraction_product(fixture("FREE2(2)"), ("a", "a"), ("b", "b"))


def test_check_pair_errors():
    with pytest.raises(FractionError):
        fraction_equiv(fixture("PAR"), ("f", "v"), ("f", "f"))


def test_extension_to_z3():
    n, z3 = nat(6), fixture("GROUP(3)")
    names = {0: "e", 1: "g", 2: "g2"}
    hom = extend_hom(n, lambda a: names[int(a) % 3], z3)
    assert hom(("0", "5")) == "g2"
    assert hom.agrees_on_morphisms()
    pairs = [(a, b) for a in n.morphisms for b in n.morphisms]
    assert hom.respects_equivalence(pairs[:30])
    assert hom.multiplicative(pairs[:30])


def test_extension_rejects_non_functor():
    with pytest.raises(FractionError):
        extend_hom(nat(4), {a: "g" for a in nat(4).morphisms}, fixture("GROUP(2)"))


small = st.integers(0, 5).map(str)


@given(small, small, small, small)
def test_nat_equivalence_is_difference(a, b, c, d):
    n = nat(10)
    assert bool(fraction_equiv(n, (a, b), (c, d))) == (int(b) - int(a) == int(d) - int(c))


@given(st.tuples(small, small), st.tuples(small, small), st.tuples(small, small))
def test_nat_associativity(p, q, r):
    n = nat(12)
    left = fraction_product(n, fraction_product(n, p, q), r)
    right = fraction_product(n, p, fraction_product(n, q, r))
    assert fraction_equiv(n, left, right)
    assert diff(left) == tuple(diff(p)[i] + diff(q)[i] + diff(r)[i] for i in range(1))


def test_nsq_products_add_differences():
    cat = nsq(4)
    elems = [m for m in cat.morphisms if sum(int(c) for c in m.split(",")) <= 2]
    for p, q in product(product(elems, repeat=2), repeat=2):
        r = fraction_product(cat, p, q)
        assert diff(r) == tuple(x + y for x, y in zip(diff(p), diff(q)))
