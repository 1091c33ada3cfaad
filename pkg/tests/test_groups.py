import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_automorphisms, all_endomorphisms
from sepcomp.errors import DomainMismatch, InvalidOrder, NoIdentity, NoInverse, NotAHomomorphism, NotAssociative, NotInvertible
from sepcomp.groups import (
    GroupMorphism,
    automorphism_group,
    compose,
    endomorphisms,
    homomorphisms,
    identity_morphism,
    invert,
    make_cyclic,
    make_direct_product,
    make_from_table,
    make_symmetric,
    multiplication_by,
)

SMALL = [make_cyclic(n) for n in range(1, 9)] + [
    make_symmetric(3),
    make_direct_product(make_cyclic(2), make_cyclic(2)),
    make_direct_product(make_cyclic(2), make_cyclic(4)),
]


def test_cyclic_table():
    Z3 = make_cyclic(3)
    assert Z3.table == ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    assert Z3.identity == 0 and Z3.inverse == (0, 2, 1)


def test_invalid_order():
    with pytest.raises(InvalidOrder):
        make_cyclic(0)


@pytest.mark.parametrize(
    "table, err",
    [
        ([[0, 1], [1, 1]], NoInverse),
        ([[1, 0], [0, 1]], None),  # identity is 1 here, still a group
        ([[1, 1], [1, 1]], NoIdentity),
        ([[0, 1, 2], [1, 0, 0], [2, 0, 1]], NotAssociative),
    ],
)
def test_table_validation(table, err):
    if err is None:
        G = make_from_table(table)
        assert G.identity == 1
    else:
        with pytest.raises(err):
            make_from_table(table)


def test_s3_is_nonabelian():
    S3 = make_symmetric(3)
    assert S3.order == 6 and not S3.is_abelian
    assert sorted(S3.element_order(a) for a in S3.elements()) == [1, 2, 2, 2, 3, 3]


@pytest.mark.parametrize("G", SMALL, ids=lambda g: g.name)
def test_automorphisms_match_bijection_scan(G):
    got = sorted(a.image for a in automorphism_group(G))
    assert got == all_automorphisms(G)


@pytest.mark.parametrize("G", [g for g in SMALL if g.order <= 6], ids=lambda g: g.name)
def test_endomorphisms_match_map_scan(G):
    got = [a.image for a in endomorphisms(G)]
    assert got == all_endomorphisms(G)  # also checks the lexicographic order


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_aut_of_prime_cyclic(p):
    assert len(automorphism_group(make_cyclic(p))) == p - 1


def test_counts():
    assert len(automorphism_group(make_cyclic(5))) == 4
    assert len(automorphism_group(make_symmetric(3))) == 6
    assert len(endomorphisms(make_symmetric(3))) == 10
    assert len(homomorphisms(make_cyclic(4), make_cyclic(2))) == 2


@pytest.mark.parametrize("G", SMALL, ids=lambda g: g.name)
def test_aut_is_a_group(G):
    auts = automorphism_group(G)
    imgs = {a.image for a in auts}
    assert identity_morphism(G).image in imgs
    for a in auts:
        assert invert(a).image in imgs
        for b in auts:
            assert compose(a, b).image in imgs


@pytest.mark.parametrize("G", [g for g in SMALL if g.order <= 6], ids=lambda g: g.name)
def test_endomorphisms_preserve_identity_and_inverses(G):
    for a in endomorphisms(G):
        assert a.image[G.identity] == G.identity
        assert all(a.image[G.inv(x)] == G.inv(a.image[x]) for x in G.elements())


def test_invert_doubling_on_z5():
    Z5 = make_cyclic(5)
    assert invert(multiplication_by(Z5, 2)).image == multiplication_by(Z5, 3).image


def test_invert_null_fails():
    Z2 = make_cyclic(2)
    with pytest.raises(NotInvertible):
        invert(GroupMorphism(Z2, Z2, (0, 0)))


def test_compose_identity_and_mismatch():
    Z5 = make_cyclic(5)
    a = multiplication_by(Z5, 2)
    assert compose(identity_morphism(Z5), a).image == a.image
    with pytest.raises(DomainMismatch):
        compose(a, identity_morphism(make_cyclic(3)))


def test_bad_morphism_rejected():
    Z4 = make_cyclic(4)
    with pytest.raises(NotAHomomorphism):
        GroupMorphism(Z4, Z4, (0, 1, 3, 2))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_power_and_subgroups(G, data):
    a = data.draw(st.integers(0, G.order - 1))
    k = G.element_order(a)
    assert G.power(a, k) == G.identity
    assert len(G.subgroup_generated([a])) == k
    assert G.order % k == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_compose_is_associative(G, data):
    auts = automorphism_group(G)
    a, b, c = (data.draw(st.sampled_from(auts)) for _ in range(3))
    assert compose(a, compose(b, c)).image == compose(compose(a, b), c).image
