import pytest

from mumford.abelian import FinAbGroup
from mumford.group import (
    FiniteGroup,
    GAction,
    GroupError,
    compose,
    cyclic,
    dihedral,
    direct_product,
    find_isomorphism,
    from_permutations,
    klein,
    parity,
    perm_from_cycles,
    semidirect,
    symmetric,
    twisted_product,
)


@pytest.mark.parametrize(
    "G, order",
    [(cyclic(1), 1), (cyclic(5), 5), (symmetric(3), 6), (symmetric(4), 24), (dihedral(4), 8),
     (dihedral(5), 10), (klein(), 4)],
)
def test_constructors_are_groups(G, order):
    assert G.order == order
    G.check_axioms()


def test_permutation_helpers():
    p = perm_from_cycles([[1, 2, 3]], 3)
    assert p == (1, 2, 0)
    assert compose(p, p) == (2, 0, 1)
    assert parity(p) == 1 and parity(perm_from_cycles([[1, 2]], 3)) == -1
    with pytest.raises(GroupError):
        from_permutations([(0, 1, 2, 3, 4, 5, 6, 7)[::-1]] + [perm_from_cycles([[1, 2, 3, 4, 5, 6, 7, 8]], 8)],
                          max_order=10)


def test_structure_queries():
    S3 = symmetric(3)
    assert not S3.is_abelian()
    assert len(S3.conjugacy_classes()) == 3
    assert S3.center() == [S3.identity]
    assert len(S3.generated(S3.generating_set())) == 6
    assert S3.order_profile() == ((1, 1), (2, 3), (3, 2))
    a, b = 1, 2
    assert S3.commutator(a, b) == S3.prod([a, b, S3.inv[a], S3.inv[b]])


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        FiniteGroup(mul=((0, 1), (1, 1)))
    with pytest.raises(GroupError):
        FiniteGroup(mul=((0, 1), (0, 1))).check_axioms()


def test_find_isomorphism():
    assert find_isomorphism(dihedral(3), symmetric(3)) is not None
    assert find_isomorphism(cyclic(4), klein()) is None
    assert find_isomorphism(direct_product(cyclic(2), cyclic(3)), cyclic(6)) is not None
    B2, _, _ = semidirect(FinAbGroup((2, 2)), symmetric(2), GAction.permutation(symmetric(2), 2))
    assert find_isomorphism(B2, dihedral(4)) is not None


def test_actions():
    S3 = symmetric(3)
    T3 = FinAbGroup.cyclic(3)
    sign = GAction.inversion(S3, T3)
    for w in range(6):
        expect = (2,) if parity(S3.label(w)) == -1 else (1,)
        assert sign.apply(w, (1,)) == expect
    perm = GAction.permutation(S3, 3)
    even = GAction.even_permutation(S3, 3)
    assert perm.target.order == 8 and even.target.order == 4
    assert GAction.trivial(S3, T3).is_trivial()
    with pytest.raises(GroupError):
        GAction(cyclic(2), FinAbGroup.cyclic(4), [[(1,)], [(2,)]])  # not invertible
    with pytest.raises(GroupError):
        GAction(cyclic(3), FinAbGroup.cyclic(3), [[(1,)], [(2,)], [(2,)]])  # not multiplicative


def test_twisted_product_orders():
    W = cyclic(2)
    T = FinAbGroup.cyclic(2)
    s = GAction.trivial(W, T)
    N, embed, project = twisted_product(T, W, s, [(0,), (0,), (0,), (1,)])
    N.check_axioms()
    assert N.order_profile() == cyclic(4).order_profile()
    assert [project[e] for e in embed] == [0, 0]
