import pytest

from mumford.abelian import FinAbGroup
from mumford.cohomology import BudgetExceeded, h2
from mumford.group import GAction, cyclic, symmetric
from mumford.oracles import brute_h2_order, brute_hom_count, gfp_h2_order, rank_mod_p


def test_rank_mod_p():
    assert rank_mod_p([[1, 1], [1, 1]], 2) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 3) == 1
    assert rank_mod_p([[1, 2], [2, 1]], 5) == 2
    assert rank_mod_p([], 2) == 0


@pytest.mark.parametrize("n,p,expected", [(2, 2, 2), (3, 2, 1), (3, 3, 3), (4, 2, 2)])
def test_cyclic_trivial_h2(n, p, expected):
    W = cyclic(n)
    T = FinAbGroup.cyclic(p)
    sigma = GAction.trivial(W, T)
    assert brute_h2_order(W, T, sigma) == expected
    assert gfp_h2_order(W, T, sigma) == expected


def test_oracles_agree_on_s3_sign():
    S3 = symmetric(3)
    T = FinAbGroup.cyclic(2)
    sigma = GAction.trivial(S3, T)
    assert gfp_h2_order(S3, T, sigma) == h2(S3, T, sigma).order == 2


def test_gfp_needs_elementary_abelian():
    W = cyclic(2)
    T = FinAbGroup((2, 4))
    with pytest.raises(ValueError):
        gfp_h2_order(W, T, GAction.trivial(W, T))


def test_budgets():
    W = symmetric(3)
    T = FinAbGroup.cyclic(3)
    with pytest.raises(BudgetExceeded):
        brute_h2_order(W, T, GAction.inversion(W, T), budget=100)
    with pytest.raises(BudgetExceeded):
        brute_hom_count(3, W, budget=1000)


def test_hom_counts():
    assert brute_hom_count(1, cyclic(5)) == 25
    assert brute_hom_count(1, symmetric(3)) == 18
    assert brute_hom_count(2, symmetric(3)) == 486
