import pytest

from mumford.abelian import FinAbGroup
from mumford.cover import (
    CoverError,
    TBundle,
    build_cover,
    crossed_homs,
    h1_cover,
    invariants_subgroup,
    restriction_image,
    restriction_kernel,
    shuffled_cover,
    transport,
    twisted_action,
)
from mumford.group import GAction, cyclic, symmetric
from mumford.oracles import brute_bundles, brute_invariants, brute_twisted
from mumford.surface import SurfaceRep, surjective_classes
from mumford.verify import groups


def test_trivial_w():
    W = cyclic(1)
    for g in (1, 2):
        C = build_cover(SurfaceRep(W, (0,) * (2 * g)))
        assert C.r == 2 * g
        assert C.relator_rank() == 0
        assert C.kab_invariants() == (2 * g, [])
    C = build_cover(SurfaceRep(W, (0, 0)))
    T = FinAbGroup.cyclic(2)
    assert h1_cover(C, T).order == 4
    sigma = GAction.trivial(W, T)
    assert invariants_subgroup(C, sigma).same_as(h1_cover(C, T))


def test_double_cover_of_torus():
    C = build_cover(SurfaceRep(cyclic(2), (1, 0)))
    assert C.r == 3
    assert C.kab_invariants() == (2, [])
    assert h1_cover(C, FinAbGroup.cyclic(2)).order == 4


def test_genus_two_s3_cover():
    for rho in surjective_classes(2, symmetric(3))[::15]:
        C = build_cover(rho)
        assert C.r == 19
        assert C.relator_rank() == 5
        assert C.kab_invariants() == (14, [])
        assert C.cover_genus == 7


def test_h1_order_genus_two():
    C = build_cover(SurfaceRep(cyclic(2), (1, 0, 0, 0)))
    assert h1_cover(C, FinAbGroup.cyclic(3)).order == 729


def test_non_surjective_rejected():
    with pytest.raises(CoverError):
        build_cover(SurfaceRep(cyclic(2), (0, 0)))


def test_schreier_structure():
    rho = surjective_classes(2, symmetric(3))[7]
    C = build_cover(rho)
    # prefix closed, and tree edges are exactly the transversal steps
    for w, word in C.transversal.items():
        assert C.rewrite(word)[1] == w
        for i in range(len(word)):
            assert rho.evaluate(word[:i]) in C.transversal
            assert C.transversal[rho.evaluate(word[:i])] == word[:i]
    exps, end = C.rewrite(C.base.relator())
    assert end == C.W.identity and exps in C.relator_matrix
    for c in range(C.r):
        exps = C.rewrite_in_k(C.schreier_word(c))
        assert exps == [int(j == c) for j in range(C.r)]
    again = build_cover(rho)
    assert again.relator_matrix == C.relator_matrix


def test_twisted_action_axioms_and_oracle():
    S2 = symmetric(2)
    sigma = GAction.permutation(S2, 2)
    T = sigma.target
    C = build_cover(SurfaceRep(S2, (1, 0, 1, 1)))
    H = h1_cover(C, T)
    for phi in H.gens:
        assert twisted_action(C, sigma, S2.identity, phi) == phi
        for w1 in range(2):
            for w2 in range(2):
                lhs = twisted_action(C, sigma, S2.mul[w1][w2], phi)
                assert lhs == twisted_action(C, sigma, w1, twisted_action(C, sigma, w2, phi))
            out = twisted_action(C, sigma, w1, phi)
            assert out == brute_twisted(C, sigma, w1, phi)
            assert TBundle(C, T, out).is_valid()
    # additivity
    a, b = H.gens[0], H.gens[1]
    amb = H.ambient
    assert twisted_action(C, sigma, 1, amb.add(a, b)) == amb.add(
        twisted_action(C, sigma, 1, a), twisted_action(C, sigma, 1, b))


def test_fixed_set_torus_double_cover():
    W = cyclic(2)
    T = FinAbGroup.cyclic(2)
    C = build_cover(SurfaceRep(W, (1, 0)))
    sigma = GAction.trivial(W, T)
    fixed = brute_invariants(C, sigma)
    assert len(brute_bundles(C, T)) == 4
    assert fixed == set(invariants_subgroup(C, sigma).elements())


@pytest.mark.parametrize("images", [(1, 0), (0, 1), (1, 1)])
def test_b2_invariants_match_brute_force(images):
    S2 = groups()["S2"]
    sigma = GAction.permutation(S2, 2)
    C = build_cover(SurfaceRep(S2, images))
    assert brute_invariants(C, sigma) == set(invariants_subgroup(C, sigma).elements())


@pytest.mark.parametrize("key", ["C2|Z3|inversion", "S2|Z2^2|swap", "C2|Z4|inversion", "V4|Z2|trivial"])
def test_restriction_lands_in_invariants(key):
    from mumford.verify import coefficient_matrix, sample_covers
    case = next(c for c in coefficient_matrix() if c.key == key)
    for g in (1, 2):
        for rho in sample_covers(g, case.W, cap=3):
            C = build_cover(rho)
            inv = invariants_subgroup(C, case.sigma)
            assert inv.contains_subgroup(restriction_image(C, case.sigma))
            # kernel of restriction on crossed homs: inflations from W
            Z1 = crossed_homs(rho, case.sigma)
            kern = restriction_kernel(C, case.sigma)
            assert Z1.contains_subgroup(kern)


def test_trivial_action_restriction_is_pullback_of_homs():
    W = cyclic(2)
    T = FinAbGroup.cyclic(3)
    C = build_cover(SurfaceRep(W, (1, 0, 0, 0)))
    sigma = GAction.trivial(W, T)
    assert crossed_homs(C.rho, sigma).order == 3 ** 4
    image = restriction_image(C, sigma)
    # Hom(pi, Z/3) -> Hom(K, Z/3) is injective since Hom(W, Z/3) = 0
    assert image.order == 3 ** 4


def test_transversal_independence_of_invariant_counts():
    S3 = symmetric(3)
    sigma = GAction.permutation(S3, 3)
    for idx, rho in enumerate(surjective_classes(2, S3)[::20]):
        C1, C2 = build_cover(rho), shuffled_cover(rho, seed=idx + 5)
        inv1, inv2 = invariants_subgroup(C1, sigma), invariants_subgroup(C2, sigma)
        assert inv1.order == inv2.order
        for phi in inv1.gens:
            assert transport(phi, sigma.target, C1, C2) in inv2
