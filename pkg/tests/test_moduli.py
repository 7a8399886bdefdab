import itertools

import pytest

from mumford.abelian import FinAbGroup
from mumford.cohomology import h1, h2
from mumford.cover import build_cover, crossed_homs, invariants_subgroup, restrict_crossed_hom
from mumford.extension import build_extension, extension_class, extension_for_class, split_extension
from mumford.cohomology import Cochain
from mumford.group import GAction, cyclic, symmetric
from mumford.moduli import (
    ModuliError,
    assemble_lift,
    class_coset,
    class_map_kernel,
    dihedral_example,
    is_invariant,
    mumford_class,
    restrict_to_bundle,
    verify_fiber_theorem,
    weyl_d_singletons,
    weyl_example,
    weyl_orbit_check,
)
from mumford.oracles import brute_bundles, brute_invariants
from mumford.surface import SurfaceRep, enumerate_homs, surjective_classes
from mumford.verify import groups


@pytest.fixture(scope="module")
def z2_setup():
    W = groups()["C2"]
    T = FinAbGroup.cyclic(2)
    sigma = GAction.trivial(W, T)
    C = build_cover(SurfaceRep(W, (1, 0)))
    return W, T, sigma, C


def test_zero_bundle_has_zero_class(z2_setup):
    W, T, sigma, C = z2_setup
    assert mumford_class(C, sigma, T.power(C.r).zero()).coords == (0,)


def test_restricted_crossed_hom_has_zero_class():
    S2 = groups()["S2"]
    sigma = GAction.permutation(S2, 2)
    for rho in surjective_classes(2, S2)[:4]:
        C = build_cover(rho)
        for z in crossed_homs(rho, sigma).gens:
            phi = restrict_crossed_hom(C, sigma, z)
            assert is_invariant(C, sigma, phi)
            assert not any(mumford_class(C, sigma, phi).coords)


def test_non_invariant_rejected():
    S2 = groups()["S2"]
    sigma = GAction.permutation(S2, 2)
    C = build_cover(SurfaceRep(S2, (1, 0)))
    bundles = brute_bundles(C, sigma.target)
    fixed = brute_invariants(C, sigma, bundles=bundles)
    moving = next(b for b in bundles if b not in fixed)
    with pytest.raises(ModuliError):
        mumford_class(C, sigma, moving)


def test_z4_and_klein_classification(z2_setup):
    """On the torus double cover: invariant bundles of class 1 lift to Z/4,
    those of class 0 lift to the Klein group, and no bundle lifts to both."""
    W, T, sigma, C = z2_setup
    z4 = extension_for_class(sigma, (1,))
    v4 = extension_for_class(sigma, (0,))
    assert z4.N.order_profile() != v4.N.order_profile()
    inv = invariants_subgroup(C, sigma)
    seen = {0: 0, 1: 0}
    for phi in inv.elements():
        cls = mumford_class(C, sigma, phi).coords[0]
        seen[cls] += 1
        assert (assemble_lift(C, z4, phi) is not None) == (cls == 1)
        assert (assemble_lift(C, v4, phi) is not None) == (cls == 0)
    assert seen[0] and seen[1]


def test_empty_lift_set_confirmed_by_decorations(z2_setup):
    """Class-0 bundles have no Z/4 lift: try every decoration of rho_bar."""
    W, T, sigma, C = z2_setup
    z4 = extension_for_class(sigma, (1,))
    phi = T.power(C.r).zero()
    assert assemble_lift(C, z4, phi) is None
    N = z4.N
    fibers = [[n for n in range(N.order) if z4.project[n] == x] for x in C.rho.images]
    for images in itertools.product(*fibers):
        rho = SurfaceRep(N, images)
        if rho.is_valid():
            assert restrict_to_bundle(rho, z4, C)[1] != phi


def test_split_extension_is_componentwise():
    W = groups()["C2"]
    T = FinAbGroup((2, 2))
    sigma = GAction.trivial(W, T)
    C = build_cover(SurfaceRep(W, (1, 0)))
    H = h2(W, T, sigma)
    assert H.order == 4
    for phi in invariants_subgroup(C, sigma).elements():
        cls = mumford_class(C, sigma, phi).coords
        # each coordinate of T contributes independently
        parts = []
        for j in range(2):
            Tj = FinAbGroup.cyclic(2)
            one = tuple(phi[c * 2 + j] for c in range(C.r))
            parts.append(mumford_class(C, GAction.trivial(W, Tj), one).coords[0])
        assert len(cls) == 2
        assert any(cls) == any(parts)
        # the class is zero exactly when both coordinate bundles lift separately
        E = split_extension(T, W, sigma)
        assert (assemble_lift(C, E, phi) is not None) == (not any(parts))


def test_class_coset_partitions_invariants():
    S3 = groups()["S3"]
    sigma = GAction.permutation(S3, 3)
    H = h2(S3, sigma.target, sigma)
    for rho in surjective_classes(2, S3)[:3]:
        C = build_cover(rho)
        inv = invariants_subgroup(C, sigma)
        kern = class_map_kernel(C, sigma, inv)
        total = 0
        for cls in H.classes():
            phi0, k = class_coset(C, sigma, cls.coords, inv)
            assert k.same_as(kern)
            if phi0 is not None:
                assert mumford_class(C, sigma, phi0).coords == cls.coords
                total += k.order
        assert total == inv.order


def test_lifts_of_distinct_bundles_are_disjoint(z2_setup):
    W, T, sigma, C = z2_setup
    z4 = extension_for_class(sigma, (1,))
    seen = {}
    for phi in invariants_subgroup(C, sigma).elements():
        L = assemble_lift(C, z4, phi)
        if L is None:
            continue
        assert L.count_mod_t == h1(W, T, sigma).order
        for r in L.reps():
            assert r.is_valid()
            assert restrict_to_bundle(r, z4, C)[1] == phi
            assert r.images not in seen
            seen[r.images] = phi


def test_fiber_theorem_z4_exhaustive():
    W = groups()["C2"]
    T = FinAbGroup.cyclic(2)
    z4 = extension_for_class(GAction.trivial(W, T), (1,))
    homs = enumerate_homs(1, z4.N)
    for rho in surjective_classes(1, W):
        R = verify_fiber_theorem(1, z4, rho, homs=homs)
        assert R.verdict, R.as_dict()
        assert R.reached == R.h1_eta_size > 0


def test_fiber_theorem_swap_genus_two():
    S2 = groups()["S2"]
    sigma = GAction.permutation(S2, 2)
    E = split_extension(sigma.target, S2, sigma)
    homs = enumerate_homs(2, E.N)
    for rho in surjective_classes(2, S2)[:3]:
        R = verify_fiber_theorem(2, E, rho, homs=homs)
        assert R.verdict, R.as_dict()


def test_swap_h2_trivial_so_twisted_cocycle_reaches_same_set():
    S2 = groups()["S2"]
    sigma = GAction.permutation(S2, 2)
    T = sigma.target
    assert h2(S2, T, sigma).order == 1
    # a nonzero cocycle, necessarily a coboundary: d of theta(1) = (1, 0)
    table = tuple(T.reduce((1, 1)) if (a, b) == (1, 1) else T.zero() for a in range(2) for b in range(2))
    f = Cochain(2, table)
    E2 = build_extension(T, S2, sigma, f)
    E1 = split_extension(T, S2, sigma)
    assert extension_class(E2).coords == extension_class(E1).coords
    rho = surjective_classes(1, S2)[0]
    r1 = verify_fiber_theorem(1, E1, rho)
    r2 = verify_fiber_theorem(1, E2, rho)
    assert r1.verdict and r2.verdict
    assert r1.reached == r2.reached


def test_fiber_inversion_action():
    W = groups()["C2"]
    T = FinAbGroup.cyclic(4)
    sigma = GAction.inversion(W, T)
    for coords in h2(W, T, sigma).classes():
        E = extension_for_class(sigma, coords.coords)
        for rho in surjective_classes(1, W):
            assert verify_fiber_theorem(1, E, rho).verdict


@pytest.mark.parametrize("key", ["C2", "S2"])
def test_weyl_orbits(key):
    W = groups()[key]
    if key == "C2":
        sigma = GAction.inversion(W, FinAbGroup.cyclic(3))
    else:
        sigma = GAction.permutation(W, 2)
    E = split_extension(sigma.target, W, sigma)
    for g in (1, 2):
        rep = weyl_orbit_check(g, E)
        assert rep["verdict"] and rep["fibers"] == rep["orbits"]


def test_dihedral_example():
    C2 = cyclic(2)
    for g, n in [(1, 3), (2, 3), (1, 5)]:
        for rho in surjective_classes(g, C2)[:3]:
            rep = dihedral_example(g, n, rho)
            assert rep["verdict"], rep["checks"]
            assert rep["fixed"] * rep["anti_fixed"] == rep["h1"]
    with pytest.raises(ModuliError):
        dihedral_example(1, 4, surjective_classes(1, C2)[0])


def test_weyl_examples():
    for rho in surjective_classes(1, symmetric(2)):
        rep = weyl_example(1, 2, "B_or_C", rho)
        assert rep["verdict"] and rep["diagonal_verbatim"]
    with pytest.raises(ModuliError):
        weyl_example(1, 2, "B_or_C", SurfaceRep(symmetric(2), (0, 0)))
    rho = surjective_classes(2, symmetric(3))[0]
    rep = weyl_example(2, 3, "B_or_C", rho)
    assert rep["verdict"]
    assert rep["diagonal_verbatim"] is False
    # genus one has no surjection onto S3, so the singleton statement is vacuous there
    single = weyl_d_singletons(3, 1)
    assert single["covers"] == 0 and single["verdict"]
    d3 = weyl_example(2, 3, "D", rho)
    assert d3["h1_eta"] == 16 and not d3["verdict"]
