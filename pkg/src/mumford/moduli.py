"""Mumford classes of invariant bundles, lifts to extensions and the fiber checks.

An invariant ``T``-bundle ``phi`` on the cover ``Z`` (a W-invariant
homomorphism ``K -> T``) has the transgression factor set

    f(w1, w2) = phi( t(w1) t(w2) t(w1 w2)^-1 ),

whose class in ``H^2(W, T)`` is the class ``c(phi)``.  A representation
``rho: pi -> N`` lifting ``rho_bar`` restricts on ``K`` to an invariant
bundle of class ``[N]``; conversely such lifts are solutions of an affine
system over ``T``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from .abelian import FinAbGroup, Subgroup, kernel_generators, solve_system
from .cohomology import BudgetExceeded, Cochain, CohClass, h1, h2
from .cover import (
    CoverError,
    CoverPresentation,
    build_cover,
    invariants_subgroup,
    linear_rows,
    restriction_image,
    twisted_action,
    word_linear,
)
from .extension import Extension, extension_class, split_extension
from .group import FiniteGroup, GAction, cyclic, direct_product, dihedral, find_isomorphism, symmetric
from .surface import SurfaceRep, enumerate_homs, surjective_classes


class ModuliError(ValueError):
    pass


# ---------------------------------------------------------------------------
# The class map c


@dataclass(frozen=True)
class MumfordData:
    cover: CoverPresentation
    sigma: GAction
    phi: tuple
    factor_set: Cochain
    cls: CohClass

    @property
    def coords(self) -> tuple:
        return self.cls.coords


def is_invariant(C: CoverPresentation, sigma: GAction, phi) -> bool:
    phi = tuple(phi)
    return all(twisted_action(C, sigma, w, phi) == phi for w in set(C.rho.images))


def transgression(C: CoverPresentation, sigma: GAction, phi) -> Cochain:
    T = sigma.target
    return Cochain(2, tuple(C.phi_value(T, phi, ex) for ex in C.transgression_exponents()))


def mumford_class(C: CoverPresentation, sigma: GAction, phi, check: bool = True) -> MumfordData:
    phi = tuple(phi)
    if check and not is_invariant(C, sigma, phi):
        raise ModuliError("bundle is not W-invariant")
    f = transgression(C, sigma, phi)
    H = h2(C.W, sigma.target, sigma)
    return MumfordData(C, sigma, phi, f, H.class_of(f))


def class_map_kernel(C: CoverPresentation, sigma: GAction, inv: Subgroup | None = None) -> Subgroup:
    """``ker c`` inside the invariant subgroup."""
    inv = invariants_subgroup(C, sigma) if inv is None else inv
    H = h2(C.W, sigma.target, sigma)
    images = [mumford_class(C, sigma, g, check=False).coords for g in inv.gens]
    return inv.kernel_of(images, H.group)


def class_coset(C: CoverPresentation, sigma: GAction, eta, inv: Subgroup | None = None):
    """``(phi0, ker c)`` with ``h1_eta = phi0 + ker c``, or ``(None, ker c)`` if empty."""
    inv = invariants_subgroup(C, sigma) if inv is None else inv
    H = h2(C.W, sigma.target, sigma)
    images = [mumford_class(C, sigma, g, check=False).coords for g in inv.gens]
    kern = inv.kernel_of(images, H.group)
    eta = tuple(eta)
    if not inv.gens:
        return (None if any(eta) else inv.ambient.zero()), kern
    rows = [{i: img[j] for i, img in enumerate(images) if img[j]} for j in range(H.group.rank)]
    x = solve_system(rows, list(H.group.cyclic_orders), inv.orders, list(eta))
    phi0 = None if x is None else inv.combine(x)
    return phi0, kern


# ---------------------------------------------------------------------------
# Restriction of N-representations and assembly of lifts


def restrict_to_bundle(rho: SurfaceRep, E: Extension, C: CoverPresentation | None = None):
    """``(rho_bar, phi)`` with ``rho_bar = project o rho`` and ``phi`` the values
    of ``rho`` on the Schreier generators, read in ``T``."""
    rho_bar = SurfaceRep(E.W, tuple(E.project[x] for x in rho.images))
    if C is None:
        C = build_cover(rho_bar)
    elif C.rho.images != rho_bar.images:
        raise ModuliError("cover does not belong to project o rho")
    phi = []
    for c in range(C.r):
        phi.extend(E.from_kernel(rho.evaluate(C.schreier_word(c))))
    return rho_bar, tuple(phi)


@dataclass
class LiftSet:
    """Lifts ``x_i -> embed(u_i) s(rho_bar(x_i))`` for ``u`` in ``particular + solutions``."""

    cover: CoverPresentation
    extension: Extension
    particular: tuple
    solutions: Subgroup
    conjugations: Subgroup

    @property
    def count(self) -> int:
        return self.solutions.order

    @property
    def count_mod_t(self) -> int:
        return self.solutions.order // self.conjugations.order

    def rep(self, u) -> SurfaceRep:
        E, C = self.extension, self.cover
        k = E.T.rank
        images = tuple(
            E.N.mul[E.embed_t(tuple(u[i * k:(i + 1) * k]))][E.section[x]]
            for i, x in enumerate(C.rho.images)
        )
        return SurfaceRep(E.N, images)

    def representative(self) -> SurfaceRep:
        return self.rep(self.particular)

    def reps(self):
        amb = self.solutions.ambient
        for v in self.solutions.elements():
            yield self.rep(amb.add(self.particular, v))


def conjugation_shifts(C: CoverPresentation, sigma: GAction) -> Subgroup:
    """Shifts of ``u`` under conjugation by ``embed(t)``: ``u_i += t - sigma(rho_bar(x_i)) t``."""
    T = sigma.target
    vecs = []
    for j in range(T.rank):
        b = tuple(int(i == j) for i in range(T.rank))
        vecs.append(tuple(x for img in C.rho.images for x in T.sub(b, sigma.apply(img, b))))
    return Subgroup.generated_by(T.power(len(C.rho.images)), vecs)


def assemble_lift(C: CoverPresentation, E: Extension, phi) -> LiftSet | None:
    if C.W is not E.W:
        raise ModuliError("cover and extension have different W")
    T, sigma, N = E.T, E.sigma, E.N
    k = T.rank
    m = len(C.rho.images)
    amb = T.power(m)
    base = SurfaceRep(N, tuple(E.section[x] for x in C.rho.images))
    rows, mods, rhs = [], [], []
    for c in range(C.r):
        word = C.schreier_word(c)
        coeffs, end = word_linear(C.rho, sigma, word)
        const = E.from_kernel(base.evaluate(word))
        r, q = linear_rows(T, coeffs)
        target = T.sub(tuple(phi[c * k:(c + 1) * k]), const)
        rows += r
        mods += q
        rhs += list(target)
    x = solve_system(rows, mods, list(amb.cyclic_orders), rhs)
    if x is None:
        return None
    sols = Subgroup.generated_by(amb, kernel_generators(rows, mods, list(amb.cyclic_orders)))
    conj = conjugation_shifts(C, sigma)
    if not sols.contains_subgroup(conj):
        raise ModuliError("T-conjugation does not preserve the solution set")
    lifts = LiftSet(C, E, tuple(x), sols, conj)
    rep = lifts.representative()
    if not rep.is_valid() or restrict_to_bundle(rep, E, C)[1] != tuple(phi):
        raise ModuliError("assembled lift fails its round trip")
    return lifts


# ---------------------------------------------------------------------------
# Fiber theorem


@dataclass
class FiberReport:
    rho_bar: tuple
    extension: str
    eta: tuple
    lift_count_by_phi: dict
    reached: int
    h1_eta_size: int
    kernel_size: int
    invariant_size: int
    h1_w: int
    lifts_total: int
    orbits_t: int
    orbits_n: int
    exact: bool
    multiplicity_ok: bool
    existence_ok: bool
    notes: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.exact and self.multiplicity_ok and self.existence_ok

    def as_dict(self) -> dict:
        return {
            "rho_bar": list(self.rho_bar),
            "extension": self.extension,
            "eta": list(self.eta),
            "reached": self.reached,
            "h1_eta_size": self.h1_eta_size,
            "kernel_size": self.kernel_size,
            "invariant_size": self.invariant_size,
            "h1_w": self.h1_w,
            "lifts_total": self.lifts_total,
            "orbits_mod_t": self.orbits_t,
            "orbits_mod_n": self.orbits_n,
            "multiplicities": sorted(set(self.lift_count_by_phi.values())),
            "exact": self.exact,
            "multiplicity_ok": self.multiplicity_ok,
            "existence_ok": self.existence_ok,
            "verdict": self.verdict,
        }


def _orbit_key(N: FiniteGroup, images, conjugators) -> tuple:
    return min(tuple(N.conj(h, x) for x in images) for h in conjugators)


def verify_fiber_theorem(g: int, E: Extension, rho_bar: SurfaceRep, homs=None,
                         budget: int = 10 ** 7, workers: int = 1, invariant_limit: int = 4096) -> FiberReport:
    """Brute-force check of the fiber description over ``rho_bar``.

    ``homs`` may carry a precomputed ``enumerate_homs(g, E.N)``; it is
    filtered to the lifts of ``rho_bar``.  The existence criterion is
    checked on every invariant bundle when there are at most
    ``invariant_limit`` of them and on the generators' span sample otherwise.
    """
    N, T, W, sigma = E.N, E.T, E.W, E.sigma
    if rho_bar.genus != g:
        raise ModuliError("genus mismatch")
    if homs is None:
        homs = enumerate_homs(g, N, budget=budget, workers=workers)
    C = build_cover(rho_bar)
    eta = extension_class(E).coords
    inv = invariants_subgroup(C, sigma)
    phi0, kern = class_coset(C, sigma, eta, inv)
    h1_eta = 0 if phi0 is None else kern.order

    lifts = [r for r in homs if tuple(E.project[x] for x in r.images) == rho_bar.images]
    t_conj = list(E.embed)
    stab = set(W.centralizer(rho_bar.images))
    n_conj = [n for n in range(N.order) if E.project[n] in stab]
    buckets: dict = defaultdict(set)
    n_orbits = set()
    for r in lifts:
        _, phi = restrict_to_bundle(r, E, C)
        buckets[phi].add(_orbit_key(N, r.images, t_conj))
        n_orbits.add(_orbit_key(N, r.images, n_conj))
    counts = {phi: len(v) for phi, v in buckets.items()}

    exact = len(buckets) == h1_eta and all(
        phi in inv and mumford_class(C, sigma, phi, check=False).coords == eta for phi in buckets
    )
    h1w = h1(W, T, sigma).order
    multiplicity_ok = all(c == h1w for c in counts.values())

    notes = []
    existence_ok = True
    if inv.order <= invariant_limit:
        candidates = list(inv.elements())
    else:
        candidates = [inv.combine(c) for c in itertools.product(*(range(min(d, 2)) for d in inv.orders))]
        notes.append(f"existence criterion checked on {len(candidates)} of {inv.order} invariants")
    for phi in candidates:
        cls = mumford_class(C, sigma, phi, check=False).coords
        L = assemble_lift(C, E, phi)
        if (L is not None) != (cls == eta):
            existence_ok = False
        elif L is not None:
            if L.count_mod_t != h1w:
                existence_ok = False
            if phi in buckets and L.count_mod_t != counts[phi]:
                existence_ok = False
        if (phi in buckets) != (cls == eta):
            existence_ok = False

    return FiberReport(
        rho_bar=rho_bar.images, extension=E.name, eta=eta, lift_count_by_phi=counts,
        reached=len(buckets), h1_eta_size=h1_eta, kernel_size=kern.order, invariant_size=inv.order,
        h1_w=h1w, lifts_total=len(lifts), orbits_t=sum(counts.values()), orbits_n=len(n_orbits),
        exact=exact, multiplicity_ok=multiplicity_ok, existence_ok=existence_ok, notes=notes,
    )


# ---------------------------------------------------------------------------
# Weyl group action on fibers of bundles on X


def weyl_orbit_check(g: int, E: Extension, budget: int = 10 ** 6) -> dict:
    """Fibers of ``Hom(pi, T) -> Hom(pi, N)/N`` against the ``W``-orbits ``E -> sigma(w) o E``."""
    N, T, W, sigma = E.N, E.T, E.W, E.sigma
    size = T.order ** (2 * g)
    if size * N.order > budget:
        raise BudgetExceeded(f"{size} bundles times |N| = {N.order} exceeds budget {budget}")
    bundles = list(itertools.product(list(T.elements()), repeat=2 * g))
    fibers = defaultdict(set)
    for b in bundles:
        images = tuple(E.embed_t(t) for t in b)
        fibers[_orbit_key(N, images, range(N.order))].add(b)
    orbit_of = {}
    orbits = []
    free = 0
    for b in bundles:
        if b in orbit_of:
            continue
        orbit = frozenset(tuple(sigma.apply(w, t) for t in b) for w in range(W.order))
        for x in orbit:
            orbit_of[x] = orbit
        orbits.append(orbit)
        if len(orbit) == W.order:
            free += 1
    transitive = sorted(sorted(f) for f in fibers.values()) == sorted(sorted(o) for o in orbits)
    fixed = sum(1 for b in bundles if len(orbit_of[b]) < W.order)
    return {
        "genus": g,
        "T": list(T.cyclic_orders),
        "W_order": W.order,
        "N_order": N.order,
        "bundles": size,
        "fibers": len(fibers),
        "orbits": len(orbits),
        "free_orbits": free,
        "bundles_with_stabilizer": fixed,
        "fibers_are_orbits": transitive,
        "free_orbit_exists": free > 0,
        "verdict": transitive and (free > 0 or size <= fixed),
    }


# ---------------------------------------------------------------------------
# Dihedral example


def dihedral_example(g: int, n: int, rho2: SurfaceRep) -> dict:
    if n % 2 == 0 or n < 3:
        raise ModuliError("the dihedral example needs n odd and at least 3")
    W = rho2.target
    if W.order != 2:
        raise ModuliError("rho2 must map onto a group of order 2")
    C = build_cover(rho2)
    T = FinAbGroup.cyclic(n)
    plain = GAction.trivial(W, T)
    twist = GAction.by_sign(W, T, [1 if w == W.identity else -1 for w in range(2)])
    gY = C.cover_genus
    H = invariants_subgroup(C, plain, acting=[])
    fixed = invariants_subgroup(C, plain)
    anti = invariants_subgroup(C, twist)
    pullback = restriction_image(C, plain)
    total = Subgroup.generated_by(H.ambient, fixed.gens + anti.gens)

    cyc = direct_product(cyclic(2), cyclic(n))
    dih = dihedral(n)
    E_plain = split_extension(T, W, plain, name="Z2xZn")
    E_twist = split_extension(T, W, twist, name="D2n")
    cases = defaultdict(int)
    mismatch = 0
    for part, E, expect in ((fixed, E_plain, cyc), (anti, E_twist, dih)):
        for alpha in part.elements():
            if not any(alpha):
                continue
            L = assemble_lift(C, E, alpha)
            if L is None:
                mismatch += 1
                continue
            rep = L.representative()
            image = sorted(E.N.generated(rep.images))
            sub = _subgroup_table(E.N, image)
            ok = find_isomorphism(sub, expect) is not None
            cases[(E.name, len(image), ok)] += 1
            if not ok:
                mismatch += 1
    zero_lift = assemble_lift(C, E_plain, H.ambient.zero())
    zero_order = len(E_plain.N.generated(zero_lift.representative().images))

    checks = {
        "fixed_order": fixed.order == n ** (2 * g),
        "anti_order": anti.order == n ** (2 * gY - 2 * g),
        "product": fixed.order * anti.order == H.order,
        "transversal": fixed.intersection(anti).order == 1 and total.same_as(H),
        "fixed_is_pullback": fixed.same_as(pullback),
        "classification": mismatch == 0,
        "zero_is_degenerate": zero_order == 2,
    }
    return {
        "genus": g,
        "n": n,
        "cover_genus": gY,
        "h1": H.order,
        "fixed": fixed.order,
        "anti_fixed": anti.order,
        "total_groups": [
            {"extension": name, "order": order, "matches": ok, "count": c}
            for (name, order, ok), c in sorted(cases.items())
        ],
        "checks": checks,
        "verdict": all(checks.values()),
    }


def _subgroup_table(G: FiniteGroup, elements) -> FiniteGroup:
    pos = {x: i for i, x in enumerate(elements)}
    table = [[pos[G.mul[a][b]] for b in elements] for a in elements]
    return FiniteGroup.from_table(table, name="image")


# ---------------------------------------------------------------------------
# Weyl examples


def weyl_action(n: int, family: str):
    W = symmetric(n)
    if family == "B_or_C":
        sigma = GAction.permutation(W, n)
    elif family == "D":
        sigma = GAction.even_permutation(W, n)
    else:
        raise ModuliError(f"unknown family {family!r}")
    return W, sigma


def first_coordinate(T: FinAbGroup, phi, r: int, family: str) -> tuple:
    """The ``Z/2``-bundle ``L_1`` read off the first factor."""
    k = T.rank
    return tuple(phi[c * k] for c in range(r))


def weyl_example(g: int, n: int, family: str, rho_bar: SurfaceRep | None = None, C: CoverPresentation | None = None) -> dict:
    if n not in (2, 3):
        raise ModuliError("only n in {2, 3} is supported")
    W, sigma = weyl_action(n, family)
    if C is None:
        if rho_bar is None:
            raise ModuliError("a cover onto S_n is required")
        if rho_bar.target is not W:
            rho_bar = SurfaceRep(W, rho_bar.images)
        try:
            C = build_cover(rho_bar)
        except CoverError as exc:
            raise ModuliError(str(exc)) from None
    T = sigma.target
    inv = invariants_subgroup(C, sigma)
    E = split_extension(T, W, sigma, name=f"W({family},{n})")
    eta = extension_class(E).coords
    phi0, kern = class_coset(C, sigma, eta, inv)
    h1_eta = 0 if phi0 is None else kern.order

    Z2 = FinAbGroup.cyclic(2)
    stab1 = [w for w in range(W.order) if W.label(w)[0] == 0]
    plain = GAction.trivial(W, Z2)
    target = invariants_subgroup(C, plain, acting=stab1)
    images = {first_coordinate(T, phi, C.r, family) for phi in inv.elements()}
    injective = len(images) == inv.order
    onto = images == set(target.elements())
    verbatim = all(
        len({tuple(phi[c * T.rank + j] for c in range(C.r)) for j in range(T.rank)}) == 1
        for phi in inv.elements()
    ) if family == "B_or_C" else None
    report = {
        "genus": g,
        "n": n,
        "family": family,
        "rho_bar": list(C.rho.images),
        "invariants": inv.order,
        "eta": list(eta),
        "h1_eta": h1_eta,
        "kernel": kern.order,
        "first_factor_injective": injective,
        "first_factor_image_is_stab_invariants": onto,
        "diagonal_verbatim": verbatim,
    }
    report["verdict"] = injective and onto if family == "B_or_C" else (h1_eta == 1 if n % 2 else True)
    return report


def weyl_d_singletons(n: int = 3, g: int = 1) -> dict:
    W, _ = weyl_action(n, "D")
    covers = surjective_classes(g, W)
    sizes = [weyl_example(g, n, "D", rho)["h1_eta"] for rho in covers]
    return {"n": n, "genus": g, "covers": len(covers), "fiber_sizes": sorted(set(sizes)),
            "verdict": all(s == 1 for s in sizes)}
