"""The genus-g surface group and its homomorphisms into finite groups.

Generators are ordered ``a1, b1, ..., ag, bg`` and numbered ``0 .. 2g-1``; a
word is a tuple of signed letters ``+-(i+1)``.  The relator is
``[a1,b1] ... [ag,bg]`` with ``[a,b] = a b a^-1 b^-1``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .cohomology import BudgetExceeded
from .group import FiniteGroup

DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class SurfaceGroup:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def relator(self) -> tuple:
        word = []
        for j in range(self.genus):
            a, b = 2 * j + 1, 2 * j + 2
            word += [a, b, -a, -b]
        return tuple(word)


@dataclass(frozen=True, eq=False)
class SurfaceRep:
    """A homomorphism ``pi_g -> target`` given by the images of the generators."""

    target: FiniteGroup
    images: tuple

    @property
    def genus(self) -> int:
        return len(self.images) // 2

    def evaluate(self, word) -> int:
        G = self.target
        acc = G.identity
        for letter in word:
            x = self.images[abs(letter) - 1]
            acc = G.mul[acc][x if letter > 0 else G.inv[x]]
        return acc

    def is_valid(self) -> bool:
        return relation_value(self.target, self.images) == self.target.identity

    def is_surjective(self) -> bool:
        return is_surjective(self)


def relation_value(G: FiniteGroup, images) -> int:
    acc = G.identity
    for j in range(0, len(images), 2):
        acc = G.mul[acc][G.commutator(images[j], images[j + 1])]
    return acc


def _commutator_solutions(G: FiniteGroup):
    """``sol[a][x]`` = sorted list of ``b`` with ``[a, b] = x``."""
    n = G.order
    sol = [[[] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            sol[a][G.commutator(a, b)].append(b)
    return sol


def _enumerate_range(G: FiniteGroup, g: int, first_values) -> list:
    n, mul, inv = G.order, G.mul, G.inv
    sol = _commutator_solutions(G)
    out = []
    if g == 0:
        return [()]
    for x0 in first_values:
        for rest in itertools.product(range(n), repeat=2 * g - 2):
            prefix = (x0,) + rest
            acc = G.identity
            for j in range(0, 2 * g - 2, 2):
                acc = mul[acc][G.commutator(prefix[j], prefix[j + 1])]
            a = prefix[-1]
            for b in sol[a][inv[acc]]:
                out.append(prefix + (b,))
    return out


def _chunks(n: int, k: int):
    k = max(1, min(k, n))
    size, extra = divmod(n, k)
    start = 0
    for i in range(k):
        stop = start + size + (1 if i < extra else 0)
        yield range(start, stop)
        start = stop


def enumerate_homs(g: int, G: FiniteGroup, budget: int = DEFAULT_BUDGET, workers: int = 1):
    """All homomorphisms ``pi_g -> G`` as :class:`SurfaceRep`, in lexicographic
    order of image tuples.  The image of ``b_g`` is solved for, not searched."""
    if g == 0:
        return [SurfaceRep(G, ())]
    if G.order ** (2 * g - 1) > budget:
        raise BudgetExceeded(f"|G|^(2g-1) = {G.order ** (2 * g - 1)} exceeds budget {budget}")
    if workers > 1 and G.order > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_enumerate_range, itertools.repeat(G), itertools.repeat(g),
                                  _chunks(G.order, workers)))
        tuples = [t for part in parts for t in part]
    else:
        tuples = _enumerate_range(G, g, range(G.order))
    return [SurfaceRep(G, t) for t in tuples]


def commutator_distribution(G: FiniteGroup) -> list[int]:
    mu = [0] * G.order
    for a in range(G.order):
        for b in range(G.order):
            mu[G.commutator(a, b)] += 1
    return mu


def commutator_convolution_count(g: int, G: FiniteGroup) -> int:
    """``|Hom(pi_g, G)|`` as the g-fold convolution of the commutator
    distribution, evaluated at the identity."""
    mu = commutator_distribution(G)
    dist = [0] * G.order
    dist[G.identity] = 1
    for _ in range(g):
        new = [0] * G.order
        for x, cx in enumerate(dist):
            if cx:
                row = G.mul[x]
                for y, cy in enumerate(mu):
                    if cy:
                        new[row[y]] += cx * cy
        dist = new
    return dist[G.identity]


def is_surjective(rho: SurfaceRep) -> bool:
    return len(rho.target.generated(rho.images)) == rho.target.order


def conjugate(rho: SurfaceRep, h: int) -> SurfaceRep:
    G = rho.target
    return SurfaceRep(G, tuple(G.conj(h, x) for x in rho.images))


def conjugacy_classes(homs, G: FiniteGroup) -> list[list[tuple]]:
    """Orbits of image tuples under simultaneous conjugation by ``G``.

    Orbits are sorted lists, ordered by their least element.
    """
    seen = set()
    orbits = []
    for rho in homs:
        t = rho.images if isinstance(rho, SurfaceRep) else tuple(rho)
        if t in seen:
            continue
        orbit = sorted({tuple(G.conj(h, x) for x in t) for h in range(G.order)})
        seen.update(orbit)
        orbits.append(orbit)
    orbits.sort()
    return orbits


def stabilizer_order(G: FiniteGroup, images) -> int:
    return len(G.centralizer(images))


def surjective_classes(g: int, W: FiniteGroup, budget: int = DEFAULT_BUDGET) -> list[SurfaceRep]:
    """One surjective homomorphism per conjugacy class (the least in each orbit)."""
    homs = [r for r in enumerate_homs(g, W, budget) if r.is_surjective()]
    return [SurfaceRep(W, orbit[0]) for orbit in conjugacy_classes(homs, W)]
