"""Galois covers of a surface via Reidemeister-Schreier.

For a surjection ``rho_bar: pi -> W`` with kernel ``K``, cosets ``K u`` are
identified with ``rho_bar(u)``.  A breadth-first Schreier tree over the
positive generators gives the transversal ``t(w)``; the Schreier generators
``s(w, x) = t(w) x t(w x)^-1`` for non-tree edges freely generate the
preimage of ``K`` in the free group.  A ``T``-bundle on the cover is a
homomorphism ``K -> T``, stored as its values on the Schreier generators:
a flat element of ``T^r``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .abelian import FinAbGroup, Subgroup, hom_solutions, integer_rank, kernel_generators, smith_normal_form
from .group import FiniteGroup, GAction
from .surface import SurfaceGroup, SurfaceRep, is_surjective


class CoverError(ValueError):
    pass


def inverse_word(word) -> tuple:
    return tuple(-x for x in reversed(word))


class CoverPresentation:
    """Schreier data of the cover attached to a surjective ``rho_bar``."""

    def __init__(self, rho_bar: SurfaceRep, gen_order=None):
        if not is_surjective(rho_bar):
            raise CoverError("rho_bar must be surjective (connected cover)")
        self.rho = rho_bar
        self.W: FiniteGroup = rho_bar.target
        self.base = SurfaceGroup(rho_bar.genus)
        W, n, m = self.W, self.W.order, len(rho_bar.images)
        self.gen_order = tuple(range(m)) if gen_order is None else tuple(gen_order)
        if sorted(self.gen_order) != list(range(m)):
            raise CoverError("gen_order must permute the generators")

        self.succ = [[W.mul[w][x] for x in rho_bar.images] for w in range(n)]
        self.pred = [[W.mul[w][W.inv[x]] for x in rho_bar.images] for w in range(n)]

        transversal = {W.identity: ()}
        tree = set()
        queue = deque([W.identity])
        while queue:
            w = queue.popleft()
            for i in self.gen_order:
                v = self.succ[w][i]
                if v not in transversal:
                    transversal[v] = transversal[w] + (i + 1,)
                    tree.add((w, i))
                    queue.append(v)
        self.transversal = transversal
        self.schreier_gens = [(w, i) for w in range(n) for i in range(m) if (w, i) not in tree]
        self.col = [[-1] * m for _ in range(n)]
        for c, (w, i) in enumerate(self.schreier_gens):
            self.col[w][i] = c
        self.r = len(self.schreier_gens)

        rel = self.base.relator()
        self.relator_matrix = [self.rewrite(rel, start=w)[0] for w in range(n)]
        self._action_cache: dict = {}
        self._transgression = None

    # -- rewriting
    def rewrite(self, word, start=None):
        """Exponent vector over the Schreier generators and the final coset."""
        w = self.W.identity if start is None else start
        exps = [0] * self.r
        col, succ, pred = self.col, self.succ, self.pred
        for letter in word:
            if letter > 0:
                i = letter - 1
                c = col[w][i]
                if c >= 0:
                    exps[c] += 1
                w = succ[w][i]
            else:
                i = -letter - 1
                w = pred[w][i]
                c = col[w][i]
                if c >= 0:
                    exps[c] -= 1
        return exps, w

    def rewrite_in_k(self, word) -> list[int]:
        exps, end = self.rewrite(word)
        if end != self.W.identity:
            raise CoverError("word does not lie in K")
        return exps

    def schreier_word(self, c: int) -> tuple:
        w, i = self.schreier_gens[c]
        return self.transversal[w] + (i + 1,) + inverse_word(self.transversal[self.succ[w][i]])

    @property
    def genus(self) -> int:
        return self.base.genus

    @property
    def cover_genus(self) -> int:
        return self.W.order * (self.genus - 1) + 1

    def kab_invariants(self) -> tuple[int, list[int]]:
        """``(free rank, torsion invariant factors)`` of ``K_ab``."""
        if not self.relator_matrix or not self.r:
            return self.r, []
        _, D, _ = smith_normal_form(self.relator_matrix)
        diag = [D[i][i] for i in range(min(len(D), self.r))]
        rank = sum(1 for d in diag if d)
        return self.r - rank, [d for d in diag if d > 1]

    def relator_rank(self) -> int:
        return integer_rank(self.relator_matrix) if self.relator_matrix else 0

    # -- bundles
    def phi_value(self, T: FinAbGroup, phi, exps):
        k = T.rank
        acc = [0] * k
        for c, e in enumerate(exps):
            if e:
                base = c * k
                for j in range(k):
                    acc[j] += e * phi[base + j]
        return T.reduce(acc)

    def phi_word(self, T: FinAbGroup, phi, word):
        return self.phi_value(T, phi, self.rewrite_in_k(word))

    def conjugation_exponents(self, w: int) -> list[list[int]]:
        """Row ``s``: exponents of ``t(w)^-1 s t(w)`` over the Schreier generators."""
        cached = self._action_cache.get(w)
        if cached is None:
            tw = self.transversal[w]
            cached = [
                self.rewrite_in_k(inverse_word(tw) + self.schreier_word(c) + tw)
                for c in range(self.r)
            ]
            self._action_cache[w] = cached
        return cached

    def transgression_exponents(self) -> list[list[int]]:
        """Exponents of ``t(w1) t(w2) t(w1 w2)^-1`` for every pair, indexed ``w1*|W|+w2``."""
        if self._transgression is None:
            W, tr = self.W, self.transversal
            self._transgression = [
                self.rewrite_in_k(tr[w1] + tr[w2] + inverse_word(tr[W.mul[w1][w2]]))
                for w1 in range(W.order) for w2 in range(W.order)
            ]
        return self._transgression


@dataclass(frozen=True)
class TBundle:
    cover: CoverPresentation
    T: FinAbGroup
    flat: tuple

    @property
    def values(self) -> list:
        k = self.T.rank
        return [tuple(self.flat[i * k:(i + 1) * k]) for i in range(self.cover.r)]

    def is_valid(self) -> bool:
        return all(self.cover.phi_value(self.T, self.flat, row) == self.T.zero()
                   for row in self.cover.relator_matrix)


def build_cover(rho_bar: SurfaceRep, gen_order=None) -> CoverPresentation:
    return CoverPresentation(rho_bar, gen_order)


def shuffled_cover(rho_bar: SurfaceRep, seed: int) -> CoverPresentation:
    order = list(range(len(rho_bar.images)))
    random.Random(seed).shuffle(order)
    return CoverPresentation(rho_bar, order)


def h1_cover(C: CoverPresentation, T: FinAbGroup) -> Subgroup:
    """``H^1(Z, T) = Hom(K_ab, T)`` as a subgroup of ``T^r``."""
    return hom_solutions(C.relator_matrix, T, C.r)


def twisted_action(C: CoverPresentation, sigma: GAction, w: int, phi) -> tuple:
    """``(w.phi)(k) = sigma(w)(phi(t(w)^-1 k t(w)))``."""
    T = sigma.target
    rows = C.conjugation_exponents(w)
    out = []
    for row in rows:
        out.extend(sigma.apply(w, C.phi_value(T, phi, row)))
    return tuple(out)


def _twist_rows(C: CoverPresentation, sigma: GAction, w: int):
    """Rows of ``phi -> w.phi - phi`` over the flattened coordinates of ``T^r``."""
    T = sigma.target
    k = T.rank
    rows, mods = [], []
    for s, ex in enumerate(C.conjugation_exponents(w)):
        for i, d in enumerate(T.cyclic_orders):
            row: dict = {}
            for s2, e in enumerate(ex):
                if not e:
                    continue
                for j in range(k):
                    a = e * sigma.coefficient(w, i, j)
                    if a % d:
                        row[s2 * k + j] = row.get(s2 * k + j, 0) + a
            row[s * k + i] = row.get(s * k + i, 0) - 1
            row = {c: a % d for c, a in row.items() if a % d}
            rows.append(row)
            mods.append(d)
    return rows, mods


def _relator_rows(C: CoverPresentation, T: FinAbGroup):
    k = T.rank
    rows, mods = [], []
    for rel in C.relator_matrix:
        for j, d in enumerate(T.cyclic_orders):
            row = {c * k + j: e % d for c, e in enumerate(rel) if e % d}
            rows.append(row)
            mods.append(d)
    return rows, mods


def invariants_subgroup(C: CoverPresentation, sigma: GAction, acting=None) -> Subgroup:
    """``H^1(Z, T)^W`` under the twisted action, verified on every element.

    ``acting`` optionally restricts to the subgroup generated by the given
    elements of ``W``.
    """
    T = sigma.target
    amb = T.power(C.r)
    rows, mods = _relator_rows(C, T)
    W = C.W
    gens = C.rho.images if acting is None else acting
    for w in sorted(set(gens) - {W.identity}):
        r2, m2 = _twist_rows(C, sigma, w)
        rows += r2
        mods += m2
    inv = Subgroup.generated_by(amb, kernel_generators(rows, mods, list(amb.cyclic_orders)))
    check = range(W.order) if acting is None else sorted(W.generated(acting))
    for phi in inv.gens:
        for w in check:
            if twisted_action(C, sigma, w, phi) != phi:
                raise CoverError("invariant subgroup failed verification")
    return inv


# ---------------------------------------------------------------------------
# Crossed homomorphisms of pi and restriction to K


def word_linear(rho_bar: SurfaceRep, sigma: GAction, word):
    """Linear part of a word under ``x_i -> (u_i, rho_bar(x_i))`` in ``T x| W``.

    Returns ``(coeffs, image)`` with ``coeffs[i]`` the integer matrix
    (``coeffs[i][a][b]``: output coordinate ``a``, input coordinate ``b``)
    multiplying ``u_i``, and ``image`` the product in ``W``.
    """
    W, T = sigma.source, sigma.target
    k = T.rank
    coeffs: dict = {}
    prefix = W.identity
    for letter in word:
        i = abs(letter) - 1
        x = rho_bar.images[i]
        if letter > 0:
            c, sign = prefix, 1
            prefix = W.mul[prefix][x]
        else:
            prefix = W.mul[prefix][W.inv[x]]
            c, sign = prefix, -1
        m = coeffs.setdefault(i, [[0] * k for _ in range(k)])
        for a in range(k):
            for b in range(k):
                m[a][b] += sign * sigma.coefficient(c, a, b)
    return coeffs, prefix


def apply_linear(T: FinAbGroup, coeffs, u) -> tuple:
    """Evaluate ``sum_i coeffs[i] u_i`` with ``u`` flat in ``T^(2g)``."""
    k = T.rank
    acc = [0] * k
    for i, m in coeffs.items():
        ui = u[i * k:(i + 1) * k]
        for a in range(k):
            acc[a] += sum(m[a][b] * ui[b] for b in range(k))
    return T.reduce(acc)


def linear_rows(T: FinAbGroup, coeffs, offset: int = 0):
    """Rows (one per coordinate of T) of the map ``u -> sum_i coeffs[i] u_i``."""
    k = T.rank
    rows = []
    for a, d in enumerate(T.cyclic_orders):
        row = {}
        for i, m in coeffs.items():
            for b in range(k):
                if m[a][b] % d:
                    row[offset + i * k + b] = m[a][b] % d
        rows.append(row)
    return rows, list(T.cyclic_orders)


def crossed_homs(rho_bar: SurfaceRep, sigma: GAction) -> Subgroup:
    """``Z^1(pi, T)`` for ``pi`` acting through ``rho_bar`` and ``sigma``, as
    the values on the generators (a subgroup of ``T^(2g)``)."""
    T = sigma.target
    amb = T.power(len(rho_bar.images))
    coeffs, _ = word_linear(rho_bar, sigma, SurfaceGroup(rho_bar.genus).relator())
    rows, mods = linear_rows(T, coeffs)
    return Subgroup.generated_by(amb, kernel_generators(rows, mods, list(amb.cyclic_orders)))


def restrict_crossed_hom(C: CoverPresentation, sigma: GAction, u) -> tuple:
    """The bundle ``D|_K`` of a crossed homomorphism given by generator values ``u``."""
    T = sigma.target
    out = []
    for c in range(C.r):
        coeffs, _ = word_linear(C.rho, sigma, C.schreier_word(c))
        out.extend(apply_linear(T, coeffs, u))
    return tuple(out)


def restriction_image(C: CoverPresentation, sigma: GAction) -> Subgroup:
    T = sigma.target
    Z1 = crossed_homs(C.rho, sigma)
    return Subgroup.generated_by(T.power(C.r), [restrict_crossed_hom(C, sigma, u) for u in Z1.gens])


def restriction_kernel(C: CoverPresentation, sigma: GAction) -> Subgroup:
    T = sigma.target
    Z1 = crossed_homs(C.rho, sigma)
    return Z1.kernel_of([restrict_crossed_hom(C, sigma, u) for u in Z1.gens], T.power(C.r))


def transport(phi, T: FinAbGroup, source: CoverPresentation, target: CoverPresentation) -> tuple:
    """Re-express a bundle on ``source``'s Schreier generators on ``target``'s."""
    out = []
    for c in range(target.r):
        out.extend(source.phi_word(T, phi, target.schreier_word(c)))
    return tuple(out)
