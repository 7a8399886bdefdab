"""Finite groups as multiplication tables, and actions on finite abelian groups."""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field

from .abelian import AbElement, FinAbGroup

DEFAULT_ORDER_BOUND = 10_000


class GroupError(ValueError):
    pass


@dataclass(eq=False)
class FiniteGroup:
    """A finite group on the indices ``0 .. order-1``.

    ``mul[a][b]`` is the index of ``a*b``.  ``labels`` optionally carries a
    human-readable or structural name for each element (for groups built from
    permutations it is the permutation tuple, 0-based, acting on the left).
    """

    mul: tuple
    identity: int = 0
    labels: tuple | None = None
    name: str = "G"
    inv: tuple = field(init=False)

    def __post_init__(self):
        self.mul = tuple(tuple(row) for row in self.mul)
        n = len(self.mul)
        e = self.identity
        inv = [None] * n
        for a in range(n):
            row = self.mul[a]
            for b in range(n):
                if row[b] == e:
                    inv[a] = b
                    break
        if any(i is None for i in inv):
            raise GroupError("table has an element without inverse")
        self.inv = tuple(inv)

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def prod(self, elements) -> int:
        acc = self.identity
        mul = self.mul
        for x in elements:
            acc = mul[acc][x]
        return acc

    def commutator(self, a: int, b: int) -> int:
        mul, inv = self.mul, self.inv
        return mul[mul[mul[a][b]][inv[a]]][inv[b]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        acc = self.identity
        for _ in range(k):
            acc = self.mul[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def order_profile(self) -> tuple:
        return tuple(sorted(Counter(self.element_order(a) for a in range(self.order)).items()))

    def is_abelian(self) -> bool:
        mul = self.mul
        return all(mul[a][b] == mul[b][a] for a in range(self.order) for b in range(a))

    def label(self, a: int):
        return self.labels[a] if self.labels is not None else a

    def check_axioms(self) -> None:
        """Exhaustive check of associativity, identity and inverses."""
        n, mul, e = self.order, self.mul, self.identity
        for a in range(n):
            if mul[a][e] != a or mul[e][a] != a:
                raise GroupError(f"identity fails at {a}")
            if mul[a][self.inv[a]] != e or mul[self.inv[a]][a] != e:
                raise GroupError(f"inverse fails at {a}")
            if sorted(mul[a]) != list(range(n)):
                raise GroupError(f"row {a} is not a permutation")
        for a in range(n):
            ra = mul[a]
            for b in range(n):
                rab = mul[ra[b]]
                rb = mul[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise GroupError(f"associativity fails at {(a, b, c)}")

    def generated(self, gens) -> set[int]:
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def generating_set(self) -> list[int]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        span = {self.identity}
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = self.generated(gens)
                if len(span) == self.order:
                    break
        return gens

    def centralizer(self, elements) -> list[int]:
        mul = self.mul
        return [g for g in range(self.order) if all(mul[g][x] == mul[x][g] for x in elements)]

    def center(self) -> list[int]:
        return self.centralizer(range(self.order))

    def conjugacy_classes(self) -> list[list[int]]:
        seen, classes = set(), []
        for a in range(self.order):
            if a in seen:
                continue
            cls = sorted({self.conj(g, a) for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    @classmethod
    def from_table(cls, table, labels=None, name="G") -> "FiniteGroup":
        n = len(table)
        ident = next(
            (a for a in range(n) if all(table[a][b] == b for b in range(n))), None
        )
        if ident is None:
            raise GroupError("table has no identity")
        return cls(mul=table, identity=ident, labels=labels, name=name)


def conjugation_action(G: FiniteGroup, g: int) -> tuple[int, ...]:
    """The inner automorphism ``x -> g x g^-1`` as a permutation of indices."""
    return tuple(G.conj(g, x) for x in range(G.order))


# ---------------------------------------------------------------------------
# Permutation groups


def compose(p: tuple, q: tuple) -> tuple:
    """``p o q`` (apply ``q`` first)."""
    return tuple(p[i] for i in q)


def perm_from_cycles(cycles, degree: int) -> tuple:
    """Permutation of ``0..degree-1`` from 1-based cycle lists."""
    img = list(range(degree))
    for cyc in cycles:
        cyc = [c - 1 for c in cyc]
        if any(not 0 <= c < degree for c in cyc):
            raise GroupError(f"cycle {cyc} out of range for degree {degree}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    if sorted(img) != list(range(degree)):
        raise GroupError("cycles do not define a bijection")
    return tuple(img)


def parity(p: tuple) -> int:
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def from_permutations(generators, max_order: int = DEFAULT_ORDER_BOUND, name="G") -> FiniteGroup:
    """Close a set of permutations under composition.

    Element 0 is the identity; the other elements appear in breadth-first
    order over the generators.  ``labels`` keeps the permutations.
    """
    generators = [tuple(p) for p in generators]
    degree = len(generators[0]) if generators else 0
    if any(len(p) != degree or sorted(p) != list(range(degree)) for p in generators):
        raise GroupError("generators must be bijections of one finite set")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = compose(x, g)
            if y not in index:
                if len(elements) >= max_order:
                    raise GroupError(f"closure exceeds order bound {max_order}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = [[index[compose(p, q)] for q in elements] for p in elements]
    return FiniteGroup(mul=table, identity=0, labels=tuple(elements), name=name)


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(mul=((0,),), labels=((0,),), name="C1")
    g = tuple((i + 1) % n for i in range(n))
    G = from_permutations([g], name=f"C{n}")
    return G


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup(mul=((0,),), labels=((0,),), name="S1")
    gens = [perm_from_cycles([[1, 2]], n)]
    if n > 2:
        gens.append(perm_from_cycles([list(range(1, n + 1))], n))
    return from_permutations(gens, name=f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` (for ``n == 2`` the Klein four-group)."""
    if n == 1:
        return cyclic(2)
    if n == 2:
        return from_permutations(
            [perm_from_cycles([[1, 2]], 4), perm_from_cycles([[3, 4]], 4)], name="D4"
        )
    rot = perm_from_cycles([list(range(1, n + 1))], n)
    refl = tuple((-i) % n for i in range(n))
    return from_permutations([rot, refl], name=f"D{2 * n}")


def klein() -> FiniteGroup:
    return dihedral(2)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n = H.order
    table = [
        [G.mul[a // n][b // n] * n + H.mul[a % n][b % n] for b in range(G.order * n)]
        for a in range(G.order * n)
    ]
    labels = tuple((G.label(a // n), H.label(a % n)) for a in range(G.order * n))
    return FiniteGroup(mul=table, identity=G.identity * n + H.identity, labels=labels,
                       name=f"{G.name}x{H.name}")


def abelian_as_group(T: FinAbGroup) -> FiniteGroup:
    elems = list(T.elements())
    table = [[T.index(T.add(a, b)) for b in elems] for a in elems]
    return FiniteGroup(mul=table, identity=0, labels=tuple(elems), name=str(T))


# ---------------------------------------------------------------------------
# Actions on finite abelian groups


class GAction:
    """An action ``sigma: W -> Aut(T)`` stored per element of ``W``.

    ``mats[w]`` lists the images of the standard generators of ``T`` (its
    columns); ``apply(w, t)`` evaluates the automorphism.
    """

    def __init__(self, source: FiniteGroup, target: FinAbGroup, mats, check: bool = True):
        self.source = source
        self.target = target
        self.mats = [tuple(tuple(target.reduce(col)) for col in m) for m in mats]
        if len(self.mats) != source.order:
            raise GroupError("one matrix per group element is required")
        self._table = None
        if check:
            self.check()

    def apply(self, w: int, t: AbElement) -> AbElement:
        T = self.target
        acc = [0] * T.rank
        for x, col in zip(t, self.mats[w]):
            if x:
                for i, c in enumerate(col):
                    acc[i] += x * c
        return T.reduce(acc)

    def coefficient(self, w: int, i: int, j: int) -> int:
        """Entry ``(i, j)``: coordinate ``i`` of the image of generator ``j``."""
        return self.mats[w][j][i]

    def is_trivial(self) -> bool:
        ident = self.mats[self.source.identity]
        return all(m == ident for m in self.mats)

    def table(self):
        """Full lookup ``table[w][index(t)] -> index(sigma(w) t)``."""
        if self._table is None:
            T = self.target
            elems = list(T.elements())
            self._table = [
                [T.index(self.apply(w, t)) for t in elems] for w in range(self.source.order)
            ]
        return self._table

    def check(self) -> None:
        W, T = self.source, self.target
        basis = [tuple(int(i == j) for j in range(T.rank)) for i in range(T.rank)]
        for w in range(W.order):
            if not T.automorphism_ok(self.mats[w]):
                raise GroupError(f"sigma({w}) is not well defined on {T}")
        for b in basis:
            if self.apply(W.identity, b) != b:
                raise GroupError("sigma(e) is not the identity")
        for w1 in range(W.order):
            for w2 in range(W.order):
                w12 = W.mul[w1][w2]
                for b in basis:
                    if self.apply(w12, b) != self.apply(w1, self.apply(w2, b)):
                        raise GroupError(f"sigma is not multiplicative at {(w1, w2)}")
        # invertibility follows from multiplicativity: sigma(w) sigma(w^-1) = id

    @classmethod
    def trivial(cls, W: FiniteGroup, T: FinAbGroup) -> "GAction":
        ident = [tuple(int(i == j) for i in range(T.rank)) for j in range(T.rank)]
        return cls(W, T, [ident] * W.order, check=False)

    @classmethod
    def by_sign(cls, W: FiniteGroup, T: FinAbGroup, sign) -> "GAction":
        """``w`` acts as multiplication by ``sign[w]`` (a homomorphism to +-1)."""
        mats = []
        for w in range(W.order):
            s = sign[w]
            mats.append([tuple(s * int(i == j) for i in range(T.rank)) for j in range(T.rank)])
        return cls(W, T, mats)

    @classmethod
    def inversion(cls, W: FiniteGroup, T: FinAbGroup) -> "GAction":
        """Odd permutations act by ``t -> -t``; ``W`` must carry permutation labels."""
        return cls.by_sign(W, T, [parity(W.label(w)) for w in range(W.order)])

    @classmethod
    def permutation(cls, W: FiniteGroup, n: int) -> "GAction":
        """``W`` (permutations of ``n`` points) permuting the factors of ``(Z/2)^n``."""
        T = FinAbGroup((2,) * n)
        mats = []
        for w in range(W.order):
            p = W.label(w)
            mats.append([tuple(int(i == p[j]) for i in range(n)) for j in range(n)])
        return cls(W, T, mats)

    @classmethod
    def even_permutation(cls, W: FiniteGroup, n: int) -> "GAction":
        """Permutation action on the even-weight subgroup of ``(Z/2)^n``.

        The subgroup is ``(Z/2)^(n-1)`` with basis ``b_i = e_i + e_n``; a vector
        of even weight has coordinates equal to its first ``n-1`` entries.
        """
        T = FinAbGroup((2,) * (n - 1))
        mats = []
        for w in range(W.order):
            p = W.label(w)
            cols = []
            for j in range(n - 1):
                v = [0] * n
                v[p[j]] ^= 1
                v[p[n - 1]] ^= 1
                cols.append(tuple(v[: n - 1]))
            mats.append(cols)
        return cls(W, T, mats)


def twisted_product(T: FinAbGroup, W: FiniteGroup, sigma: GAction, f=None, name="N"):
    """The group on ``T x W`` with ``(t1,w1)(t2,w2) = (t1 + w1.t2 + f(w1,w2), w1 w2)``.

    ``f`` is a dense 2-cochain (list indexed by ``w1*|W| + w2``) or ``None``
    for the split product.  Element ``(t, w)`` has index ``w*|T| + index(t)``.
    Returns ``(N, embed, project)`` with ``embed[index(t)]`` and ``project[n]``.
    """
    nT, nW = T.order, W.order
    elems = list(T.elements())
    act = sigma.table()
    add = [[T.index(T.add(a, b)) for b in elems] for a in elems]
    fidx = [0] * (nW * nW) if f is None else [T.index(x) for x in f]
    table = []
    for w1 in range(nW):
        row_w = W.mul[w1]
        act_w = act[w1]
        for t1 in range(nT):
            add_t1 = add[t1]
            row = [0] * (nT * nW)
            for w2 in range(nW):
                base = row_w[w2] * nT
                ff = fidx[w1 * nW + w2]
                for t2 in range(nT):
                    row[w2 * nT + t2] = base + add[add_t1[act_w[t2]]][ff]
            table.append(row)
    labels = tuple((elems[i % nT], W.label(i // nT)) for i in range(nT * nW))
    N = FiniteGroup(mul=table, identity=W.identity * nT, labels=labels, name=name)
    embed = [W.identity * nT + i for i in range(nT)]
    project = [i // nT for i in range(nT * nW)]
    return N, embed, project


def semidirect(T: FinAbGroup, W: FiniteGroup, sigma: GAction, name="N"):
    """``T x| W`` with its marked embedding and projection."""
    return twisted_product(T, W, sigma, None, name=name)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, max_order: int = 16):
    """An isomorphism ``G -> H`` as an index list, or ``None``.

    Exhaustive search for orders up to ``max_order``; beyond that only the
    order profile is compared and ``None`` is returned on mismatch while a
    match raises ``GroupError`` (inconclusive).
    """
    if G.order != H.order or G.order_profile() != H.order_profile():
        return None
    if G.order > max_order:
        raise GroupError("isomorphism search beyond the exhaustive bound")
    gens = G.generating_set()
    candidates = [
        [h for h in range(H.order) if H.element_order(h) == G.element_order(g)] for g in gens
    ]
    for images in itertools.product(*candidates):
        phi = _extend_hom(G, H, gens, images)
        if phi is not None and len(set(phi)) == G.order:
            return phi
    return None


def _extend_hom(G, H, gens, images):
    phi = {G.identity: H.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y = G.mul[x][g]
            hy = H.mul[phi[x]][h]
            if y in phi:
                if phi[y] != hy:
                    return None
            else:
                phi[y] = hy
                queue.append(y)
    out = [phi[x] for x in range(G.order)]
    for a in range(G.order):
        for b in range(G.order):
            if out[G.mul[a][b]] != H.mul[out[a]][out[b]]:
                return None
    return out
