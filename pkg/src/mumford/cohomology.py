"""Bar-resolution cochains of a finite group with coefficients in (T, sigma).

Convention (additive): for a 1-cochain ``theta``

    (d theta)(w1, w2) = w1.theta(w2) - theta(w1 w2) + theta(w1)

and for a 2-cochain ``f``

    (d f)(w1, w2, w3) = w1.f(w2, w3) - f(w1 w2, w3) + f(w1, w2 w3) - f(w1, w2).

Cochains are dense: a degree-n cochain is a list of ``|W|^n`` elements of T
indexed by ``w1*|W|^(n-1) + ... + wn``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .abelian import FinAbGroup, Subgroup, kernel_generators, quotient, solve_system
from .group import FiniteGroup, GAction


class CohomologyError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


DEFAULT_H2_BUDGET = 5_000_000


@dataclass(frozen=True)
class Cochain:
    degree: int
    table: tuple

    def __getitem__(self, i):
        return self.table[i]

    def __len__(self) -> int:
        return len(self.table)


def zero_cochain(n: int, W: FiniteGroup, T: FinAbGroup) -> Cochain:
    return Cochain(n, (T.zero(),) * W.order ** n)


def cochain_from_function(n: int, W: FiniteGroup, fn) -> Cochain:
    return Cochain(n, tuple(fn(*ws) for ws in itertools.product(range(W.order), repeat=n)))


def add(a: Cochain, b: Cochain, T: FinAbGroup) -> Cochain:
    return Cochain(a.degree, tuple(T.add(x, y) for x, y in zip(a.table, b.table)))


def sub(a: Cochain, b: Cochain, T: FinAbGroup) -> Cochain:
    return Cochain(a.degree, tuple(T.sub(x, y) for x, y in zip(a.table, b.table)))


def scale(k: int, a: Cochain, T: FinAbGroup) -> Cochain:
    return Cochain(a.degree, tuple(T.scale(k, x) for x in a.table))


def coboundary(c: Cochain, sigma: GAction) -> Cochain:
    W, T = sigma.source, sigma.target
    n, mul = W.order, W.mul
    act, add_, sub_ = sigma.apply, T.add, T.sub
    if c.degree == 0:
        t = c.table[0]
        return Cochain(1, tuple(T.sub(act(w, t), t) for w in range(n)))
    if c.degree == 1:
        th = c.table
        return Cochain(2, tuple(
            add_(sub_(act(w1, th[w2]), th[mul[w1][w2]]), th[w1])
            for w1 in range(n) for w2 in range(n)
        ))
    if c.degree == 2:
        f = c.table
        out = []
        for w1 in range(n):
            for w2 in range(n):
                w12 = mul[w1][w2]
                for w3 in range(n):
                    v = act(w1, f[w2 * n + w3])
                    v = sub_(v, f[w12 * n + w3])
                    v = add_(v, f[w1 * n + mul[w2][w3]])
                    out.append(sub_(v, f[w1 * n + w2]))
        return Cochain(3, tuple(out))
    raise CohomologyError("coboundary is implemented for degrees 0, 1, 2")


def is_cocycle(c: Cochain, sigma: GAction) -> bool:
    T = sigma.target
    return all(x == T.zero() for x in coboundary(c, sigma).table)


def is_normalized(f: Cochain, W: FiniteGroup, T: FinAbGroup) -> bool:
    n, e, z = W.order, W.identity, T.zero()
    return all(f.table[e * n + w] == z and f.table[w * n + e] == z for w in range(n))


def normalize(f: Cochain, sigma: GAction) -> tuple[Cochain, Cochain]:
    """Return ``(f + d theta, theta)`` with the result normalized.

    For a 2-cocycle ``f(e, w) = f(e, e)`` for all ``w``, so the constant
    1-cochain ``theta = -f(e, e)`` suffices.
    """
    W, T = sigma.source, sigma.target
    if not is_cocycle(f, sigma):
        raise CohomologyError("only cocycles can be normalized")
    c = f.table[W.identity * W.order + W.identity]
    theta = Cochain(1, (T.neg(c),) * W.order)
    g = add(f, coboundary(theta, sigma), T)
    return g, theta


# ---------------------------------------------------------------------------
# Linear systems over T


def _d1_rows(sigma: GAction, var_index):
    """Rows of ``d: C^1 -> C^2`` as sparse dicts, one per (pair, coordinate).

    ``var_index(w, j)`` gives the column of coordinate ``j`` of ``theta(w)``
    or ``None`` when that value is pinned to zero.
    """
    W, T = sigma.source, sigma.target
    n, k = W.order, T.rank
    rows, mods = [], []
    for w1 in range(n):
        for w2 in range(n):
            w12 = W.mul[w1][w2]
            for i, d in enumerate(T.cyclic_orders):
                row: dict = {}

                def put(col, a):
                    if col is not None and a % d:
                        row[col] = (row.get(col, 0) + a) % d
                        if row[col] == 0:
                            del row[col]

                for j in range(k):
                    put(var_index(w2, j), sigma.coefficient(w1, i, j))
                put(var_index(w12, i), -1)
                put(var_index(w1, i), 1)
                rows.append(row)
                mods.append(d)
    return rows, mods


class H2Data:
    """``H^2(W, T; sigma)`` computed on normalized cochains.

    ``group`` is the abstract group ``prod Z/orders``; ``project(f)`` returns
    the coordinates of a normalized 2-cocycle's class.
    """

    def __init__(self, sigma: GAction, budget: int = DEFAULT_H2_BUDGET):
        W, T = sigma.source, sigma.target
        self.sigma, self.W, self.T = sigma, W, T
        n, k, e = W.order, T.rank, W.identity
        if n ** 3 * max(k, 1) > budget:
            raise BudgetExceeded(f"H^2 system with |W|={n} exceeds budget {budget}")
        self.pairs = [(a, b) for a in range(n) for b in range(n) if a != e and b != e]
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.ambient = T.power(len(self.pairs))

        self.Z2 = Subgroup.generated_by(
            self.ambient,
            kernel_generators(*self._cocycle_rows(), list(self.ambient.cyclic_orders)),
        )
        self.B2 = Subgroup.generated_by(self.ambient, self._coboundary_gens())
        rels = []
        for b in self.B2.gens:
            c = self.Z2.coords(b)
            if c is None:
                raise CohomologyError("coboundary outside the cocycle group")
            rels.append(c)
        self.orders, self._lifts, self._proj = quotient(self.Z2.orders, rels)
        self.group = FinAbGroup(tuple(self.orders))
        self.basis = [
            self.cohclass(tuple(int(i == j) for j in range(len(self.orders))))
            for i in range(len(self.orders))
        ]

    # -- flattening between dense normalized cochains and ambient vectors
    def flatten(self, f: Cochain) -> tuple:
        n = self.W.order
        return tuple(x for (a, b) in self.pairs for x in f.table[a * n + b])

    def unflatten(self, v) -> Cochain:
        n, k, T = self.W.order, self.T.rank, self.T
        table = [T.zero()] * (n * n)
        for p, (a, b) in enumerate(self.pairs):
            table[a * n + b] = tuple(v[p * k:(p + 1) * k])
        return Cochain(2, tuple(table))

    def _cocycle_rows(self):
        W, T, sigma = self.W, self.T, self.sigma
        n, k, e = W.order, T.rank, W.identity
        idx = self.pair_index
        rows, mods = [], []
        for w1 in range(n):
            if w1 == e:
                continue
            for w2 in range(n):
                if w2 == e:
                    continue
                w12 = W.mul[w1][w2]
                for w3 in range(n):
                    if w3 == e:
                        continue
                    w23 = W.mul[w2][w3]
                    for i, d in enumerate(T.cyclic_orders):
                        row: dict = {}

                        def put(pair, coord, a):
                            if pair[0] == e or pair[1] == e or a % d == 0:
                                return
                            col = idx[pair] * k + coord
                            row[col] = (row.get(col, 0) + a) % d
                            if row[col] == 0:
                                del row[col]

                        for j in range(k):
                            put((w2, w3), j, sigma.coefficient(w1, i, j))
                        put((w12, w3), i, -1)
                        put((w1, w23), i, 1)
                        put((w1, w2), i, -1)
                        if row:
                            rows.append(row)
                            mods.append(d)
        return rows, mods

    def _coboundary_gens(self):
        W, T = self.W, self.T
        gens = []
        for w in range(W.order):
            if w == W.identity:
                continue
            for j in range(T.rank):
                table = [T.zero()] * W.order
                table[w] = tuple(int(i == j) for i in range(T.rank))
                gens.append(self.flatten(coboundary(Cochain(1, tuple(table)), self.sigma)))
        return gens

    @property
    def order(self) -> int:
        return self.group.order

    def project(self, f: Cochain) -> tuple:
        """Class coordinates of a normalized 2-cocycle."""
        if f.degree != 2 or not is_normalized(f, self.W, self.T):
            raise CohomologyError("project expects a normalized 2-cochain")
        c = self.Z2.coords(self.flatten(f))
        if c is None:
            raise CohomologyError("not a cocycle")
        return self.project_z2(c)

    def project_z2(self, c) -> tuple:
        return tuple(
            sum(a * b for a, b in zip(row, c)) % d for row, d in zip(self._proj, self.orders)
        )

    def representative(self, coords) -> Cochain:
        """Deterministic normalized cocycle in the class with the given coordinates."""
        z = [0] * len(self.Z2.orders)
        for c, lift in zip(coords, self._lifts):
            for i, x in enumerate(lift):
                z[i] += c * x
        return self.unflatten(self.Z2.combine(z))

    def cohclass(self, coords) -> "CohClass":
        coords = self.group.reduce(coords)
        return CohClass(self.group, self.representative(coords), coords)

    def classes(self):
        return [self.cohclass(c) for c in self.group.elements()]

    def class_of(self, f: Cochain) -> "CohClass":
        return self.cohclass(self.project(f))

    def random_cocycle(self, rng) -> Cochain:
        coords = [rng.randrange(d) for d in self.Z2.orders]
        return self.unflatten(self.Z2.combine(coords))


@dataclass(frozen=True)
class CohClass:
    group: FinAbGroup
    rep: Cochain
    coords: tuple

    def is_zero(self) -> bool:
        return not any(self.coords)


_H2_CACHE: dict = {}


def h2(W: FiniteGroup, T: FinAbGroup, sigma: GAction, budget: int = DEFAULT_H2_BUDGET) -> H2Data:
    """``H^2(W, T; sigma)``.

    Cached per (W, T, action matrices) so that equal actions share one
    coordinate system for classes.
    """
    if sigma.source is not W or sigma.target != T:
        raise CohomologyError("sigma must act by W on T")
    key = (id(W), T, tuple(sigma.mats))
    hit = _H2_CACHE.get(key)
    if hit is None or hit[0] is not W:
        hit = (W, H2Data(sigma, budget))
        _H2_CACHE[key] = hit
    return hit[1]


def cohomologous(f: Cochain, g: Cochain, sigma: GAction) -> Cochain | None:
    """A 1-cochain ``theta`` with ``f - g = d theta``, or ``None``."""
    W, T = sigma.source, sigma.target
    if not (is_cocycle(f, sigma) and is_cocycle(g, sigma)):
        raise CohomologyError("inputs must be 2-cocycles")
    k = T.rank
    rows, mods = _d1_rows(sigma, lambda w, j: w * k + j)
    diff = sub(f, g, T)
    rhs = [x for val in diff.table for x in val]
    x = solve_system(rows, mods, list(T.power(W.order).cyclic_orders), rhs)
    if x is None:
        return None
    theta = Cochain(1, tuple(tuple(x[w * k:(w + 1) * k]) for w in range(W.order)))
    if sub(diff, coboundary(theta, sigma), T) != zero_cochain(2, W, T):
        raise CohomologyError("internal error: solution does not verify")
    return theta


@dataclass
class H1Data:
    Z1: Subgroup
    B1: Subgroup

    @property
    def order(self) -> int:
        return self.Z1.order // self.B1.order


def h1(W: FiniteGroup, T: FinAbGroup, sigma: GAction) -> H1Data:
    """Crossed homomorphisms modulo principal ones, on all 1-cochains."""
    cached = getattr(sigma, "_h1", None)
    if cached is not None:
        return cached
    k = T.rank
    amb = T.power(W.order)
    rows, mods = _d1_rows(sigma, lambda w, j: w * k + j)
    Z1 = Subgroup.generated_by(amb, kernel_generators(rows, mods, list(amb.cyclic_orders)))
    B1 = Subgroup.generated_by(amb, [
        tuple(x for w in range(W.order) for x in T.sub(sigma.apply(w, b), b))
        for b in (tuple(int(i == j) for j in range(k)) for i in range(k))
    ])
    sigma._h1 = H1Data(Z1, B1)
    return sigma._h1
