"""Independent brute-force and mod-p oracles.

Nothing here uses the integer linear algebra of :mod:`mumford.abelian`;
these routines enumerate or row-reduce directly so that they can cross-check
the main code paths.
"""

from __future__ import annotations

import itertools

from .abelian import FinAbGroup
from .cohomology import BudgetExceeded
from .group import FiniteGroup, GAction


def _act(sigma: GAction, w: int, t) -> tuple:
    T = sigma.target
    k = T.rank
    return tuple(
        sum(sigma.mats[w][j][i] * t[j] for j in range(k)) % T.cyclic_orders[i] for i in range(k)
    )


def _add(T: FinAbGroup, *vs) -> tuple:
    return tuple(sum(c) % d for c, d in zip(zip(*vs), T.cyclic_orders))


def _neg(T: FinAbGroup, v) -> tuple:
    return tuple(-x % d for x, d in zip(v, T.cyclic_orders))


def brute_h2_order(W: FiniteGroup, T: FinAbGroup, sigma: GAction, budget: int = 10 ** 6) -> int:
    """``|Z^2| / |B^2|`` by enumerating every normalized cochain."""
    n, e = W.order, W.identity
    rest = [w for w in range(n) if w != e]
    pairs = [(a, b) for a in rest for b in rest]
    elems = [tuple(t) for t in itertools.product(*(range(d) for d in T.cyclic_orders))]
    if len(elems) ** len(pairs) > budget:
        raise BudgetExceeded("brute-force H^2 beyond budget")
    zero = tuple(0 for _ in T.cyclic_orders)
    mul = W.mul

    def cocycle(f) -> bool:
        for a in rest:
            for b in rest:
                ab = mul[a][b]
                for c in rest:
                    lhs = _add(T, _act(sigma, a, f.get((b, c), zero)), f.get((a, mul[b][c]), zero))
                    rhs = _add(T, f.get((ab, c), zero), f.get((a, b), zero))
                    if lhs != rhs:
                        return False
        return True

    z = 0
    for vals in itertools.product(elems, repeat=len(pairs)):
        f = {p: v for p, v in zip(pairs, vals) if any(v)}
        if cocycle(f):
            z += 1
    boundaries = set()
    for vals in itertools.product(elems, repeat=len(rest)):
        th = dict(zip(rest, vals))
        th[e] = zero
        boundaries.add(tuple(
            _add(T, _act(sigma, a, th[b]), _neg(T, th[mul[a][b]]), th[a]) for a, b in pairs
        ))
    if z % len(boundaries):
        raise ArithmeticError("coboundaries do not divide cocycles")
    return z // len(boundaries)


def rank_mod_p(rows, p: int) -> int:
    """Rank over ``GF(p)`` of a list of dense integer rows."""
    rows = [[x % p for x in r] for r in rows]
    rank, cols = 0, len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def gfp_h2_order(W: FiniteGroup, T: FinAbGroup, sigma: GAction) -> int:
    """``|H^2|`` for elementary abelian ``T = (Z/p)^k`` from the ranks of the
    coboundary maps on inhomogeneous (not normalized) cochains."""
    p = T.cyclic_orders[0] if T.cyclic_orders else 2
    if any(d != p for d in T.cyclic_orders):
        raise ValueError("GF(p) oracle needs an elementary abelian group")
    n, k, mul = W.order, T.rank, W.mul

    def c1(a, i):
        return a * k + i

    def c2(a, b, i):
        return (a * n + b) * k + i

    d1 = []
    for a in range(n):
        for b in range(n):
            for i in range(k):
                row = [0] * (n * k)
                for j in range(k):
                    row[c1(b, j)] += sigma.mats[a][j][i]
                row[c1(mul[a][b], i)] -= 1
                row[c1(a, i)] += 1
                d1.append(row)
    d2 = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for i in range(k):
                    row = [0] * (n * n * k)
                    for j in range(k):
                        row[c2(b, c, j)] += sigma.mats[a][j][i]
                    row[c2(mul[a][b], c, i)] -= 1
                    row[c2(a, mul[b][c], i)] += 1
                    row[c2(a, b, i)] -= 1
                    d2.append(row)
    # d1 as a map C^1 -> C^2 has matrix rows indexed by C^2; its rank is dim B^2
    dim_b2 = rank_mod_p(d1, p)
    dim_z2 = n * n * k - rank_mod_p(d2, p)
    return p ** (dim_z2 - dim_b2)


def brute_hom_count(g: int, G: FiniteGroup, budget: int = 10 ** 7) -> int:
    """``|Hom(pi_g, G)|`` by testing every tuple of ``2g`` elements."""
    n = G.order
    if n ** (2 * g) > budget:
        raise BudgetExceeded("brute-force hom count beyond budget")
    comm = [[G.commutator(a, b) for b in range(n)] for a in range(n)]
    count = 0
    for t in itertools.product(range(n), repeat=2 * g):
        acc = G.identity
        for j in range(0, 2 * g, 2):
            acc = G.mul[acc][comm[t[j]][t[j + 1]]]
        count += acc == G.identity
    return count


def brute_bundles(C, T: FinAbGroup, budget: int = 10 ** 6):
    """Every ``phi`` in ``T^r`` killing the relator rows, by enumeration."""
    k = T.rank
    if T.order ** C.r > budget:
        raise BudgetExceeded("brute-force bundle enumeration beyond budget")
    elems = [tuple(t) for t in itertools.product(*(range(d) for d in T.cyclic_orders))]
    out = []
    for vals in itertools.product(elems, repeat=C.r):
        ok = True
        for row in C.relator_matrix:
            acc = [0] * k
            for e, v in zip(row, vals):
                if e:
                    for j in range(k):
                        acc[j] += e * v[j]
            if any(a % d for a, d in zip(acc, T.cyclic_orders)):
                ok = False
                break
        if ok:
            out.append(tuple(x for v in vals for x in v))
    return out


def brute_twisted(C, sigma: GAction, w: int, phi) -> tuple:
    """``(w.phi)(s)`` evaluated letter by letter on the word ``t(w)^-1 s t(w)``."""
    T = sigma.target
    k = T.rank
    W = C.W
    tw = C.transversal[w]
    out = []
    for c in range(C.r):
        word = tuple(-x for x in reversed(tw)) + C.schreier_word(c) + tw
        # walk the coset graph, summing phi on non-tree edges
        coset, acc = W.identity, [0] * k
        for letter in word:
            i = abs(letter) - 1
            x = C.rho.images[i]
            if letter > 0:
                src = coset
                coset = W.mul[coset][x]
                sign = 1
            else:
                coset = W.mul[coset][W.inv[x]]
                src = coset
                sign = -1
            col = C.col[src][i]
            if col >= 0:
                for j in range(k):
                    acc[j] += sign * phi[col * k + j]
        out.extend(_act(sigma, w, tuple(a % d for a, d in zip(acc, T.cyclic_orders))))
    return tuple(out)


def brute_invariants(C, sigma: GAction, acting=None, bundles=None) -> set:
    W = C.W
    group = range(W.order) if acting is None else sorted(W.generated(acting))
    if bundles is None:
        bundles = brute_bundles(C, sigma.target)
    return {phi for phi in bundles if all(brute_twisted(C, sigma, w, phi) == phi for w in group)}
