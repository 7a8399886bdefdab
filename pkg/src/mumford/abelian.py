"""Finite abelian groups and exact integer linear algebra.

A finite abelian group is a product of cyclic groups ``Z/d_1 x ... x Z/d_k``;
its elements are tuples of residues.  Subgroups of such a group are carried
by an explicit basis (generators together with their orders, forming an
internal direct sum), so cardinalities and enumeration never require listing
the ambient group.

All arithmetic uses Python integers, which are arbitrary precision, so there
is no overflow to detect.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

AbElement = tuple  # tuple of residues, one per cyclic factor
IntMatrix = list  # list of integer rows


def _lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class FinAbGroup:
    """The group ``Z/d_1 x ... x Z/d_k``, stored exactly as given."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.cyclic_orders)
        if any(d < 1 for d in orders):
            raise ValueError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls((n,))

    @classmethod
    def elementary(cls, p: int, rank: int) -> "FinAbGroup":
        return cls((p,) * rank)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        return _lcm(self.cyclic_orders)

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        if not self.cyclic_orders:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.cyclic_orders)

    def zero(self) -> AbElement:
        return (0,) * self.rank

    def reduce(self, coords) -> AbElement:
        return tuple(c % d for c, d in zip(coords, self.cyclic_orders))

    def add(self, a: AbElement, b: AbElement) -> AbElement:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.cyclic_orders))

    def sub(self, a: AbElement, b: AbElement) -> AbElement:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.cyclic_orders))

    def neg(self, a: AbElement) -> AbElement:
        return tuple(-x % d for x, d in zip(a, self.cyclic_orders))

    def scale(self, k: int, a: AbElement) -> AbElement:
        return tuple(k * x % d for x, d in zip(a, self.cyclic_orders))

    def element_order(self, a: AbElement) -> int:
        return _lcm(d // math.gcd(x, d) for x, d in zip(a, self.cyclic_orders))

    def elements(self):
        """All elements in lexicographic order of coordinates."""
        return itertools.product(*(range(d) for d in self.cyclic_orders))

    def index(self, a: AbElement) -> int:
        i = 0
        for x, d in zip(a, self.cyclic_orders):
            i = i * d + x
        return i

    def element(self, index: int) -> AbElement:
        out = []
        for d in reversed(self.cyclic_orders):
            index, x = divmod(index, d)
            out.append(x)
        return tuple(reversed(out))

    def power(self, r: int) -> "FinAbGroup":
        """``T^r`` with flattened coordinates: factor ``i`` occupies slots ``i*k .. i*k+k-1``."""
        return FinAbGroup(self.cyclic_orders * r)

    def normalized(self) -> "FinAbGroup":
        """Invariant-factor form ``d_1 | d_2 | ...`` with trivial factors dropped."""
        diag = [[d if i == j else 0 for j in range(self.rank)] for i, d in enumerate(self.cyclic_orders)]
        _, D, _ = smith_normal_form(diag)
        factors = [D[i][i] for i in range(self.rank) if D[i][i] != 1]
        return FinAbGroup(tuple(factors))

    def automorphism_ok(self, columns) -> bool:
        """Whether the matrix with the given columns (images of the standard
        generators) defines an endomorphism of this group."""
        return all(
            all(x % e == 0 for x, e in zip(self.scale(d, col), self.cyclic_orders))
            for col, d in zip(columns, self.cyclic_orders)
        )


# ---------------------------------------------------------------------------
# Smith normal form over Z


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U*M*V == D``, ``U`` and ``V`` unimodular and
    ``D`` diagonal with nonnegative entries ``d_1 | d_2 | ...``."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, A, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def integer_rank(M: IntMatrix) -> int:
    if not M or not M[0]:
        return 0
    _, D, _ = smith_normal_form(M)
    return sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])


# ---------------------------------------------------------------------------
# Modular kernels and diagonalisation
#
# A "system" is a list of sparse rows ``{column: coefficient}`` with one
# modulus per row.  Unknowns live in ``Z/n_1 x ... x Z/n_m``; every row must be
# well defined on that group, i.e. ``q | a_j * n_j``.


def _row_value(row: dict, vec: list, q: int) -> int:
    return sum(a * vec[j] for j, a in row.items()) % q


def kernel_generators(rows, row_mods, col_mods) -> list[list[int]]:
    """Generators of ``{x : row . x = 0 mod q for every row}`` inside
    ``prod Z/col_mods``.  Columns are reduced modulo ``col_mods``."""
    m = len(col_mods)
    for row, q in zip(rows, row_mods):
        for j, a in row.items():
            if (a * col_mods[j]) % q:
                raise ValueError("linear constraint is not well defined on the domain")
    gens = [[int(i == j) for j in range(m)] for i in range(m)]
    for row, q in zip(rows, row_mods):
        if q == 1 or not row:
            continue
        vals = {}
        for c, vec in enumerate(gens):
            v = _row_value(row, vec, q)
            if v:
                vals[c] = v
        if not vals:
            continue
        while len(vals) > 1:
            pivot = min(vals, key=vals.get)
            pv = vals[pivot]
            pvec = gens[pivot]
            for c in list(vals):
                if c == pivot:
                    continue
                k = vals[c] // pv
                vec = gens[c]
                for j in range(m):
                    if pvec[j]:
                        vec[j] = (vec[j] - k * pvec[j]) % col_mods[j]
                vals[c] -= k * pv
                if vals[c] == 0:
                    del vals[c]
        (c, v), = vals.items()
        mult = q // math.gcd(v, q)
        gens[c] = [x * mult % d for x, d in zip(gens[c], col_mods)]
    return [vec for vec in gens if any(vec)]


def diagonalize_relations(relations, k: int, E: int):
    """Diagonalise the presentation ``Z^k / (span(relations) + E Z^k)``.

    Returns ``(orders, gen_ops, proj)`` where the quotient is the direct sum of
    ``Z/orders[i]``; ``gen_ops`` lists the column operations ``(kind, i, j, a)``
    to replay on the generators, and ``proj`` is the ``k x k`` matrix sending
    old coordinates to new ones (row ``i`` reduced modulo ``orders[i]``).
    """
    R = [[x % E for x in rel] for rel in relations if any(x % E for x in rel)]
    proj = _identity(k)
    ops = []
    orders = []

    def col_add(dst, src, a):  # column dst += a * column src
        if not a:
            return
        for row in R:
            row[dst] = (row[dst] + a * row[src]) % E
        # generators: g_src -= a * g_dst ; coordinates: c'_dst += a * c'_src
        ops.append(("add", src, dst, -a))
        proj[dst] = [x + a * y for x, y in zip(proj[dst], proj[src])]

    def col_swap(i, j):
        if i == j:
            return
        for row in R:
            row[i], row[j] = row[j], row[i]
        ops.append(("swap", i, j, 0))
        proj[i], proj[j] = proj[j], proj[i]

    for t in range(k):
        best = None
        for ri in range(t, len(R)):
            row = R[ri]
            for j in range(t, k):
                if row[j] and (best is None or math.gcd(row[j], E) < best[0]):
                    best = (math.gcd(row[j], E), ri, j)
        if best is None:
            orders.extend([E] * (k - t))
            break
        _, ri, j = best
        R[t], R[ri] = R[ri], R[t]
        col_swap(t, j)
        swapped = True
        while swapped:
            # clear column t below the pivot (row operations are free)
            for ri in range(t + 1, len(R)):
                while R[ri][t]:
                    if R[ri][t] < R[t][t]:
                        R[t], R[ri] = R[ri], R[t]
                    q = R[ri][t] // R[t][t]
                    R[ri] = [(a - q * b) % E for a, b in zip(R[ri], R[t])]
            # clear row t right of the pivot (column operations are tracked)
            swapped = False
            for j in range(t + 1, k):
                while R[t][j]:
                    if R[t][j] < R[t][t]:
                        col_swap(t, j)
                        swapped = True
                    col_add(j, t, -(R[t][j] // R[t][t]))
        orders.append(math.gcd(R[t][t], E))
    for i, d in enumerate(orders):
        proj[i] = [x % d for x in proj[i]]
    return orders, ops, proj


def _replay(ops, gens: list, add, scale) -> list:
    gens = list(gens)
    for kind, i, j, a in ops:
        if kind == "swap":
            gens[i], gens[j] = gens[j], gens[i]
        else:
            gens[i] = add(gens[i], scale(a, gens[j]))
    return gens


def solve_system(rows, row_mods, col_mods, rhs):
    """A particular solution of ``row . x = rhs mod q`` or ``None``."""
    S = _lcm(row_mods) if row_mods else 1
    m = len(col_mods)
    aug = []
    for row, b, q in zip(rows, rhs, row_mods):
        r = dict(row)
        if b % q:
            r[m] = -b % q
        aug.append(r)
    gens = kernel_generators(aug, row_mods, list(col_mods) + [S])
    svals = [vec[m] for vec in gens]
    g, coeffs = 0, []
    for s in svals:
        g2, x, y = xgcd(g, s)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    g2, inv, _ = xgcd(g, S)
    if g2 != 1:
        return None
    x = [0] * m
    for c, vec in zip(coeffs, gens):
        c *= inv
        if c:
            for j in range(m):
                x[j] += c * vec[j]
    return [v % d for v, d in zip(x, col_mods)]


# ---------------------------------------------------------------------------
# Subgroups


class Subgroup:
    """A subgroup of ``ambient`` given by a basis: ``gens[i]`` has order
    ``orders[i]`` and the map ``prod Z/orders -> ambient`` is injective."""

    def __init__(self, ambient: FinAbGroup, gens, orders):
        self.ambient = ambient
        self.gens = [tuple(g) for g in gens]
        self.orders = list(orders)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, orders={self.orders})"

    @classmethod
    def generated_by(cls, ambient: FinAbGroup, vectors) -> "Subgroup":
        vectors = [ambient.reduce(v) for v in vectors]
        vectors = [v for v in vectors if any(v)]
        if not vectors:
            return cls(ambient, [], [])
        E = ambient.exponent
        k = len(vectors)
        rows = []
        for j, n in enumerate(ambient.cyclic_orders):
            row = {i: v[j] for i, v in enumerate(vectors) if v[j]}
            rows.append(row)
        rels = kernel_generators(rows, list(ambient.cyclic_orders), [E] * k)
        orders, ops, _ = diagonalize_relations(rels, k, E)
        gens = _replay(ops, vectors, ambient.add, ambient.scale)
        keep = [(g, d) for g, d in zip(gens, orders) if d > 1]
        return cls(ambient, [g for g, _ in keep], [d for _, d in keep])

    @classmethod
    def whole(cls, ambient: FinAbGroup) -> "Subgroup":
        basis = [tuple(int(i == j) for j in range(ambient.rank)) for i in range(ambient.rank)]
        return cls.generated_by(ambient, basis)

    @classmethod
    def trivial(cls, ambient: FinAbGroup) -> "Subgroup":
        return cls(ambient, [], [])

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def __len__(self) -> int:
        return self.order

    def as_group(self) -> FinAbGroup:
        return FinAbGroup(tuple(self.orders))

    def combine(self, coords) -> AbElement:
        acc = [0] * self.ambient.rank
        for c, g in zip(coords, self.gens):
            if c:
                for j, x in enumerate(g):
                    acc[j] += c * x
        return self.ambient.reduce(acc)

    def elements(self):
        for coords in itertools.product(*(range(d) for d in self.orders)):
            yield self.combine(coords)

    def coords(self, v) -> tuple[int, ...] | None:
        """Coordinates of ``v`` in the basis, or ``None`` if ``v`` is not a member."""
        amb = self.ambient
        v = amb.reduce(v)
        if not self.gens:
            return () if not any(v) else None
        rows = [
            {i: g[j] for i, g in enumerate(self.gens) if g[j]}
            for j in range(amb.rank)
        ]
        x = solve_system(rows, list(amb.cyclic_orders), self.orders, list(v))
        return None if x is None else tuple(x)

    def __contains__(self, v) -> bool:
        return self.coords(v) is not None

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return all(g in self for g in other.gens)

    def same_as(self, other: "Subgroup") -> bool:
        return self.order == other.order and self.contains_subgroup(other)

    def kernel_of(self, images, target: FinAbGroup) -> "Subgroup":
        """Kernel of the homomorphism sending ``gens[i]`` to ``images[i]``."""
        if not self.gens:
            return self
        rows = [
            {i: img[j] for i, img in enumerate(images) if img[j]}
            for j in range(target.rank)
        ]
        kern = kernel_generators(rows, list(target.cyclic_orders), self.orders)
        return Subgroup.generated_by(self.ambient, [self.combine(c) for c in kern])

    def image_of(self, images, target: FinAbGroup) -> "Subgroup":
        return Subgroup.generated_by(target, images)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        amb = self.ambient
        if not self.gens or not other.gens:
            return Subgroup.trivial(amb)
        n1 = len(self.gens)
        col_mods = self.orders + other.orders
        rows = []
        for j in range(amb.rank):
            row = {i: g[j] for i, g in enumerate(self.gens) if g[j]}
            for i, g in enumerate(other.gens):
                if g[j]:
                    row[n1 + i] = -g[j]
            rows.append(row)
        kern = kernel_generators(rows, list(amb.cyclic_orders), col_mods)
        return Subgroup.generated_by(amb, [self.combine(c[:n1]) for c in kern])


def quotient(orders, relations):
    """Present ``prod Z/orders`` modulo the given relation vectors.

    Returns ``(q_orders, lifts, proj)``: the quotient is ``prod Z/q_orders``,
    ``lifts[i]`` is a coordinate vector (in the original basis) mapping to the
    i-th quotient generator, and ``proj`` maps old coordinates to new ones.
    """
    k = len(orders)
    if k == 0:
        return [], [], []
    E = _lcm(orders)
    rels = [list(r) for r in relations]
    rels += [[d if i == j else 0 for j in range(k)] for i, d in enumerate(orders)]
    q_orders, ops, proj = diagonalize_relations(rels, k, E)
    unit = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    lifts = _replay(
        ops,
        unit,
        lambda a, b: tuple((x + y) % E for x, y in zip(a, b)),
        lambda s, a: tuple(s * x % E for x in a),
    )
    keep = [i for i, d in enumerate(q_orders) if d > 1]
    return (
        [q_orders[i] for i in keep],
        [lifts[i] for i in keep],
        [proj[i] for i in keep],
    )


# ---------------------------------------------------------------------------
# Integer-coefficient systems over T


def _expand(M: IntMatrix, T: FinAbGroup):
    k = T.rank
    rows, mods = [], []
    for mrow in M:
        for j, d in enumerate(T.cyclic_orders):
            rows.append({i * k + j: a for i, a in enumerate(mrow) if a % d})
            mods.append(d)
    return rows, mods


def hom_solutions(M: IntMatrix, T: FinAbGroup, r: int | None = None) -> Subgroup:
    """All ``x`` in ``T^r`` with ``sum_i m_i x_i = 0`` for every row ``m``.

    This is ``Hom(Z^r / rowspace(M), T)`` as a subgroup of ``T^r``.
    """
    if r is None:
        if not M:
            raise ValueError("column count needed for an empty matrix")
        r = len(M[0])
    if any(len(row) != r for row in M):
        raise ValueError("matrix rows must have r columns")
    amb = T.power(r)
    rows, mods = _expand(M, T)
    gens = kernel_generators(rows, mods, list(amb.cyclic_orders))
    return Subgroup.generated_by(amb, gens)


def solve_affine(M: IntMatrix, T: FinAbGroup, rhs, r: int | None = None):
    """Solve ``sum_i m_i x_i = rhs_row`` over ``T``.

    Returns ``None`` when the system has no solution, otherwise
    ``(particular, homogeneous)`` with ``particular`` a flat element of
    ``T^r`` and ``homogeneous`` the solution subgroup of the associated
    homogeneous system.
    """
    if len(rhs) != len(M):
        raise ValueError("rhs length must equal the number of rows")
    if r is None:
        if not M:
            raise ValueError("column count needed for an empty matrix")
        r = len(M[0])
    amb = T.power(r)
    rows, mods = _expand(M, T)
    flat_rhs = [c for b in rhs for c in T.reduce(b)]
    x = solve_system(rows, mods, list(amb.cyclic_orders), flat_rhs)
    if x is None:
        return None
    return tuple(x), hom_solutions(M, T, r)


def split_flat(v, T: FinAbGroup) -> list[AbElement]:
    k = T.rank
    return [tuple(v[i * k:(i + 1) * k]) for i in range(len(v) // k)] if k else []
