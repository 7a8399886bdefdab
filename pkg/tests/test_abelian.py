import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from mumford.abelian import (
    FinAbGroup,
    Subgroup,
    determinant,
    hom_solutions,
    integer_rank,
    kernel_generators,
    matmul,
    smith_normal_form,
    solve_affine,
    solve_system,
)

small_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_smith_normal_form_factorisation(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert len(nonzero) == integer_rank(M)


def test_smith_known_example():
    _, D, _ = smith_normal_form([[2, 4], [6, 8]])
    assert D == [[2, 0], [0, 4]]


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=3),
    st.integers(2, 6),
    st.data(),
)
def test_kernel_matches_enumeration(col_mods, q, data):
    rows = []
    for _ in range(data.draw(st.integers(1, 2))):
        row = {}
        for j, d in enumerate(col_mods):
            # coefficients must make the row well defined modulo q
            step = q // math.gcd(q, d)
            row[j] = step * data.draw(st.integers(0, q))
        rows.append({j: a % q for j, a in row.items() if a % q})
    gens = kernel_generators(rows, [q] * len(rows), col_mods)
    amb = FinAbGroup(tuple(col_mods))
    S = Subgroup.generated_by(amb, gens)
    brute = {
        x for x in itertools.product(*(range(d) for d in col_mods))
        if all(sum(a * x[j] for j, a in r.items()) % q == 0 for r in rows)
    }
    assert set(S.elements()) == brute
    assert S.order == len(brute)


def test_hom_solutions_and_affine():
    T = FinAbGroup.cyclic(4)
    assert hom_solutions([[2, 0]], T).order == 8
    assert solve_affine([[2]], T, [(1,)]) is None
    x, hom = solve_affine([[2]], T, [(2,)])
    assert (2 * x[0]) % 4 == 2 and hom.order == 2


def test_solve_system_consistency():
    assert solve_system([{0: 2}], [4], [4], [3]) is None
    x = solve_system([{0: 3, 1: 1}], [6], [6, 6], [5])
    assert (3 * x[0] + x[1]) % 6 == 5


def test_subgroup_operations():
    amb = FinAbGroup((2, 4))
    A = Subgroup.generated_by(amb, [(1, 0)])
    B = Subgroup.generated_by(amb, [(1, 2)])
    whole = Subgroup.whole(amb)
    assert whole.order == 8
    assert A.intersection(B).order == 1
    assert Subgroup.generated_by(amb, A.gens + B.gens).order == 4
    assert (0, 2) in Subgroup.generated_by(amb, [(1, 2), (1, 0)])
    k = whole.kernel_of([(g[1] % 2,) for g in whole.gens], FinAbGroup.cyclic(2))
    assert set(k.elements()) == {(a, b) for a in range(2) for b in (0, 2)}


def test_fin_ab_group_basics():
    T = FinAbGroup((2, 3, 4))
    assert T.order == 24 and T.exponent == 12
    assert str(T.normalized()) == "Z/2 x Z/12"
    assert [T.element(T.index(t)) for t in T.elements()] == list(T.elements())
    assert T.element_order((1, 1, 1)) == 12
    assert T.power(2).cyclic_orders == (2, 3, 4, 2, 3, 4)
