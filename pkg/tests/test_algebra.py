import json

import pytest
from hypothesis import given, settings, strategies as st

from leibniz import atlas, oracle
from leibniz.algebra import (
    LeibnizAlgebra,
    bracket,
    centralizer,
    check_leibniz,
    classify_subspace,
    core,
    derived_algebra,
    direct_sum,
    dumps,
    first_minimal_ideal,
    from_brackets,
    ideal_closure,
    is_ideal,
    is_lie,
    is_subalgebra,
    leib_ideal,
    left_mult,
    loads,
    minimal_ideals,
    normalizer,
    product_space,
    quotient,
    restrict,
    socle,
    validate,
)
from leibniz.errors import InfinitelyMany, NotLeibnizError
from leibniz.exactlin import GF, QQ, apply, mat_is_zero, mat_vec, unit, vadd
from leibniz.generate import all_algebras

from conftest import algebras, subspaces

ATLAS = ["Ab2", "N2", "R2", "Aff2", "H3"]


def e(L, *coeffs):
    return L.field.vector(coeffs)


# identity checker -------------------------------------------------------

@pytest.mark.parametrize("key", ATLAS)
def test_atlas_satisfies_identity(frozen, key):
    L = atlas.get(key)
    got = [[i + 1, j + 1, k + 1] for i, j, k in check_leibniz(L)]
    assert got == frozen["algebra"]["violations"][key] == []


def test_lone_bracket_violates(frozen):
    L = from_brackets(QQ, 2, {(0, 1): (1, 0)})
    got = [[i + 1, j + 1, k + 1] for i, j, k in check_leibniz(L)]
    assert [1, 2, 2] in got
    assert got == frozen["algebra"]["violations"]["e1e2_only"]
    with pytest.raises(NotLeibnizError) as info:
        validate(L)
    assert (0, 1, 1) in info.value.violations


def test_corrupted_json_rejected_at_load():
    obj = json.loads(dumps(atlas.aff2()))
    obj["table"][0][1][0] = "5"
    with pytest.raises(NotLeibnizError):
        loads(json.dumps(obj))


# brackets and multiplication operators --------------------------------

def test_brackets_from_atlas():
    A, N = atlas.aff2(), atlas.n2()
    assert bracket(A, e(A, 0, 1), e(A, 1, 0)) == e(A, 1, 0)
    assert bracket(N, e(N, 1, 0), e(N, 1, 0)) == e(N, 0, 1)
    assert bracket(A, e(A, 3, 7), e(A, 0, 0)) == e(A, 0, 0)


def test_left_mult_examples():
    R, N = atlas.r2(), atlas.n2()
    assert mat_is_zero(left_mult(R, e(R, 0, 0)))
    Le2 = left_mult(R, e(R, 0, 1))
    assert mat_vec(QQ, Le2, e(R, 1, 0)) == e(R, 1, 0)
    assert mat_vec(QQ, Le2, e(R, 0, 1)) == e(R, 0, 0)
    La = left_mult(N, e(N, 1, 0))
    assert mat_vec(QQ, La, e(N, 1, 0)) == e(N, 0, 1)
    assert mat_vec(QQ, La, e(N, 0, 1)) == e(N, 0, 0)


def test_product_spaces():
    assert derived_algebra(atlas.ab2()).dim == 0
    R = atlas.r2()
    assert derived_algebra(R) == R.span([(1, 0)])
    H = atlas.h3()
    assert product_space(H, H.full(), H.full()) == H.span([(0, 0, 1)])


# subspace classification ------------------------------------------------

def test_classify_subspace():
    R, A = atlas.r2(), atlas.aff2()
    full = classify_subspace(R, R.full())
    assert full.is_subalgebra and full.is_left_ideal and full.is_right_ideal
    assert is_ideal(R, R.span([(1, 0)]))
    c = classify_subspace(A, A.span([(0, 1)]))
    assert c.is_subalgebra and not (c.is_left_ideal and c.is_right_ideal)


def test_centralizers():
    Ab = atlas.ab2()
    assert centralizer(Ab, Ab.span([(1, 1)])) == Ab.full()
    R = atlas.r2()
    assert centralizer(R, R.span([(1, 0)])) == R.span([(1, 0)])
    H = atlas.h3()
    assert centralizer(H, H.span([(0, 0, 1)])) == H.full()


def test_normalizers():
    R, A = atlas.r2(), atlas.aff2()
    assert normalizer(R, R.span([(1, 0)])) == R.full()
    assert normalizer(A, A.span([(0, 1)])) == A.span([(0, 1)])
    assert normalizer(R, R.span([(0, 1)])) == R.span([(0, 1)])


def test_ideal_closure_and_core():
    A, R = atlas.aff2(), atlas.r2()
    assert ideal_closure(A, A.span([(1, 0)])) == A.span([(1, 0)])
    assert ideal_closure(A, A.span([(0, 1)])) == A.full()
    assert core(A, A.full()) == A.full()
    assert core(A, A.span([(0, 1)])).dim == 0
    assert core(R, R.span([(1, 0)])) == R.span([(1, 0)])


def test_minimal_ideals_and_socle():
    R, H = atlas.r2(), atlas.h3()
    assert minimal_ideals(R) == [R.span([(1, 0)])]
    assert minimal_ideals(H) == [H.span([(0, 0, 1)])]
    assert socle(R) == R.span([(1, 0)])
    assert socle(H) == H.span([(0, 0, 1)])
    assert socle(atlas.abelian(0)).dim == 0


def test_minimal_ideals_of_abelian():
    Ab = atlas.ab2(GF(2))
    assert len(minimal_ideals(Ab)) == 3
    with pytest.raises(InfinitelyMany):
        minimal_ideals(atlas.ab2())


def test_quotients():
    R, H = atlas.r2(), atlas.h3()
    Q0 = quotient(R, R.zero())
    assert Q0.algebra.table == R.table
    Q1 = quotient(R, R.span([(1, 0)])).algebra
    assert Q1.n == 1 and derived_algebra(Q1).dim == 0
    Q2 = quotient(H, H.span([(0, 0, 1)])).algebra
    assert Q2.n == 2 and derived_algebra(Q2).dim == 0


def test_restrictions():
    A, N = atlas.aff2(), atlas.n2()
    assert restrict(A, A.full()).algebra.table == A.table
    sub = restrict(A, A.span([(0, 1)])).algebra
    assert sub.n == 1 and derived_algebra(sub).dim == 0
    sub = restrict(N, N.span([(0, 1)])).algebra
    assert sub.n == 1 and derived_algebra(sub).dim == 0


def test_leib_ideal():
    for name in ("Aff2", "H3"):
        assert leib_ideal(atlas.get(name)).dim == 0
        assert is_lie(atlas.get(name))
    N, R = atlas.n2(), atlas.r2()
    assert leib_ideal(N) == N.span([(0, 1)])
    assert leib_ideal(R) == R.span([(1, 0)])


def test_json_round_trip():
    for name in ATLAS + ["sl2", "so3"]:
        for F in (QQ, GF(3)):
            L = atlas.get(name, F)
            assert loads(dumps(L)).table == L.table


# properties ----------------------------------------------------------------

@given(algebras())
def test_left_mult_is_a_derivation(L):
    F = L.field
    for i in range(L.n):
        x = L.basis_vector(i)
        D = left_mult(L, x)
        for j in range(L.n):
            for k in range(L.n):
                y, z = L.basis_vector(j), L.basis_vector(k)
                lhs = mat_vec(F, D, bracket(L, y, z))
                rhs = vadd(F, bracket(L, mat_vec(F, D, y), z), bracket(L, y, mat_vec(F, D, z)))
                assert lhs == rhs


@given(algebras())
def test_squares_annihilate_on_the_left(L):
    for i in range(L.n):
        x = L.basis_vector(i)
        sq = bracket(L, x, x)
        assert mat_is_zero(left_mult(L, sq))


@given(algebras(), st.data())
def test_centralizer_and_normalizer_are_subalgebras(L, data):
    U = data.draw(subspaces(L.field, L.n, 2))
    assert is_subalgebra(L, centralizer(L, U))
    if is_subalgebra(L, U):
        N = normalizer(L, U)
        assert is_subalgebra(L, N) and U <= N


@settings(max_examples=40)
@given(algebras([GF(2), GF(3)], max_dim=3), st.data())
def test_core_is_the_largest_enumerated_ideal_inside(L, data):
    subs = oracle.enum_subalgebras(L)
    U = data.draw(st.sampled_from(subs))
    C = core(L, U)
    assert C <= U and is_ideal(L, C)
    inside = [I for I in oracle.enum_ideals(L) if I <= U]
    assert C in inside and all(I <= C for I in inside)


@settings(max_examples=30)
@given(algebras([GF(2), GF(3)], max_dim=4))
def test_minimal_ideals_match_enumeration(L):
    ideals = [I for I in oracle.enum_ideals(L) if I.dim]
    expected = {I for I in ideals if not any(J < I for J in ideals)}
    got = minimal_ideals(L)
    assert set(got) == expected
    if got:
        assert first_minimal_ideal(L) == got[0]


@settings(max_examples=30)
@given(algebras([QQ, GF(5)], max_dim=4))
def test_quotient_matches_complement(L):
    # L = A ⊕ M with A = L^2 and M a complement subalgebra: M ≅ L/A
    from leibniz.cartan import complement_of_abelian_ideal
    from leibniz.algebra import is_abelian

    A = derived_algebra(L)
    if not is_abelian(L, A):
        return
    M = complement_of_abelian_ideal(L, A)
    if M is None:
        return
    q = quotient(L, A)
    r = restrict(L, M)
    P = r.embedding
    # projection restricted to M is a bijection that respects brackets
    F = L.field
    for i in range(M.dim):
        for j in range(M.dim):
            x, y = [P[k][i] for k in range(L.n)], [P[k][j] for k in range(L.n)]
            lhs = mat_vec(F, q.projection, bracket(L, x, y))
            rhs = bracket(q.algebra, mat_vec(F, q.projection, x), mat_vec(F, q.projection, y))
            assert lhs == rhs
    assert apply(F, q.projection, M, q.algebra.n).dim == q.algebra.n


@pytest.mark.parametrize("F", [GF(2), GF(3)])
def test_dim2_tables_are_all_leibniz(F):
    for L in all_algebras(F, 2):
        assert check_leibniz(L) == []


def test_direct_sum_blocks():
    L = direct_sum(atlas.r2(), atlas.h3())
    assert L.n == 5 and check_leibniz(L) == []
    assert derived_algebra(L).dim == 2


def test_algebra_needs_cubic_table():
    with pytest.raises(Exception):
        LeibnizAlgebra(QQ, (((0,),), ((0,),)))
    assert unit(QQ, 2, 1) == (0, 1)
