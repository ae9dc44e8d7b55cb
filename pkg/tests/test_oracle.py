import pytest
from hypothesis import given, settings, strategies as st

from leibniz import atlas, oracle
from leibniz.algebra import is_ideal, is_subalgebra
from leibniz.errors import BudgetExceeded, Unsupported
from leibniz.exactlin import GF, QQ, gaussian_binomial, identity, mat_add

from conftest import algebras

GF2, GF3 = GF(2), GF(3)


def elements(U):
    """Nonzero vectors of a GF(p) subspace, for comparison with frozen data."""
    F = U.field
    import itertools

    out = set()
    for cs in itertools.product(range(F.p), repeat=U.dim):
        v = tuple(sum(c * b[i] for c, b in zip(cs, U.basis)) % F.p for i in range(U.ambient))
        if any(v):
            out.add(v)
    return sorted(out)


def test_enum_subspace_counts():
    assert len(oracle.enum_subspaces(2, 1, GF2)) == 3
    zero = oracle.enum_subspaces(3, 0, GF3)
    assert len(zero) == 1 and zero[0].dim == 0
    assert len(oracle.enum_subspaces(3, 1, GF3)) == 13


@pytest.mark.parametrize("p", [2, 3])
def test_enum_counts_are_gaussian(frozen, p):
    F = GF(p)
    for n in range(1, 6):
        counts = [len(oracle.enum_subspaces(n, k, F)) for k in range(n + 1)]
        assert counts == [gaussian_binomial(n, k, p) for k in range(n + 1)]
        assert counts == frozen["census"][f"GF{p}/{n}"]


def test_enumeration_is_sorted_and_distinct():
    subs = oracle.enum_subspaces(4, 2, GF2)
    assert len(set(subs)) == len(subs) == 35
    assert subs == sorted(subs, key=lambda U: U.basis)


def test_budget_guards():
    with pytest.raises(BudgetExceeded):
        oracle.enum_subspaces(2, 1, GF(5))
    with pytest.raises(BudgetExceeded):
        oracle.enum_subspaces(6, 2, GF2)
    with pytest.raises(Unsupported):
        oracle.enum_subspaces(2, 1, QQ)


def test_subalgebras_and_ideals(frozen):
    Ab = atlas.ab2(GF2)
    assert len(oracle.enum_subalgebras(Ab)) == 5 == frozen["algebra"]["subalgebra_counts"]["Ab2/GF2"]
    R = atlas.r2(GF3)
    subs = oracle.enum_subalgebras(R)
    assert len(subs) == frozen["algebra"]["subalgebra_counts"]["R2/GF3"]
    assert {U for U in subs if 0 < U.dim < 2} == {R.span([(1, 0)]), R.span([(0, 1)])}
    assert set(oracle.enum_ideals(R)) == {R.zero(), R.span([(1, 0)]), R.full()}


def test_complements():
    A = atlas.aff2(GF3)
    comps = oracle.enum_complements(A, A.span([(1, 0)]))
    assert set(comps) == {A.span([(t, 1)]) for t in range(3)}
    # the zero subalgebra complements L itself
    assert oracle.enum_complements(A, A.full()) == [A.zero()]
    Z = atlas.abelian(0, GF3)
    assert oracle.enum_complements(Z, Z.full()) == [Z.zero()]
    R = atlas.r2(GF2)
    assert oracle.enum_complements(R, R.span([(1, 0)])) == [R.span([(0, 1)])]


def test_cartans(frozen):
    H = atlas.h3(GF2)
    assert oracle.enum_cartans(H) == [H.full()]
    for key, name in (("Aff2/GF3", "Aff2"), ("R2/GF3", "R2")):
        got = sorted(elements(U) for U in oracle.enum_cartans(atlas.get(name, GF3)))
        want = sorted(sorted(tuple(v) for v in c) for c in frozen["algebra"]["cartans"][key])
        assert got == want


def test_inner_groups(frozen):
    H = atlas.h3(GF3)
    assert oracle.inner_group(H, H.span([(0, 0, 1)])) == [identity(GF3, 3)]
    A = atlas.aff2(GF3)
    G = oracle.inner_group(A, A.span([(1, 0)]))
    assert len(G) == frozen["algebra"]["inner_group_order"]["Aff2/GF3/e1"]
    L1 = A.left_mult((1, 0))
    expected = {identity(GF3, 2)}
    for t in (1, 2):
        expected.add(mat_add(GF3, identity(GF3, 2), tuple(tuple(GF3(t * x) for x in r) for r in L1)))
    assert set(G) == expected
    R = atlas.r2(GF2)
    assert len(oracle.inner_group(R, R.span([(1, 0)]))) == frozen["algebra"]["inner_group_order"]["R2/GF2/e1"]


def test_orbit_verdicts():
    A = atlas.aff2(GF3)
    U = A.span([(0, 1)])
    v = oracle.orbit_verdict(A, A.span([(1, 0)]), U, U)
    assert v.conjugate and v.element == identity(GF3, 2)
    v = oracle.orbit_verdict(A, A.span([(1, 0)]), U, A.span([(1, 1)]))
    assert v.conjugate and v.orbit_size == 3
    R = atlas.r2(GF2)
    # L_{e2} is not nilpotent, so the group is taken over L^2 = span(e1), where L_{e1} = 0
    assert not oracle.orbit_verdict(R, R.span([(1, 0)]), R.span([(1, 0)]), R.span([(0, 1)])).conjugate
    with pytest.raises(Unsupported):
        oracle.inner_group(R, R.full())


def test_group_cap_aborts():
    A = atlas.aff2(GF3)
    with pytest.raises(BudgetExceeded):
        oracle.inner_group(A, A.span([(1, 0)]), oracle.EnumerationBudget(group_cap=2))


# properties ----------------------------------------------------------------

@settings(max_examples=30)
@given(algebras([GF2, GF3], max_dim=4))
def test_enumerations_are_consistent(L):
    subs = oracle.enum_subalgebras(L)
    ideals = oracle.enum_ideals(L)
    assert all(is_subalgebra(L, U) for U in subs)
    assert set(ideals) <= set(subs)
    assert all(is_ideal(L, I) for I in ideals)
    maxi = oracle.enum_maximal_subalgebras(L)
    for M in maxi:
        assert not any(M < U < L.full() for U in subs)


@settings(max_examples=20)
@given(algebras([GF2, GF3], max_dim=4), st.data())
def test_orbits_partition_the_family(L, data):
    from leibniz.algebra import derived_algebra

    from leibniz.series import char_p_guard

    if not char_p_guard(L).ok:
        return
    A = derived_algebra(L)
    fam = oracle.enum_maximal_subalgebras(L)
    try:
        blocks = oracle.orbits(L, A, fam)
    except BudgetExceeded:
        return
    flat = [U for b in blocks for U in b]
    assert sorted(flat, key=lambda U: U.basis) == sorted(fam, key=lambda U: U.basis)
    if len(fam) >= 2:
        i = data.draw(st.integers(0, len(fam) - 1))
        j = data.draw(st.integers(0, len(fam) - 1))
        same = any(fam[i] in b and fam[j] in b for b in blocks)
        assert oracle.orbit_verdict(L, A, fam[i], fam[j]).conjugate == same
