import random

import pytest
from hypothesis import given, settings, strategies as st

from leibniz import atlas, oracle
from leibniz.algebra import centralizer, direct_sum, derived_algebra, from_json, quotient, restrict, to_coords
from leibniz.cartan import find_cartan
from leibniz.conj import (
    ConjugacyCertificate,
    InnerAutomorphism,
    NotConjugate,
    classify_maximal,
    compose,
    conjugate_cartans,
    conjugate_cartans_abelian_J,
    conjugate_complements,
    exp_left,
    exp_matrix,
    extend_inner,
    from_word,
    identity,
    lift_inner,
    preserves_bracket,
)
from leibniz.errors import LeibnizError, PreconditionError, TheoremViolation
from leibniz.exactlin import GF, QQ, contains, identity as eye, intersect, mat_add, mat_mul
from leibniz.series import char_p_guard, is_nilpotent, j_infinity

from conftest import algebras

# non-abelian GF(2) algebra with complements M, N of A = span(e4) that differ on C_L(A)
SPLIT_GF2 = {
    "dim": 4, "field": {"p": 2},
    "table": [
        [["0", "1", "1", "0"]] * 3 + [["0", "0", "0", "0"]],
        [["0", "1", "1", "0"]] * 3 + [["0", "0", "0", "0"]],
        [["0", "1", "1", "0"]] * 3 + [["0", "0", "0", "0"]],
        [["0", "0", "0", "0"]] * 4,
    ],
}


def test_exp_left_examples():
    A = atlas.aff2()
    assert exp_left(A, (0, 0)).matrix == eye(QQ, 2)
    f = exp_left(A, (1, 0))
    assert f((1, 0)) == (1, 0)
    assert f((0, 1)) == (-1, 1)


def test_compose_identity_and_inverse():
    A = atlas.aff2()
    f = exp_left(A, (1, 0))
    assert compose(f, identity(A)).matrix == f.matrix
    g = compose(f, exp_left(A, (-1, 0)))
    assert g.matrix == eye(QQ, 2)
    assert len(g.word) == 2


def test_inner_automorphism_checks_its_word():
    A = atlas.aff2()
    with pytest.raises(PreconditionError):
        InnerAutomorphism(eye(QQ, 2), (((1, 0), ""),), A)


def test_exp_needs_nilpotent_operator():
    R = atlas.r2()
    with pytest.raises(LeibnizError):
        exp_left(R, (0, 1))
    with pytest.raises(LeibnizError):
        exp_matrix(GF(2), atlas.r2(GF(2)).left_mult((0, 1)))


def test_extend_inner():
    A = atlas.aff2()
    assert extend_inner(A, A.full(), identity(A)).matrix == eye(QQ, 2)
    f = exp_left(A, (1, 0))
    assert extend_inner(A, A.full(), f).matrix == f.matrix
    # U = Aff2 block inside Aff2 ⊕ H3; U^2 = span(e1)
    L = direct_sum(A, atlas.h3())
    U = L.span([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)])
    w = exp_left(restrict(L, U).algebra, (1, 0))
    ext = extend_inner(L, U, w)
    assert ext.matrix == exp_left(L, (1, 0, 0, 0, 0)).matrix
    # x is not in the derived algebra of H3, though L_x is nilpotent
    H = atlas.h3()
    with pytest.raises(PreconditionError):
        extend_inner(H, H.full(), exp_left(H, (1, 0, 0)))


def test_lift_inner():
    R = atlas.r2()
    A = R.span([(1, 0)])
    q = quotient(R, A).algebra
    assert lift_inner(R, A, identity(q)).matrix == eye(QQ, 2)
    f = exp_left(R, (1, 0))
    assert lift_inner(R, R.zero(), f).word[0][0] == (1, 0)


def test_conjugate_complements_aff2():
    A = atlas.aff2()
    I = A.span([(1, 0)])
    same = conjugate_complements(A, I, A.span([(0, 1)]), A.span([(0, 1)]))
    assert same.automorphism.matrix == eye(QQ, 2)
    cert = conjugate_complements(A, I, A.span([(0, 1)]), A.span([(1, 1)]))
    assert isinstance(cert, ConjugacyCertificate)
    assert [a for a, _ in cert.automorphism.word] == [(-1, 0)]
    assert cert.automorphism.matrix == mat_add(QQ, eye(QQ, 2), A.left_mult((-1, 0)))


def test_not_conjugate_matches_oracle():
    L = from_json(SPLIT_GF2)
    A = L.span([(0, 0, 0, 1)])
    M = L.span([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    N = L.span([(1, 0, 0, 0), (0, 1, 0, 1), (0, 0, 1, 1)])
    C = centralizer(L, A)
    assert intersect(M, C) != intersect(N, C)
    res = conjugate_complements(L, A, M, N)
    assert isinstance(res, NotConjugate)
    assert not oracle.orbit_verdict(L, A, M, N).conjugate


def test_conjugate_cartans_examples():
    A = atlas.aff2()
    H = A.span([(0, 1)])
    assert conjugate_cartans(A, H, H).automorphism.word == ()
    cert = conjugate_cartans(A, H, A.span([(1, 1)]))
    assert len(cert.automorphism.word) == 1
    assert contains(derived_algebra(A), A.span([cert.automorphism.word[0][0]]))
    R = atlas.r2()
    K = R.span([(0, 1)])
    assert conjugate_cartans(R, K, K).automorphism.matrix == eye(QQ, 2)
    # L_{e1} = 0 on R2, so I(L, L^2) is trivial, consistent with a unique Cartan
    assert exp_left(R, (1, 0)).matrix == eye(QQ, 2)


def test_abelian_J_examples():
    A = atlas.aff2()
    H = A.span([(0, 1)])
    cert = conjugate_cartans_abelian_J(A, H, A.span([(1, 1)]))
    assert [a for a, _ in cert.automorphism.word] == [(-1, 0)]
    assert conjugate_cartans_abelian_J(A, H, H).automorphism.word == ()


def test_certificate_refuses_wrong_target():
    A = atlas.aff2()
    f = exp_left(A, (-1, 0))
    with pytest.raises(TheoremViolation):
        ConjugacyCertificate(f, A.span([(0, 1)]), A.span([(0, 1)]), "I(L,L^2)", A.span([(1, 0)]))
    with pytest.raises(TheoremViolation):
        # the generator -e1 does not lie in the declared (zero) ideal
        ConjugacyCertificate(f, A.span([(0, 1)]), A.span([(1, 1)]), "I(L,0)", A.zero())


def test_classify_maximal_examples():
    H = atlas.h3(GF(3))
    cls = classify_maximal(H)
    assert cls.complete
    assert all(len(c.members) == 1 and c.members[0] == c.core for c in cls.classes)
    A = atlas.aff2(GF(3))
    cls = classify_maximal(A)
    by_core = {c.core: set(c.members) for c in cls.classes}
    assert by_core[A.span([(1, 0)])] == {A.span([(1, 0)])}
    assert by_core[A.zero()] == {A.span([(t, 1)]) for t in range(3)}
    R = atlas.r2()
    cls = classify_maximal(R)
    assert {c.core: c.members for c in cls.classes} == {
        R.span([(1, 0)]): (R.span([(1, 0)]),),
        R.zero(): (R.span([(0, 1)]),),
    }


def test_classify_maximal_over_Q_is_partial():
    A = atlas.aff2()
    cls = classify_maximal(A)
    assert not cls.complete
    free = [c for c in cls.classes if c.core.dim == 0]
    assert len(free) == 1 and len(free[0].certificates) == len(free[0].members) - 1


# properties ----------------------------------------------------------------

@settings(max_examples=30)
@given(algebras([QQ, GF(3), GF(5)], max_dim=5), st.integers(0, 10**6))
def test_words_preserve_the_bracket(L, seed):
    if not char_p_guard(L).ok:
        return
    rng = random.Random(seed)
    D = derived_algebra(L)
    if not D.dim:
        return
    word = []
    for _ in range(rng.randint(1, 3)):
        coeffs = [rng.randint(-2, 2) for _ in range(D.dim)]
        a = tuple(L.field(sum(c * b[i] for c, b in zip(coeffs, D.basis))) for i in range(L.n))
        word.append((a, "L^2"))
    f = from_word(L, word)
    assert preserves_bracket(L, f.matrix)
    g = from_word(L, word[:1])
    h = compose(f, g)
    assert h.matrix == mat_mul(L.field, f.matrix, g.matrix)
    assert len(h.word) == len(f.word) + len(g.word)


@settings(max_examples=25)
@given(algebras([QQ, GF(3), GF(5)], max_dim=5))
def test_cartan_certificates_are_sound(L):
    if not char_p_guard(L).ok:
        return
    H1, H2 = find_cartan(L, seed=1), find_cartan(L, seed=2)
    cert = conjugate_cartans(L, H1, H2)
    assert cert.automorphism.image(H1) == H2
    D = derived_algebra(L)
    assert all(contains(D, L.span([a])) for a, _ in cert.automorphism.word)
    if is_nilpotent(L) is not None:
        assert H1 == H2 == L.full()


@settings(max_examples=25)
@given(algebras([QQ, GF(5)], max_dim=5))
def test_abelian_J_is_one_generator(L):
    J = j_infinity(L)
    from leibniz.algebra import product_space

    if product_space(L, J, J).dim or not char_p_guard(L).ok:
        return
    H1, H2 = find_cartan(L, seed=1), find_cartan(L, seed=2)
    cert = conjugate_cartans_abelian_J(L, H1, H2)
    assert len(cert.automorphism.word) == (0 if H1 == H2 else 1)
    for z, _ in cert.automorphism.word:
        assert contains(J, L.span([z]))


@settings(max_examples=20)
@given(algebras([GF(2), GF(3)], max_dim=4))
def test_complement_verdicts_match_orbits(L):
    for A in oracle.enum_minimal_ideals(L):
        comps = oracle.enum_complements(L, A)
        for M in comps[:3]:
            for N in comps[:4]:
                res = conjugate_complements(L, A, M, N, check_minimal=False)
                v = oracle.orbit_verdict(L, A, M, N)
                assert isinstance(res, ConjugacyCertificate) == v.conjugate


def test_to_coords_round_trip():
    H = atlas.h3()
    U = H.span([(1, 0, 0), (0, 0, 1)])
    assert to_coords(U, U).dim == 2


@settings(max_examples=15)
@given(algebras([QQ, GF(5)], max_dim=5))
def test_abelian_J_descent_agrees_with_single_solve(L):
    from leibniz.algebra import product_space
    from leibniz.conj import _descend_abelian_J

    J = j_infinity(L)
    if product_space(L, J, J).dim or not J.dim:
        return
    H1, H2 = find_cartan(L, seed=1), find_cartan(L, seed=2)
    z = _descend_abelian_J(L, J, H1, H2)
    assert contains(J, L.span([z]))
    assert exp_left(L, z).image(H1) == H2
