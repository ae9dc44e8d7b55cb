import pytest
from hypothesis import given, settings

from leibniz import atlas
from leibniz.algebra import direct_sum, from_brackets, is_ideal, product_space, quotient, restrict
from leibniz.exactlin import GF, QQ, mat_is_zero, mat_pow
from leibniz.generate import adjoin
from leibniz.series import (
    char_p_guard,
    derived_series,
    is_nilpotent,
    is_solvable,
    j_infinity,
    lower_central_series,
    nilpotent_length,
    nilradical,
    radical,
    upper_central_series,
    verify_length_certificate,
)

from conftest import algebras


def spans(L, *vs):
    return L.span(list(vs))


def terms(report):
    return list(report.terms)


def simple3():
    # [x,y]=z, [y,z]=x, [z,x]=y with antisymmetric completion
    return from_brackets(QQ, 3, {
        (0, 1): (0, 0, 1), (1, 0): (0, 0, -1),
        (1, 2): (1, 0, 0), (2, 1): (-1, 0, 0),
        (2, 0): (0, 1, 0), (0, 2): (0, -1, 0),
    }, "simple3")


def test_derived_series():
    Ab, A, H = atlas.ab2(), atlas.aff2(), atlas.h3()
    assert terms(derived_series(Ab)) == [Ab.full(), Ab.zero()]
    assert terms(derived_series(A)) == [A.full(), spans(A, (1, 0)), A.zero()]
    assert terms(derived_series(H)) == [H.full(), spans(H, (0, 0, 1)), H.zero()]


def test_lower_central_series():
    H, R, Ab = atlas.h3(), atlas.r2(), atlas.ab2()
    assert terms(lower_central_series(H)) == [H.full(), spans(H, (0, 0, 1)), H.zero()]
    lc = lower_central_series(R)
    assert lc.stabilized and lc.terms[-1] == spans(R, (1, 0))
    assert terms(lower_central_series(Ab)) == [Ab.full(), Ab.zero()]


def test_upper_central_series():
    Ab, H, R = atlas.ab2(), atlas.h3(), atlas.r2()
    assert terms(upper_central_series(Ab)) == [Ab.zero(), Ab.full()]
    assert terms(upper_central_series(H)) == [H.zero(), spans(H, (0, 0, 1)), H.full()]
    uc = upper_central_series(R)
    assert uc.stabilized and all(t.dim == 0 for t in uc.terms)


def test_is_nilpotent():
    assert is_nilpotent(atlas.ab2()) == 1
    assert is_nilpotent(atlas.h3()) == 2
    assert is_nilpotent(atlas.r2()) is None


def test_is_solvable():
    for name in ("Ab2", "N2", "R2", "Aff2", "H3"):
        assert is_solvable(atlas.get(name))
    assert is_solvable(atlas.abelian(0))
    assert not is_solvable(simple3())


def test_j_infinity():
    assert j_infinity(atlas.h3()).dim == 0
    for L in (atlas.r2(), atlas.aff2()):
        J = j_infinity(L)
        assert J == spans(L, (1, 0))
        assert product_space(L, J, J).dim == 0


def test_char_p_guard():
    assert char_p_guard(atlas.r2()).ok
    g = char_p_guard(atlas.r2(GF(3)))
    assert g.ok and g.l2_class == 1
    F = GF(2)
    # H3 with a derivation scaling x and y: L^2 is the Heisenberg algebra
    D = F.matrix([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    L = adjoin(atlas.h3(F), [D])
    g = char_p_guard(L)
    assert not g.ok and g.l2_class == 2


def test_nilradical():
    H = atlas.h3()
    assert nilradical(H) == H.full()
    for L in (atlas.r2(), atlas.aff2()):
        assert nilradical(L) == spans(L, (1, 0))


def test_nilpotent_length():
    assert nilpotent_length(atlas.h3()).length == 1
    cert = nilpotent_length(atlas.r2())
    R = atlas.r2()
    assert cert.length == 2
    assert list(cert.chain) == [R.zero(), spans(R, (1, 0)), R.full()]
    assert verify_length_certificate(R, cert)
    assert nilpotent_length(atlas.aff2()).length == 2


def test_radical():
    A = atlas.aff2()
    assert radical(A) == A.full()
    assert radical(simple3()).dim == 0
    L = direct_sum(simple3(), atlas.r2())
    assert radical(L) == L.span([(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])


# properties ----------------------------------------------------------------

@given(algebras())
def test_lower_central_filtration(L):
    lc = lower_central_series(L).terms
    for a in range(1, len(lc)):
        for b in range(1, len(lc)):
            if a + b - 1 < len(lc):
                target = lc[a + b - 1]
            else:
                target = lc[-1]
            assert product_space(L, lc[a - 1], lc[b - 1]) <= target


@given(algebras())
def test_derived_elements_act_nilpotently(L):
    D = product_space(L, L.full(), L.full())
    for x in D.basis:
        assert mat_is_zero(mat_pow(L.field, L.left_mult(x), L.n))


@given(algebras())
def test_nilpotency_classes_agree(L):
    c = is_nilpotent(L)
    uc = upper_central_series(L)
    if c is None:
        assert uc.terms[-1] != L.full()
    else:
        assert uc.terms[-1] == L.full() and len(uc.terms) - 1 == c


@settings(max_examples=30)
@given(algebras([QQ]))
def test_nilradical_quotient_is_nilpotent_over_Q(L):
    N = nilradical(L)
    assert is_ideal(L, N)
    assert is_nilpotent(restrict(L, N).algebra) is not None
    assert is_nilpotent(quotient(L, N).algebra) is not None


@settings(max_examples=20)
@given(algebras([QQ]))
def test_radical_is_blockwise(L):
    assert radical(L) == L.full()
    S = direct_sum(simple3(), L)
    R = radical(S)
    assert R.dim == L.n and all(not any(v[:3]) for v in R.basis)


@given(algebras())
def test_length_certificates_check_out(L):
    cert = nilpotent_length(L)
    assert verify_length_certificate(L, cert)
    assert (cert.length == 1) == (is_nilpotent(L) is not None)


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)])
def test_zero_algebra(F):
    Z = atlas.abelian(0, F)
    assert is_solvable(Z) and nilradical(Z).dim == 0


def test_radical_needs_characteristic_zero():
    from leibniz.errors import Unsupported

    with pytest.raises(Unsupported):
        radical(atlas.r2(GF(3)))
