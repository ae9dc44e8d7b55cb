"""Inner automorphisms exp(L_a) and constructive conjugacy certificates.

Every automorphism carries the word of generators it was built from, and
every certificate is checked when it is constructed: the matrix is the
product of the exponentials in the word, it preserves the bracket, it maps
the source onto the target, and each generator lies in the declared ideal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from . import submodules
from .algebra import (
    LeibnizAlgebra,
    centralizer,
    core,
    derived_algebra,
    field_to_json,
    first_minimal_ideal,
    is_ideal,
    is_subalgebra,
    product_space,
    project,
    quotient,
    restrict,
    subspace_to_json,
    to_coords,
    vector_to_json,
)
from .cartan import is_cartan, regular_candidates
from .errors import (
    LeibnizError,
    NotAnIdeal,
    PreconditionError,
    TheoremViolation,
)
from .exactlin import (
    Field,
    Matrix,
    Subspace,
    apply,
    contains,
    identity as identity_matrix,
    intersect,
    kernel,
    lincomb,
    mat_add,
    mat_is_zero,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_vec,
    member,
    solve_affine,
    subspace_sum,
)
from .series import char_p_guard, is_solvable, j_infinity, nilpotency_class


def exp_matrix(F: Field, M: Matrix) -> Matrix:
    """Sum of M^r / r! for a nilpotent M; over GF(p) requires M^p = 0."""
    n = len(M)
    if n == 0:
        return M
    if not mat_is_zero(mat_pow(F, M, n)):
        raise PreconditionError("exp needs a nilpotent operator")
    top = n if not F.p else min(n, F.p - 1)
    if F.p and not mat_is_zero(mat_pow(F, M, F.p)):
        raise PreconditionError(f"nilpotency index exceeds p = {F.p}; 1/r! undefined")
    out = identity_matrix(F, n)
    term = out
    for r in range(1, top + 1):
        term = mat_mul(F, term, M)
        if mat_is_zero(term):
            break
        out = mat_add(F, out, mat_scale(F, F.inv(F(math.factorial(r))), term))
    return out


def preserves_bracket(L: LeibnizAlgebra, M: Matrix) -> bool:
    cols = [tuple(row[j] for row in M) for j in range(L.n)]
    for i in range(L.n):
        for j in range(L.n):
            if mat_vec(L.field, M, L.table[i][j]) != L.bracket(cols[i], cols[j]):
                return False
    return True


@dataclass(frozen=True)
class InnerAutomorphism:
    """Product exp(L_{a_1}) ... exp(L_{a_k}) of the word (a_1, ..., a_k)."""

    matrix: Matrix
    word: tuple  # ((vector, tag), ...)
    algebra: LeibnizAlgebra = field(repr=False)

    def __post_init__(self):
        L = self.algebra
        expected = identity_matrix(L.field, L.n)
        for a, _ in self.word:
            expected = mat_mul(L.field, expected, exp_matrix(L.field, L.left_mult(a)))
        if expected != self.matrix:
            raise PreconditionError("matrix does not match its generator word")
        if not preserves_bracket(L, self.matrix):
            raise PreconditionError("exp(L_a) failed to preserve the bracket")

    def image(self, U: Subspace) -> Subspace:
        return apply(self.algebra.field, self.matrix, U)

    def __call__(self, v):
        return mat_vec(self.algebra.field, self.matrix, v)

    def to_json(self) -> dict:
        F = self.algebra.field
        return {
            "word": [{"vector": vector_to_json(F, a), "tag": tag} for a, tag in self.word],
            "matrix": [vector_to_json(F, r) for r in self.matrix],
        }


def identity(L: LeibnizAlgebra) -> InnerAutomorphism:
    return InnerAutomorphism(identity_matrix(L.field, L.n), (), L)


def exp_left(L: LeibnizAlgebra, a, tag: str = "") -> InnerAutomorphism:
    a = L.field.vector(a)
    if not any(a):
        return identity(L)
    M = exp_matrix(L.field, L.left_mult(a))
    return InnerAutomorphism(M, ((a, tag),), L)


def compose(f: InnerAutomorphism, g: InnerAutomorphism) -> InnerAutomorphism:
    """f ∘ g."""
    if f.algebra != g.algebra:
        raise PreconditionError("automorphisms of different algebras")
    L = f.algebra
    return InnerAutomorphism(mat_mul(L.field, f.matrix, g.matrix), f.word + g.word, L)


def from_word(L: LeibnizAlgebra, word) -> InnerAutomorphism:
    out = identity(L)
    for a, tag in reversed(list(word)):
        out = compose(exp_left(L, a, tag), out)
    return out


def retag(f: InnerAutomorphism, tag: str) -> InnerAutomorphism:
    return InnerAutomorphism(f.matrix, tuple((a, tag) for a, _ in f.word), f.algebra)


def extend_inner(L: LeibnizAlgebra, U: Subspace, w: InnerAutomorphism, tag: str = "U^2") -> InnerAutomorphism:
    """Extend an automorphism in I(U, U²) of the subalgebra U to one in I(L, U²)."""
    R = restrict(L, U)
    U2 = product_space(R.algebra, R.algebra.full(), R.algebra.full())
    F = L.field
    word = []
    for u, _ in w.word:
        if not member(U2, u):
            raise PreconditionError("generator outside U²")
        word.append((lincomb(F, u, U.basis, L.n), tag))
    ext = from_word(L, word)
    for j, b in enumerate(U.basis):
        inner = tuple(row[j] for row in w.matrix)
        if ext(b) != lincomb(F, inner, U.basis, L.n):
            raise TheoremViolation("extension does not restrict to the given automorphism", (L, U))
    return ext


def lift_inner(L: LeibnizAlgebra, A: Subspace, w: InnerAutomorphism, tag: str = "L^2") -> InnerAutomorphism:
    """An automorphism in I(L, L²) inducing w ∈ I(L/A, (L/A)²)."""
    if not is_ideal(L, A):
        raise NotAnIdeal("lift_inner needs an ideal")
    F = L.field
    D = derived_algebra(L)
    m = L.n - A.dim
    images = [A.quotient_coords(d) for d in D.basis]
    cols = tuple(tuple(img[r] for img in images) for r in range(m))
    word = []
    for u, _ in w.word:
        sol = solve_affine(F, cols, u, len(images)) if images else None
        if sol is None:
            raise PreconditionError("generator outside (L/A)²")
        word.append((lincomb(F, sol[0], D.basis, L.n), tag))
    beta = from_word(L, word)
    for v in (L.basis_vector(i) for i in range(L.n)):
        if A.quotient_coords(beta(v)) != mat_vec(F, w.matrix, A.quotient_coords(v)):
            raise TheoremViolation("lift does not induce the quotient automorphism", (L, A))
    return beta


# -------------------------------------------------------------- certificates

@dataclass(frozen=True)
class ConjugacyCertificate:
    automorphism: InnerAutomorphism
    source: Subspace
    target: Subspace
    group: str
    ideal: Subspace

    def __post_init__(self):
        if self.automorphism.image(self.source) != self.target:
            raise TheoremViolation("certificate does not map source onto target", self.source)
        for a, _ in self.automorphism.word:
            if not member(self.ideal, a):
                raise TheoremViolation(f"generator outside the ideal of {self.group}", a)

    def to_json(self) -> dict:
        L = self.automorphism.algebra
        return {
            "field": field_to_json(L.field),
            "group": self.group,
            "ideal": subspace_to_json(self.ideal),
            "source": subspace_to_json(self.source),
            "target": subspace_to_json(self.target),
            **self.automorphism.to_json(),
        }


@dataclass(frozen=True)
class NotConjugate:
    reason: str
    witness: tuple = ()


def is_minimal_ideal(L: LeibnizAlgebra, A: Subspace) -> bool:
    if A.dim == 0 or not is_ideal(L, A):
        return False
    try:
        parts = submodules.minimal_submodules(L.field, L.mult_ops, L.n, within=A)
    except LeibnizError:
        return False
    return parts == [A]


def _is_complement(L: LeibnizAlgebra, A: Subspace, M: Subspace) -> bool:
    return is_subalgebra(L, M) and M.dim + A.dim == L.n and intersect(M, A).dim == 0


def conjugate_complements(
    L: LeibnizAlgebra,
    A: Subspace,
    M: Subspace,
    N: Subspace,
    check_minimal: bool = True,
) -> Union[ConjugacyCertificate, NotConjugate]:
    """Decide conjugacy of complements M, N of an abelian minimal ideal A under I(L, A)."""
    if not is_ideal(L, A) or product_space(L, A, A).dim:
        raise PreconditionError("A must be an abelian ideal")
    if check_minimal and not is_minimal_ideal(L, A):
        raise PreconditionError("A must be a minimal ideal")
    if not (_is_complement(L, A, M) and _is_complement(L, A, N)):
        raise PreconditionError("M and N must be complements to A")
    C = centralizer(L, A)
    cm, cn = intersect(M, C), intersect(N, C)
    if cm != cn:
        return NotConjugate("intersections with the centralizer of A differ", (cm, cn))
    a = _solve_into(L, A, M, N)
    if a is None:
        raise TheoremViolation("no conjugating element in A although the centralizer test passed", (L, A, M, N))
    return ConjugacyCertificate(exp_left(L, a, "A"), M, N, "I(L,A)", A)


def _solve_into(L: LeibnizAlgebra, Z: Subspace, M: Subspace, N: Subspace):
    """z in Z with (I + L_z) M ⊆ N, or None.  Assumes exp(L_z) = I + L_z."""
    F = L.field
    k = Z.dim
    rows, rhs = [], []
    for m in M.basis:
        cols = [N.quotient_coords(L.bracket(z, m)) for z in Z.basis]
        target = N.quotient_coords(m)
        for r in range(len(target)):
            rows.append(tuple(c[r] for c in cols))
            rhs.append(F(-target[r]))
    if not rows:
        return F.vector([0] * L.n)
    if k == 0:
        return F.vector([0] * L.n) if not any(rhs) else None
    sol = solve_affine(F, tuple(rows), tuple(rhs), k)
    if sol is None:
        return None
    return lincomb(F, sol[0], Z.basis, L.n)


def _require_guard(L: LeibnizAlgebra):
    g = char_p_guard(L)
    if not g.ok:
        raise PreconditionError(f"char-p guard failed: L² nilpotency class {g.l2_class} is not below p")


def conjugate_cartans(L: LeibnizAlgebra, H1: Subspace, H2: Subspace) -> ConjugacyCertificate:
    """Certificate that Cartan subalgebras H1, H2 of a solvable L are conjugate under I(L, L²)."""
    if not is_solvable(L):
        raise PreconditionError("L must be solvable")
    if not (is_cartan(L, H1) and is_cartan(L, H2)):
        raise PreconditionError("both subspaces must be Cartan subalgebras")
    _require_guard(L)
    beta = _conjugate_cartans(L, H1, H2)
    return ConjugacyCertificate(beta, H1, H2, "I(L,L^2)", derived_algebra(L))


def _conjugate_cartans(L: LeibnizAlgebra, H1: Subspace, H2: Subspace) -> InnerAutomorphism:
    if H1 == H2:
        return identity(L)
    if nilpotency_class(L) is not None:
        raise TheoremViolation("distinct Cartan subalgebras in a nilpotent algebra", (L, H1, H2))
    A = first_minimal_ideal(L)
    Q = quotient(L, A)
    bbar = _conjugate_cartans(Q.algebra, project(L, A, H1), project(L, A, H2))
    beta = lift_inner(L, A, bbar)
    H1p = beta.image(H1)
    S = subspace_sum(H1p, A)
    if subspace_sum(H2, A) != S:
        raise TheoremViolation("lifted Cartan does not match modulo the minimal ideal", (L, H1, H2))
    if S != L.full():
        R = restrict(L, S)
        g = _conjugate_cartans(R.algebra, to_coords(S, H1p), to_coords(S, H2))
        gamma = extend_inner(L, S, g, tag="L^2")
    else:
        res = conjugate_complements(L, A, H1p, H2, check_minimal=False)
        if isinstance(res, NotConjugate):
            raise TheoremViolation("Cartan complements not conjugate", (L, A, H1p, H2))
        if not contains(derived_algebra(L), A):
            raise TheoremViolation("minimal ideal not inside L²", (L, A))
        gamma = retag(res.automorphism, "L^2")
    return compose(gamma, beta)


def conjugate_cartans_abelian_J(L: LeibnizAlgebra, H: Subspace, K: Subspace) -> ConjugacyCertificate:
    """Single exp(L_z), z in J = L^∞, mapping H to K when J is abelian.

    With [J, J] = 0 every exp(L_z) is I + L_z and these form a group, so one
    linear solve over J decides the question; the descent through an ideal
    B maximal in J is kept as an independent second route.
    """
    J = j_infinity(L)
    if product_space(L, J, J).dim:
        raise PreconditionError("J must be abelian")
    if not (is_cartan(L, H) and is_cartan(L, K)):
        raise PreconditionError("both subspaces must be Cartan subalgebras")
    if J.dim == 0:
        if H != K:
            raise TheoremViolation("nilpotent algebra with distinct Cartan subalgebras", (L, H, K))
        return ConjugacyCertificate(identity(L), H, K, "exp(L_J)", J)
    z = _solve_into(L, J, H, K)
    if z is None:
        z = _descend_abelian_J(L, J, H, K)
    return ConjugacyCertificate(exp_left(L, z, "J"), H, K, "exp(L_J)", J)


def _descend_abelian_J(L: LeibnizAlgebra, J: Subspace, H: Subspace, K: Subspace):
    if H == K:
        return L.field.vector([0] * L.n)
    B = submodules.maximal_submodule(L.field, L.mult_ops, J)
    Q = quotient(L, B)
    Jbar = project(L, B, J)
    zbar = _solve_into(Q.algebra, Jbar, project(L, B, H), project(L, B, K))
    if zbar is None:
        raise TheoremViolation("no conjugator in the quotient by a maximal ideal of J", (L, H, K))
    reps = list(J.basis)
    sol = solve_affine(
        L.field,
        tuple(tuple(B.quotient_coords(j)[r] for j in reps) for r in range(L.n - B.dim)),
        zbar,
        len(reps),
    )
    if sol is None:
        raise TheoremViolation("quotient conjugator has no preimage in J", (L, J, B))
    z1 = lincomb(L.field, sol[0], reps, L.n)
    H1 = apply(L.field, exp_left(L, z1).matrix, H)
    z2 = _solve_into(L, B, H1, K)
    if z2 is None:
        raise TheoremViolation("no conjugator in B after descent", (L, H, K))
    return tuple(L.field(x + y) for x, y in zip(z1, z2))


# ------------------------------------------------------ maximal subalgebras

@dataclass(frozen=True)
class MaximalClass:
    core: Subspace
    members: tuple
    certificates: tuple  # certificate from members[0] to each later member


@dataclass(frozen=True)
class MaximalClassification:
    classes: tuple
    complete: bool


def hyperplane_subalgebras(L: LeibnizAlgebra, height: int = 2) -> list:
    """Codimension-one subalgebras cut out by small integer functionals (partial over Q)."""
    out = []
    for f in regular_candidates(L, height):
        H = kernel(L.field, (tuple(f),), L.n)
        if H not in out and is_subalgebra(L, H):
            out.append(H)
    out.sort(key=Subspace.sort_key)
    return out


def conjugate_maximal(L: LeibnizAlgebra, M: Subspace, K: Subspace) -> ConjugacyCertificate:
    """Certificate for maximal subalgebras with equal cores, conjugate under I(L, L²)."""
    C = core(L, M)
    if core(L, K) != C:
        raise PreconditionError("cores differ; not conjugate")
    if M == K:
        return ConjugacyCertificate(identity(L), M, K, "I(L,L^2)", derived_algebra(L))
    Q = quotient(L, C)
    P = Q.algebra
    Mb, Kb = project(L, C, M), project(L, C, K)
    A = first_minimal_ideal(P)
    if not contains(derived_algebra(P), A):
        raise TheoremViolation("minimal ideal of the primitive quotient is not in its square", (L, M, K))
    res = conjugate_complements(P, A, Mb, Kb, check_minimal=False)
    if isinstance(res, NotConjugate):
        raise TheoremViolation("core-free maximal subalgebras not conjugate", (L, M, K))
    beta = lift_inner(L, C, retag(res.automorphism, "L^2"))
    return ConjugacyCertificate(beta, M, K, "I(L,L^2)", derived_algebra(L))


def classify_maximal(L: LeibnizAlgebra, maximal: Optional[list] = None) -> MaximalClassification:
    """Partition maximal subalgebras by core, with conjugacy certificates inside each class."""
    if not is_solvable(L):
        raise PreconditionError("L must be solvable")
    _require_guard(L)
    complete = True
    if maximal is None:
        if L.field.p:
            from .oracle import enum_maximal_subalgebras

            maximal = enum_maximal_subalgebras(L)
        else:
            maximal = hyperplane_subalgebras(L)
            complete = False
    groups: dict = {}
    for M in maximal:
        groups.setdefault(core(L, M), []).append(M)
    classes = []
    for C in sorted(groups, key=Subspace.sort_key):
        members = sorted(groups[C], key=Subspace.sort_key)
        certs = tuple(conjugate_maximal(L, members[0], K) for K in members[1:])
        classes.append(MaximalClass(C, tuple(members), certs))
    return MaximalClassification(tuple(classes), complete)


__all__ = [
    "exp_matrix",
    "preserves_bracket",
    "InnerAutomorphism",
    "identity",
    "exp_left",
    "compose",
    "from_word",
    "retag",
    "extend_inner",
    "lift_inner",
    "ConjugacyCertificate",
    "NotConjugate",
    "is_minimal_ideal",
    "conjugate_complements",
    "conjugate_cartans",
    "conjugate_cartans_abelian_J",
    "MaximalClass",
    "MaximalClassification",
    "hyperplane_subalgebras",
    "conjugate_maximal",
    "classify_maximal",
]
