import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diagram_qft import diagram as dg
from diagram_qft.algebra_core import DiagramAlgebra, Field, ScalarError

from oracles import p1_frozen, schur_inner_oracle

D_EXACT = Fraction(10**6)


@pytest.fixture(scope="module")
def p1():
    return DiagramAlgebra("partition", 1, Field(D_EXACT, "exact"))


def _name(D):
    return "I" if dg.propagating_number(D) == 1 else "P"


def test_field_modes():
    with pytest.raises(ScalarError):
        Field(7, "exact")
    F = Field(Fraction(9, 4), "exact")
    assert F.sqrt_d == Fraction(3, 2)
    assert F.half_power(-3) == Fraction(8, 27)
    G = Field(10**4, "float", 128)
    assert G.precision_bits == 128
    assert abs(G.half_power(1) - 100) < G.tol


def test_products(p1):
    A = p1
    F = A.field
    I = A.identity()
    for k in range(len(A)):
        x = A.basis_element(k)
        assert (I * x).coeffs == x.coeffs
    P = A.diagram_element(dg.generator("p", 1, 1))
    assert (P * P).coeffs == (P.scalar_mul(F.d)).coeffs
    B2 = DiagramAlgebra("brauer", 2, Field(16, "exact"))
    e = B2.diagram_element(dg.generator("e", 1, 2, "brauer"))
    assert (e * e).coeffs == e.scalar_mul(B2.field.d).coeffs


def test_left_regular_and_trace(p1):
    A = p1
    F = A.field
    L = A.left_regular_matrix(A.identity())
    assert (L == F.eye(len(A))).all()
    assert A.trace_form_L(A.identity()) == len(A) == 2
    assert A.trace_form_L(A.diagram_element(dg.generator("p", 1, 1))) == F.d


def test_p1_gram_and_duals(p1):
    A = p1
    d = D_EXACT
    frozen = p1_frozen(d)
    names = [_name(D) for D in A.basis]
    scales = [A.scale(k) for k in range(len(A))]
    G = A.gram_L
    for i, j in itertools.product(range(2), repeat=2):
        key = tuple(sorted((names[i], names[j])))
        assert G[i, j] / (scales[i] * scales[j]) == frozen["gram"][key]
    inv = A.gram_L_inverse
    for i in range(2):
        for j in range(2):
            # dual of raw diagram i, coefficient on raw diagram j
            raw = inv[i, j] * scales[i] * scales[j]
            assert raw == frozen["dual"][names[i]][names[j]]


def test_dual_basis_property():
    A = DiagramAlgebra("brauer", 2, Field(9, "exact"))
    duals = A.dual_basis()
    for i, x in enumerate(duals):
        for j in range(len(A)):
            assert A.bilinear_L(x, A.basis_element(j)) == (1 if i == j else 0)


def test_group_duals():
    A = DiagramAlgebra("symmetric", 3, Field(4, "exact"))
    inv = A.gram_L_inverse
    for i, D in enumerate(A.basis):
        j = A.index[dg.involution(D)]
        assert inv[i, j] == Fraction(1, 6)
        assert sum(1 for k in range(len(A)) if inv[i, k] != 0) == 1


def test_bilinear_symmetric():
    for fam, n in [("partition", 1), ("brauer", 2)]:
        A = DiagramAlgebra(fam, n, Field(4, "exact"))
        for i, j in itertools.product(range(len(A)), repeat=2):
            x, y = A.basis_element(i), A.basis_element(j)
            assert A.bilinear_L(x, y) == A.bilinear_L(y, x)


SMALL = [("partition", 1), ("partition", 2), ("brauer", 1), ("brauer", 2), ("half", 1), ("half", 2), ("symmetric", 2), ("walled", (1, 1))]


@pytest.mark.parametrize("family,params", SMALL)
@pytest.mark.parametrize("d", [2, 3, 4])
def test_schur_inner_matches_explicit_representation(family, params, d):
    wall = params if family == "walled" else None
    n = sum(params) if family == "walled" else params
    basis = dg.enumerate_basis(family, n, wall=wall)
    for D, E in itertools.product(basis, repeat=2):
        assert d ** dg.cc(dg.join(D, E)) == schur_inner_oracle(D, E, d)
    if d == 4:
        A = DiagramAlgebra(family, params, Field(d, "exact"))
        for i, j in itertools.product(range(len(A)), repeat=2):
            raw = A.schur_pairing(i, j) / (A.scale(i) * A.scale(j))
            assert raw == schur_inner_oracle(A.basis[i], A.basis[j], d)


def test_schur_diagonal_and_offdiagonal_bound():
    A = DiagramAlgebra("partition", 2, Field(Fraction(10**4), "exact"))
    d = A.field.d
    n = 2
    for i in range(len(A)):
        assert A.schur_pairing(i, i) == d**n
        for j in range(len(A)):
            if i != j:
                # |<a,b>|^2 <= d^{2n-1}
                assert A.schur_pairing(i, j) ** 2 <= d ** (2 * n - 1)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_multiplication_associative(data):
    A = DiagramAlgebra("brauer", 3, Field(Fraction(25, 4), "exact"))
    idx = st.integers(0, len(A) - 1)
    x, y, z = (A.basis_element(data.draw(idx)) for _ in range(3))
    assert ((x * y) * z).coeffs == (x * (y * z)).coeffs
