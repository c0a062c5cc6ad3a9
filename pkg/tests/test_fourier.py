import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy

from diagram_qft import checks
from diagram_qft import diagram as dg
from diagram_qft.algebra_core import Field
from diagram_qft.fourier import FourierData

from oracles import p1_frozen

D_EXACT = Fraction(10**6)
F_BIG = Field(10**4, "float")
MP = F_BIG.ctx
TOL = MP.mpf(10) ** -20


def _name(D):
    return "I" if dg.propagating_number(D) == 1 else "P"


@pytest.fixture(scope="module")
def p1_exact():
    return FourierData("partition", 1, Field(D_EXACT, "exact"), basis="unscaled")


@pytest.fixture(scope="module")
def p2():
    return FourierData("partition", 2, F_BIG)


def test_p1_fourier_elements(p1_exact):
    frozen = p1_frozen(D_EXACT)
    names = [_name(D) for D in p1_exact.algebra.basis]
    for x, lab in enumerate(p1_exact.labels):
        key = str(len(lab.rho))
        row = p1_exact.coefficients[x]
        assert {names[k]: row[k] for k in range(2)} == frozen["E"][key]
        assert p1_exact.norms_sq[x] == frozen["norm_sq"][key]


def test_p1_ft_entries(p1_exact):
    frozen = p1_frozen(D_EXACT)
    names = [_name(D) for D in p1_exact.algebra.basis]
    FT = p1_exact.ft_matrix("exact")
    for x, lab in enumerate(p1_exact.labels):
        for k in range(2):
            sign, sq = frozen["ft_sq"][(str(len(lab.rho)), names[k])]
            v = FT[x, k] if isinstance(FT[x, k], sympy.Basic) else sympy.Rational(FT[x, k].numerator, FT[x, k].denominator)
            assert sympy.sign(v) == sign
            assert sympy.simplify(v**2 - sympy.Rational(sq.numerator, sq.denominator)) == 0


def test_p1_identity_column_symbolic(p1_exact):
    FT = p1_exact.ft_matrix("exact")
    k = [_name(D) for D in p1_exact.algebra.basis].index("I")
    box = [x for x, lab in enumerate(p1_exact.labels) if lab.rho == (1,)][0]
    d = sympy.Integer(10**6)
    assert sympy.simplify(FT[box, k] - d / sympy.sqrt(d**2 + 1)) == 0


def test_p1_niceness_halves():
    deltas = checks.niceness_series("partition", 1)
    for r in checks.ratios(deltas):
        assert abs(r - 0.5) < 0.01
    # the single off-diagonal overlap is -1/sqrt(d^2+1)
    data = FourierData("partition", 1, F_BIG, basis="unscaled")
    G = data.fourier_gram()
    assert abs(abs(G[0, 1]) - 1 / MP.sqrt(F_BIG.d**2 + 1)) < TOL


def test_matrix_units_b2_exact():
    data = FourierData("brauer", 2, Field(Fraction(9), "exact"))
    assert data.matrix_unit_residual() == 0


@pytest.mark.parametrize("family,params", [("partition", 2), ("brauer", 3), ("walled", (2, 1))])
def test_matrix_units_float(family, params):
    data = FourierData(family, params, F_BIG)
    assert data.matrix_unit_residual() < TOL


def test_multiplication_rule_p2(p2):
    elems = {lab: p2.fourier_basis_element(lab.rho, lab.P, lab.Q) for lab in p2.labels}
    for a, b in itertools.product(p2.labels, repeat=2):
        prod = elems[a] * elems[b]
        if a.rho == b.rho and a.Q == b.P:
            target = p2.fourier_basis_element(a.rho, a.P, b.Q)
        else:
            target = None
        for k in range(len(p2.algebra)):
            want = target.coeffs.get(k, 0) if target is not None else 0
            assert abs(prod.coeffs.get(k, 0) - want) < TOL * 10**4


def test_left_action_covariance_p2(p2):
    A = p2.algebra
    forms = p2.forms
    for kind, i in [("s", 1), ("b", 1), ("p", 1), ("p", 2)]:
        g = A.diagram_element(dg.generator(kind, i, 2))
        for lab in p2.labels:
            lhs = g * p2.fourier_basis_element(lab.rho, lab.P, lab.Q)
            R = forms.matrix(lab.rho, dg.generator(kind, i, 2))
            paths = forms.paths(lab.rho)
            rhs = {}
            for r, Rp in enumerate(paths):
                c = R[r, lab.p_index]
                if c == 0:
                    continue
                E = p2.fourier_basis_element(lab.rho, Rp, lab.Q)
                for k, v in E.coeffs.items():
                    rhs[k] = rhs.get(k, 0) + c * v
            for k in range(len(A)):
                assert abs(lhs.coeffs.get(k, 0) - rhs.get(k, 0)) < TOL * 10**4


def test_schur_inner_product_of_fourier_states():
    data = FourierData("brauer", 2, F_BIG)
    A = data.algebra
    S = np.array([[A.schur_pairing(i, j) for j in range(len(A))] for i in range(len(A))], dtype=object)
    C = data.coefficients
    M = C @ S @ C.T
    m = data.multiplicities()
    for x, y in itertools.product(range(len(data.labels)), repeat=2):
        want = F_BIG(m[data.labels[x].rho]) if x == y else 0
        assert abs(M[x, y] - want) < TOL * 10**4


def test_symmetric_group_is_exact():
    data = FourierData("symmetric", 3, F_BIG)
    for x, lab in enumerate(data.labels):
        dim = len(data.forms.paths(lab.rho))
        assert abs(data.norms_sq[x] - MP.mpf(dim) / 6) < TOL
    FT = data.ft_matrix("exact")
    assert F_BIG.max_abs(FT @ FT.T - F_BIG.eye(6)) < TOL
    assert data.niceness() < TOL
    assert all(abs(data.concentration_defect(D)[0]) < TOL for D in data.algebra.basis)


def test_p1_norms_float():
    data = FourierData("partition", 1, F_BIG, basis="unscaled")
    d = F_BIG.d
    got = {len(lab.rho): data.norms[x] for x, lab in enumerate(data.labels)}
    assert abs(got[0] - 1 / d) < TOL
    assert abs(got[1] - MP.sqrt(d * d + 1) / d) < TOL


def test_concentration_of_contraction_b2():
    data = FourierData("brauer", 2, F_BIG)
    e = dg.generator("e", 1, 2, "brauer")
    defect, above = data.concentration_defect(e)
    assert above == 0
    assert defect < MP.mpf(10) ** -3


def test_concentration_decays_on_p2():
    defects, above = checks.concentration_series("partition", 2)
    assert all(a == 0 for a in above)
    assert defects[-1] * 2 <= defects[0]


def test_b3_niceness_bounded():
    # delta * sqrt(d) / |A| stays bounded (it actually shrinks like d^{-1/2})
    values = []
    for d in (10**2, 10**4, 10**6):
        data = FourierData("brauer", 3, Field(d, "float"))
        values.append(data.niceness() * MP.sqrt(d) / len(data.algebra))
    assert max(values) < 1
    assert values[2] <= values[0]


def test_norm_law_ratio_form_decays():
    devs = checks.norm_series("brauer", 3, form="ratios")
    assert devs[0] < MP.mpf(10) ** -3
    assert devs[2] < devs[1] < devs[0]


def test_ft_distance_shrinks_b3():
    dist = [FourierData("brauer", 3, Field(d, "float")).ft_distance() for d in (10**4, 4 * 10**4)]
    assert dist[1] < dist[0]


def test_subalgebra_restriction_b2_in_b3():
    small = FourierData("brauer", 2, F_BIG, basis="unscaled")
    big = FourierData("brauer", 3, F_BIG, basis="unscaled")
    for x, lab in enumerate(small.labels):
        lifted = {}
        for k, D in enumerate(small.algebra.basis):
            c = small.coefficients[x, k]
            if c != 0:
                lifted[big.algebra.index[dg.embed(D, 3, "brauer")]] = c
        total = np.array([F_BIG.zero] * len(big.algebra), dtype=object)
        for y, blab in enumerate(big.labels):
            if blab.P[:-1] == lab.P and blab.Q[:-1] == lab.Q:
                total = total + big.coefficients[y]
        for k in range(len(big.algebra)):
            assert abs(total[k] - lifted.get(k, 0)) < TOL * 10**4


def test_report_shapes():
    rep = FourierData("partition", 1, Field(D_EXACT, "exact"), basis="unscaled").report()
    assert rep["mode"] == "exact" and len(rep["ft"]) == 2
    # irrational entries stay symbolic instead of being rounded to rationals
    assert any("sqrt" in v for row in rep["ft"] for v in row)
    rep = FourierData("brauer", 2, F_BIG).report()
    assert {"niceness", "ft_minus_tilde_opnorm", "concentration_defects"} <= set(rep)
