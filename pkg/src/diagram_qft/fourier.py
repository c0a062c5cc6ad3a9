"""Fourier basis of a diagram algebra and the exact / approximate Fourier transform matrices.

Everything here is linear algebra on label rows.  With R[x, k] = rho(a_k)_{PQ}
for the label x = (rho, P, Q) and the computational basis a_k, the Fourier
element E_x has coefficients

    C[x, :] = d_rho * G^{-1} R[x^T, :]        (x^T = (rho, Q, P))

where G is the Gram matrix of the left regular trace form.  The matrix-unit
rule sigma(E_x) = |P><Q| is then R C^T = I, the exact transform is
FT = diag(1/||E||) C and the approximate one is F~T = diag(||E||) R.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
import sympy

from . import diagram as dg
from . import irrep_catalog as ic
from .algebra_core import AlgebraElement, DiagramAlgebra, Field, ScalarError
from .matrix_forms import IrrepForms

BASES = ("scaled", "unscaled")


@dataclass(frozen=True)
class FourierLabel:
    rho: object
    P: tuple
    Q: tuple
    p_index: int
    q_index: int

    @property
    def boxes(self) -> int:
        return ic.label_boxes(self.rho)

    def sort_key(self) -> tuple:
        return (ic.shape_key(self.rho), self.p_index, self.q_index)

    def to_json(self) -> dict:
        return {"rho": ic.label_str(self.rho), "P": self.p_index, "Q": self.q_index}

    def __str__(self) -> str:
        return f"{ic.label_str(self.rho)}[{self.p_index},{self.q_index}]"


def _exact_sqrt(field: Field, x):
    """sqrt that stays exact: a Fraction when possible, otherwise a sympy algebraic number."""
    if field.mode != "exact":
        return field.sqrt(x)
    try:
        return field.sqrt(x)
    except ScalarError:
        return sympy.sqrt(sympy.Rational(x.numerator, x.denominator))


def _sym(x):
    return sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x


class FourierData:
    """Fourier elements, norms and transform matrices of one algebra.

    ``basis`` picks the computational basis: the scaled diagrams (default) or
    the raw diagrams (the convention of the P_1 worked example).
    """

    def __init__(self, family: str, params, field: Field, basis: str = "scaled", algebra: DiagramAlgebra | None = None):
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        self.field = field
        self.basis = basis
        self.algebra = algebra or DiagramAlgebra(family, params, field)
        self.algebra.check_semisimple()
        self.family = self.algebra.family
        self.params = self.algebra.params
        self.forms = IrrepForms(self.family, self.params, field)
        labels = []
        for rho in self.forms.labels:
            paths = self.forms.paths(rho)
            for p, P in enumerate(paths):
                for q, Q in enumerate(paths):
                    labels.append(FourierLabel(rho, P, Q, p, q))
        labels.sort(key=FourierLabel.sort_key)
        self.labels = labels
        self.label_index = {x: k for k, x in enumerate(labels)}
        if len(labels) != len(self.algebra):
            raise AssertionError(f"{len(labels)} Fourier labels for an algebra of dimension {len(self.algebra)}")

    def __repr__(self) -> str:
        return f"FourierData({self.family!r}, {self.params!r}, {self.field!r}, basis={self.basis!r})"

    # ----------------------------------------------------------- building blocks

    def _basis_factor(self, k: int):
        """Scalar s with computational basis vector k = s * scaled basis element k."""
        A = self.algebra
        return self.field.one if self.basis == "scaled" else self.field.one / A.scale(k)

    @cached_property
    def rep_rows(self) -> np.ndarray:
        """R[x, k] = rho(b_k)_{PQ} for the computational basis b_k."""
        A, F = self.algebra, self.field
        N = len(A)
        R = F.zeros(N, N)
        for rho in self.forms.labels:
            mats = self.forms.scaled_matrices(rho, A)
            for x, lab in enumerate(self.labels):
                if lab.rho != rho:
                    continue
                for k in range(N):
                    R[x, k] = mats[k][lab.p_index, lab.q_index] * self._basis_factor(k)
        return R

    @cached_property
    def coefficients(self) -> np.ndarray:
        """C[x, k]: coefficient of the computational basis vector k in E_x."""
        A, F = self.algebra, self.field
        R = self.rep_rows
        Ginv = A.gram_L_inverse
        N = len(A)
        transposed = [
            self.label_index[FourierLabel(lab.rho, lab.Q, lab.P, lab.q_index, lab.p_index)] for lab in self.labels
        ]
        scaled_rows = np.array([R[t] for t in transposed], dtype=object)
        if self.basis == "unscaled":
            # back to the scaled basis before applying G^{-1} (which is in the scaled basis)
            factors = np.array([self._basis_factor(k) for k in range(N)], dtype=object)
            scaled_rows = scaled_rows / factors
        C = scaled_rows @ Ginv
        dims = np.array([F(self.forms.dims[lab.rho]) for lab in self.labels], dtype=object)
        C = C * dims[:, None]
        if self.basis == "unscaled":
            C = C * np.array([A.scale(k) for k in range(N)], dtype=object)[None, :]
        return C

    def fourier_basis_element(self, rho, P, Q) -> AlgebraElement:
        """E_{PQ}^rho as an element of the algebra (stored in the scaled basis)."""
        x = self._find(rho, P, Q)
        row = self.coefficients[x]
        A = self.algebra
        coeffs = {}
        for k in range(len(A)):
            c = row[k]
            if self.basis == "unscaled":
                c = c / A.scale(k)
            if c != 0:
                coeffs[k] = c
        return AlgebraElement(A, coeffs)

    def _find(self, rho, P, Q) -> int:
        paths = self.forms.paths(rho)
        P = paths[P] if isinstance(P, int) else tuple(P)
        Q = paths[Q] if isinstance(Q, int) else tuple(Q)
        return self.label_index[FourierLabel(rho, P, Q, paths.index(P), paths.index(Q))]

    # ----------------------------------------------------------- norms and transforms

    @cached_property
    def norms_sq(self) -> list:
        F = self.field
        return [sum((c * c for c in row), F.zero) for row in self.coefficients]

    @cached_property
    def norms(self) -> list:
        return [_exact_sqrt(self.field, v) for v in self.norms_sq]

    def ft_matrix(self, variant: str = "exact") -> np.ndarray:
        """FT_A (variant "exact") or F~T_A (variant "tilde"); rows are labels, columns basis vectors.

        In exact mode the entries are sympy numbers whenever a norm is irrational.
        """
        if variant == "exact":
            return self._ft_exact
        if variant == "tilde":
            return self._ft_tilde
        raise ValueError(f"unknown variant {variant!r}")

    @cached_property
    def _ft_exact(self) -> np.ndarray:
        C = self.coefficients
        out = np.empty(C.shape, dtype=object)
        for x, nrm in enumerate(self.norms):
            for k in range(C.shape[1]):
                out[x, k] = _sym(C[x, k]) / nrm if isinstance(nrm, sympy.Basic) else C[x, k] / nrm
        return out

    @cached_property
    def _ft_tilde(self) -> np.ndarray:
        R = self.rep_rows
        out = np.empty(R.shape, dtype=object)
        for x, nrm in enumerate(self.norms):
            for k in range(R.shape[1]):
                out[x, k] = nrm * _sym(R[x, k]) if isinstance(nrm, sympy.Basic) else nrm * R[x, k]
        return out

    def matrix_unit_residual(self):
        """max |sigma(E_x)_{y} - delta_{xy}| over all label pairs (Schur orthogonality)."""
        F = self.field
        M = self.rep_rows @ self.coefficients.T
        return F.max_abs(M - F.eye(len(self.labels)))

    # ----------------------------------------------------------- niceness, norms, concentration

    def _require_float(self, what: str) -> None:
        if self.field.mode != "float":
            raise ValueError(f"{what} needs float mode")

    def fourier_gram(self) -> np.ndarray:
        """Computational Gram matrix of the normalized Fourier states."""
        self._require_float("fourier_gram")
        FT = self._ft_exact
        return FT @ FT.T

    def niceness(self):
        """delta = operator norm of (normalized Fourier Gram - I)."""
        F = self.field
        return F.opnorm(self.fourier_gram() - F.eye(len(self.labels)))

    def multiplicities(self) -> dict:
        d = self.field.d_rational
        return {rho: ic.schur_multiplicity(self.family, rho, d) for rho in self.forms.labels}

    def norm_ratios(self) -> list:
        """||E_x||^2 * d^n / m_rho for every label (tends to 1 as d grows)."""
        F = self.field
        m = self.multiplicities()
        dn = F.d**self.algebra.n
        return [self.norms_sq[x] * dn / F(m[lab.rho]) for x, lab in enumerate(self.labels)]

    def norm_products(self) -> list:
        """||E_x||^2 * m_rho / d^n for every label, the product form of the norm law."""
        F = self.field
        m = self.multiplicities()
        dn = F.d**self.algebra.n
        return [self.norms_sq[x] * F(m[lab.rho]) / dn for x, lab in enumerate(self.labels)]

    def fourier_norms(self) -> dict:
        F = self.field
        ratios = self.norm_ratios()
        return {
            "norms_sq": {str(lab): self.norms_sq[x] for x, lab in enumerate(self.labels)},
            "max_ratio_deviation": max(abs(r - F.one) for r in ratios),
        }

    def concentration_defect(self, D: dg.Diagram):
        """||a~||^2 - ||Pi_{pn(D)} a~||^2 for the column a~ = F~T|D>; also returns the |rho| > pn part."""
        k = self.algebra.index[D]
        col = self._ft_tilde[:, k]
        pn = dg.propagating_number(D)
        total = sum((v * v for v in col), self.field.zero)
        on = sum((col[x] ** 2 for x, lab in enumerate(self.labels) if lab.boxes == pn), self.field.zero)
        above = sum((col[x] ** 2 for x, lab in enumerate(self.labels) if lab.boxes > pn), self.field.zero)
        return total - on, above

    def max_concentration_defect(self):
        return max(self.concentration_defect(D)[0] for D in self.algebra.basis)

    def ft_distance(self):
        """Operator norm of FT - F~T."""
        self._require_float("ft_distance")
        return self.field.opnorm(self._ft_exact - self._ft_tilde)

    # ----------------------------------------------------------- report

    def report(self) -> dict:
        F = self.field
        fmt = F.fmt
        out = {
            "family": self.family,
            "params": list(self.params) if isinstance(self.params, tuple) else self.params,
            "d": fmt(F.d_rational) if F.mode == "exact" else str(F.d_rational),
            "mode": F.mode,
            "precision_bits": None if F.mode == "exact" else F.precision_bits,
            "basis": self.basis,
            "labels": [lab.to_json() for lab in self.labels],
            "diagrams": [str(D) for D in self.algebra.basis],
        }
        if F.mode == "exact":
            out["norms_sq"] = [fmt(v) for v in self.norms_sq]
            out["ft"] = [[str(sympy.radsimp(v)) if isinstance(v, sympy.Basic) else fmt(v) for v in row] for row in self._ft_exact]
            out["coefficients"] = [[fmt(v) for v in row] for row in self.coefficients]
            return out
        out["norms"] = [fmt(v) for v in self.norms]
        out["ft_minus_tilde_opnorm"] = fmt(self.ft_distance())
        out["niceness"] = fmt(self.niceness())
        out["max_norm_ratio_deviation"] = fmt(self.fourier_norms()["max_ratio_deviation"])
        out["concentration_defects"] = [fmt(self.concentration_defect(D)[0]) for D in self.algebra.basis]
        out["ft"] = [[fmt(v) for v in row] for row in self._ft_exact]
        return out


def fourier_data(family: str, params, field: Field, basis: str = "scaled") -> FourierData:
    return FourierData(family, params, field, basis)


def report_json(data: FourierData) -> str:
    return json.dumps(data.report(), indent=1, sort_keys=True)
