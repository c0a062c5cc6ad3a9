"""Scalars, sparse algebra elements over the scaled diagram basis, trace forms and dual bases.

The computational basis of an n-column diagram algebra is the scaled diagram
basis ``a_D = d^{(n - cc(D))/2} D``.  Every coefficient stored here refers to it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Iterable, Mapping

import numpy as np
from mpmath.ctx_mp import MPContext

from . import diagram as dg

DEFAULT_PRECISION_BITS = int(os.environ.get("DA_PRECISION_BITS", "256"))


class ScalarError(ValueError):
    pass


class NotSemisimpleError(ValueError):
    pass


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


class Field:
    """Scalar domain for one value of d.

    ``mode="exact"`` uses :class:`fractions.Fraction` and requires d to be the
    square of a rational so every d^{k/2} stays rational.  ``mode="float"`` uses
    a private mpmath context with ``precision_bits`` of mantissa.
    """

    def __init__(self, d, mode: str = "float", precision_bits: int | None = None):
        if mode not in ("exact", "float"):
            raise ScalarError(f"unknown mode {mode!r}")
        self.mode = mode
        self.d_rational = parse_rational(d)
        if self.d_rational <= 0:
            raise ScalarError("d must be positive")
        self.precision_bits = precision_bits or DEFAULT_PRECISION_BITS
        if mode == "exact":
            root = _rational_sqrt(self.d_rational)
            if root is None:
                raise ScalarError(f"exact mode needs d to be a rational square, got {self.d_rational}")
            self.ctx = None
            self.d = self.d_rational
            self.sqrt_d = root
        else:
            self.ctx = MPContext()
            self.ctx.prec = self.precision_bits
            self.d = self.ctx.mpf(self.d_rational.numerator) / self.d_rational.denominator
            self.sqrt_d = self.ctx.sqrt(self.d)
        self.zero = self(0)
        self.one = self(1)

    def __repr__(self) -> str:
        extra = "" if self.mode == "exact" else f", precision_bits={self.precision_bits}"
        return f"Field(d={self.d_rational}, mode={self.mode!r}{extra})"

    def __call__(self, x):
        if self.mode == "exact":
            if isinstance(x, float):
                raise ScalarError("floats are not allowed in exact mode")
            return parse_rational(x) if isinstance(x, (str, int, Fraction)) else Fraction(x)
        if isinstance(x, Fraction):
            return self.ctx.mpf(x.numerator) / x.denominator
        return self.ctx.mpf(x)

    @property
    def tol(self):
        """Default agreement tolerance: 0 in exact mode, 2^{-bits/2} in float mode."""
        return 0 if self.mode == "exact" else self.ctx.mpf(2) ** (-(self.precision_bits // 2))

    def sqrt(self, x):
        if self.mode == "exact":
            root = _rational_sqrt(Fraction(x))
            if root is None:
                raise ScalarError(f"sqrt({x}) is irrational; use float mode")
            return root
        if x < 0:
            raise ScalarError(f"negative radicand {x}")
        return self.ctx.sqrt(x)

    def half_power(self, k: int):
        """d^{k/2} for an integer k."""
        if k % 2 == 0:
            return self.d ** (k // 2) if k >= 0 else self.one / self.d ** (-k // 2)
        base = self.sqrt_d ** abs(k)
        return base if k > 0 else self.one / base

    def abs(self, x):
        return abs(x)

    def to_float(self, x) -> float:
        return float(x)

    def fmt(self, x, digits: int | None = None) -> str:
        """Exact: 'p/q'.  Float: fixed significant digits derived from precision."""
        if self.mode == "exact":
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        digits = digits or max(10, int(self.precision_bits * 0.30103) - 5)
        return self.ctx.nstr(x, digits, min_fixed=-3, max_fixed=3, strip_zeros=False)

    # ------------------------------------------------------------ matrices

    def zeros(self, rows: int, cols: int | None = None) -> np.ndarray:
        cols = rows if cols is None else cols
        out = np.empty((rows, cols), dtype=object)
        out.fill(self.zero)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n)
        for k in range(n):
            out[k, k] = self.one
        return out

    def array(self, rows) -> np.ndarray:
        rows = [[self(x) for x in row] for row in rows]
        out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                out[i, j] = x
        return out

    def inv(self, mat: np.ndarray) -> np.ndarray:
        n = mat.shape[0]
        if self.mode == "exact":
            from sympy import QQ
            from sympy.polys.matrices import DomainMatrix

            dm = DomainMatrix([[QQ(int(x.numerator), int(x.denominator)) for x in row] for row in mat], (n, n), QQ)
            try:
                inv = dm.inv()
            except Exception as exc:  # sympy raises DMNonInvertibleMatrixError
                raise NotSemisimpleError("singular matrix") from exc
            out = self.zeros(n)
            rows = inv.to_Matrix().tolist()
            for i in range(n):
                for j in range(n):
                    v = rows[i][j]
                    out[i, j] = Fraction(int(v.p), int(v.q))
            return out
        ctx = self.ctx
        try:
            inv = ctx.inverse(ctx.matrix(mat.tolist()))
        except ZeroDivisionError as exc:
            raise NotSemisimpleError("singular matrix") from exc
        out = self.zeros(n)
        for i in range(n):
            for j in range(n):
                out[i, j] = inv[i, j]
        return out

    def max_abs(self, mat) -> object:
        flat = list(np.asarray(mat, dtype=object).ravel())
        return max((abs(x) for x in flat), default=self.zero)

    @cached_property
    def num(self) -> MPContext:
        """mpmath context for inherently inexact quantities (norms) in either mode."""
        if self.ctx is not None:
            return self.ctx
        ctx = MPContext()
        ctx.prec = self.precision_bits
        return ctx

    def to_num(self, x):
        if isinstance(x, Fraction):
            return self.num.mpf(x.numerator) / x.denominator
        return self.num.mpf(x)

    def opnorm(self, mat: np.ndarray, rel_tol: float = 1e-12, max_iter: int | None = None):
        """Largest singular value by power iteration on M^T M.

        Starts from the all-ones vector plus a small deterministic tilt, runs at
        most 10*dim iterations and stops once the Rayleigh quotient moves by
        less than ``rel_tol`` relative.  Always returns an mpmath number.
        """
        ctx = self.num
        mat = np.asarray(mat, dtype=object)
        if mat.size == 0:
            return ctx.mpf(0)
        mat = np.vectorize(self.to_num, otypes=[object])(mat)
        gram = mat.T @ mat
        dim = gram.shape[0]
        max_iter = max_iter or 10 * dim
        v = np.array([ctx.mpf(1) + ctx.mpf(k) / (7 * dim + 1) for k in range(dim)], dtype=object)
        v = v / ctx.sqrt(sum(x * x for x in v))
        lam = ctx.mpf(0)
        for _ in range(max(max_iter, 20)):
            w = gram @ v
            norm = ctx.sqrt(sum(x * x for x in w))
            if norm == 0:
                return ctx.mpf(0)
            new = sum(a * b for a, b in zip(v, w))
            v = w / norm
            if abs(new - lam) <= rel_tol * abs(new):
                lam = new
                break
            lam = new
        return ctx.sqrt(max(lam, ctx.mpf(0)))


# --------------------------------------------------------------------- algebra


def _validate_params(family: str, params):
    if family == "walled":
        r, s = params
        return (int(r), int(s)), int(r) + int(s)
    return int(params), int(params)


def semisimple_exclusions(family: str, params) -> set[int]:
    """Values of d at which the family is known to fail semisimplicity."""
    if family == "walled":
        n = sum(params)
        return set(range(0, max(n - 1, 0)))
    n = params
    if family in ("partition", "half"):
        return set(range(0, 2 * n - 1))
    if family == "brauer":
        return set(range(0, n + 1)) if n >= 2 else set()
    return set()


def diagram_schur_inner(D: dg.Diagram, E: dg.Diagram, d) -> Fraction:
    """<D, E>_S on raw diagrams, exact for any rational d."""
    return parse_rational(d) ** dg.cc(dg.join(D, E))


class DiagramAlgebra:
    """A diagram algebra at a fixed value of d, with its scaled basis and structure constants."""

    def __init__(self, family: str, params, field: Field, cap: int = dg.DEFAULT_CAP):
        self.family = family
        self.params, self.n = _validate_params(family, params)
        self.field = field
        self.wall = self.params if family == "walled" else None
        if family == "walled":
            self.basis = dg.enumerate_basis("walled", wall=self.params, cap=cap)
        else:
            self.basis = dg.enumerate_basis(family, self.n, cap=cap)
        self.index = {D: k for k, D in enumerate(self.basis)}
        self.exponents = [self.n - dg.cc(D) for D in self.basis]

    def __len__(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"DiagramAlgebra({self.family!r}, {self.params!r}, {self.field!r})"

    def check_semisimple(self) -> None:
        d = self.field.d_rational
        if d.denominator == 1 and int(d) in semisimple_exclusions(self.family, self.params):
            raise NotSemisimpleError(f"{self.family}{self.params} is not semisimple at d={d}")

    def scale(self, k: int):
        """Factor turning the diagram basis[k] into the scaled basis element."""
        return self.field.half_power(self.exponents[k])

    def diagram_product(self, i: int, j: int) -> tuple[int, int]:
        """Index and d-exponent (in half units) of a_i a_j = d^{h/2} a_k."""
        res = dg.compose(self.basis[i], self.basis[j])
        k = self.index[res.diagram]
        h = 2 * res.removed_components + self.exponents[i] + self.exponents[j] - self.exponents[k]
        return k, h

    @cached_property
    def table(self) -> tuple[np.ndarray, np.ndarray]:
        """Full structure constants: product index and half-power of d for every pair."""
        N = len(self)
        idx = np.zeros((N, N), dtype=np.int64)
        hp = np.zeros((N, N), dtype=np.int64)
        for i in range(N):
            for j in range(N):
                idx[i, j], hp[i, j] = self.diagram_product(i, j)
        return idx, hp

    def product_coeff(self, i: int, j: int):
        idx, hp = self.table
        return int(idx[i, j]), self.field.half_power(int(hp[i, j]))

    # ----------------------------------------------------------- elements

    def element(self, coeffs: Mapping | None = None) -> "AlgebraElement":
        return AlgebraElement(self, coeffs or {})

    def basis_element(self, k: int) -> "AlgebraElement":
        return AlgebraElement(self, {k: self.field.one})

    def diagram_element(self, D: dg.Diagram, coeff=None) -> "AlgebraElement":
        """The unscaled diagram D (times ``coeff``) written in the scaled basis."""
        k = self.index[D]
        c = self.field.one if coeff is None else self.field(coeff) if not _is_scalar(coeff, self.field) else coeff
        return AlgebraElement(self, {k: c / self.scale(k)})

    def identity(self) -> "AlgebraElement":
        return self.diagram_element(dg.identity(self.n, self.family, self.wall))

    def generator_element(self, kind: str, i: int) -> "AlgebraElement":
        return self.diagram_element(dg.generator(kind, i, self.n, self.family, self.wall))

    # ----------------------------------------------------------- forms

    def left_regular_matrix(self, x: "AlgebraElement") -> np.ndarray:
        F = self.field
        N = len(self)
        out = F.zeros(N)
        idx, hp = self.table
        for i, c in x.coeffs.items():
            for j in range(N):
                out[idx[i, j], j] += c * F.half_power(int(hp[i, j]))
        return out

    @cached_property
    def trace_values(self) -> list:
        """tau_L(a_k) = trace of left multiplication by a_k."""
        F = self.field
        idx, hp = self.table
        out = []
        for k in range(len(self)):
            t = F.zero
            for j in range(len(self)):
                if idx[k, j] == j:
                    t += F.half_power(int(hp[k, j]))
            out.append(t)
        return out

    def trace_form_L(self, x: "AlgebraElement"):
        tv = self.trace_values
        return sum((c * tv[k] for k, c in x.coeffs.items()), self.field.zero)

    def bilinear_L(self, x: "AlgebraElement", y: "AlgebraElement"):
        return self.trace_form_L(x * y)

    @cached_property
    def gram_L(self) -> np.ndarray:
        F = self.field
        N = len(self)
        idx, hp = self.table
        tv = self.trace_values
        G = F.zeros(N)
        for i in range(N):
            for j in range(N):
                G[i, j] = F.half_power(int(hp[i, j])) * tv[idx[i, j]]
        return G

    @cached_property
    def gram_L_inverse(self) -> np.ndarray:
        self.check_semisimple()
        return self.field.inv(self.gram_L)

    def dual_basis(self) -> list["AlgebraElement"]:
        inv = self.gram_L_inverse
        N = len(self)
        return [AlgebraElement(self, {j: inv[i, j] for j in range(N) if inv[i, j] != 0}) for i in range(N)]

    def schur_pairing(self, i: int, j: int):
        """<a_i, a_j>_S on scaled basis elements: d^{(e_i+e_j)/2 + cc(D_i v D_j)}."""
        joined = dg.join(self.basis[i], self.basis[j])
        return self.field.half_power(self.exponents[i] + self.exponents[j] + 2 * dg.cc(joined))

    def schur_inner(self, x: "AlgebraElement", y: "AlgebraElement"):
        total = self.field.zero
        for i, a in x.coeffs.items():
            for j, b in y.coeffs.items():
                total += _conj(a) * b * self.schur_pairing(i, j)
        return total

    @cached_property
    def gram_schur(self) -> np.ndarray:
        N = len(self)
        G = self.field.zeros(N)
        for i in range(N):
            for j in range(i, N):
                G[i, j] = G[j, i] = self.schur_pairing(i, j)
        return G

    def computational_inner(self, x: "AlgebraElement", y: "AlgebraElement"):
        return sum((_conj(a) * y.coeffs[k] for k, a in x.coeffs.items() if k in y.coeffs), self.field.zero)

    def involution(self, x: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self, {self.index[dg.involution(self.basis[k])]: c for k, c in x.coeffs.items()})


def _conj(x):
    return x.conjugate() if hasattr(x, "conjugate") and not isinstance(x, Fraction) else x


def _is_scalar(x, field: Field) -> bool:
    if field.mode == "exact":
        return isinstance(x, Fraction)
    return type(x).__name__ in ("mpf", "mpc")


@dataclass
class AlgebraElement:
    """Sparse combination of scaled basis elements (index -> coefficient); zeros are dropped."""

    algebra: DiagramAlgebra
    coeffs: dict

    def __post_init__(self) -> None:
        self.coeffs = {int(k): v for k, v in self.coeffs.items() if v != 0}

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra:
            if (other.algebra.family, other.algebra.params) != (self.algebra.family, self.algebra.params):
                raise ValueError("elements belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, self.algebra.field.zero) + v
        return AlgebraElement(self.algebra, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scalar_mul(self, c) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, c) -> "AlgebraElement":
        return self.scalar_mul(c)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scalar_mul(other)
        self._check(other)
        A = self.algebra
        F = A.field
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k, c = A.product_coeff(i, j)
                out[k] = out.get(k, F.zero) + a * b * c
        return AlgebraElement(A, out)

    def vector(self) -> np.ndarray:
        F = self.algebra.field
        v = np.empty(len(self.algebra), dtype=object)
        v.fill(F.zero)
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def unscaled(self) -> dict:
        """Coefficients against the plain diagrams."""
        A = self.algebra
        return {A.basis[k]: c * A.scale(k) for k, c in self.coeffs.items()}

    def to_json(self) -> dict:
        A = self.algebra
        F = A.field
        return {
            "family": A.family,
            "n": A.n,
            "d": F.fmt(F.d_rational) if F.mode == "exact" else str(F.d_rational),
            "terms": [{"diagram": A.basis[k].to_json(), "coeff": F.fmt(c)} for k, c in sorted(self.coeffs.items())],
        }


def element_from_terms(A: DiagramAlgebra, terms: Iterable[tuple[dg.Diagram, object]]) -> AlgebraElement:
    out = A.element()
    for D, c in terms:
        out = out + A.diagram_element(D, c)
    return out
