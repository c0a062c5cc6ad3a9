"""Invariant suites shared by the ``check`` command and the acceptance tests.

Every suite returns a :class:`SuiteResult` with a pass flag and JSON-ready
measurements.  Float suites run at the field's precision; decay suites run a
sweep over d and compare successive ratios with a band.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

from . import diagram as dg
from . import irrep_catalog as ic
from .algebra_core import DiagramAlgebra, Field
from .fourier import FourierData
from .matrix_forms import IrrepForms

SUITES = ("relations", "schur-orthogonality", "niceness-decay", "concentration", "counting", "sov-decay")
RESIDUAL_TOL = Fraction(1, 10**20)
DECAY_SWEEP = (10**4, 4 * 10**4, 16 * 10**4)
HALVING_BAND = (0.35, 0.65)


@dataclass
class SuiteResult:
    suite: str
    passed: bool
    details: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "details": self.details}


def _wall(family, params):
    return tuple(params) if family == "walled" else None


def _n(family, params) -> int:
    return sum(params) if family == "walled" else params


def ratios(values) -> list[float]:
    return [float(b / a) for a, b in zip(values, values[1:])]


def in_band(rs, band=HALVING_BAND) -> bool:
    return all(band[0] <= r <= band[1] for r in rs)


# ------------------------------------------------------------------ relations


def generator_relations(family: str, params, forms: IrrepForms) -> dict:
    """Residuals of the defining relations among generator images, per relation name."""
    F = forms.field
    n = _n(family, params)
    wall = _wall(family, params)

    def gen(kind, i):
        try:
            return dg.generator(kind, i, n, family, wall)
        except dg.DiagramError:
            return None

    out: dict = {}

    def note(name, value):
        out[name] = max(out.get(name, F.zero), value)

    kinds = {"partition": "sbp", "half": "sbp", "brauer": "se", "walled": "sf", "symmetric": "s"}[family]
    for lab in forms.labels:
        dim = forms.dims[lab]
        eye = F.eye(dim)
        rho = lambda D: forms.matrix(lab, D)  # noqa: E731
        for i in range(1, n + 1):
            s, s2 = gen("s", i), gen("s", i + 1)
            if s is not None:
                S = rho(s)
                note("s^2=1", F.max_abs(S @ S - eye))
                if s2 is not None:
                    S2 = rho(s2)
                    note("braid", F.max_abs(S @ S2 @ S - S2 @ S @ S2))
            if "b" in kinds and gen("b", i) is not None and _is_basis(gen("b", i), forms):
                B = rho(gen("b", i))
                note("b^2=b", F.max_abs(B @ B - B))
                P = rho(gen("p", i)) if gen("p", i) is not None and _is_basis(gen("p", i), forms) else None
                if P is not None:
                    note("bpb=b", F.max_abs(B @ P @ B - B))
            p = gen("p", i) if "p" in kinds else None
            if p is not None and _is_basis(p, forms):
                P = rho(p)
                note("p^2=dp", F.max_abs(P @ P - P * F.d))
                if s is not None and gen("p", i + 1) is not None and _is_basis(gen("p", i + 1), forms):
                    note("sps=p-shift", F.max_abs(S @ P @ S - rho(gen("p", i + 1))))
            for kind in "ef":
                e = gen(kind, i) if kind in kinds else None
                if e is not None and _is_basis(e, forms):
                    E = rho(e)
                    note(f"{kind}^2=d{kind}", F.max_abs(E @ E - E * F.d))
    return out


def _is_basis(D: dg.Diagram, forms: IrrepForms) -> bool:
    """Generators of the half algebra that touch the last column are not in the algebra."""
    return D in forms._all(forms.labels[0])


def relation_residuals(family: str, params, field: Field) -> dict:
    """Relation residuals plus the homomorphism and involution checks over all basis pairs."""
    forms = IrrepForms(family, params, field)
    A = DiagramAlgebra(family, params, field)
    out = generator_relations(family, params, forms)
    hom = inv = field.zero
    for lab in forms.labels:
        mats = forms._all(lab)
        for D1, D2 in product(A.basis, repeat=2):
            res = dg.compose(D1, D2)
            rhs = mats[res.diagram] * field.d**res.removed_components
            hom = max(hom, field.max_abs(mats[D1] @ mats[D2] - rhs))
        for D in A.basis:
            inv = max(inv, field.max_abs(mats[D].T - mats[dg.involution(D)]))
    out["homomorphism"] = hom
    out["involution"] = inv
    return out


def relations_suite(family: str, params, field: Field) -> SuiteResult:
    res = relation_residuals(family, params, field)
    worst = max(res.values())
    return SuiteResult(
        "relations",
        worst <= field(RESIDUAL_TOL),
        {k: field.fmt(v, 6) for k, v in sorted(res.items())} | {"max": field.fmt(worst, 6)},
    )


def schur_orthogonality_suite(family: str, params, field: Field) -> SuiteResult:
    data = FourierData(family, params, field)
    res = data.matrix_unit_residual()
    return SuiteResult("schur-orthogonality", res <= field(RESIDUAL_TOL), {"matrix_unit_residual": field.fmt(res, 6)})


# ------------------------------------------------------------------ counting


def counting_details(family: str, params, d: int = 17) -> dict:
    """Exact counting identities: sum d_rho^2, per-pn counts, and sum m_rho d_rho = d^n."""
    irreps = ic.irrep_set(family, params)
    wall = _wall(family, params)
    n = _n(family, params)
    size = len(dg.enumerate_basis(family, n, wall=wall))
    sum_sq = sum(dim * dim for _, dim in irreps)
    by_pn = ic.count_diagrams_by_pn(family, params)
    by_boxes = ic.dims_by_boxes(family, params)
    schur = sum(ic.schur_multiplicity(family, lab, d) * dim for lab, dim in irreps)
    return {
        "dimension": size,
        "sum_dim_sq": sum_sq,
        "count_by_pn": {str(k): v for k, v in by_pn.items()},
        "dims_by_boxes": {str(k): v for k, v in by_boxes.items()},
        "schur_d": d,
        "sum_mult_dim": str(schur),
        "d_power_n": d**n,
        "ok": sum_sq == size and by_pn == by_boxes and schur == d**n,
    }


def counting_suite(family: str, params, field: Field | None = None) -> SuiteResult:
    det = counting_details(family, params)
    ok = det.pop("ok")
    return SuiteResult("counting", ok, det)


# ------------------------------------------------------------------ decay sweeps


def _sweep_fields(ds, precision_bits):
    return [Field(d, "float", precision_bits) for d in ds]


def niceness_series(family: str, params, ds=DECAY_SWEEP, precision_bits=None) -> list:
    return [FourierData(family, params, F).niceness() for F in _sweep_fields(ds, precision_bits)]


def norm_series(family: str, params, ds=DECAY_SWEEP, precision_bits=None, form: str = "products") -> list:
    """max |x - 1| for x = ||E||^2 m/d^n ("products") or ||E||^2 d^n/m ("ratios")."""
    out = []
    for F in _sweep_fields(ds, precision_bits):
        data = FourierData(family, params, F)
        xs = data.norm_products() if form == "products" else data.norm_ratios()
        out.append(max(abs(x - 1) for x in xs))
    return out


def concentration_series(family: str, params, ds=DECAY_SWEEP, precision_bits=None) -> tuple[list, list]:
    """(max defect, max mass on |rho| > pn) per d."""
    defects, above = [], []
    for F in _sweep_fields(ds, precision_bits):
        data = FourierData(family, params, F)
        pairs = [data.concentration_defect(D) for D in data.algebra.basis]
        defects.append(max(p[0] for p in pairs))
        above.append(max(abs(p[1]) for p in pairs))
    return defects, above


def _decay_result(name, ds, values, extra=None) -> SuiteResult:
    rs = ratios(values)
    details = {
        "d": [str(d) for d in ds],
        "values": [f"{float(v):.6e}" for v in values],
        "ratios": [round(r, 4) for r in rs],
        "band": list(HALVING_BAND),
    }
    ok = in_band(rs)
    if extra:
        details.update(extra[0])
        ok = ok and extra[1]
    return SuiteResult(name, ok, details)


def niceness_decay_suite(family, params, ds=DECAY_SWEEP, precision_bits=None) -> SuiteResult:
    return _decay_result("niceness-decay", ds, niceness_series(family, params, ds, precision_bits))


def concentration_suite(family, params, ds=DECAY_SWEEP, precision_bits=None) -> SuiteResult:
    defects, above = concentration_series(family, params, ds, precision_bits)
    F = Field(ds[0], "float", precision_bits)
    zero_ok = all(a <= F.tol for a in above)
    return _decay_result(
        "concentration", ds, defects, ({"above_pn_mass": [f"{float(a):.3e}" for a in above], "above_pn_zero": zero_ok}, zero_ok)
    )


def sov_decay_suite(family, params, ds=DECAY_SWEEP, precision_bits=None) -> SuiteResult:
    from .qft_sov import sov_qft

    errors, unit, unit_ok = [], [], True
    for F in _sweep_fields(ds, precision_bits):
        res = sov_qft(family, params, F)
        errors.append(res.alg_vs_tilde())
        unit.append(res.unitarity())
        unit_ok = unit_ok and unit[-1] <= F(RESIDUAL_TOL)
    return _decay_result("sov-decay", ds, errors, ({"unitarity": [f"{float(u):.3e}" for u in unit], "unitary": unit_ok}, unit_ok))


def run_suite(suite: str, family: str, params, d=None, ds=None, precision_bits=None) -> SuiteResult:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    ds = tuple(ds or DECAY_SWEEP)
    if suite == "counting":
        return counting_suite(family, params)
    if suite in ("relations", "schur-orthogonality"):
        F = Field(d if d is not None else ds[0], "float", precision_bits)
        fn = relations_suite if suite == "relations" else schur_orthogonality_suite
        return fn(family, params, F)
    fn = {"niceness-decay": niceness_decay_suite, "concentration": concentration_suite, "sov-decay": sov_decay_suite}[suite]
    return fn(family, params, ds, precision_bits)
