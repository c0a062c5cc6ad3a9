"""Matrix-level simulation of the separation-of-variables Fourier transform.

The transform on A is built from the transform on a subalgebra B of the chain:

1. factor every diagram as D = w1 . D_b . w2 with the last possible transversal
   (w1, w2) and store the pair in a control register,
2. apply the (recursively simulated) transform of B to D_b,
3. accumulate: for every transversal in order, undo its postprocessing on the
   "done" part of the state, swap the done flag with the transversal's own
   control when the payload is a B label, and redo the postprocessing.

Everything is simulated at the level of exact isometries on labelled sparse
vectors.  An isometry X defined on part of the B labels is completed to the
unitary [[0, X^T], [X, I - X X^T]] which is its own inverse, so Ũ and Ũ† are
the same operator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import product

from . import diagram as dg
from . import irrep_catalog as ic
from .algebra_core import DiagramAlgebra, Field
from .fourier import FourierData
from .gt_basis import level_algebra
from .matrix_forms import IrrepForms

BOT = None  # the "done" value of a control register
FAMILIES = ("brauer", "partition", "walled", "symmetric")


class SovError(ValueError):
    pass


def _n_of(family: str, params) -> int:
    return sum(params) if family == "walled" else params


def _root(family: str):
    return ((), ()) if family == "walled" else ()


def _perm_from_map(mapping: dict, n: int) -> list[int]:
    perm = list(range(1, n + 1))
    for k, v in mapping.items():
        perm[k - 1] = v
    return perm


def _swap(i: int, j: int):
    return lambda x: j if x == i else i if x == j else x


def left_place(i: int, j: int, a: int, b: int, n: int) -> list[int]:
    """One-line permutation sending i to a and j to b: (j b) first, then (i' a)."""
    t1 = _swap(j, b)
    t2 = _swap(t1(i), a)
    return [t2(t1(x)) for x in range(1, n + 1)]


def _inverse(perm: list[int]) -> list[int]:
    out = [0] * len(perm)
    for k, v in enumerate(perm, start=1):
        out[v - 1] = k
    return out


# ------------------------------------------------------------------ transversals


@dataclass(frozen=True)
class Transversal:
    """One (w1, w2) pair.  w1 = pi1 . r1 and w2 = r2 . pi2 with pi1, pi2 permutations."""

    case: str
    block: int
    indices: tuple
    pi1: tuple  # one-line permutation
    pi2: tuple
    r1: tuple = ()  # generator names ("b", i) applied after pi1
    r2: tuple = ()
    embedding: str = "E"

    def key(self) -> tuple:
        return (self.block, self.indices)

    def __lt__(self, other: "Transversal") -> bool:
        return self.key() < other.key()

    @property
    def zero_case(self) -> bool:
        """True when w2 carries e_{n-1}, f_r or p_n (the image diagrams have pn = 0)."""
        return any(g[0] in ("e", "f", "p") for g in self.r2)

    def words(self, family: str, wall=None) -> tuple[dg.Diagram, dg.Diagram]:
        n = len(self.pi1)
        fam = family
        left = [dg.permutation_diagram(self.pi1, fam, wall)] + [dg.generator(k, i, n, fam, wall) for k, i in self.r1]
        right = [dg.generator(k, i, n, fam, wall) for k, i in self.r2] + [dg.permutation_diagram(self.pi2, fam, wall)]
        return dg.compose_chain(left).diagram, dg.compose_chain(right).diagram

    def __str__(self) -> str:
        def perm_str(p):
            moved = [f"{k}->{v}" for k, v in enumerate(p, start=1) if k != v]
            return "(" + ",".join(moved) + ")" if moved else "id"
        r1 = "".join(f"{k}{i}" for k, i in self.r1)
        r2 = "".join(f"{k}{i}" for k, i in self.r2)
        return f"{self.case}{list(self.indices)}: {perm_str(self.pi1)}{r1} | {r2}{perm_str(self.pi2)}"

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "indices": list(self.indices),
            "pi1": list(self.pi1),
            "pi2": list(self.pi2),
            "r1": ["%s%d" % g for g in self.r1],
            "r2": ["%s%d" % g for g in self.r2],
        }


def _T(i: int, j: int, n: int) -> tuple:
    return tuple(_perm_from_map({i: j, j: i}, n))


def transversals(family: str, params) -> list[Transversal]:
    """The family's transversal set, sorted increasingly by the order."""
    n = _n_of(family, params)
    if n == 0:
        raise SovError("the trivial algebra has no transversals")
    out: list[Transversal] = []
    if family == "symmetric" or (family == "brauer" and n % 2 == 1):
        for i, k in product(range(1, n + 1), repeat=2):
            out.append(Transversal("propagating", 0, (i, k), _T(i, n, n), _T(k, n, n)))
    elif family == "brauer":
        for i, k in product(range(1, n), repeat=2):
            out.append(Transversal("no-propagation", 0, (i, k), _T(i, n - 1, n), _T(k, n - 1, n), (), (("e", n - 1),), "F"))
        for i, j in product(range(1, n + 1), repeat=2):
            if i >= j:
                continue
            for k, l in product(range(1, n + 1), repeat=2):
                if k == l:
                    continue
                pi1 = tuple(left_place(i, j, n - 1, n, n))
                pi2 = tuple(_inverse(left_place(k, l, n - 1, n, n)))
                out.append(Transversal("propagating", 1, (i, j, k, l), pi1, pi2))
    elif family == "walled":
        r, s = params
        if s > r:
            for j, l in product(range(r + 1, n + 1), repeat=2):
                out.append(Transversal("right", 0, (j, l), _T(j, n, n), _T(l, n, n)))
        elif r > s:
            for i, k in product(range(1, r + 1), repeat=2):
                out.append(Transversal("left", 0, (i, k), _T(i, r, n), _T(k, r, n)))
        else:
            for i, k in product(range(1, r + 1), repeat=2):
                out.append(Transversal("no-propagation", 0, (i, k), _T(i, r, n), _T(k, r, n), (), (("f", r),), "F"))
            for i, j, k, l in product(range(1, r + 1), range(r + 1, n + 1), range(1, r + 1), range(r + 1, n + 1)):
                pi1 = tuple(left_place(i, j, r, n, n))
                pi2 = tuple(_inverse(left_place(k, l, r, n, n)))
                out.append(Transversal("propagating", 1, (i, j, k, l), pi1, pi2))
    elif family == "partition":
        ident = tuple(range(1, n + 1))
        out.append(Transversal("W0,1", 3, (), ident, ident, (), (("p", n),), "F1"))
        if n >= 2:
            b = ("b", n - 1)
            for i, j in product(range(1, n), repeat=2):
                out.append(Transversal("W0,4", 0, (i, j), _T(i, n - 1, n), _T(j, n - 1, n), (b,), (("p", n), b), "F4"))
            for i in range(1, n):
                out.append(Transversal("W0,3", 1, (i,), _T(i, n - 1, n), ident, (b,), (("p", n),), "F2"))
                out.append(Transversal("W0,2", 2, (i,), ident, _T(i, n - 1, n), (), (("p", n), b), "F3"))
            for i, k, l in product(range(1, n + 1), repeat=3):
                if k < l:
                    pi2 = tuple(_inverse(left_place(k, l, n - 1, n, n)))
                    out.append(Transversal("W+,3", 4, (i, k, l), _T(i, n, n), pi2, (), (b,), "G2"))
            for i, j, k in product(range(1, n + 1), repeat=3):
                if i < j:
                    pi1 = tuple(left_place(i, j, n - 1, n, n))
                    out.append(Transversal("W+,2", 5, (i, j, k), pi1, _T(k, n, n), (b,), (), "G1"))
        for i, k in product(range(1, n + 1), repeat=2):
            out.append(Transversal("W+,1", 6, (i, k), _T(i, n, n), _T(k, n, n)))
    else:
        raise SovError(f"no separation-of-variables chain for family {family!r}")
    out.sort()
    keys = [t.key() for t in out]
    assert len(set(keys)) == len(keys), "transversal order is not strict"
    return out


def sub_level(family: str, params) -> tuple[str, object, list[int], int]:
    """(family, params, column map, number of chain steps) of the subalgebra B."""
    n = _n_of(family, params)
    chain = ic.chain_for(family, params)
    if family == "brauer":
        steps = 2 if n % 2 == 0 else 1
    elif family == "walled":
        steps = 2 if params[0] == params[1] else 1
    elif family == "partition":
        steps = 2
    else:
        steps = 1
    level = chain.length - steps
    sub = level_algebra(family, params, level)
    if sub is None:
        root = {"walled": (0, 0)}.get(family, 0)
        return family, root, [], steps
    fam, p, cmap = sub
    return fam, p, cmap, steps


# ------------------------------------------------------------------ factorization


class Factorizer:
    """Last possible factorization through a precomputed image table."""

    def __init__(self, family: str, params):
        self.family = family
        self.params = tuple(params) if family == "walled" else params
        self.n = _n_of(family, self.params)
        self.wall = self.params if family == "walled" else None
        self.transversals = transversals(family, self.params)
        self.sub_family, self.sub_params, self.column_map, self.steps = sub_level(family, self.params)
        sub_wall = self.sub_params if self.sub_family == "walled" else None
        self.sub_basis = dg.enumerate_basis(self.sub_family, _n_of(self.sub_family, self.sub_params), wall=sub_wall)

    def embed(self, Db: dg.Diagram) -> dg.Diagram:
        return dg.relabel_columns(Db, self.column_map, self.n, self.family, self.wall)

    def image(self, t: Transversal, Db: dg.Diagram) -> dg.CompositionResult | None:
        w1, w2 = t.words(self.family, self.wall)
        try:
            return dg.compose_chain([w1, self.embed(Db), w2])
        except dg.DiagramError:
            return None

    @cached_property
    def table(self) -> dict:
        """D -> (transversal, D_b, removed loops) for the greatest valid transversal."""
        out: dict = {}
        for t in reversed(self.transversals):
            for Db in self.sub_basis:
                res = self.image(t, Db)
                if res is None or res.diagram in out:
                    continue
                out[res.diagram] = (t, Db, res.removed_components)
        basis = dg.enumerate_basis(self.family, self.n, wall=self.wall)
        missing = [D for D in basis if D not in out]
        assert not missing, f"no valid transversal for {missing[0]}"
        return out

    def factor(self, D: dg.Diagram) -> tuple[Transversal, dg.Diagram, int]:
        return self.table[D]


def last_possible_factorization(D: dg.Diagram) -> tuple[Transversal, dg.Diagram, int]:
    params = D.wall if D.family == "walled" else D.n
    return _factorizer(D.family, params).factor(D)


_FACTORIZERS: dict = {}


def _factorizer(family: str, params) -> Factorizer:
    key = (family, tuple(params) if family == "walled" else params)
    if key not in _FACTORIZERS:
        _FACTORIZERS[key] = Factorizer(*key)
    return _FACTORIZERS[key]


# ------------------------------------------------------------------ isometries on labels


def _add(vec: dict, key, amp) -> None:
    if amp == 0:
        return
    vec[key] = vec.get(key, 0) + amp


@dataclass
class Isometry:
    """Sparse isometry X from source labels to target labels, applied through its unitary completion."""

    columns: dict  # source label -> {target label: amplitude}
    rows: dict = dc_field(default_factory=dict)  # target label -> {source label: amplitude}

    def __post_init__(self):
        for s, col in self.columns.items():
            for u, a in col.items():
                self.rows.setdefault(u, {})[s] = a

    def apply(self, vec: dict) -> dict:
        """V = [[0, X^T], [X, I - X X^T]] on a payload vector (identity off source and target labels)."""
        out: dict = {}
        tgt: dict = {}
        for key, a in vec.items():
            if key in self.columns:
                for u, x in self.columns[key].items():
                    _add(out, u, x * a)
            elif key in self.rows:
                tgt[key] = a
            else:
                _add(out, key, a)
        if tgt:
            back: dict = {}
            for u, a in tgt.items():
                _add(out, u, a)
                for s, x in self.rows[u].items():
                    _add(back, s, x * a)
            for s, c in back.items():
                _add(out, s, c)
                for u, x in self.columns[s].items():
                    _add(out, u, -x * c)
        return out

    def forward(self, vec: dict) -> dict:
        """X alone on a vector supported on source labels."""
        out: dict = {}
        for key, a in vec.items():
            for u, x in self.columns[key].items():
                _add(out, u, x * a)
        return out


# ------------------------------------------------------------------ one recursion level


class SovLevel:
    """Operators and the simulated transform for one algebra of the chain."""

    def __init__(self, family: str, params, field: Field):
        self.family = family
        self.params = tuple(params) if family == "walled" else params
        self.field = field
        self.n = _n_of(family, self.params)
        self.wall = self.params if family == "walled" else None
        self.chain = ic.chain_for(family, self.params)
        self.root = _root(family)
        if self.n == 0:
            self.sub = None
            return
        self.factorizer = _factorizer(family, self.params)
        self.transversals = self.factorizer.transversals
        self.forms = IrrepForms(family, self.params, field)
        self.sub = SovLevel(self.factorizer.sub_family, self.factorizer.sub_params, field)
        self.sub_level = self.chain.length - self.factorizer.steps
        self._columns: dict = {}

    def __repr__(self) -> str:
        return f"SovLevel({self.family!r}, {self.params!r})"

    @property
    def depth(self) -> int:
        return 0 if self.sub is None else 1 + self.sub.depth

    # labels ---------------------------------------------------------------
    def labels(self) -> list[tuple]:
        if self.n == 0:
            return [(self.root, (self.root,), (self.root,))]
        out = []
        for rho in self.forms.labels:
            paths = self.forms.paths(rho)
            out.extend((rho, P, Q) for P in paths for Q in paths)
        return out

    def is_own(self, payload) -> bool:
        return len(payload[1]) == self.chain.length + 1

    def is_sub(self, payload) -> bool:
        return len(payload[1]) == self.sub_level + 1

    # multiplicities -------------------------------------------------------
    def _mult(self, level: int, label) -> Fraction:
        if level == 0:
            return Fraction(1)
        fam, p, _ = level_algebra(self.family, self.params, level)
        return ic.schur_multiplicity(fam, label, self.field.d_rational)

    def _columns_at(self, level: int) -> int:
        if level == 0:
            return 0
        fam, p, _ = level_algebra(self.family, self.params, level)
        return _n_of(fam, p)

    def ratio(self, level: int, sigma, rho):
        """r_{rho sigma} for the chain step level -> level + 1."""
        F = self.field
        if self.family == "symmetric":
            return F(Fraction(ic.hook_dim(rho), (level + 1) * ic.hook_dim(sigma)))
        m_rho = self._mult(level + 1, rho)
        m_sigma = self._mult(level, sigma)
        shift = self._columns_at(level + 1) - self._columns_at(level)
        r = m_rho / (m_sigma * F.d_rational**shift)
        if r <= 0:
            raise SovError(f"nonpositive embedding ratio at d={F.d_rational}")
        return F(r)

    def _step_map(self, level: int, label) -> dict:
        sigma, P, Q = label
        F = self.field
        targets = ic.step_up(self.chain, level, sigma)
        amps = {(rho, P + (rho,), Q + (rho,)): F.sqrt(self.ratio(level, sigma, rho)) for rho in targets}
        norm = F.sqrt(sum((a * a for a in amps.values()), F.zero))
        return {k: a / norm for k, a in amps.items()}

    def embedding_map(self, start: int, stop: int, label) -> dict:
        """Ẽ from level ``start`` to level ``stop`` (composite of normalized single steps)."""
        vec = {label: self.field.one}
        for level in range(start, stop):
            nxt: dict = {}
            for lab, a in vec.items():
                for u, x in self._step_map(level, lab).items():
                    _add(nxt, u, a * x)
            vec = nxt
        return vec

    # extension maps -------------------------------------------------------
    def _sub_labels(self) -> list[tuple]:
        return self.sub.labels()

    def _relabel(self, fn) -> Isometry:
        cols = {}
        for lab in self._sub_labels():
            if lab[0] != self.root:
                continue
            cols[lab] = {fn(lab): self.field.one}
        return Isometry(cols)

    def _partition_extension(self, row_box: bool, col_box: bool):
        n = self.n
        box, empty = (1,), ()

        def ext(path, boxed):
            p = list(path)
            if boxed:
                p[2 * n - 2] = box
            return tuple(p) + (empty, empty)

        return lambda lab: (empty, ext(lab[1], row_box), ext(lab[2], col_box))

    def _bridge_vector(self, path_half: tuple) -> dict:
        """Unit +1 eigenvector of b_{n-1} on the class of ``path_half`` (signs from the orthogonal form)."""
        n = self.n
        tau = path_half[-1]
        half = _half_forms(n, self.field)
        paths = half.paths(tau)
        M = half.generator_matrix(tau, "b", n - 1)
        cls = [k for k, R in enumerate(paths) if all(R[m] == path_half[m] for m in range(len(R)) if m != 2 * n - 2)]
        j = paths.index(path_half)
        F = self.field
        if M[j, j] > F.tol:
            root = F.sqrt(M[j, j])
            return {paths[k]: M[k, j] / root for k in cls if M[k, j] != 0}
        diag = {k: M[k, k] for k in cls}
        j = max(diag, key=lambda k: diag[k])
        root = F.sqrt(M[j, j])
        return {paths[k]: M[k, j] / root for k in cls if M[k, j] != 0}

    def _bridge_map(self, on_rows: bool) -> Isometry:
        n = self.n
        half_level = 2 * n - 1
        cols = {}
        for lab in self._sub_labels():
            rho, P, Q = lab
            X, Y = (P, Q) if on_rows else (Q, P)
            tau = X[2 * n - 3]
            vec = self._bridge_vector(X + (tau,))
            out: dict = {}
            for R, a in vec.items():
                half_lab = (tau, R, Y + (tau,)) if on_rows else (tau, Y + (tau,), R)
                for u, x in self.embedding_map(half_level, half_level + 1, half_lab).items():
                    _add(out, u, a * x)
            cols[lab] = out
        return Isometry(cols)

    @cached_property
    def isometries(self) -> dict:
        out: dict = {}
        kinds = {t.embedding for t in self.transversals}
        top = self.chain.length
        for kind in sorted(kinds):
            if kind == "E":
                out[kind] = Isometry({lab: self.embedding_map(self.sub_level, top, lab) for lab in self._sub_labels()})
            elif kind == "F":
                if self.family == "walled":
                    mid, end = ((1,), ()), ((), ())
                else:
                    mid, end = (1,), ()
                out[kind] = self._relabel(lambda lab: (end, lab[1] + (mid, end), lab[2] + (mid, end)))
            elif kind in ("F1", "F2", "F3", "F4"):
                row_box = kind in ("F2", "F4")
                col_box = kind in ("F3", "F4")
                out[kind] = self._relabel(self._partition_extension(row_box, col_box))
            elif kind == "G1":
                out[kind] = self._bridge_map(True)
            elif kind == "G2":
                out[kind] = self._bridge_map(False)
            else:
                raise SovError(f"unknown embedding kind {kind!r}")
        return out

    # controlled irreps ----------------------------------------------------
    def perm_matrix(self, rho, perm: tuple):
        D = dg.permutation_diagram(perm, self.family, self.wall)
        return self.forms.matrix(rho, D)

    def _apply_side(self, vec: dict, perm: tuple, side: str, transpose: bool) -> dict:
        """new[idx] = sum_old M[new, old] old, with M = rho(perm) or its transpose, on the row or column path."""
        if list(perm) == list(range(1, self.n + 1)):
            return dict(vec)
        out: dict = {}
        for key, a in vec.items():
            if not self.is_own(key):
                _add(out, key, a)
                continue
            rho, P, Q = key
            paths = self.forms.paths(rho)
            M = self.perm_matrix(rho, perm)
            old = paths.index(P if side == "row" else Q)
            for new, R in enumerate(paths):
                x = M[old, new] if transpose else M[new, old]
                if x == 0:
                    continue
                _add(out, (rho, R, Q) if side == "row" else (rho, P, R), x * a)
        return out

    def postprocess(self, vec: dict, t: Transversal, inverse: bool) -> dict:
        if inverse:
            vec = self._apply_side(vec, t.pi1, "row", True)
            return self._apply_side(vec, t.pi2, "col", False)
        vec = self._apply_side(vec, t.pi1, "row", False)
        return self._apply_side(vec, t.pi2, "col", True)

    # the simulated transform ---------------------------------------------
    def _on_done(self, state: dict, fn) -> dict:
        """Apply ``fn`` to the payload vector of each control setting whose own register is ⊥."""
        groups: dict = {}
        out: dict = {}
        for (ctrl, payload), a in state.items():
            if ctrl[0] is BOT:
                groups.setdefault(ctrl, {})[payload] = a
            else:
                out[(ctrl, payload)] = a
        for ctrl, vec in groups.items():
            for payload, a in fn(vec).items():
                _add(out, (ctrl, payload), a)
        return out

    def iterate(self, state: dict, t: Transversal) -> dict:
        """One pass of the accumulate loop for transversal ``t``."""
        V = self.isometries[t.embedding]
        state = self._on_done(state, lambda v: V.apply(self.postprocess(v, t, inverse=True)))
        swapped: dict = {}
        for (ctrl, payload), a in state.items():
            c0 = ctrl[0]
            if self.is_sub(payload) and (c0 is BOT or c0 == t):
                ctrl = ((t if c0 is BOT else BOT),) + ctrl[1:]
            _add(swapped, (ctrl, payload), a)
        return self._on_done(swapped, lambda v: self.postprocess(V.apply(v), t, inverse=False))

    def column(self, D: dg.Diagram, full_loop: bool = False) -> dict:
        """U_alg |D> as a sparse vector keyed by (controls, payload)."""
        if self.n == 0:
            return {((), self.labels()[0]): self.field.one}
        if not full_loop and D in self._columns:
            return self._columns[D]
        t, Db, _ = self.factorizer.factor(D)
        inner = self.sub.column(Db)
        state = {((t,) + ctrl, payload): a for (ctrl, payload), a in inner.items()}
        for tp in self.transversals:
            if not full_loop and tp < t:
                continue  # controls cannot fire before the correct guess
            state = self.iterate(state, tp)
        if not full_loop:
            self._columns[D] = state
        return state


_HALF_FORMS: dict = {}


def _half_forms(n: int, field: Field) -> IrrepForms:
    key = (n, field)
    if key not in _HALF_FORMS:
        _HALF_FORMS[key] = IrrepForms("half", n, field)
    return _HALF_FORMS[key]


# ------------------------------------------------------------------ reports


def _gram(columns: list[dict], zero):
    m = len(columns)
    G = [[zero] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            a, b = columns[i], columns[j]
            if len(b) < len(a):
                a, b = b, a
            v = sum((x * b[k] for k, x in a.items() if k in b), zero)
            G[i][j] = G[j][i] = v
    return G


@dataclass
class SovResult:
    level: SovLevel
    basis: list
    columns: list  # sparse U_alg columns
    data: FourierData

    @property
    def field(self) -> Field:
        return self.level.field

    def _target(self, variant: str) -> list[dict]:
        FTm = self.data.ft_matrix(variant)
        done = (BOT,) * self.level.depth
        out = []
        for k in range(len(self.basis)):
            col = {}
            for x, lab in enumerate(self.data.labels):
                if FTm[x, k] != 0:
                    col[(done, (lab.rho, lab.P, lab.Q))] = FTm[x, k]
            out.append(col)
        return out

    def _diff_norm(self, target: list[dict]):
        F = self.field
        diffs = []
        for u, t in zip(self.columns, target):
            d = dict(u)
            for k, v in t.items():
                d[k] = d.get(k, F.zero) - v
            diffs.append(d)
        G = F.array(_gram(diffs, F.zero))
        return F.sqrt(F.opnorm(G)), diffs

    def alg_vs_tilde(self):
        return self._diff_norm(self._target("tilde"))[0]

    def alg_vs_exact(self):
        return self._diff_norm(self._target("exact"))[0]

    def unitarity(self):
        """max |U^T U - I| over the columns."""
        F = self.field
        G = F.array(_gram(self.columns, F.zero))
        return F.max_abs(G - F.eye(len(self.columns)))

    def per_diagram(self) -> list[dict]:
        F = self.field
        target = self._target("tilde")
        out = []
        for D, u, t in zip(self.basis, self.columns, target):
            tv, Db, removed = self.level.factorizer.factor(D)
            keys = set(u) | set(t)
            res = F.sqrt(sum(((u.get(k, F.zero) - t.get(k, F.zero)) ** 2 for k in keys), F.zero))
            out.append({
                "diagram": str(D),
                "case": tv.case,
                "transversal": str(tv),
                "sub_diagram": str(Db),
                "removed_loops": removed,
                "residual": F.fmt(res),
            })
        return out


def sov_qft(family: str, params, field: Field) -> SovResult:
    """Simulate the separation-of-variables transform of one algebra."""
    if family not in FAMILIES:
        raise SovError(f"no separation-of-variables chain for family {family!r}")
    if field.mode != "float":
        raise SovError("the simulation runs in float mode")
    level = SovLevel(family, params, field)
    algebra = DiagramAlgebra(family, level.params, field)
    data = FourierData(family, level.params, field, algebra=algebra)
    columns = [level.column(D) for D in algebra.basis]
    return SovResult(level, list(algebra.basis), columns, data)


def sov_report(family: str, params, ds, precision_bits: int | None = None) -> dict:
    """Everything for sov-report.json; the per-diagram trace uses the first d."""
    series = []
    first = None
    for d in ds:
        F = Field(d, "float", precision_bits)
        res = sov_qft(family, params, F)
        entry = {
            "d": str(F.d_rational),
            "alg_vs_tilde": F.fmt(res.alg_vs_tilde()),
            "alg_vs_exact": F.fmt(res.alg_vs_exact()),
            "unitarity": F.fmt(res.unitarity()),
        }
        series.append(entry)
        if first is None:
            first = (F, res, entry)
    F, res, entry = first
    lvl = res.level
    return {
        "family": family,
        "params": list(lvl.params) if isinstance(lvl.params, tuple) else lvl.params,
        "d": entry["d"],
        "precision_bits": F.precision_bits,
        "normalization": "embedding images renormalized to unit length",
        "norms": {k: entry[k] for k in ("alg_vs_tilde", "alg_vs_exact", "unitarity")},
        "per_diagram": res.per_diagram(),
        "decay_series": [[e["d"], e["alg_vs_tilde"]] for e in series],
        "series": series,
    }


def _ft_columns(data: FourierData, variant: str = "tilde") -> dict:
    """Basis diagram -> sparse column of F~T (or FT) keyed by payload labels."""
    FTm = data.ft_matrix(variant)
    out = {}
    for k, D in enumerate(data.algebra.basis):
        out[D] = {(lab.rho, lab.P, lab.Q): FTm[x, k] for x, lab in enumerate(data.labels) if FTm[x, k] != 0}
    return out


def embedding_defect(family: str, params, field: Field):
    """max over source labels of |Ẽ s - E s|, E being the exact map given by Fourier norm ratios."""
    level = SovLevel(family, params, field)
    if level.sub is None or level.sub.n == 0:
        raise SovError("needs a nontrivial subalgebra")
    A = FourierData(family, level.params, field)
    B = FourierData(level.sub.family, level.sub.params, field)
    normA = {(lab.rho, lab.P, lab.Q): nrm for lab, nrm in zip(A.labels, A.norms)}
    normB = {(lab.rho, lab.P, lab.Q): nrm for lab, nrm in zip(B.labels, B.norms)}
    worst = field.zero
    for lab in level.sub.labels():
        approx = level.embedding_map(level.sub_level, level.chain.length, lab)
        err = sum(((a - normA[u] / normB[lab]) ** 2 for u, a in approx.items()), field.zero)
        worst = max(worst, field.sqrt(err))
    return worst


def step_residuals(family: str, params, field: Field) -> dict:
    """Largest one-step error per embedding kind.

    For every basis diagram D = w1 D_b w2 this compares the postprocessed image
    of the exact F~T_B|D_b> with F~T_A|D>, i.e. one level of the recursion fed
    with an ideal subalgebra transform.
    """
    level = SovLevel(family, params, field)
    A = _ft_columns(FourierData(family, level.params, field))
    B = _ft_columns(FourierData(level.sub.family, level.sub.params, field)) if level.sub.n else None
    out: dict = {}
    for D, (t, Db, _) in level.factorizer.table.items():
        src = B[Db] if B is not None else {level.sub.labels()[0]: field.one}
        X = level.isometries[t.embedding]
        img = level.postprocess(X.forward(src), t, inverse=False)
        keys = set(img) | set(A[D])
        err = field.sqrt(sum(((img.get(k, field.zero) - A[D].get(k, field.zero)) ** 2 for k in keys), field.zero))
        out[t.embedding] = max(out.get(t.embedding, field.zero), err)
    return out


def report_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True)
