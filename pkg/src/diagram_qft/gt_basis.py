"""Exact Gelfand-Tsetlin bases built directly from the algebra.

For each level of a subalgebra chain the central idempotents are found by
Lagrange interpolation on a generic central element.  Products of them along a
Bratteli path give primitive idempotents e_P, and the vectors e_P x e_T span
the irrep.  The invariant form u^op v = c e_T normalizes them into an
orthogonal form.  All arithmetic is over the rationals in the unscaled diagram
basis, so d only needs to be rational.

Entries of orthogonal matrices are stored as signed square roots (sign, q)
meaning sign * sqrt(q) with q a nonnegative rational.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import QQ, Poly, symbols
from sympy.polys.matrices import DomainMatrix

from . import diagram as dg
from . import irrep_catalog as ic

_lam = symbols("lam")


class GTError(RuntimeError):
    pass


class ExactAlgebra:
    """Unscaled diagram basis with rational structure constants at a fixed rational d."""

    def __init__(self, family: str, params, d: Fraction):
        self.family = family
        self.params = params
        self.d = Fraction(d)
        if family == "walled":
            self.wall = tuple(params)
            self.n = sum(params)
            self.basis = dg.enumerate_basis("walled", wall=self.wall)
        else:
            self.wall = None
            self.n = params
            self.basis = dg.enumerate_basis(family, params)
        self.index = {D: k for k, D in enumerate(self.basis)}
        self._prod: dict[tuple[int, int], tuple[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.basis)

    def prod_index(self, i: int, j: int) -> tuple[int, Fraction]:
        key = (i, j)
        hit = self._prod.get(key)
        if hit is None:
            res = dg.compose(self.basis[i], self.basis[j])
            hit = (self.index[res.diagram], self.d ** res.removed_components)
            self._prod[key] = hit
        return hit

    def mul(self, x: dict, y: dict) -> dict:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                k, c = self.prod_index(i, j)
                out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def op(self, x: dict) -> dict:
        return {self.index[dg.involution(self.basis[k])]: v for k, v in x.items()}

    def unit(self) -> dict:
        return {self.index[dg.identity(self.n, self.family, self.wall)]: Fraction(1)}

    def generators(self) -> list[dg.Diagram]:
        return chain_generators(self.family, self.params)

    @cached_property
    def trace_values(self) -> list[Fraction]:
        out = []
        for k in range(len(self)):
            t = Fraction(0)
            for j in range(len(self)):
                idx, c = self.prod_index(k, j)
                if idx == j:
                    t += c
            out.append(t)
        return out

    def regular_trace(self, x: dict) -> Fraction:
        tv = self.trace_values
        return sum((v * tv[k] for k, v in x.items()), Fraction(0))

    def schur_trace(self, x: dict) -> Fraction:
        ident = dg.identity(self.n, self.family, self.wall)
        return sum((v * self.d ** dg.cc(dg.join(self.basis[k], ident)) for k, v in x.items()), Fraction(0))

    def center_basis(self) -> list[dict]:
        gens = [self.index[g] for g in self.generators()]
        N = len(self)
        rows = []
        for g in gens:
            eq: dict[tuple[int, int], Fraction] = {}
            for j in range(N):
                k1, c1 = self.prod_index(g, j)
                k2, c2 = self.prod_index(j, g)
                eq[(k1, j)] = eq.get((k1, j), 0) + c1
                eq[(k2, j)] = eq.get((k2, j), 0) - c2
            block = [[QQ(0)] * N for _ in range(N)]
            for (k, j), v in eq.items():
                if v:
                    block[k][j] = QQ(v.numerator, v.denominator)
            rows.extend(block)
        if not rows:
            rows = [[QQ(0)] * N]
        M = DomainMatrix(rows, (len(rows), N), QQ)
        null = M.nullspace().to_Matrix()
        out = []
        for r in range(null.rows):
            vec = {j: Fraction(int(null[r, j].p), int(null[r, j].q)) for j in range(N) if null[r, j] != 0}
            out.append(vec)
        return out


def chain_generators(family: str, params) -> list[dg.Diagram]:
    """A generating set of diagrams for the algebra (in a fixed order)."""
    if family == "walled":
        r, s = params
        n = r + s
        out = []
        if r and s:
            out.append(dg.generator("e", r, n, "walled", (r, s)))
        out += [dg.generator("s", i, n, "walled", (r, s)) for i in range(1, n) if i != r]
        return out
    n = params
    if family == "symmetric":
        return [dg.generator("s", i, n, "symmetric") for i in range(1, n)]
    if family == "brauer":
        return [dg.generator("e", i, n, "brauer") for i in range(1, n)] + [
            dg.generator("s", i, n, "brauer") for i in range(1, n)
        ]
    if family == "partition":
        return (
            [dg.generator("p", i, n) for i in range(1, n + 1)]
            + [dg.generator("b", i, n) for i in range(1, n)]
            + [dg.generator("s", i, n) for i in range(1, n)]
        )
    if family == "half":
        return (
            [dg.generator("p", i, n, "half") for i in range(1, n)]
            + [dg.generator("b", i, n, "half") for i in range(1, n)]
            + [dg.generator("s", i, n, "half") for i in range(1, n - 1)]
        )
    raise ValueError(f"unknown family {family!r}")


def level_algebra(family: str, params, level: int):
    """(family, params, column_map) of the chain algebra at ``level``.

    ``column_map`` places its columns inside the top algebra; None marks the
    trivial algebra at level 0.
    """
    if level == 0:
        return None
    if family == "partition" or family == "half":
        k = (level + 1) // 2
        fam = "partition" if level % 2 == 0 else "half"
        return fam, k, list(range(1, k + 1))
    if family in ("brauer", "symmetric"):
        return family, level, list(range(1, level + 1))
    r, s = params
    steps = ic.chain_for("walled", (r, s)).steps[:level]
    a, b = steps.count("L"), steps.count("R")
    return "walled", (a, b), list(range(1, a + 1)) + [r + j for j in range(1, b + 1)]


class GTIrreps:
    """Orthogonal-form data for every irrep of one algebra, built by :func:`gt_irreps`."""

    def __init__(self, family: str, params, d: Fraction):
        self.family = family
        self.params = tuple(params) if family == "walled" else params
        self.d = Fraction(d)
        self.alg = ExactAlgebra(family, self.params, self.d)
        self.chain = ic.chain_for(family, self.params)
        self.top = self.chain.length

    # ------------------------------------------------------------ idempotents

    def _embed(self, level: int, vec: dict) -> dict:
        info = level_algebra(self.family, self.params, level)
        if info is None:
            return self.alg.unit()
        fam, p, cols = info
        sub = _exact_algebra(fam, p, self.d)
        n = self.alg.n
        out = {}
        for k, v in vec.items():
            D = dg.relabel_columns(sub.basis[k], cols, n, self.family, self.alg.wall)
            out[self.alg.index[D]] = v
        return out

    @cached_property
    def level_idempotents(self) -> list[dict]:
        """Per level: label -> central idempotent of that level, embedded in the top algebra."""
        out = []
        for level in range(self.top + 1):
            labels = ic.level_labels(self.chain, level)
            info = level_algebra(self.family, self.params, level)
            if info is None:
                out.append({labels[0]: self.alg.unit()})
                continue
            fam, p, _ = info
            local = central_idempotents(fam, p, self.d)
            if set(local) != set(labels):
                raise GTError(f"level {level}: labels {sorted(local)} vs {labels}")
            out.append({lab: self._embed(level, e) for lab, e in local.items()})
        return out

    @lru_cache(maxsize=None)
    def path_idempotent(self, path: tuple) -> dict:
        if len(path) == 1:
            return self.level_idempotents[0][path[0]]
        prev = self.path_idempotent(path[:-1])
        return self.alg.mul(prev, self.level_idempotents[len(path) - 1][path[-1]])

    # ------------------------------------------------------------ one irrep

    @lru_cache(maxsize=None)
    def irrep(self, label) -> "GTIrrep":
        return GTIrrep(self, label)

    @cached_property
    def sub(self) -> "GTIrreps | None":
        if self.top == 0:
            return None
        fam, p, _ = level_algebra(self.family, self.params, self.top - 1) or (None, None, None)
        if fam is None or (self.top - 1) == 0:
            return None
        return gt_irreps(fam, p, self.d)

    def sub_column_map(self) -> list[int]:
        return level_algebra(self.family, self.params, self.top - 1)[2]


class GTIrrep:
    def __init__(self, owner: GTIrreps, label):
        self.owner = owner
        self.label = label
        alg = owner.alg
        self.paths = ic.paths_to(owner.chain, label)
        T = self.paths[0]
        eT = owner.path_idempotent(T)
        vecs = []
        for P in self.paths:
            eP = owner.path_idempotent(P)
            for k in range(len(alg)):
                v = alg.mul(alg.mul(eP, {k: Fraction(1)}), eT)
                if v:
                    break
            else:
                raise GTError(f"no vector for path {P}")
            vecs.append(v)
        self.vecs = vecs
        self._setup_solver()
        anchor = next(iter(eT))
        norms = []
        for v in vecs:
            w = alg.mul(alg.op(v), v)
            c = w.get(anchor, Fraction(0)) / eT[anchor]
            if c <= 0:
                raise GTError(f"invariant form not positive on {label} (c={c}); d too small?")
            norms.append(c)
        self.norms = norms
        self.signs = [1] * len(self.paths)
        self._fix_signs()

    def _setup_solver(self) -> None:
        """Pick pivot coordinates so that vectors in the span can be decomposed."""
        dim = len(self.vecs)
        coords = sorted({k for v in self.vecs for k in v})
        rows = [[QQ(v.get(k, 0).numerator, v.get(k, 0).denominator) if v.get(k) else QQ(0) for v in self.vecs] for k in coords]
        M = DomainMatrix(rows, (len(coords), dim), QQ)
        _, pivots = M.transpose().rref()
        # pivots are row indices of M (coordinates) when viewed through the transpose
        piv_coords = [coords[p] for p in pivots]
        if len(piv_coords) != dim:
            raise GTError("GT vectors are dependent")
        sub = DomainMatrix([[rows[coords.index(c)][j] for j in range(dim)] for c in piv_coords], (dim, dim), QQ)
        inv = sub.inv().to_Matrix()
        self._piv = piv_coords
        self._inv = [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(dim)] for i in range(dim)]

    def _decompose(self, w: dict) -> list[Fraction]:
        rhs = [w.get(c, Fraction(0)) for c in self._piv]
        dim = len(rhs)
        coeff = [sum(self._inv[i][j] * rhs[j] for j in range(dim)) for i in range(dim)]
        for k in set(w) | {k for v in self.vecs for k in v}:
            recon = sum(coeff[i] * self.vecs[i].get(k, 0) for i in range(dim))
            if recon != w.get(k, 0):
                raise GTError("element does not preserve the irrep span")
        return coeff

    @lru_cache(maxsize=None)
    def raw_matrix(self, diagram_index: int) -> tuple:
        """Matrix M with D v_P = sum_Q M[Q][P] v_Q (rational)."""
        alg = self.owner.alg
        cols = [self._decompose(alg.mul({diagram_index: Fraction(1)}, v)) for v in self.vecs]
        dim = len(self.vecs)
        return tuple(tuple(cols[p][q] for p in range(dim)) for q in range(dim))

    def signed_matrix(self, D: dg.Diagram) -> list[list[tuple[int, Fraction]]]:
        """Orthogonal-form entries as (sign, square) pairs."""
        M = self.raw_matrix(self.owner.alg.index[D])
        dim = len(self.vecs)
        out = []
        for q in range(dim):
            row = []
            for p in range(dim):
                m = M[q][p]
                if m == 0:
                    row.append((0, Fraction(0)))
                else:
                    sgn = (1 if m > 0 else -1) * self.signs[q] * self.signs[p]
                    row.append((sgn, m * m * self.norms[q] / self.norms[p]))
            out.append(row)
        return out

    def _fix_signs(self) -> None:
        owner = self.owner
        sub = owner.sub
        dim = len(self.paths)
        signs: list[int | None] = [None] * dim
        blocks: dict = {}
        for idx, P in enumerate(self.paths):
            blocks.setdefault(P[-2] if len(P) > 1 else None, []).append(idx)
        n = owner.alg.n
        # match each block to the child irrep (up to one sign per block)
        if sub is not None:
            cmap = owner.sub_column_map()
            sub_gens = chain_generators(sub.family, sub.params)
            for child, members in blocks.items():
                rep = sub.irrep(child)
                local = {P: k for k, P in enumerate(rep.paths)}
                signs[members[0]] = 1
                pending = True
                while pending:
                    pending = False
                    for g in sub_gens:
                        big = dg.relabel_columns(g, cmap, n, owner.family, owner.alg.wall)
                        M = self.raw_matrix(owner.alg.index[big])
                        C = rep.signed_matrix(g)
                        for a in members:
                            for b in members:
                                if M[a][b] == 0:
                                    continue
                                ca, cb = local[self.paths[a][:-1]], local[self.paths[b][:-1]]
                                want = C[ca][cb][0]
                                if want == 0:
                                    raise GTError("child block mismatch")
                                sgn = 1 if M[a][b] > 0 else -1
                                if signs[a] is not None and signs[b] is None:
                                    signs[b] = want * sgn * signs[a]
                                    pending = True
                                elif signs[b] is not None and signs[a] is None:
                                    signs[a] = want * sgn * signs[b]
                                    pending = True
                if any(signs[m] is None for m in members):
                    raise GTError("child block not connected")
        else:
            for members in blocks.values():
                for m in members:
                    signs[m] = 1
        # one sign per block: first nonzero entry of the top generators to an earlier block is positive
        order = list(blocks)
        fixed = {order[0]}
        gens = [owner.alg.index[g] for g in chain_generators(owner.family, owner.params)]
        block_of = {m: b for b, ms in blocks.items() for m in ms}
        while len(fixed) < len(order):
            progress = False
            for g in gens:
                M = self.raw_matrix(g)
                for a in range(dim):
                    for b in range(dim):
                        if M[a][b] == 0:
                            continue
                        ba, bb = block_of[a], block_of[b]
                        if ba in fixed and bb not in fixed:
                            cur = (1 if M[a][b] > 0 else -1) * signs[a] * signs[b]
                            if cur < 0:
                                for m in blocks[bb]:
                                    signs[m] = -signs[m]
                            fixed.add(bb)
                            progress = True
                if progress:
                    break
            if not progress:
                raise GTError("irrep blocks not connected by generators")
        self.signs = [int(s) for s in signs]


@lru_cache(maxsize=None)
def _exact_algebra(family: str, params, d: Fraction) -> ExactAlgebra:
    return ExactAlgebra(family, params, d)


@lru_cache(maxsize=None)
def gt_irreps(family: str, params, d) -> GTIrreps:
    params = tuple(params) if family == "walled" else params
    return GTIrreps(family, params, Fraction(d))


@lru_cache(maxsize=None)
def central_idempotents(family: str, params, d: Fraction) -> dict:
    """label -> central idempotent (unscaled coefficient dict) of the algebra."""
    alg = _exact_algebra(family, params, Fraction(d))
    labels = [lab for lab, _ in ic.irrep_set(family, params)]
    dims = dict(ic.irrep_set(family, params))
    if len(labels) == 1:
        return {labels[0]: alg.unit()}
    center = alg.center_basis()
    if len(center) != len(labels):
        raise GTError(f"center has dimension {len(center)}, expected {len(labels)} (not semisimple at d={d}?)")
    rng = random.Random(1729)
    k = len(center)
    # coordinates of center elements via pivots
    coords = sorted({j for c in center for j in c})
    rows = [[QQ(c.get(j, Fraction(0)).numerator, c.get(j, Fraction(0)).denominator) for c in center] for j in coords]
    _, piv = DomainMatrix(rows, (len(coords), k), QQ).transpose().rref()
    piv_coords = [coords[p] for p in piv]
    sub = DomainMatrix([[rows[coords.index(c)][i] for i in range(k)] for c in piv_coords], (k, k), QQ).inv()

    def in_center(x: dict) -> list[Fraction]:
        rhs = DomainMatrix([[QQ(x.get(c, Fraction(0)).numerator, x.get(c, Fraction(0)).denominator)] for c in piv_coords], (k, 1), QQ)
        sol = (sub * rhs).to_Matrix()
        return [Fraction(int(sol[i, 0].p), int(sol[i, 0].q)) for i in range(k)]

    for _attempt in range(20):
        weights = [rng.randint(1, 97) for _ in range(k)]
        z: dict = {}
        for w, c in zip(weights, center):
            for j, v in c.items():
                z[j] = z.get(j, 0) + w * v
        z = {j: v for j, v in z.items() if v}
        mz = [in_center(alg.mul(z, c)) for c in center]
        Mz = DomainMatrix([[QQ(mz[col][row].numerator, mz[col][row].denominator) for col in range(k)] for row in range(k)], (k, k), QQ)
        roots = Poly(Mz.charpoly(), _lam, domain=QQ).ground_roots()
        if len(roots) == k and all(m == 1 for m in roots.values()):
            break
    else:
        raise GTError("could not separate the central idempotents")
    eigen = [Fraction(int(r.p), int(r.q)) for r in roots]
    unit_c = in_center(alg.unit())
    out: dict = {}
    for lam_i in eigen:
        vec = list(unit_c)
        for lam_j in eigen:
            if lam_j == lam_i:
                continue
            new = [sum(mz[col][row] * vec[col] for col in range(k)) - lam_j * vec[row] for row in range(k)]
            vec = [x / (lam_i - lam_j) for x in new]
        e: dict = {}
        for w, c in zip(vec, center):
            for j, v in c.items():
                e[j] = e.get(j, 0) + w * v
        e = {j: v for j, v in e.items() if v}
        dim2 = alg.regular_trace(e)
        strace = alg.schur_trace(e)
        match = [lab for lab in labels if dims[lab] ** 2 == dim2 and ic.schur_multiplicity(family, lab, d) * dims[lab] == strace]
        if len(match) > 1:
            match = _split_by_children(alg, family, params, e, match)
        if len(match) != 1:
            raise GTError(f"cannot identify idempotent (dim^2={dim2}, schur trace={strace}): {match}")
        out[match[0]] = e
    return out


def _split_by_children(alg: ExactAlgebra, family: str, params, e: dict, candidates: list) -> list:
    """Keep the candidates whose children one level down are exactly those e meets."""
    chain = ic.chain_for(family, params)
    top = chain.length
    info = level_algebra(family, params, top - 1)
    if info is None:
        return candidates
    fam, p, cols = info
    lower = central_idempotents(fam, p, alg.d)
    sub = _exact_algebra(fam, p, alg.d)
    seen = set()
    for lab, f in lower.items():
        emb = {alg.index[dg.relabel_columns(sub.basis[k], cols, alg.n, family, alg.wall)]: v for k, v in f.items()}
        if alg.mul(e, emb):
            seen.add(lab)
    prev = ic.level_labels(chain, top - 1)
    return [c for c in candidates if {x for x in prev if c in ic.step_up(chain, top - 1, x)} == seen]
