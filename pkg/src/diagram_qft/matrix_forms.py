"""Irrep matrices of the diagram algebras in the subalgebra-adapted (Gelfand-Tsetlin) basis.

Sources per family:

* Brauer: Nazarov's orthogonal form, evaluated from contents.
* Symmetric group: Young's orthogonal form.
* Partition and half-partition: closed-form seminormal entries for the bridge
  and point generators, symmetrized into the orthogonal form; the swap
  generators come from the exact construction in :mod:`gt_basis`.
* Walled Brauer (alternating chain): the exact construction in :mod:`gt_basis`.

Rows and columns are indexed by Bratteli paths in the order of
:func:`irrep_catalog.paths_to`.  Matrices are numpy object arrays over a
:class:`algebra_core.Field`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import diagram as dg
from . import gt_basis as gt
from . import irrep_catalog as ic
from .algebra_core import AlgebraElement, Field
from .irrep_catalog import addable, content, diff_box, removable, size


class FormError(ValueError):
    pass


def _prod(values) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


def _sim(P: tuple, Q: tuple, level: int) -> bool:
    """P ~_level Q: the paths agree away from ``level``."""
    return all(P[k] == Q[k] for k in range(len(P)) if k != level)


# ------------------------------------------------------------------ Brauer


def brauer_x(P: tuple, i: int, d: Fraction) -> Fraction:
    """Nazarov's x_i(P) for the step from level i-1 to level i."""
    half = (d - 1) / 2
    prev, cur = P[i - 1], P[i]
    if size(cur) > size(prev):
        return half + content(diff_box(cur, prev))
    return -half - content(diff_box(prev, cur))


def brauer_e_diag(P: tuple, i: int, d: Fraction) -> Fraction:
    if P[i - 1] != P[i + 1]:
        return Fraction(0)
    x = brauer_x(P, i, d)
    mu = P[i - 1]
    half = (d - 1) / 2
    cs = [half + content(b) for b in addable(mu)] + [-(half + content(b)) for b in removable(mu)]
    ratio = _prod((x + c) / (x - c) for c in cs if c != x)
    if x == Fraction(-1, 2):
        return -ratio
    return (2 * x + 1) * ratio


def brauer_generator_matrix(label, kind: str, i: int, n: int, field: Field) -> np.ndarray:
    """Orthogonal-form matrix of s_i or e_i on the Brauer irrep ``label`` of B_n(d)."""
    if not 1 <= i <= n - 1:
        raise FormError(f"{kind}_{i} out of range for B_{n}")
    d = field.d_rational
    paths = ic.paths_to(ic.chain_for("brauer", n), label)
    dim = len(paths)
    M = field.zeros(dim)
    if kind == "e":
        diag = [brauer_e_diag(P, i, d) for P in paths]
        for p, P in enumerate(paths):
            for q, Q in enumerate(paths):
                if diag[p] and diag[q] and _sim(P, Q, i):
                    M[q, p] = field.sqrt(field(diag[p] * diag[q]))
        return M
    if kind != "s":
        raise FormError(f"unknown Brauer generator {kind!r}")
    ediag = [brauer_e_diag(P, i, d) for P in paths]
    for p, P in enumerate(paths):
        if P[i - 1] == P[i + 1]:
            xp = brauer_x(P, i, d)
            for q, Q in enumerate(paths):
                if not _sim(P, Q, i):
                    continue
                xq = brauer_x(Q, i, d)
                if xp + xq == 0:
                    raise FormError(f"x(P) + x(Q) = 0 at paths {P}, {Q}")
                e_qp = field.sqrt(field(ediag[p] * ediag[q])) if ediag[p] and ediag[q] else field.zero
                M[q, p] = (e_qp - (field.one if p == q else field.zero)) / field(xp + xq)
        else:
            delta = brauer_x(P, i + 1, d) - brauer_x(P, i, d)
            if delta == 0:
                raise FormError(f"Delta = 0 at path {P}")
            M[p, p] = field(1 / delta)
            for q, Q in enumerate(paths):
                if q != p and _sim(P, Q, i):
                    M[q, p] = field.sqrt(field(1 - 1 / delta**2))
    return M


# ------------------------------------------------------------------ symmetric group


def young_s_matrix(label, i: int, n: int, field: Field) -> np.ndarray:
    """Young's orthogonal form for the adjacent transposition s_i."""
    paths = ic.paths_to(ic.chain_for("symmetric", n), label)
    dim = len(paths)
    M = field.zeros(dim)
    for p, P in enumerate(paths):
        a = content(diff_box(P[i], P[i - 1]))
        b = content(diff_box(P[i + 1], P[i]))
        delta = Fraction(b - a)
        M[p, p] = field(1 / delta)
        for q, Q in enumerate(paths):
            if q != p and _sim(P, Q, i):
                M[q, p] = field.sqrt(field(1 - 1 / delta**2))
    return M


# ------------------------------------------------------------------ partition


def psi(small, big) -> Fraction:
    """Psi for adding one box a to ``small``: ratio of content differences over rows above a."""
    a = diff_box(big, small)
    ca = content(a)
    num = _prod(ca - content(b) for b in removable(small) if b[0] < a[0])
    den = _prod(ca - content(b) for b in addable(small) if b[0] < a[0])
    return num / den


def bridge_diag(P: tuple, i: int, d: Fraction) -> Fraction:
    """Seminormal (= orthogonal) diagonal entry of b_i on path P."""
    lo, mid, hi = P[2 * i - 1], P[2 * i], P[2 * i + 1]
    if lo != hi:
        return Fraction(0)
    m = size(lo)
    if mid == lo:
        return _prod(d - content(b) - m for b in removable(lo)) / _prod(d - content(b) - m for b in addable(lo))
    a = diff_box(mid, lo)
    ca = content(a)
    return (
        (d - ca - m - 1)
        / (d - ca - m)
        * _prod(ca - content(b) for b in removable(lo))
        / _prod(ca - content(b) for b in addable(lo) if b != a)
    )


def point_diag(P: tuple, i: int, d: Fraction) -> Fraction:
    """Seminormal (= orthogonal) diagonal entry of p_i on path P."""
    lo, mid, hi = P[2 * i - 2], P[2 * i - 1], P[2 * i]
    if lo != hi:
        return Fraction(0)
    m = size(lo)
    if mid == lo:
        return _prod(d - content(b) - m for b in addable(lo)) / _prod(d - content(b) - m for b in removable(lo))
    a = diff_box(lo, mid)
    ca = content(a)
    return (
        -(d - ca - m + 1)
        / (d - ca - m)
        * _prod(content(b) - ca for b in addable(lo))
        / _prod(content(b) - ca for b in removable(lo) if b != a)
    )


def bridge_seminormal(paths, i: int, d: Fraction) -> list[list[Fraction]]:
    dim = len(paths)
    M = [[Fraction(0)] * dim for _ in range(dim)]
    for p, P in enumerate(paths):
        M[p][p] = bridge_diag(P, i, d)
    for p, P in enumerate(paths):
        if P[2 * i - 1] != P[2 * i + 1]:
            continue
        for q, Q in enumerate(paths):
            if q == p or not _sim(P, Q, 2 * i):
                continue
            grow = size(Q[2 * i]) - size(P[2 * i])
            if grow == 1:
                M[q][p] = 1 / psi(P[2 * i], Q[2 * i])
            elif grow == -1:
                M[q][p] = M[p][p] * M[q][q] * psi(Q[2 * i], P[2 * i])
            else:
                M[q][p] = M[p][p] * psi(Q[2 * i + 1], Q[2 * i]) / psi(P[2 * i + 1], P[2 * i])
    return M


def point_seminormal(paths, i: int, d: Fraction) -> list[list[Fraction]]:
    dim = len(paths)
    M = [[Fraction(0)] * dim for _ in range(dim)]
    for p, P in enumerate(paths):
        M[p][p] = point_diag(P, i, d)
    for p, P in enumerate(paths):
        if P[2 * i - 2] != P[2 * i]:
            continue
        for q, Q in enumerate(paths):
            if q == p or not _sim(P, Q, 2 * i - 1):
                continue
            grow = size(Q[2 * i - 1]) - size(P[2 * i - 1])
            if grow == -1:
                M[q][p] = psi(Q[2 * i - 1], P[2 * i - 1])
            elif grow == 1:
                M[q][p] = M[p][p] * M[q][q] / psi(P[2 * i - 1], Q[2 * i - 1])
            else:
                M[q][p] = M[q][q] * psi(P[2 * i - 1], P[2 * i]) / psi(Q[2 * i - 1], Q[2 * i])
    return M


def _symmetrize(S: list[list[Fraction]], field: Field) -> np.ndarray:
    """Orthogonal form of a seminormal matrix related by a positive diagonal similarity."""
    dim = len(S)
    M = field.zeros(dim)
    for q in range(dim):
        for p in range(dim):
            v = S[q][p]
            if v == 0:
                continue
            if q == p:
                M[q, p] = field(v)
                continue
            prod = v * S[p][q]
            if prod <= 0:
                raise FormError(f"seminormal entries ({q},{p}) not symmetrizable: {v}, {S[p][q]}")
            mag = field.sqrt(field(prod))
            M[q, p] = mag if v > 0 else -mag
    return M


def _partition_family(family: str) -> None:
    if family not in ("partition", "half"):
        raise FormError(f"{family!r} is not a partition-type family")


def partition_generator_matrix(label, kind: str, i: int, n: int, field: Field, basis: str = "orthogonal", family: str = "partition"):
    """Matrix of b_i, p_i or s_i on a partition (or half-partition) irrep.

    ``n`` is the number of columns; for the half family it is the algebra P_{n-1/2}.
    ``basis="seminormal"`` returns exact rational lists for b and p.  The sigma
    kinds return the literal seminormal sigma matrices (exact lists, may raise).
    """
    _partition_family(family)
    d = field.d_rational
    paths = ic.paths_to(ic.chain_for(family, n), label)
    top_p = n if family == "partition" else n - 1
    top_s = n - 1 if family == "partition" else n - 2
    if kind == "b":
        if not 1 <= i <= n - 1:
            raise FormError(f"b_{i} out of range")
        S = bridge_seminormal(paths, i, d)
    elif kind == "p":
        if not 1 <= i <= top_p:
            raise FormError(f"p_{i} out of range")
        S = point_seminormal(paths, i, d)
    elif kind in ("sigma_even", "sigma_odd"):
        if family != "partition" or not 1 <= i <= n - 1:
            raise FormError(f"{kind}_{i} out of range")
        return sigma_seminormal(label, 2 * i if kind == "sigma_even" else 2 * i + 1, n, d)
    elif kind == "s":
        if not 1 <= i <= top_s:
            raise FormError(f"s_{i} out of range")
        if basis == "seminormal":
            raise FormError("swap generators are only available in the orthogonal form")
        D = dg.generator("s", i, n, family)
        return gt_matrix(family, n, label, D, field)
    else:
        raise FormError(f"unknown partition generator {kind!r}")
    if basis == "seminormal":
        return S
    return _symmetrize(S, field)


def path_norms(label, n: int, d, family: str = "partition") -> dict[tuple, Fraction]:
    """Seminormal-to-orthogonal normalization of each path.

    Defined by the b and p seminormal matrices: for every nonzero pair,
    norm(Q) / norm(P) = S[P][Q] / S[Q][P], so that the orthogonal entry is
    S[P][Q] * sqrt(norm(P) / norm(Q)).  The first path of each component linked
    by nonzero b/p entries has norm 1.
    """
    _partition_family(family)
    d = Fraction(d)
    paths = ic.paths_to(ic.chain_for(family, n), label)
    top_p = n if family == "partition" else n - 1
    mats = [bridge_seminormal(paths, i, d) for i in range(1, n)] + [point_seminormal(paths, i, d) for i in range(1, top_p + 1)]
    norms: dict[int, Fraction] = {}
    for start in range(len(paths)):
        if start in norms:
            continue
        norms[start] = Fraction(1)
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for S in mats:
                for q in range(len(paths)):
                    if q != p and S[q][p] != 0 and q not in norms:
                        norms[q] = norms[p] * S[p][q] / S[q][p]
                        if norms[q] <= 0:
                            raise FormError(f"nonpositive path norm at {paths[q]} (d={d})")
                        queue.append(q)
    return {paths[k]: v for k, v in norms.items()}


def path_norm(path: tuple, d, family: str = "partition") -> Fraction:
    chain_len = len(path) - 1
    n = (chain_len + 1) // 2
    return path_norms(path[-1], n, d, family)[tuple(path)]


def bridge_plus_eigenvector(label, path: tuple, i: int, n: int, field: Field, family: str = "partition"):
    """Unit vector spanning the +1 eigenspace of b_i on the class of ``path`` under ~_{2i}.

    Returns (class paths, vector) or (class paths, None) when b_i vanishes on the class.
    Entries are sqrt of the diagonal of b_i, all nonnegative.
    """
    paths = ic.paths_to(ic.chain_for(family, n), label)
    cls = [Q for Q in paths if _sim(path, Q, 2 * i)]
    if path[2 * i - 1] != path[2 * i + 1]:
        return cls, None
    d = field.d_rational
    vec = np.array([field.sqrt(field(bridge_diag(Q, i, d))) for Q in cls], dtype=object)
    return cls, vec


# ------------------------------------------------------------------ sigma elements


def sigma_c(P: tuple, i: int, d: Fraction) -> Fraction:
    """The c_P(i) weight attached to the step into level i."""
    cur, prev = P[i], P[i - 1]
    if i % 2 == 0:
        return d - size(cur) if cur == prev else Fraction(content(diff_box(cur, prev)))
    return Fraction(size(cur)) if cur == prev else d - content(diff_box(prev, cur))


def _window_sim(P: tuple, Q: tuple, a: int, b: int) -> bool:
    return all(P[k] == Q[k] for k in range(len(P)) if k not in (a, b))


def _path_key(P: tuple) -> tuple:
    return tuple(ic.shape_key(x) for x in P)


def _div(num: Fraction, den: Fraction, where) -> Fraction:
    if den == 0:
        raise FormError(f"zero denominator in sigma case {where}")
    return num / den


def sigma_case(P: tuple, level: int, paths) -> int:
    """Case number 1-5 for sigma_level; asserts that exactly one case matches."""
    if level % 2 == 0:
        i = level // 2
        a, b, c, e = P[2 * i - 2], P[2 * i - 1], P[2 * i], P[2 * i + 1]
        hits = [b == e and a == c, b != e and c == a, b == e and c != a]
        window = (2 * i - 1, 2 * i)
    else:
        i = (level - 1) // 2
        a, b, c, e = P[2 * i - 1], P[2 * i], P[2 * i + 1], P[2 * i + 2]
        hits = [a == b == c == e, c == a and e != b, e == b and c != a]
        window = (2 * i, 2 * i + 1)
    others = any(Q != P and _window_sim(P, Q, *window) for Q in paths)
    hits += [not any(hits) and not others, not any(hits) and others]
    assert sum(hits) == 1, (P, level, hits)
    return hits.index(True) + 1


def sigma_seminormal(label, level: int, n: int, d) -> list[list[Fraction]]:
    """Seminormal sigma_level on a partition irrep, literally from the five listed cases.

    Case 3 entries into the path with the level restored are obtained by the
    path-norm symmetry.  Raises FormError when a listed denominator vanishes,
    which happens already on P_2 (see tests).
    """
    d = Fraction(d)
    paths = ic.paths_to(ic.chain_for("partition", n), label)
    dim = len(paths)
    norms = path_norms(label, n, d)
    even = level % 2 == 0
    i = level // 2 if even else (level - 1) // 2
    B = bridge_seminormal(paths, i, d)
    Pm = point_seminormal(paths, i if even else i + 1, d)
    lo, hi = (2 * i - 1, 2 * i + 1) if even else (2 * i, 2 * i + 2)
    M: list[list] = [[Fraction(0)] * dim for _ in range(dim)]
    for p, P in enumerate(paths):
        case = sigma_case(P, level, paths)
        nb = [q for q, Q in enumerate(paths) if q != p and _window_sim(P, Q, lo if even else lo, hi - 1)]
        delta = sigma_c(P, hi, d) - sigma_c(P, lo, d)
        where = (level, P)
        if case == 1:
            if even:
                M[p][p] = _div(sigma_c(P, 2 * i, d), Pm[p][p], where)
                for q in nb:
                    Q = paths[q]
                    if B[q][p]:
                        num = d - sigma_c(Q, 2 * i, d) - sigma_c(P, lo, d) - Pm[p][p]
                        M[q][p] = _div(num, sigma_c(Q, hi, d) - sigma_c(P, lo, d), where) * B[q][p]
            else:
                M[p][p] = _div(sigma_c(P, 2 * i, d), B[p][p], where)
                for q in nb:
                    if B[q][p]:
                        M[q][p] = -B[p][p] * _div(B[q][p], sigma_c(paths[q], hi, d) - sigma_c(P, lo, d), where)
        elif case == 2:
            if even:
                V = [v for v, X in enumerate(paths) if _sim(X, P, 2 * i - 1) and X[2 * i - 1] == P[2 * i + 1]]
            else:
                V = [v for v, X in enumerate(paths) if _sim(X, P, 2 * i + 1) and v != p]
            if len(V) != 1:
                raise FormError(f"sigma case 2 predecessor is not unique at {P}")
            v = V[0]
            for q in [p] + nb:
                Q = paths[q]
                eye = Fraction(q == p)
                if q == v:
                    M[q][p] = sigma_c(P, 2 * i, d) * (B[v][p] if even else Pm[v][p])
                elif even:
                    M[q][p] = _div(eye - Pm[v][p] * B[q][v], sigma_c(Q, hi, d) - sigma_c(P, lo, d), where)
                else:
                    shift = (sigma_c(paths[v], 2 * i, d) - sigma_c(P, 2 * i, d)) * B[q][p]
                    M[q][p] = _div(eye - B[v][p] * Pm[q][v] + shift, sigma_c(Q, hi, d) - sigma_c(P, lo, d), where)
        elif case == 3:
            restored = P[lo - 1] if even else P[lo]
            for q in [p] + nb:
                Q = paths[q]
                eye = Fraction(q == p)
                if (Q[2 * i] if even else Q[2 * i + 1]) == restored:
                    M[q][p] = None
                elif even:
                    num = eye + (d - sigma_c(P, lo, d) - sigma_c(Q, 2 * i, d)) * B[q][p]
                    M[q][p] = _div(num, sigma_c(Q, hi, d) - sigma_c(P, lo, d), where)
                else:
                    M[q][p] = _div(eye, delta, where)
        else:
            M[p][p] = _div(Fraction(1), delta, where)
            for q in nb:
                M[q][p] = 1 - _div(Fraction(1), delta**2, where) if _path_key(paths[q]) > _path_key(P) else Fraction(1)
    for p in range(dim):
        for q in range(dim):
            if M[q][p] is None:
                if M[p][q] is None:
                    raise FormError(f"sigma case 3 entry ({q},{p}) has no listed transpose")
                M[q][p] = M[p][q] * norms[paths[p]] / norms[paths[q]]
    return M


# ------------------------------------------------------------------ exact construction bridge


def gt_matrix(family: str, params, label, D: dg.Diagram, field: Field) -> np.ndarray:
    """Orthogonal matrix of diagram D from the exact construction."""
    rep = gt.gt_irreps(family, params, field.d_rational).irrep(label)
    signed = rep.signed_matrix(D)
    dim = len(signed)
    M = field.zeros(dim)
    for q in range(dim):
        for p in range(dim):
            sgn, sq = signed[q][p]
            if sgn:
                M[q, p] = field.sqrt(field(sq)) if sgn > 0 else -field.sqrt(field(sq))
    return M


def walled_generator_matrix(label, kind: str, i: int, wall, field: Field) -> np.ndarray:
    """Matrix of s_i (i != r), e_r or f_i on a walled Brauer irrep along the alternating chain."""
    r, s = wall
    n = r + s
    if kind == "s" and (i == r or not 1 <= i <= n - 1):
        raise FormError(f"s_{i} is not a walled generator for wall {wall}")
    if kind == "e" and i != r:
        raise FormError(f"e_{i} is not a walled generator (only e_{r})")
    D = dg.generator(kind, i, n, "walled", (r, s))
    return gt_matrix("walled", (r, s), label, D, field)


# ------------------------------------------------------------------ factorization tree


@dataclass(frozen=True)
class TreeEdge:
    generator: tuple[str, int]
    parent: dg.Diagram | None
    removed: int


def _generator_list(family: str, params) -> list[tuple[tuple[str, int], dg.Diagram]]:
    out = []
    for D in gt.chain_generators(family, params):
        out.append((_name_generator(D, family, params), D))
    return out


def _name_generator(D: dg.Diagram, family: str, params) -> tuple[str, int]:
    n = D.n
    wall = tuple(params) if family == "walled" else None
    for kind in ("s", "b", "e", "p"):
        top = n if kind == "p" else n - 1
        for i in range(1, top + 1):
            try:
                if dg.generator(kind, i, n, family, wall) == D:
                    return (kind, i)
            except dg.DiagramError:
                continue
    raise FormError(f"{D} is not a standard generator")


@lru_cache(maxsize=None)
def factor_tree(family: str, params) -> dict:
    """Breadth-first tree over the basis: each diagram is g * parent up to d^removed."""
    params = tuple(params) if family == "walled" else params
    wall = params if family == "walled" else None
    n = sum(params) if family == "walled" else params
    root = dg.identity(n, family, wall)
    tree = {root: TreeEdge(("id", 0), None, 0)}
    gens = _generator_list(family, params)
    queue = deque([root])
    while queue:
        D = queue.popleft()
        for name, g in gens:
            res = dg.compose(g, D)
            if res.diagram not in tree:
                tree[res.diagram] = TreeEdge(name, D, res.removed_components)
                queue.append(res.diagram)
    return tree


def factor_to_generators(D: dg.Diagram) -> tuple[list[tuple[str, int]], int]:
    """A word (left to right) and k with product(word) = d^k * D."""
    params = D.wall if D.family == "walled" else D.n
    tree = factor_tree(D.family, params)
    if D not in tree:
        raise FormError(f"{D} not reachable from the generators")
    word: list[tuple[str, int]] = []
    power = 0
    cur = D
    while tree[cur].parent is not None:
        edge = tree[cur]
        word.append(edge.generator)
        power += edge.removed
        cur = edge.parent
    return word, power


def word_product(word, n: int, family: str, wall=None) -> dg.CompositionResult:
    if not word:
        return dg.CompositionResult(dg.identity(n, family, wall), 0)
    return dg.compose_chain([dg.generator(k, i, n, family, wall) for k, i in word])


# ------------------------------------------------------------------ all irreps of one algebra


class IrrepForms:
    """Orthogonal-form matrices of every basis diagram under every irrep of one algebra."""

    def __init__(self, family: str, params, field: Field):
        self.family = family
        self.params = tuple(params) if family == "walled" else params
        self.field = field
        self.wall = self.params if family == "walled" else None
        self.n = sum(self.params) if family == "walled" else self.params
        self.chain = ic.chain_for(family, self.params)
        self.irreps = ic.irrep_set(family, self.params)
        self.labels = [lab for lab, _ in self.irreps]
        self.dims = dict(self.irreps)

    def __repr__(self) -> str:
        return f"IrrepForms({self.family!r}, {self.params!r}, {self.field!r})"

    def paths(self, label) -> tuple:
        return ic.paths_to(self.chain, label)

    @lru_cache(maxsize=None)
    def generator_matrix(self, label, kind: str, i: int) -> np.ndarray:
        F = self.field
        fam = self.family
        if fam == "brauer":
            return brauer_generator_matrix(label, kind, i, self.n, F)
        if fam == "symmetric":
            if kind != "s":
                raise FormError("the symmetric group only has s_i")
            return young_s_matrix(label, i, self.n, F)
        if fam in ("partition", "half"):
            return partition_generator_matrix(label, kind, i, self.n, F, family=fam)
        if fam == "walled":
            return gt_matrix("walled", self.params, label, dg.generator(kind, i, self.n, "walled", self.wall), F)
        raise FormError(f"unknown family {fam!r}")

    @lru_cache(maxsize=None)
    def _all(self, label) -> dict:
        F = self.field
        tree = factor_tree(self.family, self.params)
        dim = self.dims[label]
        out: dict = {}
        for D, edge in tree.items():  # insertion order is breadth-first
            if edge.parent is None:
                out[D] = F.eye(dim)
                continue
            g = self.generator_matrix(label, *edge.generator)
            M = g @ out[edge.parent]
            if edge.removed:
                M = M / F.d**edge.removed
            out[D] = M
        return out

    def matrix(self, label, D: dg.Diagram) -> np.ndarray:
        """rho(D) for a basis diagram D (unscaled)."""
        return self._all(label)[D]

    def element_matrix(self, label, x: AlgebraElement) -> np.ndarray:
        """rho(x) for an element stored in the scaled basis."""
        A = x.algebra
        F = self.field
        out = F.zeros(self.dims[label])
        for k, c in x.coeffs.items():
            out = out + self.matrix(label, A.basis[k]) * (c * A.scale(k))
        return out

    def scaled_matrices(self, label, algebra) -> list[np.ndarray]:
        """rho(a_k) for every scaled basis element, in the algebra's basis order."""
        return [self.matrix(label, D) * algebra.scale(k) for k, D in enumerate(algebra.basis)]

    @cached_property
    def block_offsets(self) -> dict:
        out, off = {}, 0
        for lab in self.labels:
            out[lab] = off
            off += self.dims[lab]
        return out


@lru_cache(maxsize=None)
def irrep_forms(family: str, params, field: Field) -> IrrepForms:
    return IrrepForms(family, params, field)


def irrep_of_element(label, x: AlgebraElement) -> np.ndarray:
    A = x.algebra
    return irrep_forms(A.family, A.params, A.field).element_matrix(label, x)


def as_float_matrix(M) -> list[list[float]]:
    return [[float(v) for v in row] for row in M]

