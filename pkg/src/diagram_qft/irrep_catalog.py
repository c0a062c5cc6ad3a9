"""Young diagrams, irrep labels and dimensions, Schur multiplicities, branching and Bratteli paths.

A shape is a tuple of weakly decreasing positive integers.  Walled Brauer
labels are pairs ``(lam, mu)`` of shapes.  Bratteli paths are tuples of labels,
one per level of the subalgebra chain.

Chains used throughout:

* partition P_n: levels 0..2n, even level 2j is P_j and odd level 2j+1 is P_{j+1/2};
* half-partition P_{n-1/2}: the first 2n levels of the P_n chain;
* Brauer B_n: levels 0..n;
* walled B_{r,s}: the chain B_{0,0} < B_{1,0} < B_{1,1} < ... < B_{r,r} < B_{r,r+1} < ... < B_{r,s}
  for r <= s, and its mirror image (right columns first) for r > s;
* symmetric S_n: levels 0..n, always adding a box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from sympy.functions.combinatorial.numbers import stirling

Shape = tuple[int, ...]
EMPTY: Shape = ()
BOX: Shape = (1,)


# ----------------------------------------------------------------- shapes


def size(shape: Shape) -> int:
    return sum(shape)


def boxes(shape: Shape) -> list[tuple[int, int]]:
    """Boxes as 1-based (row, column) pairs."""
    return [(i + 1, j + 1) for i, row in enumerate(shape) for j in range(row)]


def content(box: tuple[int, int]) -> int:
    return box[1] - box[0]


def conjugate(shape: Shape) -> Shape:
    if not shape:
        return ()
    return tuple(sum(1 for r in shape if r > j) for j in range(shape[0]))


def hook_lengths(shape: Shape) -> dict[tuple[int, int], int]:
    conj = conjugate(shape)
    return {(i, j): shape[i - 1] - j + conj[j - 1] - i + 1 for i, j in boxes(shape)}


def hook_dim(shape: Shape) -> int:
    """f^lambda by the hook length formula."""
    return factorial(size(shape)) // prod(hook_lengths(shape).values())


def addable(shape: Shape) -> list[tuple[int, int]]:
    out = []
    for i in range(len(shape) + 1):
        row = shape[i] if i < len(shape) else 0
        above = shape[i - 1] if i > 0 else None
        if above is None or above > row:
            out.append((i + 1, row + 1))
    return out


def removable(shape: Shape) -> list[tuple[int, int]]:
    out = []
    for i, row in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if row > below:
            out.append((i + 1, row))
    return out


def add_box(shape: Shape, box: tuple[int, int]) -> Shape:
    rows = list(shape) + [0]
    rows[box[0] - 1] += 1
    return tuple(r for r in rows if r)


def remove_box(shape: Shape, box: tuple[int, int]) -> Shape:
    rows = list(shape)
    rows[box[0] - 1] -= 1
    return tuple(r for r in rows if r)


def diff_box(big: Shape, small: Shape) -> tuple[int, int] | None:
    """The single box in ``big`` but not in ``small``, or None if they do not differ by one box."""
    if size(big) != size(small) + 1:
        return None
    for box in addable(small):
        if add_box(small, box) == big:
            return box
    return None


def partitions_of(k: int) -> list[Shape]:
    @lru_cache(maxsize=None)
    def rec(k: int, cap: int) -> tuple[Shape, ...]:
        if k == 0:
            return ((),)
        out = []
        for first in range(min(k, cap), 0, -1):
            out.extend((first,) + rest for rest in rec(k - first, first))
        return tuple(out)

    return list(rec(k, k))


def shape_key(shape) -> tuple:
    """Total order on labels: by box count, then lexicographically (walled: per side)."""
    if shape and isinstance(shape[0], tuple):
        lam, mu = shape
        return (size(lam) + size(mu), shape_key(lam), shape_key(mu))
    return (size(shape), shape)


def label_str(shape) -> str:
    if shape and isinstance(shape[0], tuple):
        return f"({label_str(shape[0])}|{label_str(shape[1])})"
    return "0" if not shape else ",".join(map(str, shape))


# ----------------------------------------------------------------- irreps


def _double_factorial(k: int) -> int:
    return prod(range(k, 0, -2)) if k > 0 else 1


@dataclass(frozen=True)
class IrrepLabel:
    family: str
    level: object
    shape: object

    def __str__(self) -> str:
        return f"{self.family}{self.level}:{label_str(self.shape)}"


def _walled_params(params) -> tuple[int, int]:
    r, s = params
    return int(r), int(s)


def irrep_set(family: str, params) -> list[tuple[object, int]]:
    """Irrep labels with exact dimensions, ordered by :func:`shape_key`.

    ``params`` is n for partition/half/brauer/symmetric (half means P_{n-1/2})
    and (r, s) for walled.
    """
    out: list[tuple[object, int]] = []
    if family == "partition":
        n = params
        for k in range(n + 1):
            for lam in partitions_of(k):
                dim = hook_dim(lam) * sum(int(stirling(n, l)) * comb(l, k) for l in range(k, n + 1))
                out.append((lam, dim))
    elif family == "half":
        n = params
        for k in range(n):
            for lam in partitions_of(k):
                dim = hook_dim(lam) * sum(int(stirling(n, l + 1)) * comb(l, k) for l in range(k, n))
                out.append((lam, dim))
    elif family == "brauer":
        n = params
        for k in range(n % 2, n + 1, 2):
            for lam in partitions_of(k):
                out.append((lam, hook_dim(lam) * comb(n, k) * _double_factorial(n - k - 1)))
    elif family == "walled":
        r, s = _walled_params(params)
        for k in range(min(r, s) + 1):
            for lam in partitions_of(r - k):
                for mu in partitions_of(s - k):
                    dim = factorial(k) * comb(r, k) * comb(s, k) * hook_dim(lam) * hook_dim(mu)
                    out.append(((lam, mu), dim))
    elif family == "symmetric":
        out = [(lam, hook_dim(lam)) for lam in partitions_of(params)]
    else:
        raise ValueError(f"unknown family {family!r}")
    out.sort(key=lambda t: shape_key(t[0]))
    return out


def label_boxes(label) -> int:
    """|rho|: boxes of a shape, or |lam|+|mu| for a walled pair."""
    if label and isinstance(label[0], tuple):
        return size(label[0]) + size(label[1])
    return size(label)


# ----------------------------------------------------------------- multiplicities


def _is_pair(label) -> bool:
    return bool(label) and isinstance(label[0], tuple)


def _rising_ratio(x, ell: int, m: int):
    """prod_{t=1}^{m} (x+ell+t-1)/(x+t-1) rewritten as prod_{q=0}^{ell-1} (x+m+q)/(x+q)."""
    out = Fraction(1)
    for q in range(ell):
        out *= Fraction(x + m + q) / Fraction(x + q)
    return out


def schur_multiplicity(family: str, label, d) -> Fraction:
    """Multiplicity of an irrep inside the Schur representation on (C^d)^{tensor n}.

    ``d`` is a rational (int or Fraction).  For the walled family the product
    over 1 <= i < j <= d is evaluated through the O(n^2) rising-factorial form.
    """
    d = Fraction(d)
    if family == "walled":
        lam, mu = label
        return _walled_multiplicity(lam, mu, d)
    rho = label
    k = size(rho)
    pre = Fraction(hook_dim(rho), factorial(k))
    rows = list(rho) + [0] * k
    if family in ("partition", "half"):
        shift = 0 if family == "partition" else 1
        val = pre * (d if family == "half" else 1)
        for j in range(1, k + 1):
            factor = d - shift - k - rows[j - 1] + j
            val *= factor
        out = val
    elif family == "brauer":
        conj = list(conjugate(rho)) + [0] * k
        out = pre
        for i, j in boxes(rho):
            if i <= j:
                b = rows[i - 1] + rows[j - 1] - i - j + 1
            else:
                b = -conj[i - 1] - conj[j - 1] + i + j - 1
            out *= d - 1 + b
    elif family == "symmetric":
        # dimension of the GL_d irrep: prod (d + cont) / prod hooks
        out = Fraction(prod(d + content(b) for b in boxes(rho))) / prod(hook_lengths(rho).values())
    else:
        raise ValueError(f"unknown family {family!r}")
    if out <= 0:
        raise ValueError(f"nonpositive multiplicity for {label!r} at d={d}: d too small")
    return out


def _walled_multiplicity(lam: Shape, mu: Shape, d: Fraction) -> Fraction:
    r, s = len(lam), len(mu)
    la = list(lam)
    mb = list(mu)
    out = Fraction(1)
    for i in range(r):
        for j in range(i + 1, r):
            out *= Fraction(la[i] - la[j] + j - i, j - i)
    for i in range(s):
        for j in range(i + 1, s):
            out *= Fraction(mb[i] - mb[j] + j - i, j - i)
    for i in range(1, r + 1):
        for j in range(1, s + 1):
            out *= (la[i - 1] + mb[j - 1] + d - i - j + 1) / (d - i - j + 1)
    m = d - r - s
    if m.denominator != 1:
        raise ValueError("the walled multiplicity formula needs integer d")
    m = int(m)
    if m < 0:
        raise ValueError(f"d={d} too small for walled label {(lam, mu)!r}")
    for i in range(1, r + 1):
        out *= _rising_ratio(r - i + 1, la[i - 1], m)
    for j in range(1, s + 1):
        out *= _rising_ratio(s - j + 1, mb[j - 1], m)
    if out <= 0:
        raise ValueError(f"nonpositive multiplicity for {(lam, mu)!r} at d={d}")
    return out


# ----------------------------------------------------------------- chains and branching


@dataclass(frozen=True)
class Chain:
    """Subalgebra chain description.

    ``steps[k]`` describes how level k+1 is reached from level k and is one of
    ``"half"`` (remove a box or stay), ``"full"`` (add a box or stay),
    ``"brauer"`` (add or remove), ``"sym"`` (add), ``"L"``/``"R"`` (walled left
    or right column).
    """

    family: str
    params: object
    steps: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.steps)


def chain_for(family: str, params) -> Chain:
    if family == "partition":
        return Chain(family, params, tuple("half" if k % 2 == 0 else "full" for k in range(2 * params)))
    if family == "half":
        return Chain(family, params, tuple("half" if k % 2 == 0 else "full" for k in range(2 * params - 1)))
    if family == "brauer":
        return Chain(family, params, ("brauer",) * params)
    if family == "symmetric":
        return Chain(family, params, ("sym",) * params)
    if family == "walled":
        r, s = _walled_params(params)
        k = min(r, s)
        steps = ("L", "R") * k + ("R",) * (s - k) + ("L",) * (r - k)
        return Chain(family, (r, s), steps)
    raise ValueError(f"unknown family {family!r}")


def _level_bound(chain: Chain, level: int):
    """Admissibility predicate for labels at a level of the chain."""
    fam = chain.family
    if fam in ("partition", "half"):
        cap = level // 2
        return lambda lab: size(lab) <= cap
    if fam == "brauer":
        return lambda lab: size(lab) <= level and (level - size(lab)) % 2 == 0
    if fam == "symmetric":
        return lambda lab: size(lab) == level
    nl = chain.steps[:level].count("L")
    nr = chain.steps[:level].count("R")
    return lambda lab: size(lab[0]) - size(lab[1]) == nl - nr and size(lab[0]) <= nl and size(lab[1]) <= nr


def step_up(chain: Chain, level: int, label) -> list:
    """Labels at ``level+1`` whose restriction contains ``label`` (sorted)."""
    kind = chain.steps[level]
    ok = _level_bound(chain, level + 1)
    if kind == "half":
        out = [label] + [remove_box(label, b) for b in removable(label)]
    elif kind == "full":
        out = [label] + [add_box(label, b) for b in addable(label)]
    elif kind == "brauer":
        out = [add_box(label, b) for b in addable(label)] + [remove_box(label, b) for b in removable(label)]
    elif kind == "sym":
        out = [add_box(label, b) for b in addable(label)]
    else:
        lam, mu = label
        grow, shrink = (0, 1) if kind == "L" else (1, 0)
        parts = [lam, mu]
        out = []
        for b in addable(parts[grow]):
            new = list(parts)
            new[grow] = add_box(parts[grow], b)
            out.append(tuple(new))
        for b in removable(parts[shrink]):
            new = list(parts)
            new[shrink] = remove_box(parts[shrink], b)
            out.append(tuple(new))
    return sorted({lab for lab in out if ok(lab)}, key=shape_key)


def branch(family: str, params, level: int, label) -> list[tuple[object, int]]:
    """Children of ``label`` (at ``level``) at ``level-1``, each with multiplicity 1."""
    chain = chain_for(family, params)
    if not 1 <= level <= chain.length:
        raise ValueError(f"level {level} outside 1..{chain.length}")
    if label not in level_labels(chain, level):
        raise ValueError(f"{label!r} is not a label at level {level}")
    children = [c for c in level_labels(chain, level - 1) if label in step_up(chain, level - 1, c)]
    return [(c, 1) for c in children]


@lru_cache(maxsize=None)
def _levels(chain: Chain) -> tuple[tuple, ...]:
    root = ((), ()) if chain.family == "walled" else ()
    levels = [(root,)]
    for k in range(chain.length):
        nxt = set()
        for lab in levels[-1]:
            nxt.update(step_up(chain, k, lab))
        levels.append(tuple(sorted(nxt, key=shape_key)))
    return tuple(levels)


def level_labels(chain: Chain, level: int) -> tuple:
    return _levels(chain)[level]


@lru_cache(maxsize=None)
def _paths(chain: Chain) -> dict:
    root = _levels(chain)[0][0]
    partial = [(root,)]
    for k in range(chain.length):
        partial = [p + (nxt,) for p in partial for nxt in step_up(chain, k, p[-1])]
    out: dict = {}
    for p in partial:
        out.setdefault(p[-1], []).append(p)
    for lab in out:
        out[lab].sort(key=lambda p: tuple(shape_key(x) for x in p))
        out[lab] = tuple(out[lab])
    return out


def paths_to(chain: Chain, label) -> tuple[tuple, ...]:
    """All Bratteli paths ending at ``label``, in the global path order."""
    return _paths(chain).get(label, ())


@dataclass(frozen=True)
class BratteliGraph:
    chain: Chain
    levels: tuple[tuple, ...]
    edges: tuple[tuple[int, object, object], ...]

    def paths_to(self, label) -> tuple[tuple, ...]:
        return paths_to(self.chain, label)


def bratteli(family: str, params) -> BratteliGraph:
    chain = chain_for(family, params)
    levels = _levels(chain)
    edges = tuple(
        (k, lab, up) for k in range(chain.length) for lab in levels[k] for up in step_up(chain, k, lab)
    )
    return BratteliGraph(chain, levels, edges)


def bratteli_dot(graph: BratteliGraph) -> str:
    lines = ["digraph bratteli {", "  rankdir=TB;"]
    name = lambda k, lab: f'"{k}:{label_str(lab)}"'  # noqa: E731
    for k, labs in enumerate(graph.levels):
        lines.append("  { rank=same; " + " ".join(name(k, lab) for lab in labs) + " }")
    for k, lab, up in graph.edges:
        lines.append(f"  {name(k, lab)} -> {name(k + 1, up)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def count_diagrams_by_pn(family: str, params) -> dict[int, int]:
    from .diagram import enumerate_basis, propagating_number

    if family == "walled":
        basis = enumerate_basis("walled", wall=params)
    else:
        basis = enumerate_basis(family, params)
    out: dict[int, int] = {}
    for dg in basis:
        k = propagating_number(dg)
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def dims_by_boxes(family: str, params) -> dict[int, int]:
    """Sum of d_rho^2 grouped by |rho|."""
    out: dict[int, int] = {}
    for lab, dim in irrep_set(family, params):
        k = label_boxes(lab)
        out[k] = out.get(k, 0) + dim * dim
    return dict(sorted(out.items()))
