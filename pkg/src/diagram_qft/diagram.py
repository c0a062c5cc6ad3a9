"""Partition diagrams: construction, composition, statistics, generators, enumeration.

Vertices are numbered 1..2n.  The top row is 1..n and the bottom row is
n+1..2n, so the primed vertex j' of the usual notation is n+j.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from sympy.utilities.iterables import multiset_partitions

FAMILIES = ("partition", "half", "brauer", "walled", "symmetric")

DEFAULT_CAP = 10**5


class DiagramError(ValueError):
    """Raised for malformed diagrams or violated family constraints."""


def _canonical(blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    out = [tuple(sorted(b)) for b in blocks]
    out.sort(key=lambda b: b[0])
    return tuple(out)


@dataclass(frozen=True)
class Diagram:
    """An immutable set partition of the 2n vertices, tagged with its family.

    ``labels[v-1]`` is the index of the block holding vertex ``v``; it is derived
    from ``blocks`` and kept for fast composition.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]
    family: str = "partition"
    wall: tuple[int, int] | None = None
    labels: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        lab = [0] * (2 * self.n)
        for k, b in enumerate(self.blocks):
            for v in b:
                lab[v - 1] = k
        object.__setattr__(self, "labels", tuple(lab))

    def sort_key(self) -> tuple:
        return self.blocks

    def __lt__(self, other: "Diagram") -> bool:
        return self.blocks < other.blocks

    def to_json(self) -> dict:
        out: dict = {"family": self.family, "n": self.n}
        if self.wall is not None:
            out["wall"] = list(self.wall)
        out["blocks"] = [list(b) for b in self.blocks]
        return out

    def __str__(self) -> str:
        def name(v: int) -> str:
            return str(v) if v <= self.n else f"{v - self.n}'"

        inner = " ".join("{" + ",".join(name(v) for v in b) + "}" for b in self.blocks)
        return f"<{inner}>"


@dataclass(frozen=True)
class CompositionResult:
    diagram: Diagram
    removed_components: int


def family_violation(n: int, blocks, family: str, wall) -> str | None:
    """Return a description of the first family constraint ``blocks`` breaks, or None."""
    if family not in FAMILIES:
        return f"unknown family {family!r}"
    if family == "partition":
        return None
    if family == "half":
        for b in blocks:
            if n in b:
                return None if 2 * n in b else f"vertices {n} and {2 * n} must share a block"
    if any(len(b) != 2 for b in blocks):
        return "every block must have size 2"
    if family == "symmetric":
        for u, v in blocks:
            if not (u <= n < v):
                return "every block must join a top vertex to a bottom vertex"
        return None
    if family == "walled":
        if wall is None or wall[0] + wall[1] != n or min(wall) < 0:
            return "walled diagrams need wall=(r, s) with r + s = n"
        r = wall[0]
        for u, v in blocks:
            cu, cv = (u - 1) % n + 1, (v - 1) % n + 1
            same_side = (cu <= r) == (cv <= r)
            opposite_rows = (u <= n) != (v <= n)
            if same_side != opposite_rows:
                return f"block {{{u},{v}}} breaks the wall rule"
    return None


def make_diagram(n: int, blocks, family: str = "partition", wall=None) -> Diagram:
    """Validate ``blocks`` as a set partition of 1..2n obeying ``family`` and canonicalize."""
    if n < 0:
        raise DiagramError("n must be nonnegative")
    seen: set[int] = set()
    blist = []
    for b in blocks:
        b = list(b)
        if not b:
            raise DiagramError("empty block")
        for v in b:
            if not isinstance(v, int) or not 1 <= v <= 2 * n:
                raise DiagramError(f"vertex {v!r} out of range 1..{2 * n}")
            if v in seen:
                raise DiagramError(f"vertex {v} appears twice")
            seen.add(v)
        blist.append(b)
    if len(seen) != 2 * n:
        missing = sorted(set(range(1, 2 * n + 1)) - seen)
        raise DiagramError(f"missing vertices {missing}")
    wall = tuple(wall) if wall is not None else None
    if family != "walled":
        wall = None
    problem = family_violation(n, blist, family, wall)
    if problem:
        raise DiagramError(problem)
    return Diagram(n, _canonical(blist), family, wall)


def _from_labels(n: int, labels: Sequence[int], family: str, wall) -> Diagram:
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels, start=1):
        groups.setdefault(lab, []).append(v)
    return Diagram(n, _canonical(groups.values()), family, wall)


def diagram_from_json(obj: dict | str) -> Diagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return make_diagram(obj["n"], obj["blocks"], obj.get("family", "partition"), obj.get("wall"))


def _check_pair(d1: Diagram, d2: Diagram) -> None:
    if d1.n != d2.n:
        raise DiagramError(f"mismatched sizes {d1.n} and {d2.n}")
    if d1.wall != d2.wall:
        raise DiagramError("mismatched walls")


def compose(d1: Diagram, d2: Diagram) -> CompositionResult:
    """Stack ``d1`` on top of ``d2`` and contract the middle row.

    Union-find runs over 3n vertices: d1's top (0..n-1), the shared middle row
    (n..2n-1) and d2's bottom (2n..3n-1).  Classes made only of middle vertices
    are removed and counted.
    """
    _check_pair(d1, d2)
    n = d1.n
    parent = list(range(3 * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for offset, dg in ((0, d1), (n, d2)):
        first: dict[int, int] = {}
        for v, lab in enumerate(dg.labels):
            x = offset + v
            if lab in first:
                union(first[lab], x)
            else:
                first[lab] = x
    outer = list(range(n)) + list(range(2 * n, 3 * n))
    roots = [find(x) for x in outer]
    outer_roots = set(roots)
    inner_roots = {find(x) for x in range(n, 2 * n)} - outer_roots
    relabel: dict[int, int] = {}
    labels = [relabel.setdefault(r, len(relabel)) for r in roots]
    family = d1.family if d1.family == d2.family else "partition"
    return CompositionResult(_from_labels(n, labels, family, d1.wall), len(inner_roots))


def compose_chain(diagrams: Sequence[Diagram]) -> CompositionResult:
    """Left-to-right product of a nonempty sequence, accumulating removed components."""
    cur = diagrams[0]
    total = 0
    for nxt in diagrams[1:]:
        res = compose(cur, nxt)
        cur, total = res.diagram, total + res.removed_components
    return CompositionResult(cur, total)


def propagating_number(d: Diagram) -> int:
    n = d.n
    count = 0
    for b in d.blocks:
        if d.family == "half" and n in b:
            continue
        if b[0] <= n < b[-1]:
            count += 1
    return count


def cc(d: Diagram) -> int:
    return len(d.blocks)


def join(d: Diagram, e: Diagram) -> Diagram:
    """Finest set partition coarsening both ``d`` and ``e`` (family tag becomes partition)."""
    _check_pair(d, e)
    parent = list(range(2 * d.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for dg in (d, e):
        for b in dg.blocks:
            for v in b[1:]:
                ra, rb = find(b[0] - 1), find(v - 1)
                if ra != rb:
                    parent[ra] = rb
    return _from_labels(d.n, [find(x) for x in range(2 * d.n)], "partition", None)


def involution(d: Diagram) -> Diagram:
    """Exchange the two rows (vertex i <-> n+i)."""
    n = d.n
    swap = lambda v: v + n if v <= n else v - n  # noqa: E731
    return Diagram(n, _canonical([swap(v) for v in b] for b in d.blocks), d.family, d.wall)


def identity(n: int, family: str = "partition", wall=None) -> Diagram:
    return make_diagram(n, [[j, n + j] for j in range(1, n + 1)], family, wall)


def permutation_diagram(perm: Sequence[int], family: str = "symmetric", wall=None) -> Diagram:
    """Diagram joining top vertex k to bottom vertex perm[k-1] (perm is 1-based, one-line)."""
    n = len(perm)
    return make_diagram(n, [[k, n + perm[k - 1]] for k in range(1, n + 1)], family, wall)


def transposition(i: int, j: int, n: int, family: str = "symmetric", wall=None) -> Diagram:
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
    return permutation_diagram(perm, family, wall)


def generator(kind: str, i: int, n: int, family: str = "partition", wall=None) -> Diagram:
    """The standard generators s_i, p_i, b_i, e_i and (walled only) f_i."""
    cols = {j: [j, n + j] for j in range(1, n + 1)}
    if kind in ("s", "b", "e"):
        if not 1 <= i <= n - 1:
            raise DiagramError(f"{kind}_{i} needs 1 <= i <= n-1 (n={n})")
        del cols[i], cols[i + 1]
        extra = {
            "s": [[i, n + i + 1], [i + 1, n + i]],
            "b": [[i, i + 1, n + i, n + i + 1]],
            "e": [[i, i + 1], [n + i, n + i + 1]],
        }[kind]
    elif kind == "p":
        if not 1 <= i <= n:
            raise DiagramError(f"p_{i} needs 1 <= i <= n (n={n})")
        del cols[i]
        extra = [[i], [n + i]]
    elif kind == "f":
        if wall is None:
            raise DiagramError("f_i requires a walled algebra")
        s = wall[1]
        if not 1 <= i <= wall[0] or s + i > n:
            raise DiagramError(f"f_{i} out of range for wall {wall}")
        j = s + i
        del cols[i], cols[j]
        extra = [[i, j], [n + i, n + j]]
    else:
        raise DiagramError(f"unknown generator kind {kind!r}")
    return make_diagram(n, list(cols.values()) + extra, family, wall)


def _perfect_matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, other in enumerate(rest):
        for tail in _perfect_matchings(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + tail


def basis_size(family: str, n: int, wall=None) -> int:
    from math import factorial

    from sympy import bell, factorial2

    if family == "partition":
        return int(bell(2 * n))
    if family == "half":
        return int(bell(2 * n - 1))
    if family == "brauer":
        return int(factorial2(2 * n - 1)) if n > 0 else 1
    if family in ("walled", "symmetric"):
        return factorial(n)
    raise DiagramError(f"unknown family {family!r}")


def enumerate_basis(family: str, n: int | None = None, wall=None, cap: int = DEFAULT_CAP) -> list[Diagram]:
    """All diagrams of the family, sorted canonically.

    For the walled family pass ``wall=(r, s)``; ``n`` defaults to r + s.
    """
    if family == "walled":
        if wall is None:
            raise DiagramError("walled family needs wall=(r, s)")
        wall = tuple(wall)
        n = wall[0] + wall[1]
    if n is None or n < 0:
        raise DiagramError("n must be a nonnegative integer")
    size = basis_size(family, n, wall)
    if size > cap:
        raise DiagramError(f"basis of {size} diagrams exceeds cap {cap}")
    out: list[Diagram] = []
    if family == "symmetric":
        for perm in itertools.permutations(range(1, n + 1)):
            out.append(permutation_diagram(perm))
    elif family in ("brauer", "walled"):
        for m in _perfect_matchings(list(range(1, 2 * n + 1))):
            if family == "walled" and family_violation(n, m, family, wall):
                continue
            out.append(Diagram(n, _canonical(m), family, wall))
    else:
        if n == 0:
            out.append(Diagram(0, (), family))
        else:
            for part in multiset_partitions(list(range(1, 2 * n + 1))):
                if family == "half" and family_violation(n, part, family, None):
                    continue
                out.append(Diagram(n, _canonical(part), family))
    out.sort()
    return out


def embed(d: Diagram, n_new: int, family: str | None = None, wall=None) -> Diagram:
    """View ``d`` in a larger algebra by appending vertical lines on the new columns."""
    n = d.n
    shift = lambda v: v if v <= n else v - n + n_new  # noqa: E731
    blocks = [[shift(v) for v in b] for b in d.blocks]
    blocks += [[j, n_new + j] for j in range(n + 1, n_new + 1)]
    return make_diagram(n_new, blocks, family or d.family, wall)


def relabel_columns(d: Diagram, column_map: Sequence[int], n_new: int, family: str, wall=None) -> Diagram:
    """Place column c of ``d`` at column ``column_map[c-1]`` of an n_new-column diagram.

    Columns not hit by the map receive vertical lines.
    """
    n = d.n
    def mv(v: int) -> int:
        return column_map[v - 1] if v <= n else n_new + column_map[v - n - 1]
    blocks = [[mv(v) for v in b] for b in d.blocks]
    used = set(column_map)
    blocks += [[j, n_new + j] for j in range(1, n_new + 1) if j not in used]
    return make_diagram(n_new, blocks, family, wall)


def restrict_columns(d: Diagram, columns: Sequence[int], family: str, wall=None) -> Diagram | None:
    """Inverse of :func:`relabel_columns`: keep ``columns`` (in order) if every other
    column is a bare vertical line; otherwise return None."""
    n = d.n
    keep = list(columns)
    index = {c: k + 1 for k, c in enumerate(keep)}
    m = len(keep)
    blocks = []
    for b in d.blocks:
        cols = {(v - 1) % n + 1 for v in b}
        if cols <= set(index):
            blocks.append([index[v] if v <= n else m + index[v - n] for v in b])
        elif len(b) == 2 and b[1] == b[0] + n and b[0] not in index:
            continue
        else:
            return None
    try:
        return make_diagram(m, blocks, family, wall)
    except DiagramError:
        return None
