import pytest
from hypothesis import given, settings, strategies as st

from diagram_qft import diagram as dg

P2 = dg.enumerate_basis("partition", 2)
B3 = dg.enumerate_basis("brauer", 3)
W21 = dg.enumerate_basis("walled", wall=(2, 1))


def test_make_identity_and_point():
    I = dg.make_diagram(1, [[1, 2]])
    P = dg.make_diagram(1, [[1], [2]])
    assert I == dg.identity(1)
    assert P == dg.generator("p", 1, 1)
    assert (dg.propagating_number(I), dg.propagating_number(P)) == (1, 0)


def test_family_violations():
    with pytest.raises(dg.DiagramError):
        dg.make_diagram(2, [[1, 2, 3, 4]], "brauer")
    with pytest.raises(dg.DiagramError):
        dg.make_diagram(2, [[1, 2], [3], [4]], "partition_typo")
    # half partition: n and 2n share a block
    with pytest.raises(dg.DiagramError):
        dg.make_diagram(2, [[1, 3], [2], [4]], "half")
    # walled: a propagating line may not cross the wall
    with pytest.raises(dg.DiagramError):
        dg.make_diagram(2, [[1, 4], [2, 3]], "walled", (1, 1))


def test_blocks_partition_vertices():
    for D in P2 + B3 + W21:
        verts = sorted(v for b in D.blocks for v in b)
        assert verts == list(range(1, 2 * D.n + 1))
        assert all(b for b in D.blocks)
    assert all(len(b) == 2 for D in B3 for b in D.blocks)


def test_compose_examples():
    I = dg.identity(1)
    P = dg.generator("p", 1, 1)
    assert dg.compose(P, P) == dg.CompositionResult(P, 1)
    for D in P2:
        assert dg.compose(dg.identity(2), D) == dg.CompositionResult(D, 0)
    b = dg.generator("b", 1, 2)
    assert dg.compose(b, b) == dg.CompositionResult(b, 0)
    assert dg.compose(I, P).diagram == P


def test_counts():
    assert len(dg.enumerate_basis("partition", 1)) == 2
    assert len(B3) == 15
    assert len(dg.enumerate_basis("walled", wall=(2, 2))) == 24
    assert len(P2) == 15
    assert len(dg.enumerate_basis("half", 2)) == 5
    assert [dg.basis_size("brauer", n) for n in range(5)] == [1, 1, 3, 15, 105]


def test_pn_and_cc():
    n = 3
    I = dg.identity(n)
    assert (dg.propagating_number(I), dg.cc(I)) == (n, n)
    p = dg.generator("p", 2, n)
    assert (dg.propagating_number(p), dg.cc(p)) == (n - 1, n + 1)
    # {1,2,1'} {3,3'} {2'}
    D = dg.make_diagram(3, [[1, 2, 4], [3, 6], [5]])
    assert (dg.cc(D), dg.propagating_number(D)) == (3, 2)


def test_generators():
    assert dg.generator("s", 1, 2).blocks == ((1, 4), (2, 3))
    assert dg.generator("p", 2, 2).blocks == ((1, 3), (2,), (4,))
    b = dg.generator("b", 1, 2)
    p1, p2 = dg.generator("p", 1, 2), dg.generator("p", 2, 2)
    e = dg.compose_chain([b, p1, p2, b])
    assert e.diagram.blocks == ((1, 2), (3, 4))
    f = dg.generator("f", 1, 2, "walled", (1, 1))
    assert f.blocks == ((1, 2), (3, 4))


def test_join_and_involution():
    for D in P2:
        assert dg.join(D, D) == D
        assert dg.involution(dg.involution(D)) == D
    for D in P2:
        for E in P2:
            if D != E:
                assert 2 * dg.cc(dg.join(D, E)) < dg.cc(D) + dg.cc(E)


def test_embed_and_restrict_roundtrip():
    for D in B3:
        big = dg.relabel_columns(D, [1, 2, 4], 4, "brauer")
        assert dg.restrict_columns(big, [1, 2, 4], "brauer") == D


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(P2), st.sampled_from(P2), st.sampled_from(P2))
def test_compose_associative(a, b, c):
    left = dg.compose(dg.compose(a, b).diagram, c)
    right = dg.compose(a, dg.compose(b, c).diagram)
    assert left.diagram == right.diagram
    assert left.removed_components + dg.compose(a, b).removed_components == (
        right.removed_components + dg.compose(b, c).removed_components
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(B3 + W21), st.data())
def test_involution_reverses_products(a, data):
    pool = B3 if a.family == "brauer" else W21
    b = data.draw(st.sampled_from(pool))
    ab = dg.compose(a, b)
    ba = dg.compose(dg.involution(b), dg.involution(a))
    assert dg.involution(ab.diagram) == ba.diagram
    assert ab.removed_components == ba.removed_components
