from fractions import Fraction

import pytest

from diagram_qft import irrep_catalog as ic

CASES = [("partition", n) for n in (1, 2, 3)] + [("brauer", n) for n in (1, 2, 3, 4, 5)] + [
    ("walled", rs) for rs in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2), (1, 4)]
] + [("half", n) for n in (1, 2, 3)] + [("symmetric", n) for n in (3, 4)]


def test_hook_dim():
    assert ic.hook_dim(()) == 1
    assert ic.hook_dim((2, 1)) == 2
    assert sum(ic.hook_dim(lam) ** 2 for lam in ic.partitions_of(4)) == 24


def test_irrep_sets():
    assert ic.irrep_set("partition", 1) == [((), 1), ((1,), 1)]
    assert sum(d * d for _, d in ic.irrep_set("brauer", 3)) == 15
    assert sum(d * d for _, d in ic.irrep_set("walled", (3, 2))) == 120


@pytest.mark.parametrize("family,params", CASES)
def test_paths_match_dimensions(family, params):
    chain = ic.chain_for(family, params)
    for lab, dim in ic.irrep_set(family, params):
        assert len(ic.paths_to(chain, lab)) == dim


@pytest.mark.parametrize("family,params", CASES)
def test_counts_by_propagating_number(family, params):
    assert ic.count_diagrams_by_pn(family, params) == ic.dims_by_boxes(family, params)


@pytest.mark.parametrize("family,params", CASES)
def test_schur_dimension_identity(family, params):
    d = 17
    n = sum(params) if family == "walled" else params
    total = sum(ic.schur_multiplicity(family, lab, d) * dim for lab, dim in ic.irrep_set(family, params))
    assert total == d**n


def test_multiplicity_examples():
    assert ic.schur_multiplicity("partition", (), 17) == 1
    assert ic.schur_multiplicity("symmetric", (2, 1), 3) == 8
    with pytest.raises(ValueError):
        ic.schur_multiplicity("brauer", (1, 1, 1), Fraction(2))


def test_branching():
    # Brauer: the empty shape at level n restricts to the box only
    assert ic.branch("brauer", 2, 2, ()) == [((1,), 1)]
    # restriction from P_2 to the half algebra below it
    kids = [c for c, _ in ic.branch("partition", 2, 4, (1,))]
    assert kids == [(), (1,)]
    # left restriction in B_{2,1}; ((2,),(1,1)) is not admissible at that level
    kids = [c for c, _ in ic.branch("walled", (2, 1), 3, ((2,), (1,)))]
    assert kids == [((1,), (1,))]


def test_bratteli_graphs():
    g = ic.bratteli("walled", (3, 2))
    top = ic.level_labels(g.chain, g.chain.length)
    assert sum(len(g.paths_to(lab)) ** 2 for lab in top) == 120
    assert ic.paths_to(ic.chain_for("brauer", 1), (1,)) == (((), (1,)),)
    dot = ic.bratteli_dot(ic.bratteli("partition", 1))
    assert dot.startswith("digraph")


def test_symmetric_counts_all_at_top():
    assert ic.count_diagrams_by_pn("symmetric", 3) == {3: 6}
    assert ic.count_diagrams_by_pn("brauer", 4)[0] == 9
    assert sum(ic.count_diagrams_by_pn("partition", 2).values()) == 15
