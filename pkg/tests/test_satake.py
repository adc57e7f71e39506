import pytest

from innerideals.rootsys import RootSystemType
from innerideals.satake import (
    RealFormId,
    all_forms,
    catalog,
    forms_of_type,
    real_rank,
    restrict,
    restricted_roots,
    split_form,
)

FORMS = list(all_forms(8))


@pytest.mark.parametrize("rf", FORMS, ids=lambda rf: rf.name)
def test_catalog_invariants(rf):
    sd = catalog(rf)
    mu = sd.mu_map
    assert all(mu[mu[i]] == i for i in mu)
    assert all(a in sd.white and b in sd.white for a, b in sd.arrows)
    assert real_rank(sd) == len(sd.white) - len(sd.arrows)
    assert RealFormId.parse(rf.name) == rf


@pytest.mark.parametrize("rf", FORMS, ids=lambda rf: rf.name)
def test_multiplicities_sum_to_noncompact_roots(rf):
    sd = catalog(rf)
    rr = restricted_roots(sd)
    black = sd.black
    compact = [r for r in sd.rs.roots if all(p == 0 for i, p in enumerate(r) if i + 1 not in black)]
    assert sum(rr.multiplicities.values()) == len(sd.rs.roots) - len(compact)


@pytest.mark.parametrize("rf", FORMS, ids=lambda rf: rf.name)
def test_restriction_is_additive(rf):
    sd = catalog(rf)
    rs = sd.rs
    pos = rs.positive_roots
    for a in pos[: len(rs.simple_roots) + 6]:
        for b in pos[:12]:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s):
                ra, rb = restrict(sd, a), restrict(sd, b)
                assert restrict(sd, s) == tuple(x + y for x, y in zip(ra, rb))


@pytest.mark.parametrize(
    "name, rank",
    [
        ("e6,6", 6), ("e6,2", 4), ("e6,-14", 2), ("e6,-26", 2),
        ("e7,7", 7), ("e7,5", 4), ("e7,-25", 3),
        ("e8,8", 8), ("e8,-24", 4),
        ("f4,4", 4), ("f4,-20", 1), ("g2,2", 2),
        ("su,2,5", 2), ("su,3,3", 3), ("sl,4,H", 3), ("sl,5,R", 4),
        ("so,3,6", 3), ("so,2,7", 2), ("sp,2,4", 2), ("sp,8,R", 4),
        ("u*,5,H", 2), ("u*,6,H", 3), ("E7,compact", 0),
    ],
)
def test_real_ranks(name, rank):
    assert real_rank(catalog(name)) == rank


def test_named_diagrams():
    assert catalog("e6,-26").white == frozenset({1, 6}) and not catalog("e6,-26").arrows
    assert catalog("sp,2,5").white == frozenset({2, 4})
    e62 = catalog("e6,2")
    assert {tuple(sorted(a)) for a in e62.arrows} >= {(3, 5)}
    split = catalog("sl,6,R")
    assert split.is_split and not split.arrows
    assert catalog("F4,compact").is_compact


def test_e6_minus26_multiplicities():
    rr = restricted_roots(catalog("e6,-26"))
    assert len(rr.classes) == 6  # type A2
    assert set(rr.multiplicities.values()) == {8}


def test_e6_minus14_is_bc2():
    rr = restricted_roots(catalog("e6,-14"))
    pos = [c for c in rr.classes if all(x >= 0 for x in c)]
    assert len(pos) == 6  # BC2: e1, e2, e1+-e2, 2e1, 2e2
    assert len({rr.multiplicities[c] for c in pos}) > 1


def test_split_forms_have_multiplicity_one():
    for rst in [RootSystemType("E", 6), RootSystemType("G", 2), RootSystemType("B", 4)]:
        rr = restricted_roots(split_form(rst))
        assert set(rr.multiplicities.values()) == {1}


@pytest.mark.parametrize("bad", ["su,0,0", "so,2,2", "sp,0,0", "u*,3,H", "e6,5", "x,1", "sl,1,R"])
def test_illegal_forms_rejected(bad):
    with pytest.raises(ValueError):
        catalog(bad)


def test_exceptional_type_counts():
    assert len(forms_of_type(RootSystemType("E", 6))) == 5
    assert len(forms_of_type(RootSystemType("E", 8))) == 3


def test_parameters_normalized_to_p_le_q():
    assert catalog("so,4,1").real_form == catalog("so,1,4").real_form
    assert catalog("sp,3,2").real_form.name == "sp,2,3"
