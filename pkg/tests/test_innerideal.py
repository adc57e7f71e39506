import json
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from innerideals.cli import golden_name
from innerideals.innerideal import (
    atlas_json,
    brute_force_classes,
    dim_via_restricted,
    enumerate_classes,
    hasse,
    is_adapted,
    min_max_representatives,
    phi_I,
)
from innerideals.rootsys import RootSystemType, build_root_system, iter_types
from innerideals.satake import all_forms, catalog, restrict

GOLDEN = Path(__file__).parent / "golden"
SMALL = list(iter_types(6))


def rs_of(name):
    return build_root_system(RootSystemType.parse(name))


def test_phi_examples():
    a5 = rs_of("A5")
    assert phi_I(a5, range(1, 6)) == {a5.maximal_root}
    for s, t in [(1, 1), (2, 4), (3, 3), (1, 5)]:
        assert len(phi_I(a5, {s, t})) == s * (5 + 1 - t)
    assert len(phi_I(rs_of("E8"), {1})) == 14


def test_phi_rejects_empty_and_out_of_range():
    with pytest.raises(ValueError):
        phi_I(rs_of("A3"), set())
    with pytest.raises(ValueError):
        phi_I(rs_of("A3"), {4})


@pytest.mark.parametrize(
    "name, I, lo, hi",
    [
        ("E8", set(range(1, 9)), {8}, set(range(1, 9))),
        ("E7", {2, 5, 6, 7}, {2, 5}, None),
        ("B4", {2, 3}, {2}, None),
        ("B6", {1, 2, 5}, {2}, None),
    ],
)
def test_min_max_representatives(name, I, lo, hi):
    rs = rs_of(name)
    mn, mx = min_max_representatives(rs, I)
    assert set(mn) == lo
    assert set(mn) <= set(mx)
    assert phi_I(rs, mn) == phi_I(rs, mx) == phi_I(rs, I)
    if hi is not None:
        assert set(mx) == hi


@pytest.mark.parametrize("rst", SMALL, ids=str)
def test_monotonicity(rst):
    rs = build_root_system(rst)
    l = rs.rank
    sets = [frozenset(c) for k in (1, 2) for c in combinations(range(1, l + 1), k)]
    for I in sets:
        for J in sets:
            if I <= J:
                assert phi_I(rs, J) <= phi_I(rs, I)


def test_adaptedness_examples():
    assert not is_adapted(catalog("e6,-26"), {2})
    assert not is_adapted(catalog("e6,2"), {3})
    assert is_adapted(catalog("e6,2"), {3, 5})
    assert is_adapted(catalog("sl,5,R"), {2, 4})


@pytest.mark.parametrize("rf", list(all_forms(8)), ids=lambda rf: rf.name)
def test_adapted_sets_restrict_soundly(rf):
    sd = catalog(rf)
    rs = sd.rs
    for c in enumerate_classes(sd):
        phi = c.phi_I
        images = {restrict(sd, a) for a in phi}
        assert all(any(x) for x in images)
        # saturation: equal restriction stays inside phi
        for b in rs.positive_roots:
            if restrict(sd, b) in images:
                assert b in phi


@pytest.mark.parametrize(
    "name, dims",
    [
        ("f4,-20", [7]),
        ("e8,-24", [1, 2, 3, 14]),
        ("e6,6", [1, 2, 3, 4, 5, 8, 16]),
        ("e7,-25", [1, 10, 27]),
        ("su,1,5", [1]),
    ],
)
def test_enumeration_dims(name, dims):
    assert [c.dim for c in enumerate_classes(catalog(name))] == dims


def test_enumeration_is_sorted_and_consistent():
    for name in ["e7,7", "so,3,8", "sl,4,H"]:
        cls = enumerate_classes(catalog(name))
        assert [c.key for c in cls] == sorted(c.key for c in cls)
        rs = catalog(name).rs
        for c in cls:
            assert c.min_rep <= c.max_rep
            assert phi_I(rs, c.min_rep) == c.phi_I == phi_I(rs, c.max_rep)
            assert c.dim == len(c.phi_I)


def test_e6_minus26_dims_via_restricted_roots():
    sd = catalog("e6,-26")
    assert dim_via_restricted(sd, {1}) == 16
    assert dim_via_restricted(sd, {1, 6}) == 8
    with pytest.raises(ValueError):
        dim_via_restricted(sd, {2})


@pytest.mark.parametrize("rst", SMALL, ids=str)
def test_brute_force_oracle(rst):
    rs = build_root_system(rst)
    raw = enumerate_classes(rs.rst, merge=True).raw
    assert {c.phi_I for c in raw} == brute_force_classes(rs)


def test_hasse_chains():
    lat = hasse(enumerate_classes(catalog("sp,3,4")))
    assert lat.chain_length() == 3 and len(lat.nodes) == 3
    lat = hasse(enumerate_classes(catalog("e7,-25")))
    assert [n.dim for n in lat.nodes] == [1, 10, 27]
    assert set(lat.edges) == {(0, 1), (1, 2)}
    assert "->" in lat.to_dot()
    assert json.loads(json.dumps(lat.to_json()))["edges"] == [[0, 1], [1, 2]]


def test_hasse_edges_go_up_in_dimension():
    for name in ["e6,6", "e8,8", "so,4,9", "su,3,5"]:
        lat = hasse(enumerate_classes(catalog(name)))
        for a, b in lat.edges:
            assert lat.nodes[a].dim < lat.nodes[b].dim


@pytest.mark.parametrize("rf", list(all_forms(8)), ids=lambda rf: rf.name)
def test_golden_atlas(rf):
    path = GOLDEN / golden_name(rf)
    assert path.read_text() == atlas_json(rf)


def test_golden_covers_catalog():
    names = {golden_name(rf) for rf in all_forms(8)}
    assert names == {p.name for p in GOLDEN.glob("*.json")}


@given(st.sampled_from(SMALL), st.data())
def test_min_rep_is_minimal(rst, data):
    rs = build_root_system(rst)
    I = data.draw(st.sets(st.integers(1, rs.rank), min_size=1))
    mn, mx = min_max_representatives(rs, I)
    target = phi_I(rs, I)
    assert phi_I(rs, mn) == target
    for i in mn:
        if len(mn) > 1:
            assert phi_I(rs, set(mn) - {i}) != target
    for j in set(range(1, rs.rank + 1)) - set(mx):
        assert phi_I(rs, set(mx) | {j}) != target
