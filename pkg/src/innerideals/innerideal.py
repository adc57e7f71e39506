"""Abelian inner ideals B_I from index sets of simple roots.

For a nonempty I, Phi_I is the set of roots whose j-th coefficient equals
the j-th coefficient m_j of the maximal root for every j in I.  For a real
form only index sets adapted to the Satake diagram are used.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .rootsys import Root, RootSystem, RootSystemType, build_root_system, diagram_automorphisms
from .satake import RealFormId, SatakeDiagram, restricted_roots, split_form

IndexSet = frozenset


def _as_set(I: Iterable[int]) -> frozenset[int]:
    return frozenset(int(i) for i in I)


@lru_cache(maxsize=None)
def _masks(rst: RootSystemType) -> tuple[tuple[Root, ...], tuple[int, ...]]:
    """Positive roots and, for each, the bitmask of nodes j with p_j = m_j."""
    rs = build_root_system(rst)
    m = rs.maximal_root
    out = []
    for a in rs.positive_roots:
        mask = 0
        for j, (p, mj) in enumerate(zip(a, m)):
            if p == mj:
                mask |= 1 << j
        out.append(mask)
    return rs.positive_roots, tuple(out)


def _bits(I: frozenset[int]) -> int:
    b = 0
    for i in I:
        b |= 1 << (i - 1)
    return b


def _unbits(b: int) -> frozenset[int]:
    return frozenset(j + 1 for j in range(b.bit_length()) if b >> j & 1)


def phi_mask(rs: RootSystem, I) -> int:
    """Phi_I as a bitmask over the positive roots."""
    I = _as_set(I)
    if not I:
        raise ValueError("index set must be nonempty")
    if not all(1 <= i <= rs.rank for i in I):
        raise ValueError(f"indices must lie in 1..{rs.rank}")
    _, masks = _masks(rs.rst)
    need = _bits(I)
    out = 0
    for k, mk in enumerate(masks):
        if mk & need == need:
            out |= 1 << k
    return out


def phi_I(rs: RootSystem, I) -> frozenset[Root]:
    roots, _ = _masks(rs.rst)
    b = phi_mask(rs, I)
    return frozenset(roots[k] for k in range(len(roots)) if b >> k & 1)


def min_max_representatives(rs: RootSystem, I, allowed: Sequence[frozenset[int]] | None = None):
    """(min_rep, max_rep) for Phi_I.

    ``allowed`` optionally lists the blocks (e.g. arrow classes) that may be
    removed or added as a whole; by default every single node is a block.
    """
    I = _as_set(I)
    target = phi_mask(rs, I)
    roots, masks = _masks(rs.rst)
    if allowed is None:
        allowed = [frozenset({i}) for i in range(1, rs.rank + 1)]
    common = (1 << rs.rank) - 1
    for k in range(len(roots)):
        if target >> k & 1:
            common &= masks[k]
    top = _unbits(common)
    max_rep = frozenset().union(*[b for b in allowed if b <= top]) | I
    cur = set(I)
    for blk in sorted((b for b in allowed if b <= I), key=lambda b: sorted(b)):
        trial = frozenset(cur - blk)
        if trial and phi_mask(rs, trial) == target:
            cur = set(trial)
    min_rep = frozenset(cur)
    for blk in allowed:
        if blk <= min_rep:
            trial = min_rep - blk
            assert not trial or phi_mask(rs, trial) != target, "greedy representative is not minimal"
    return min_rep, max_rep


def is_adapted(sd: SatakeDiagram, I) -> bool:
    I = _as_set(I)
    if not I:
        raise ValueError("index set must be nonempty")
    mu = sd.mu_map
    return all(i in sd.white for i in I) and all(mu[i] in I for i in I)


def _orbits(sd: SatakeDiagram) -> list[frozenset[int]]:
    mu = sd.mu_map
    return sorted({frozenset({i, mu[i]}) for i in sd.white}, key=lambda b: sorted(b))


def admissible_automorphisms(sd: SatakeDiagram) -> list[tuple[int, ...]]:
    """Diagram automorphisms preserving colours and arrows (0-based images)."""
    mu = sd.mu_map
    out = []
    for perm in diagram_automorphisms(sd.rs):
        s = {i + 1: perm[i] + 1 for i in range(len(perm))}
        if {s[i] for i in sd.white} != set(sd.white):
            continue
        if all(s[mu[i]] == mu[s[i]] for i in sd.white):
            out.append(perm)
    return out


def _fmt(I: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(I)) + "}"


@dataclass(frozen=True)
class InnerIdealClass:
    real_form: RealFormId
    phi_I: frozenset[Root]
    dim: int
    min_rep: frozenset[int]
    max_rep: frozenset[int]
    conjugates: tuple[frozenset[int], ...]
    orbit: tuple[int, ...] = field(repr=False, default=())  # Phi masks of all conjugates

    @property
    def key(self):
        return (self.dim, tuple(sorted(self.min_rep)))

    @property
    def label(self) -> str:
        return f"{_fmt(self.min_rep)} / {self.dim}"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "min_rep": sorted(self.min_rep),
            "max_rep": sorted(self.max_rep),
            "conjugates": [sorted(c) for c in self.conjugates],
        }


class Enumeration(list):
    """List of classes (merged), also carrying the pre-merge list."""

    def __init__(self, classes, raw):
        super().__init__(classes)
        self.raw = raw


def _sd(x) -> SatakeDiagram:
    if isinstance(x, SatakeDiagram):
        return x
    if isinstance(x, RootSystemType):
        return split_form(x)
    if isinstance(x, RootSystem):
        return split_form(x.rst)
    if isinstance(x, str):
        try:
            return split_form(RootSystemType.parse(x))
        except (ValueError, IndexError):
            from .satake import catalog

            return catalog(x)
    from .satake import catalog

    return catalog(x)


def _permute_mask(rs: RootSystem, perm: tuple[int, ...], b: int) -> int:
    roots, _ = _masks(rs.rst)
    idx = {r: k for k, r in enumerate(roots)}
    out = 0
    for k in range(len(roots)):
        if b >> k & 1:
            r = roots[k]
            img = [0] * len(r)
            for i, p in enumerate(r):
                img[perm[i]] = p
            out |= 1 << idx[tuple(img)]
    return out


def enumerate_classes(sd, merge: bool = True) -> Enumeration:
    """One class per distinct Phi_I over adapted I, merged under admissible
    diagram automorphisms when ``merge`` is set."""
    sd = _sd(sd)
    rs = sd.rs
    roots, _ = _masks(rs.rst)
    blocks = _orbits(sd)
    groups: dict[int, list[frozenset[int]]] = {}
    for k in range(1, len(blocks) + 1):
        for combo in combinations(blocks, k):
            I = frozenset().union(*combo)
            groups.setdefault(phi_mask(rs, I), []).append(I)

    def make(b: int, orbit: Sequence[int], conj) -> InnerIdealClass:
        I = min(groups[b], key=lambda s: (len(s), sorted(s)))
        mn, mx = min_max_representatives(rs, I, blocks)
        return InnerIdealClass(
            real_form=sd.real_form,
            phi_I=frozenset(roots[k] for k in range(len(roots)) if b >> k & 1),
            dim=bin(b).count("1"),
            min_rep=mn,
            max_rep=mx,
            conjugates=tuple(sorted(conj, key=lambda s: (len(s), sorted(s)))),
            orbit=tuple(sorted(orbit)),
        )

    raw = [make(b, [b], [min_max_representatives(rs, min(groups[b], key=sorted), blocks)[0]]) for b in groups]
    raw.sort(key=lambda c: c.key)
    if not merge:
        return Enumeration(raw, raw)
    autos = admissible_automorphisms(sd)
    parent = {b: b for b in groups}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in groups:
        for perm in autos:
            c = _permute_mask(rs, perm, b)
            assert c in groups, "automorphism image is not an adapted class"
            ra, rb = find(b), find(c)
            if ra != rb:
                parent[ra] = rb
    byroot: dict[int, list[int]] = {}
    for b in groups:
        byroot.setdefault(find(b), []).append(b)
    merged = []
    for members in byroot.values():
        cls = [c for c in raw if any(c.orbit[0] == m for m in members)]
        best = min(cls, key=lambda c: tuple(sorted(c.min_rep)))
        b = best.orbit[0]
        conj = [c.min_rep for c in cls]
        merged.append(make(b, members, conj))
    merged.sort(key=lambda c: c.key)
    return Enumeration(merged, raw)


def brute_force_classes(rs: RootSystem) -> set[frozenset[Root]]:
    """All distinct Phi_I over every nonempty I, straight from the definition."""
    m = rs.maximal_root
    out = set()
    for k in range(1, rs.rank + 1):
        for I in combinations(range(rs.rank), k):
            out.add(frozenset(a for a in rs.roots if all(a[j] == m[j] for j in I)))
    return out


@dataclass(frozen=True)
class Lattice:
    nodes: tuple[InnerIdealClass, ...]
    edges: tuple[tuple[int, int], ...]  # (smaller, larger) covering pairs

    def chain_length(self) -> int:
        """Number of classes on a longest chain."""
        n = len(self.nodes)
        if not n:
            return 0
        succ = {i: [] for i in range(n)}
        for a, b in self.edges:
            succ[a].append(b)
        memo: dict[int, int] = {}

        def longest(i):
            if i not in memo:
                memo[i] = 1 + max((longest(j) for j in succ[i]), default=0)
            return memo[i]

        return max(longest(i) for i in range(n))

    def to_dot(self, name: str = "lattice") -> str:
        lines = [f'digraph "{name}" {{']
        for i, c in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{c.label}"];')
        for a, b in self.edges:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nodes": [dict(c.to_json(), id=i, label=c.label) for i, c in enumerate(self.nodes)],
            "edges": [list(e) for e in self.edges],
        }


def hasse(classes: Sequence[InnerIdealClass]) -> Lattice:
    """Covering relation of (conjugacy-class) strict containment of Phi sets."""
    n = len(classes)
    less = [[False] * n for _ in range(n)]
    for i, x in enumerate(classes):
        bx = x.orbit[0] if x.orbit else None
        for j, y in enumerate(classes):
            if i == j:
                continue
            if bx is None:
                less[i][j] = x.phi_I < y.phi_I
            else:
                less[i][j] = any(bx & by == bx and bx != by for by in y.orbit)
    edges = []
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                edges.append((i, j))
    return Lattice(tuple(classes), tuple(edges))


def dim_via_restricted(sd: SatakeDiagram, I) -> int:
    """Sum of restricted-root multiplicities over Sigma_I."""
    I = _as_set(I)
    if not is_adapted(sd, I):
        raise ValueError(f"{_fmt(I)} is not adapted to the Satake diagram of {sd.real_form}")
    rr = restricted_roots(sd)
    pos = {r: k for k, r in enumerate(rr.reps)}
    top = rr.maximal()
    coords = {pos[sd.rep(i)] for i in I}
    return sum(m for lam, m in rr.multiplicities.items() if all(lam[c] == top[c] for c in coords))


def corner_basis(rs: RootSystem, I) -> list[int]:
    """Indices of the Chevalley basis vectors spanning B_I (see chevalley_algebra)."""
    roots, _ = _masks(rs.rst)
    b = phi_mask(rs, I)
    return [k for k in range(len(roots)) if b >> k & 1]


def atlas_entry(rf) -> dict:
    """Deterministic summary of one real form's classification."""
    from .satake import catalog, real_rank

    sd = catalog(rf) if not isinstance(rf, SatakeDiagram) else rf
    classes = enumerate_classes(sd)
    lat = hasse(classes)
    return {
        "real_form": sd.real_form.name,
        "type": str(sd.rst),
        "satake": sd.to_json(),
        "killing_signature": sd.killing_signature,
        "classes": [c.to_json() for c in classes],
        "raw_classes": [c.to_json() for c in classes.raw],
        "edges": [list(e) for e in lat.edges],
        "chain_length": lat.chain_length(),
        "real_rank": real_rank(sd),
    }


def atlas_json(rf) -> str:
    return json.dumps(atlas_entry(rf), sort_keys=True, indent=1) + "\n"
