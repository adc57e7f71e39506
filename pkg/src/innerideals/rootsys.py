"""Irreducible root systems, diagram automorphisms, node gradings and
Chevalley bases.

Node labelling (simple roots numbered from 1):

====  ==========================================================
A_l   chain 1-2-...-l
B_l   chain, alpha_l short
C_l   chain, alpha_l long
D_l   chain 1-...-(l-2), node l-2 joined to both l-1 and l
E_n   chain 1-3-4-5-...-n, node 2 joined to node 4
F_4   1-2=>3-4, alpha_1 and alpha_2 long
G_2   1<=2 with alpha_1 long (so the maximal root is 2a1+3a2)
====  ==========================================================
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .liealg import FiniteLieAlgebra

Root = tuple[int, ...]

_RANKS = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANKS:
            raise ValueError(f"unknown family {self.family!r}; expected one of A,B,C,D,E,F,G")
        lo, hi = _RANKS[self.family]
        if not isinstance(self.rank, int) or self.rank < lo or (hi is not None and self.rank > hi):
            rng = f"{lo}..{hi}" if hi is not None else f">= {lo}"
            raise ValueError(f"type {self.family} needs rank {rng}, got {self.rank}")

    @classmethod
    def parse(cls, s: str) -> "RootSystemType":
        s = s.strip().replace("_", "")
        return cls(s[0].upper(), int(s[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _symmetric_form(rst: RootSystemType) -> list[list[int]]:
    """Gram matrix of the simple roots (scaled to be integral)."""
    f, l = rst.family, rst.rank
    b = [[0] * l for _ in range(l)]

    def edge(i, j, x):
        b[i - 1][j - 1] = b[j - 1][i - 1] = x

    if f == "A":
        for i in range(1, l + 1):
            b[i - 1][i - 1] = 2
        for i in range(1, l):
            edge(i, i + 1, -1)
    elif f == "B":
        for i in range(1, l):
            b[i - 1][i - 1] = 4
            edge(i, i + 1, -2)
        b[l - 1][l - 1] = 2
    elif f == "C":
        for i in range(1, l):
            b[i - 1][i - 1] = 2
        for i in range(1, l - 1):
            edge(i, i + 1, -1)
        b[l - 1][l - 1] = 4
        edge(l - 1, l, -2)
    elif f == "D":
        for i in range(1, l + 1):
            b[i - 1][i - 1] = 2
        for i in range(1, l - 1):
            edge(i, i + 1, -1)
        edge(l - 2, l, -1)
    elif f == "E":
        for i in range(1, l + 1):
            b[i - 1][i - 1] = 2
        edge(1, 3, -1)
        edge(2, 4, -1)
        for i in range(3, l):
            edge(i, i + 1, -1)
    elif f == "F":
        b[0][0] = b[1][1] = 4
        b[2][2] = b[3][3] = 2
        edge(1, 2, -2)
        edge(2, 3, -2)
        edge(3, 4, -1)
    elif f == "G":
        b[0][0], b[1][1] = 6, 2
        edge(1, 2, -3)
    return b


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


def height(a: Root) -> int:
    return sum(a)


@dataclass(frozen=True)
class RootSystem:
    rst: RootSystemType
    gram: tuple[tuple[int, ...], ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    roots: tuple[Root, ...]
    maximal_root: Root
    _index: dict = field(repr=False, compare=False, hash=False, default=None)

    @property
    def rank(self) -> int:
        return self.rst.rank

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        l = self.rank
        return tuple(tuple(int(i == j) for j in range(l)) for i in range(l))

    def is_root(self, a: Root) -> bool:
        return tuple(a) in self._index

    def index(self, a: Root) -> int:
        return self._index[tuple(a)]

    def inner(self, a: Root, b: Root) -> int:
        g = self.gram
        return sum(x * g[i][j] * y for i, x in enumerate(a) if x for j, y in enumerate(b) if y)

    def norm2(self, a: Root) -> int:
        return self.inner(a, a)

    def pairing(self, a: Root, i: int) -> int:
        """<a, alpha_i^vee> for a 0-based simple index i."""
        return sum(p * self.cartan_matrix[i][j] for j, p in enumerate(a))

    def to_json(self) -> dict:
        return {
            "type": str(self.rst),
            "rank": self.rank,
            "roots": [list(r) for r in self.roots],
            "maximal_root": list(self.maximal_root),
            "cartan": [list(r) for r in self.cartan_matrix],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@lru_cache(maxsize=None)
def build_root_system(rst: RootSystemType) -> RootSystem:
    if isinstance(rst, str):
        rst = RootSystemType.parse(rst)
    l = rst.rank
    g = _symmetric_form(rst)
    a = [[2 * g[i][j] // g[i][i] for j in range(l)] for i in range(l)]
    assert all(2 * g[i][j] % g[i][i] == 0 for i in range(l) for j in range(l))
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    pos = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(l):
                if beta == simple[i]:
                    continue
                q = 0
                cur = _sub(beta, simple[i])
                while cur in pos:
                    q += 1
                    cur = _sub(cur, simple[i])
                p = q - sum(beta[j] * a[i][j] for j in range(l))
                if p > 0:
                    new = _add(beta, simple[i])
                    if new not in pos:
                        pos.add(new)
                        nxt.append(new)
        layer = nxt
    positive = tuple(sorted(pos, key=lambda r: (height(r), r)))
    roots = positive + tuple(_neg(r) for r in positive)
    top = positive[-1]
    assert all(all(x <= y for x, y in zip(r, top)) for r in positive)
    return RootSystem(
        rst=rst,
        gram=tuple(map(tuple, g)),
        cartan_matrix=tuple(map(tuple, a)),
        positive_roots=positive,
        roots=roots,
        maximal_root=top,
        _index={r: k for k, r in enumerate(roots)},
    )


def expected_root_count(rst: RootSystemType) -> int:
    l = rst.rank
    return {
        "A": l * (l + 1),
        "B": 2 * l * l,
        "C": 2 * l * l,
        "D": 2 * l * (l - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(l, 0),
        "F": 48,
        "G": 12,
    }[rst.family]


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """All node permutations preserving the Cartan matrix (0-based images)."""
    l = rs.rank
    a = rs.cartan_matrix
    out = []

    def extend(perm: list[int], used: set[int]):
        i = len(perm)
        if i == l:
            out.append(tuple(perm))
            return
        for j in range(l):
            if j in used or a[j][j] != a[i][i]:
                continue
            if all(a[perm[k]][j] == a[k][i] and a[j][perm[k]] == a[i][k] for k in range(i)):
                perm.append(j)
                used.add(j)
                extend(perm, used)
                perm.pop()
                used.discard(j)

    extend([], set())
    return sorted(out)


@dataclass(frozen=True)
class NodeGrading:
    """Roots split by the coefficient of one simple root."""

    node: int
    pieces: dict[int, tuple[Root, ...]]
    cartan_dim: int

    def dims(self) -> dict[int, int]:
        return {n: len(r) + (self.cartan_dim if n == 0 else 0) for n, r in sorted(self.pieces.items())}

    @property
    def top(self) -> int:
        return max(self.pieces)


def grading_by_node(rs: RootSystem, k: int) -> NodeGrading:
    """Z-grading from the k-th coefficient (k is 1-based)."""
    if not 1 <= k <= rs.rank:
        raise ValueError(f"node must be in 1..{rs.rank}")
    pieces: dict[int, list[Root]] = {}
    for r in rs.roots:
        pieces.setdefault(r[k - 1], []).append(r)
    m = rs.maximal_root[k - 1]
    for n in range(-m, m + 1):
        pieces.setdefault(n, [])
    return NodeGrading(k, {n: tuple(v) for n, v in sorted(pieces.items())}, rs.rank)


class _Chevalley:
    """Structure constants N_{a,b} from extraspecial pairs."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.order = {r: i for i, r in enumerate(rs.positive_roots)}
        self.memo: dict[tuple[Root, Root], int] = {}
        self.extra: dict[Root, tuple[Root, Root]] = {}
        for xi in rs.positive_roots:
            if height(xi) == 1:
                continue
            for al in rs.positive_roots:
                be = _sub(xi, al)
                if self.order.get(be, -1) > self.order[al]:
                    self.extra[xi] = (al, be)
                    break
            assert xi in self.extra

    def pstring(self, a: Root, b: Root) -> int:
        """Largest p with b - p a a root."""
        p = 0
        cur = _sub(b, a)
        while self.rs.is_root(cur):
            p += 1
            cur = _sub(cur, a)
        return p

    def N(self, a: Root, b: Root) -> int:
        s = _add(a, b)
        if not self.rs.is_root(s):
            return 0
        key = (a, b)
        if key in self.memo:
            return self.memo[key]
        val = self._compute(a, b, s)
        self.memo[key] = val
        return val

    def _compute(self, a: Root, b: Root, s: Root) -> int:
        rs = self.rs
        apos, bpos = a in self.order, b in self.order
        if apos and bpos:
            if self.order[a] > self.order[b]:
                return -self.N(b, a)
            a1, b1 = self.extra[s]
            if (a, b) == (a1, b1):
                return self.pstring(a, b) + 1
            n1 = self.N(a1, b1)
            total = Fraction(0)
            d1 = _sub(b, a1)
            if rs.is_root(d1):
                total += Fraction(self.N(b, _neg(a1)) * self.N(a, _neg(b1)), rs.norm2(d1))
            d2 = _sub(a, a1)
            if rs.is_root(d2):
                total += Fraction(self.N(_neg(a1), a) * self.N(b, _neg(b1)), rs.norm2(d2))
            val = Fraction(rs.norm2(s), n1) * total
            assert val.denominator == 1, (a, b, val)
            return int(val)
        if not apos and not bpos:
            return -self.N(_neg(a), _neg(b))
        # mixed signs: N_{a,b}/(g,g) = N_{b,g}/(a,a) = N_{g,a}/(b,b), g = -a-b
        g = _neg(s)
        gpos = g in self.order
        if gpos == bpos:
            val = Fraction(rs.norm2(g) * self.N(b, g), rs.norm2(a))
        else:
            val = Fraction(rs.norm2(g) * self.N(g, a), rs.norm2(b))
        assert val.denominator == 1
        return int(val)


def chevalley_algebra(rs: RootSystem, verify: bool = True) -> FiniteLieAlgebra:
    """Split Lie algebra on the Chevalley basis.

    Basis order: positive roots (by height), coroots h_1..h_l, negative roots.
    The grading attached is by height, and ``labels`` carry the roots.
    """
    if isinstance(rs, (str, RootSystemType)):
        rs = build_root_system(rs if isinstance(rs, RootSystemType) else RootSystemType.parse(rs))
    l = rs.rank
    pos = rs.positive_roots
    labels = [("e", r) for r in pos] + [("h", i + 1) for i in range(l)] + [("e", _neg(r)) for r in pos]
    idx = {lab: k for k, lab in enumerate(labels)}
    ch = _Chevalley(rs)
    table: dict[tuple[int, int], dict[int, int]] = {}

    def put(i, j, k, c):
        if c:
            table.setdefault((i, j), {})[k] = c
            table.setdefault((j, i), {})[k] = -c

    for i in range(l):
        hi = idx[("h", i + 1)]
        for r in rs.roots:
            put(hi, idx[("e", r)], idx[("e", r)], rs.pairing(r, i))
    for a in pos:
        n2 = rs.norm2(a)
        ea, fa = idx[("e", a)], idx[("e", _neg(a))]
        for i in range(l):
            if a[i]:
                c = Fraction(a[i] * rs.gram[i][i], n2)
                assert c.denominator == 1
                put(ea, fa, idx[("h", i + 1)], int(c))
    roots = rs.roots
    for x in range(len(roots)):
        for y in range(x + 1, len(roots)):
            a, b = roots[x], roots[y]
            s = _add(a, b)
            if any(s) and rs.is_root(s):
                put(idx[("e", a)], idx[("e", b)], idx[("e", s)], ch.N(a, b))
    degrees = [height(r) for r in pos] + [0] * l + [-height(r) for r in pos]
    alg = FiniteLieAlgebra.from_int_table(len(labels), labels, table, grading=degrees, name=f"chevalley({rs.rst})")
    if verify:
        bad = alg.verify_jacobi()
        if bad is not None:
            raise AssertionError(f"Chevalley sign assignment inconsistent at triple {bad}")
    return alg


def chevalley_node_degrees(rs: RootSystem, alg: FiniteLieAlgebra, k: int) -> list[int]:
    """Degree of each Chevalley basis vector for the node-k grading."""
    out = []
    for kind, x in alg.basis_labels:
        out.append(x[k - 1] if kind == "e" else 0)
    return out


def iter_types(max_rank: int = 8) -> Iterator[RootSystemType]:
    """Every legal type up to the given rank."""
    for f in "ABCDEFG":
        lo, hi = _RANKS[f]
        for l in range(lo, (hi if hi is not None else max_rank) + 1):
            if l <= max_rank:
                yield RootSystemType(f, l)
