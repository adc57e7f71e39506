"""Satake diagrams of the real simple Lie algebras and restricted roots.

Real forms are named by comma separated ids, for example ``su,2,5``,
``sl,4,R``, ``sl,3,H``, ``so,3,6``, ``u*,5,H``, ``sp,8,R``, ``sp,1,3``,
``e6,-14``, ``f4,4`` or ``E6,compact``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .rootsys import Root, RootSystem, RootSystemType, build_root_system

WHITE, BLACK = "white", "black"

# Killing signatures (dim p - dim k) of the exceptional forms, by name.
EXCEPTIONAL = {
    ("e6", 6): ((1, 2, 3, 4, 5, 6), ((1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6))),
    ("e6", 2): ((1, 2, 3, 4, 5, 6), ((1, 6), (2, 2), (3, 5), (4, 4))),
    ("e6", -14): ((1, 2, 6), ((1, 6), (2, 2))),
    ("e6", -26): ((1, 6), ((1, 1), (6, 6))),
    ("e7", 7): (tuple(range(1, 8)), ()),
    ("e7", 5): ((1, 3, 4, 6), ()),
    ("e7", -25): ((1, 6, 7), ()),
    ("e8", 8): (tuple(range(1, 9)), ()),
    ("e8", -24): ((1, 6, 7, 8), ()),
    ("f4", 4): ((1, 2, 3, 4), ()),
    ("f4", -20): ((4,), ()),
    ("g2", 2): ((1, 2), ()),
}

# Killing signature of each exceptional form.  The form named e7,5 has
# maximal compact subalgebra su2 + so12 of dimension 69, so its Killing
# signature is 64 - 69 = -5.
EXCEPTIONAL_SIGNATURE = {
    ("e6", 6): 6, ("e6", 2): 2, ("e6", -14): -14, ("e6", -26): -26,
    ("e7", 7): 7, ("e7", 5): -5, ("e7", -25): -25,
    ("e8", 8): 8, ("e8", -24): -24,
    ("f4", 4): 4, ("f4", -20): -20,
    ("g2", 2): 2,
}

_EXC_TYPE = {"e6": ("E", 6), "e7": ("E", 7), "e8": ("E", 8), "f4": ("F", 4), "g2": ("G", 2)}


@dataclass(frozen=True, order=True)
class RealFormId:
    """family in {sl_R, sl_H, su, so, u*, sp_R, sp, e6, e7, e8, f4, g2, compact}."""

    family: str
    params: tuple

    def __post_init__(self):
        f, p = self.family, self.params
        if f == "sl_R":
            _need(len(p) == 1 and p[0] >= 2, "sl(n,R) needs n >= 2")
        elif f == "sl_H":
            _need(len(p) == 1 and p[0] >= 2, "sl(m,H) needs m >= 2")
        elif f == "su":
            _need(len(p) == 2 and 1 <= p[0] <= p[1], "su(p,q) needs 1 <= p <= q")
        elif f == "so":
            _need(len(p) == 2 and 1 <= p[0] <= p[1], "so(p,q) needs 1 <= p <= q")
            n = p[0] + p[1]
            _need(n >= 5 and n != 6, "so(p,q) needs p+q = 5 or p+q >= 7 (types B_l, l>=2, and D_l, l>=4)")
        elif f == "u*":
            _need(len(p) == 1 and p[0] > 4, "u*(l,H) is cataloged for l > 4")
        elif f == "sp_R":
            _need(len(p) == 1 and p[0] >= 3, "sp(2n,R) is cataloged for n >= 3 (type C_n)")
        elif f == "sp":
            _need(len(p) == 2 and 1 <= p[0] <= p[1] and p[0] + p[1] >= 3, "sp(p,q) needs 1 <= p <= q, p+q >= 3")
        elif f in _EXC_TYPE:
            _need(len(p) == 1 and (f, p[0]) in EXCEPTIONAL, f"unknown real form {f},{p}")
        elif f == "compact":
            _need(len(p) == 1 and isinstance(p[0], RootSystemType), "compact form needs a root system type")
        else:
            raise ValueError(f"unknown real form family {f!r}")

    @property
    def name(self) -> str:
        f, p = self.family, self.params
        if f == "sl_R":
            return f"sl,{p[0]},R"
        if f == "sl_H":
            return f"sl,{p[0]},H"
        if f == "u*":
            return f"u*,{p[0]},H"
        if f == "sp_R":
            return f"sp,{2 * p[0]},R"
        if f == "compact":
            return f"{p[0]},compact"
        return ",".join([f] + [str(x) for x in p])

    def __str__(self):
        return self.name

    @property
    def root_type(self) -> RootSystemType:
        f, p = self.family, self.params
        if f == "sl_R":
            return RootSystemType("A", p[0] - 1)
        if f == "sl_H":
            return RootSystemType("A", 2 * p[0] - 1)
        if f == "su":
            return RootSystemType("A", p[0] + p[1] - 1)
        if f == "so":
            n = p[0] + p[1]
            return RootSystemType("B", (n - 1) // 2) if n % 2 else RootSystemType("D", n // 2)
        if f == "u*":
            return RootSystemType("D", p[0])
        if f == "sp_R":
            return RootSystemType("C", p[0])
        if f == "sp":
            return RootSystemType("C", p[0] + p[1])
        if f == "compact":
            return p[0]
        return RootSystemType(*_EXC_TYPE[f])

    @classmethod
    def parse(cls, s: str) -> "RealFormId":
        parts = [x.strip() for x in s.strip().split(",")]
        head = parts[0].lower()
        if len(parts) == 2 and parts[1].lower() == "compact":
            return cls("compact", (RootSystemType.parse(parts[0]),))
        if head in _EXC_TYPE:
            if len(parts) != 2:
                raise ValueError(f"expected e.g. {head},<signature>")
            return cls(head, (int(parts[1]),))
        if head == "sl" and len(parts) == 3 and parts[2].upper() in ("R", "H"):
            return cls("sl_R" if parts[2].upper() == "R" else "sl_H", (int(parts[1]),))
        if head == "sp" and len(parts) == 3 and parts[2].upper() == "R":
            n = int(parts[1])
            if n % 2:
                raise ValueError("sp(2n,R) needs an even matrix size")
            return cls("sp_R", (n // 2,))
        if head in ("u*", "so*"):
            l = int(parts[1]) if head == "u*" else int(parts[1]) // 2
            return cls("u*", (l,))
        if head in ("su", "so", "sp") and len(parts) == 3:
            p, q = int(parts[1]), int(parts[2])
            if min(p, q) == 0:
                rt = cls(head, (1, max(p, q) - 1)).root_type if head != "sp" else RootSystemType("C", p + q)
                return cls("compact", (rt,))
            return cls(head, (min(p, q), max(p, q)))
        raise ValueError(f"cannot parse real form {s!r}")


def _need(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class SatakeDiagram:
    real_form: RealFormId
    rst: RootSystemType
    white: frozenset[int]
    mu: tuple[tuple[int, int], ...]  # (i, mu(i)) for every white node
    killing_signature: int | None = None

    def __post_init__(self):
        m = dict(self.mu)
        if set(m) != set(self.white):
            raise ValueError("mu must be defined exactly on the white nodes")
        for i, j in m.items():
            if m.get(j) != i:
                raise ValueError("mu must be an involution")

    @cached_property
    def mu_map(self) -> dict[int, int]:
        return dict(self.mu)

    @property
    def black(self) -> frozenset[int]:
        return frozenset(range(1, self.rst.rank + 1)) - self.white

    @property
    def colors(self) -> dict[int, str]:
        return {i: WHITE if i in self.white else BLACK for i in range(1, self.rst.rank + 1)}

    @property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((i, j) for i, j in self.mu if i < j))

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.rst)

    @property
    def is_split(self) -> bool:
        return len(self.white) == self.rst.rank and not self.arrows

    @property
    def is_compact(self) -> bool:
        return not self.white

    def rep(self, i: int) -> int:
        return min(i, self.mu_map[i])

    def to_json(self) -> dict:
        return {
            "white": sorted(self.white),
            "black": sorted(self.black),
            "arrows": [list(a) for a in self.arrows],
            "real_rank": real_rank(self),
        }


def real_rank(sd: SatakeDiagram) -> int:
    return len(sd.white) - len(sd.arrows)


def _diagram(rf: RealFormId, white, arrows=(), sig=None) -> SatakeDiagram:
    white = frozenset(white)
    m = {i: i for i in white}
    for i, j in arrows:
        m[i], m[j] = j, i
    return SatakeDiagram(rf, rf.root_type, white, tuple(sorted(m.items())), sig)


def catalog(rf: RealFormId | str) -> SatakeDiagram:
    if isinstance(rf, str):
        rf = RealFormId.parse(rf)
    f, p = rf.family, rf.params
    l = rf.root_type.rank
    allnodes = range(1, l + 1)
    if f in ("sl_R", "sp_R"):
        return _diagram(rf, allnodes, sig=l)
    if f == "sl_H":
        return _diagram(rf, range(2, l, 2))
    if f == "su":
        a, b = p
        if a < b:
            white = set(range(1, a + 1)) | set(range(l + 1 - a, l + 1))
            return _diagram(rf, white, [(i, l + 1 - i) for i in range(1, a + 1)])
        return _diagram(rf, allnodes, [(i, l + 1 - i) for i in range(1, a)])
    if f == "so":
        a, b = p
        if (a + b) % 2:
            return _diagram(rf, range(1, a + 1), sig=l if a == l else None)
        if a <= l - 2:
            return _diagram(rf, range(1, a + 1))
        if a == l - 1:
            return _diagram(rf, allnodes, [(l - 1, l)])
        return _diagram(rf, allnodes, sig=l)
    if f == "u*":
        if l % 2 == 0:
            return _diagram(rf, range(2, l + 1, 2))
        return _diagram(rf, list(range(2, l, 2)) + [l], [(l - 1, l)])
    if f == "sp":
        return _diagram(rf, range(2, 2 * p[0] + 1, 2))
    if f == "compact":
        return _diagram(rf, (), sig=-_dim(rf.root_type))
    white, mu = EXCEPTIONAL[(f, p[0])]
    arrows = [(i, j) for i, j in mu if i < j]
    return _diagram(rf, white, arrows, sig=EXCEPTIONAL_SIGNATURE[(f, p[0])])


def _dim(rst: RootSystemType) -> int:
    rs = build_root_system(rst)
    return len(rs.roots) + rst.rank


def split_form(rst: RootSystemType) -> SatakeDiagram:
    """The split real form of a given type."""
    f, l = rst.family, rst.rank
    if f == "A":
        return catalog(RealFormId("sl_R", (l + 1,)))
    if f == "B":
        return catalog(RealFormId("so", (l, l + 1)))
    if f == "C":
        return catalog(RealFormId("sp_R", (l,)))
    if f == "D":
        return catalog(RealFormId("so", (l, l)))
    name = {("E", 6): "e6", ("E", 7): "e7", ("E", 8): "e8", ("F", 4): "f4", ("G", 2): "g2"}[(f, l)]
    return catalog(RealFormId(name, (l,)))


def forms_of_type(rst: RootSystemType) -> list[RealFormId]:
    """Every cataloged real form whose complexification has type rst."""
    f, l = rst.family, rst.rank
    out: list[RealFormId] = []
    if f == "A":
        out.append(RealFormId("sl_R", (l + 1,)))
        if l % 2 == 1 and l >= 3:
            out.append(RealFormId("sl_H", ((l + 1) // 2,)))
        for a in range(1, (l + 1) // 2 + 1):
            out.append(RealFormId("su", (a, l + 1 - a)))
    elif f == "B":
        for a in range(1, l + 1):
            out.append(RealFormId("so", (a, 2 * l + 1 - a)))
    elif f == "C":
        out.append(RealFormId("sp_R", (l,)))
        for a in range(1, l // 2 + 1):
            out.append(RealFormId("sp", (a, l - a)))
    elif f == "D":
        for a in range(1, l + 1):
            out.append(RealFormId("so", (a, 2 * l - a)))
        if l > 4:
            out.append(RealFormId("u*", (l,)))
    else:
        name = {("E", 6): "e6", ("E", 7): "e7", ("E", 8): "e8", ("F", 4): "f4", ("G", 2): "g2"}[(f, l)]
        out.extend(RealFormId(name, (s,)) for (n, s) in EXCEPTIONAL if n == name)
    out.append(RealFormId("compact", (rst,)))
    return out


def all_forms(max_rank: int = 8) -> Iterator[RealFormId]:
    from .rootsys import iter_types

    for rst in iter_types(max_rank):
        yield from forms_of_type(rst)


@dataclass(frozen=True)
class RestrictedRootSystem:
    sd: SatakeDiagram
    reps: tuple[int, ...]  # white arrow-class representatives, in node order
    multiplicities: dict[tuple[int, ...], int]
    compact_roots: int

    def restrict(self, a: Root) -> tuple[int, ...]:
        return restrict(self.sd, a, self.reps)

    @property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.multiplicities))

    def maximal(self) -> tuple[int, ...]:
        return self.restrict(self.sd.rs.maximal_root)


def restrict(sd: SatakeDiagram, a: Root, reps: tuple[int, ...] | None = None) -> tuple[int, ...]:
    if reps is None:
        reps = tuple(sorted({sd.rep(i) for i in sd.white}))
    pos = {r: k for k, r in enumerate(reps)}
    out = [0] * len(reps)
    for i in sd.white:
        out[pos[sd.rep(i)]] += a[i - 1]
    return tuple(out)


def restricted_roots(sd: SatakeDiagram) -> RestrictedRootSystem:
    reps = tuple(sorted({sd.rep(i) for i in sd.white}))
    mult: dict[tuple[int, ...], int] = {}
    zero = 0
    for a in sd.rs.roots:
        r = restrict(sd, a, reps)
        if any(r):
            mult[r] = mult.get(r, 0) + 1
        else:
            zero += 1
    return RestrictedRootSystem(sd, reps, mult, zero)
