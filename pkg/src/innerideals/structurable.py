"""Composition algebras, structurable algebras and the Kantor construction.

Multiplication tables are integer tensors ``mul[i, j, k]`` (coefficient of
e_k in e_i e_j) together with a positive denominator ``scale``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .exact import Subspace, frac, integerize, nullspace, safe_matmul, to_sparse
from .liealg import FiniteLieAlgebra, QuadraticForm, killing_signature, signature_value
from .satake import EXCEPTIONAL_SIGNATURE, RealFormId

CD_PARAMS = {
    "R": (),
    "C": (-1,),
    "Cs": (1,),
    "H": (-1, -1),
    "Hs": (-1, 1),
    "O": (-1, -1, -1),
    "Os": (-1, -1, 1),
}


def _fmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of small integer arrays through float BLAS."""
    return safe_matmul(a, b)


@dataclass(frozen=True, eq=False)
class CompositionAlgebra:
    """Cayley-Dickson algebra; basis vector 0 is the unit."""

    name: str
    cd_params: tuple[int, ...]
    mul: np.ndarray = field(repr=False)
    conj: tuple[int, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.conj)

    @property
    def norm_diag(self) -> tuple[int, ...]:
        """n(e_i) for each basis vector; the basis is orthogonal for n."""
        return tuple(int(self.mul[i, self.conj_index(i), 0]) * self.conj[i] for i in range(self.dim))

    def conj_index(self, i: int) -> int:
        return i

    def product(self, x: Sequence, y: Sequence) -> list[Fraction]:
        xi = [frac(a) for a in x]
        yi = [frac(b) for b in y]
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(xi):
            if a:
                for j, b in enumerate(yi):
                    if b:
                        for k in np.flatnonzero(self.mul[i, j]):
                            out[k] += a * b * int(self.mul[i, j, k])
        return out

    def bar(self, x: Sequence) -> list[Fraction]:
        return [frac(a) * c for a, c in zip(x, self.conj)]

    def norm(self, x: Sequence) -> Fraction:
        return self.product(x, self.bar(x))[0]

    def check(self) -> None:
        d = self.dim
        t = self.mul
        nd = np.array(self.norm_diag, dtype=np.int64)
        gram = np.diag(2 * nd)  # polar form b(x,y) = n(x+y) - n(x) - n(y)
        # x xbar = n(x) 1, linearized: x ybar + y xbar = b(x, y) 1
        xj = t * np.array(self.conj)[None, :, None]
        lin = xj + np.transpose(xj, (1, 0, 2))
        expect = np.zeros_like(lin)
        expect[:, :, 0] = gram
        if not np.array_equal(lin, expect):
            raise AssertionError(f"{self.name}: x xbar is not the norm")
        # n(xy) = n(x) n(y), fully linearized:
        # b(xy, zw) + b(zy, xw) = b(x, z) b(y, w)
        p = _fmul(t.reshape(d * d, d), gram)  # (xy) paired with basis
        bxyzw = _fmul(p, t.reshape(d * d, d).T).reshape(d, d, d, d)  # [x,y,z,w]
        lhs = bxyzw + np.transpose(bxyzw, (2, 1, 0, 3))
        rhs = np.einsum("xz,yw->xyzw", gram, gram)
        if not np.array_equal(lhs, rhs):
            raise AssertionError(f"{self.name}: norm is not multiplicative")


def _double(mul: np.ndarray, conj: tuple[int, ...], gamma: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """(a,b)(c,d) = (ac + gamma dbar b, da + b cbar), conj(a,b) = (abar, -b)."""
    d = len(conj)
    cj = np.array(conj)
    out = np.zeros((2 * d, 2 * d, 2 * d), dtype=np.int64)
    # a*c
    out[:d, :d, :d] = mul
    # gamma * dbar b  with x=(0,b) index d+j, y=(0,d) index d+i
    out[d:, d:, :d] = gamma * np.transpose(mul, (1, 0, 2)) * cj[None, :, None]
    # (a,0)(0,d) = (0, d a)
    out[:d, d:, d:] = np.transpose(mul, (1, 0, 2))
    # (0,b)(c,0) = (0, b cbar)
    out[d:, :d, d:] = mul * cj[None, :, None]
    return out, tuple(conj) + tuple(-1 for _ in conj)


@lru_cache(maxsize=None)
def composition_algebra(name: str) -> CompositionAlgebra:
    if name not in CD_PARAMS:
        raise ValueError(f"unknown composition algebra {name!r}; expected one of {', '.join(CD_PARAMS)}")
    mul = np.ones((1, 1, 1), dtype=np.int64)
    conj: tuple[int, ...] = (1,)
    for g in CD_PARAMS[name]:
        mul, conj = _double(mul, conj, g)
    alg = CompositionAlgebra(name, CD_PARAMS[name], mul, conj)
    alg.check()
    return alg


def cs_idempotents() -> tuple[list[Fraction], list[Fraction]]:
    """e1 = (1+u)/2 and e2 = (1-u)/2 in Cs = R + Ru, u^2 = 1."""
    h = Fraction(1, 2)
    return [h, h], [h, -h]


@dataclass(eq=False)
class StructurableAlgebra:
    name: str
    mul: np.ndarray = field(repr=False)  # integer, product = mul / scale
    scale: int
    invol: np.ndarray = field(repr=False)  # integer matrix, column j = bar(e_j)
    one: tuple[Fraction, ...] = field(repr=False)
    factors: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        d = self.dim
        j = self.invol
        if not np.array_equal(j @ j, np.eye(d, dtype=np.int64)):
            raise AssertionError("involution is not of order 2")
        # bar(xy) = bar(y) bar(x)
        lhs = np.einsum("xyk,lk->xyl", self.mul, j)
        jm = np.einsum("by,ax,bak->xyk", j, j, self.mul)
        if not np.array_equal(lhs, jm):
            raise AssertionError("involution is not an anti-automorphism")
        for i in range(d):
            e = [Fraction(int(i == k)) for k in range(d)]
            if self.product(self.one, e) != e or self.product(e, self.one) != e:
                raise AssertionError("declared unit is not a unit")

    @property
    def dim(self) -> int:
        return self.mul.shape[0]

    def product(self, x: Sequence, y: Sequence) -> list[Fraction]:
        xi, dx = integerize([frac(a) for a in x])
        yi, dy = integerize([frac(b) for b in y])
        v = np.einsum("i,j,ijk->k", np.array(xi, dtype=object), np.array(yi, dtype=object), self.mul.astype(object))
        den = dx * dy * self.scale
        return [Fraction(int(a), den) for a in v]

    def bar(self, x: Sequence) -> list[Fraction]:
        return [sum((frac(x[j]) * int(self.invol[i, j]) for j in range(self.dim) if x[j]), Fraction(0)) for i in range(self.dim)]

    @cached_property
    def skew(self) -> Subspace:
        d = self.dim
        m = self.invol + np.eye(d, dtype=np.int64)
        ker = nullspace([to_sparse(r) for r in m.tolist()], d)
        return Subspace.span(ker, d) if ker else Subspace.zero(d)

    @cached_property
    def herm(self) -> Subspace:
        d = self.dim
        m = self.invol - np.eye(d, dtype=np.int64)
        ker = nullspace([to_sparse(r) for r in m.tolist()], d)
        return Subspace.span(ker, d) if ker else Subspace.zero(d)

    def left_int(self, v_int: np.ndarray) -> np.ndarray:
        """sum_k v_k L_{e_k} as an integer matrix (denominator: scale)."""
        return np.tensordot(v_int, self.mul, axes=(0, 0)).T

    def right_int(self, v_int: np.ndarray) -> np.ndarray:
        return np.tensordot(v_int, self.mul, axes=(0, 1)).T

    @cached_property
    def v_tensor(self) -> np.ndarray:
        """Integer V[x, y, out, z] with V_{e_x,e_y} = V[x, y] / scale**2."""
        d = self.dim
        t = self.mul
        tj = np.einsum("abk,by->ayk", t, self.invol)  # e_a bar(e_y)
        flat = t.reshape(d, d * d)  # [k, (z,o)]
        # (x ybar) z
        term1 = _fmul(tj.reshape(d * d, d), flat).reshape(d, d, d, d)  # [x,y,z,o]
        term1 = np.transpose(term1, (0, 1, 3, 2))
        # (z ybar) x
        t2 = _fmul(tj.reshape(d * d, d), flat).reshape(d, d, d, d)  # [z,y,x,o]
        term2 = np.transpose(t2, (2, 1, 3, 0))
        # (z xbar) y
        t3 = _fmul(tj.reshape(d * d, d), flat).reshape(d, d, d, d)  # [z,x,y,o]
        term3 = np.transpose(t3, (1, 2, 3, 0))
        return term1 + term2 - term3

    def v_operator(self, x: Sequence, y: Sequence) -> list[list[Fraction]]:
        """V_{x,y}(z) = (x ybar) z + (z ybar) x - (z xbar) y as a matrix."""
        xi, dx = integerize([frac(a) for a in x])
        yi, dy = integerize([frac(b) for b in y])
        m = np.einsum("x,y,xyoz->oz", np.array(xi, dtype=object), np.array(yi, dtype=object), self.v_tensor.astype(object))
        den = dx * dy * self.scale ** 2
        return [[Fraction(int(a), den) for a in row] for row in m]

    def check_structurable(self, samples: int | None = None, seed: int = 0) -> None:
        """[V_{x,y},V_{z,w}] = V_{V_{x,y}z,w} - V_{z,V_{y,x}w} on basis quadruples.

        Exhaustive for dim <= 16, otherwise on ``samples`` random quadruples.
        """
        d = self.dim
        v = self.v_tensor
        if samples is None and d <= 16:
            by_out = np.transpose(v, (2, 0, 1, 3)).reshape(d, d ** 3)  # [o, (z,w,p)]
            by_in = v.reshape(d ** 3, d)  # [(z,w,o), p]
            first = v.reshape(d, d ** 3)  # [k, (w,o,p)]
            second = np.transpose(v, (1, 0, 2, 3)).reshape(d, d ** 3)  # [k, (z,o,p)]
            for x in range(d):
                for y in range(d):
                    a = v[x, y]
                    ac = _fmul(a, by_out).reshape(d, d, d, d).transpose(1, 2, 0, 3)  # a V_{z,w}
                    ca = _fmul(by_in, a).reshape(d, d, d, d)  # V_{z,w} a
                    r1 = _fmul(a.T, first).reshape(d, d, d, d)
                    r2 = _fmul(v[y, x].T, second).reshape(d, d, d, d).transpose(1, 0, 2, 3)
                    if not np.array_equal(ac - ca, r1 - r2):
                        raise AssertionError(f"{self.name}: structurable identity fails at x={x}, y={y}")
            return
        rng = np.random.default_rng(seed)
        for _ in range(samples or 300):
            x, y, z, w = (int(t) for t in rng.integers(0, d, 4))
            a, c = v[x, y], v[z, w]
            lhs = a @ c - c @ a
            rhs = np.tensordot(a[:, z], v[:, w], axes=1) - np.tensordot(v[y, x][:, w], v[z], axes=1)
            if not np.array_equal(lhs, rhs):
                raise AssertionError(f"{self.name}: structurable identity fails at {(x, y, z, w)}")

    def check_jordan(self) -> None:
        """Commutativity and the linearized Jordan identity on basis quadruples."""
        d = self.dim
        t = self.mul
        if not np.array_equal(t, np.transpose(t, (1, 0, 2))):
            raise AssertionError(f"{self.name}: product is not commutative")
        flat = t.reshape(d, d * d)
        q = _fmul(t.reshape(d * d, d), flat).reshape(d, d, d, d)  # ((xz)y)[x,z,y,l]
        qq = _fmul(q.reshape(d ** 3, d), flat).reshape(d, d, d, d, d)  # (((xz)y)w)[x,z,y,w,o]
        lhs = qq + np.transpose(qq, (3, 0, 2, 1, 4)) + np.transpose(qq, (1, 3, 2, 0, 4))
        m1 = _fmul(t.reshape(d * d, d), flat).reshape(d * d, d, d)  # [xz, l, o] = sum_k T[xz,k] T[k,l,o]
        r = np.einsum("pl,qlo->qpo", t.reshape(d * d, d), m1).reshape(d, d, d, d, d)  # (xz)(yw)[x,z,y,w,o]
        rhs = r + np.transpose(r, (3, 0, 2, 1, 4)) + np.transpose(r, (1, 3, 2, 0, 4))
        if not np.array_equal(lhs, rhs):
            raise AssertionError(f"{self.name}: Jordan identity fails")

    @property
    def is_jordan(self) -> bool:
        return bool(np.array_equal(self.invol, np.eye(self.dim, dtype=np.int64))) and bool(
            np.array_equal(self.mul, np.transpose(self.mul, (1, 0, 2)))
        )


def tensor_structurable(c1: CompositionAlgebra | str, c2: CompositionAlgebra | str, check: bool = True) -> StructurableAlgebra:
    c1 = composition_algebra(c1) if isinstance(c1, str) else c1
    c2 = composition_algebra(c2) if isinstance(c2, str) else c2
    d1, d2 = c1.dim, c2.dim
    mul = np.einsum("ack,bdl->abcdkl", c1.mul, c2.mul).reshape(d1 * d2, d1 * d2, d1 * d2)
    inv = np.diag(np.kron(np.array(c1.conj), np.array(c2.conj))).astype(np.int64)
    one = tuple(Fraction(int(i == 0)) for i in range(d1 * d2))
    a = StructurableAlgebra(f"{c1.name}x{c2.name}", mul.astype(np.int64), 1, inv, one, (c1, c2))
    if check:
        a.check_structurable()
    return a


_SLOTS = ((0, 1), (0, 2), (1, 2))


def _h3_matrix(c: CompositionAlgebra, idx: int) -> np.ndarray:
    """Basis element idx of H3(C) as a 3x3 array over C (shape 3,3,d)."""
    d = c.dim
    m = np.zeros((3, 3, d), dtype=np.int64)
    if idx < 3:
        m[idx, idx, 0] = 1
        return m
    s, k = divmod(idx - 3, d)
    i, j = _SLOTS[s]
    m[i, j, k] = 1
    m[j, i, k] = c.conj[k]
    return m


def jordan_h3(c: CompositionAlgebra | str, check: bool = True) -> StructurableAlgebra:
    """Hermitian 3x3 matrices over C with a o b = (ab + ba)/2 (stored with scale 2)."""
    c = composition_algebra(c) if isinstance(c, str) else c
    d = c.dim
    n = 3 + 3 * d
    mats = [_h3_matrix(c, i) for i in range(n)]
    mul = np.zeros((n, n, n), dtype=np.int64)

    def mm(x, y):
        out = np.zeros((3, 3, d), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    out[i, j] += np.einsum("a,b,abl->l", x[i, k], y[k, j], c.mul)
        return out

    for p in range(n):
        for q in range(p, n):
            s = mm(mats[p], mats[q]) + mm(mats[q], mats[p])
            coords = np.zeros(n, dtype=np.int64)
            for i in range(3):
                if np.any(s[i, i, 1:]):
                    raise AssertionError("diagonal of a hermitian product is not real")
                coords[i] = s[i, i, 0]
            for sl, (i, j) in enumerate(_SLOTS):
                coords[3 + sl * d: 3 + (sl + 1) * d] = s[i, j]
                if not np.array_equal(s[j, i], s[i, j] * np.array(c.conj)):
                    raise AssertionError("product is not hermitian")
            mul[p, q] = coords
            mul[q, p] = coords
    one = tuple(Fraction(int(i < 3)) for i in range(n))
    a = StructurableAlgebra(f"H3({c.name})", mul, 2, np.eye(n, dtype=np.int64), one, None)
    a.h3_base = c
    if check:
        a.check_jordan()
    return a


# ----- Albert form and Witt index -----

def albert_form(a: StructurableAlgebra) -> QuadraticForm:
    """q(s1 x 1 + 1 x s2) = n1(s1) - n2(s2), in the echelon basis of S."""
    if not a.factors:
        raise ValueError("the Albert form is defined for tensor products of composition algebras")
    c1, c2 = a.factors
    d2 = c2.dim
    diag = []
    for row, p in zip(a.skew.basis, a.skew.pivots):
        if sum(1 for x in row if x) != 1:
            raise AssertionError("skew basis is not a coordinate basis")
        i, j = divmod(p, d2)
        if j == 0:
            diag.append(c1.norm_diag[i])
        elif i == 0:
            diag.append(-c2.norm_diag[j])
        else:
            raise AssertionError("unexpected skew basis vector")
    return QuadraticForm.diagonal(diag)


def witt_index(q: QuadraticForm) -> int:
    p, n, z = q.signature()
    if z:
        raise ValueError("quadratic form is degenerate")
    return min(p, n)


def maximal_isotropic(q: QuadraticForm) -> Subspace:
    """Span of e_i + c e_j over matched positive/negative diagonal entries."""
    d = [q.gram[i][i] for i in range(q.dim)]
    if any(q.gram[i][j] for i in range(q.dim) for j in range(q.dim) if i != j):
        raise ValueError("expected a diagonal form")
    pos = [i for i, x in enumerate(d) if x > 0]
    neg = [i for i, x in enumerate(d) if x < 0]
    vecs = []
    for i, j in zip(pos, neg):
        if d[i] != -d[j]:
            raise ValueError("paired diagonal entries must be opposite")
        v = [Fraction(0)] * q.dim
        v[i] = v[j] = Fraction(1)
        vecs.append(v)
    if not vecs:
        return Subspace.zero(q.dim)
    return Subspace.span(vecs, q.dim)


# ----- Kantor construction -----

@dataclass(eq=False)
class KantorAlgebra:
    """K(A) = K_-2 + K_-1 + K_0 + K_1 + K_2 with its bookkeeping."""

    algebra: StructurableAlgebra
    lie: FiniteLieAlgebra
    instr: Subspace
    offsets: dict[int, int]
    sizes: dict[int, int]
    grading_element: tuple[Fraction, ...]

    def block(self, degree: int) -> range:
        o = self.offsets[degree]
        return range(o, o + self.sizes[degree])

    def embed(self, degree: int, coords: Sequence) -> list[Fraction]:
        v = [Fraction(0)] * self.lie.dim
        for k, x in zip(self.block(degree), coords):
            v[k] = frac(x)
        return v

    def embed_subspace(self, degree: int, sub: Subspace) -> Subspace:
        return Subspace.span([self.embed(degree, r) for r in sub.basis], self.lie.dim) if sub.dim else Subspace.zero(self.lie.dim)


def instr(a: StructurableAlgebra) -> Subspace:
    """Row space of all basis V-operators, flattened row-major (out, in)."""
    d = a.dim
    return Subspace.span_int(a.v_tensor.reshape(d * d, d * d))


def _skew_coords(a: StructurableAlgebra, vec_int: np.ndarray, den: int, what: str) -> list[tuple[int, Fraction]]:
    s = a.skew
    if not np.any(vec_int):
        return []
    v = [Fraction(int(x), den) for x in vec_int]
    if not s.contains(v):
        raise AssertionError(f"{what} is not skew")
    return [(k, v[p]) for k, p in enumerate(s.pivots) if v[p]]


def kantor(a: StructurableAlgebra, verify: bool = False) -> KantorAlgebra:
    d = a.dim
    sig = a.scale
    S = a.skew
    ns = S.dim
    J = a.invol
    ins = instr(a)
    ni = ins.dim
    q, D0 = ins.int_basis()  # instr basis = q / D0, rows flattened (out, in)
    if q.dtype == object:
        raise OverflowError("Instr basis has entries too large")
    qm = q.reshape(ni, d, d)
    piv = list(ins.pivots)
    off = {-2: 0, -1: ns, 0: ns + d, 1: ns + d + ni, 2: ns + 2 * d + ni}
    sizes = {-2: ns, -1: d, 0: ni, 1: d, 2: ns}
    n = 2 * ns + 2 * d + ni
    sbasis_int = [integerize(list(r)) for r in S.basis]  # (ints, den)
    one_int, one_den = integerize(list(a.one))
    one_v = np.array(one_int, dtype=np.int64)
    consts: dict[tuple[int, int], dict[int, Fraction]] = {}

    def put(i, j, items):
        row = consts.setdefault((i, j), {})
        for k, c in items:
            if c:
                row[k] = row.get(k, 0) + c

    def instr_coords(flat: np.ndarray, den: int, what) -> list[list[tuple[int, Fraction]]]:
        """Coordinates of the integer rows flat / den in the Instr basis."""
        flat = flat.reshape(-1, d * d)
        bad = ins.rows_outside(flat)
        if bad:
            raise AssertionError(f"{what(bad[0])} does not lie in Instr(A)")
        sub = flat[:, piv]
        return [[(t, Fraction(int(row[t]), den)) for t in np.flatnonzero(row)] for row in sub]

    def vec_coords(v_int: np.ndarray, den: int) -> list[tuple[int, Fraction]]:
        return [(k, Fraction(int(x), den)) for k, x in enumerate(v_int) if x]

    t = a.mul
    # ab - ba type skew products: a bbar - b abar, for basis a, b
    tj = np.einsum("abk,by->ayk", t, J)  # e_a bar(e_y)
    skewprod = tj - np.transpose(tj, (1, 0, 2))
    for x in range(d):
        for y in range(x + 1, d):
            cs = _skew_coords(a, skewprod[x, y], sig, f"a bbar - b abar for a=e{x}, b=e{y}")
            put(off[1] + x, off[1] + y, [(off[2] + k, c) for k, c in cs])
            put(off[-1] + x, off[-1] + y, [(off[-2] + k, c) for k, c in cs])
    # [(a,0), (b,0)~] = V_{a,b}
    v = a.v_tensor
    allv = instr_coords(v, sig * sig, lambda i: f"V_(e{i // d},e{i % d})")
    for i, cs in enumerate(allv):
        x, y = divmod(i, d)
        put(off[1] + x, off[-1] + y, [(off[0] + k, c) for k, c in cs])
    # skew basis as integer vectors with denominators
    s_int = [(np.array(si, dtype=np.int64), sd_) for si, sd_ in sbasis_int]
    for k, (sv, sden) in enumerate(s_int):
        Ls = a.left_int(sv)  # L_s * (sden * sig)
        # [(a,0), (0,s)~] = (-s a, 0)~ ; [(0,s),(b,0)~] = (s b, 0)
        for x in range(d):
            col = Ls[:, x]
            put(off[1] + x, off[-2] + k, [(off[-1] + o, -c) for o, c in vec_coords(col, sden * sig)])
            put(off[2] + k, off[-1] + x, [(off[1] + o, c) for o, c in vec_coords(col, sden * sig)])
    # [(0,r),(0,s)~] = L_r L_s
    for k1, (rv, rden) in enumerate(s_int):
        Lr = a.left_int(rv)
        for k2, (sv, sden) in enumerate(s_int):
            prod = _fmul(Lr, a.left_int(sv))
            (cs,) = instr_coords(prod, rden * sden * sig * sig, lambda _: f"L_s{k1} L_s{k2}")
            put(off[2] + k1, off[-2] + k2, [(off[0] + c, x) for c, x in cs])
    # degree zero acting on the rest
    for tt in range(ni):
        T = qm[tt]  # T_true = T / D0
        t1 = T @ one_v  # T(1) * D0 * one_den
        w = t1 + J @ t1
        # T^eps = T - L_{T(1) + bar T(1)}; common denominator D0 * one_den * sig
        Teps = T * one_den * sig - a.left_int(w)
        den_eps = D0 * one_den * sig
        # T^delta = T + R_{bar T(1)}
        Tdel = T * one_den * sig + a.right_int(J @ t1)
        den_del = D0 * one_den * sig
        # (T^eps)^delta = T^eps + R_{bar(T^eps(1))}
        e1 = Teps @ one_v  # * den_eps * one_den
        Tepsdel = Teps * one_den * sig + a.right_int(J @ e1)
        den_epsdel = den_eps * one_den * sig
        for x in range(d):
            put(off[0] + tt, off[1] + x, [(off[1] + o, c) for o, c in vec_coords(T[:, x], D0)])
            put(off[0] + tt, off[-1] + x, [(off[-1] + o, c) for o, c in vec_coords(Teps[:, x], den_eps)])
        for k, (sv, sden) in enumerate(s_int):
            img = Tdel @ sv
            cs = _skew_coords(a, img, den_del * sden, f"T^delta s for T{tt}, s{k}")
            put(off[0] + tt, off[2] + k, [(off[2] + c, x) for c, x in cs])
            img = Tepsdel @ sv
            cs = _skew_coords(a, img, den_epsdel * sden, f"(T^eps)^delta s for T{tt}, s{k}")
            put(off[0] + tt, off[-2] + k, [(off[-2] + c, x) for c, x in cs])
    # [T, T'] = T T' - T' T
    by_row = np.transpose(qm, (1, 0, 2)).reshape(d, ni * d)  # [o, (t,p)]
    for t1_ in range(ni - 1):
        rest = qm[t1_ + 1:]
        left = _fmul(qm[t1_], by_row).reshape(d, ni, d).transpose(1, 0, 2)[t1_ + 1:]
        right = _fmul(rest.reshape(-1, d), qm[t1_]).reshape(-1, d, d)
        coms = instr_coords(left - right, D0 * D0, lambda i: f"[T{t1_}, T{t1_ + 1 + i}]")
        for i, cs in enumerate(coms):
            put(off[0] + t1_, off[0] + t1_ + 1 + i, [(off[0] + c, x) for c, x in cs])
    degrees = [-2] * ns + [-1] * d + [0] * ni + [1] * d + [2] * ns
    labels = (
        [("S~", k) for k in range(ns)] + [("A~", k) for k in range(d)] + [("T", k) for k in range(ni)]
        + [("A", k) for k in range(d)] + [("S", k) for k in range(ns)]
    )
    lie = FiniteLieAlgebra.from_constants(
        n, labels, {key: list(row.items()) for key, row in consts.items()}, grading=degrees, name=f"K({a.name})"
    )
    # grading element: V_{1,1} acts as the degree operator
    v11 = np.einsum("x,y,xyoz->oz", one_v, one_v, v).reshape(-1)
    (gcs,) = instr_coords(v11, sig * sig * one_den * one_den, lambda _: "V_(1,1)")
    g = [Fraction(0)] * n
    for c, x in gcs:
        g[off[0] + c] = x
    k = KantorAlgebra(a, lie, ins, off, sizes, tuple(g))
    if verify:
        bad = lie.verify_jacobi()
        if bad is not None:
            raise AssertionError(f"Jacobi identity fails in {lie.name} at basis triple {bad} ({[labels[i] for i in bad]})")
    return k


def kantor_of(c1: str, c2: str | None = None, verify: bool = False) -> KantorAlgebra:
    """kantor(C1 x C2), or kantor(H3(C1)) when c2 is None."""
    a = jordan_h3(c1) if c2 is None else tensor_structurable(c1, c2)
    return kantor(a, verify=verify)


def isotropic_inner_ideal(k: KantorAlgebra, I: Subspace) -> Subspace:
    """{(0, s) : s in I} inside K_2, for q_A-isotropic I."""
    q = albert_form(k.algebra)
    if I.ambient_dim != q.dim:
        raise ValueError("I must be a subspace of S")
    if I.dim == 0:
        raise ValueError("the zero subspace is not modeled as an inner ideal")
    if not q.is_isotropic(I):
        raise ValueError("I is not totally isotropic for the Albert form")
    return k.embed_subspace(2, I)


def half_plus_skew_inner_ideal(c1: CompositionAlgebra | str, k: KantorAlgebra | None = None) -> tuple[KantorAlgebra, Subspace]:
    """(C1 x e1 in K_1) + K_2 inside K(C1 x Cs)."""
    c1 = composition_algebra(c1) if isinstance(c1, str) else c1
    if k is None:
        k = kantor(tensor_structurable(c1, "Cs"))
    fac = k.algebra.factors
    if not fac or fac[1].name != "Cs":
        raise ValueError("second tensor factor must be Cs")
    e1, _ = cs_idempotents()
    vecs = []
    for i in range(c1.dim):
        v = [Fraction(0)] * (2 * c1.dim)
        v[2 * i], v[2 * i + 1] = e1
        vecs.append(k.embed(1, v))
    for r in range(k.sizes[2]):
        vecs.append(k.embed(2, [int(r == c) for c in range(k.sizes[2])]))
    return k, Subspace.span(vecs, k.lie.dim)


# ----- Jordan algebras -----

def _require_jordan(J: StructurableAlgebra):
    if not J.is_jordan:
        raise ValueError(f"{J.name} is not a Jordan algebra (identity involution, commutative product)")


def jordan_u_int(J: StructurableAlgebra, x: Sequence, y: Sequence) -> tuple[np.ndarray, int]:
    """U_{x,y} z = x(yz) + y(xz) - (xy)z as (integer matrix, denominator)."""
    _require_jordan(J)
    xi, dx = integerize([frac(t) for t in x])
    yi, dy = integerize([frac(t) for t in y])
    xv, yv = np.array(xi, dtype=np.int64), np.array(yi, dtype=np.int64)
    lx, ly = J.left_int(xv), J.left_int(yv)
    xy = J.left_int(xv) @ yv  # (xy) * dx dy sig
    lxy = J.left_int(xy)
    u = lx @ ly + ly @ lx - lxy
    return u, dx * dy * J.scale * J.scale


def jordan_U(J: StructurableAlgebra, x: Sequence) -> list[list[Fraction]]:
    """U_x = 2 L_x^2 - L_{x^2}."""
    u, den = jordan_u_int(J, x, x)
    return [[Fraction(int(v), den) for v in row] for row in u]


def is_jordan_inner_ideal(J: StructurableAlgebra, B: Subspace) -> bool:
    _require_jordan(J)
    rows = [integerize(list(r))[0] for r in B.basis]
    for i, x in enumerate(rows):
        for y in rows[i:]:
            u, _ = jordan_u_int(J, x, y)
            if B.rows_outside(u.T):
                return False
    return True


def h3_element(J: StructurableAlgebra, entries: dict) -> list[Fraction]:
    """Vector of H3(C) from {(i,i): real} and {(i,j): C-vector} for i<j."""
    c = J.h3_base
    d = c.dim
    v = [Fraction(0)] * J.dim
    for (i, j), val in entries.items():
        if i == j:
            v[i] = frac(val)
        else:
            s = _SLOTS.index((i, j))
            for k, x in enumerate(val):
                v[3 + s * d + k] = frac(x)
    return v


def h3_six_dim_inner_ideal(J: StructurableAlgebra) -> Subspace:
    """[[l, a, n e], [abar, 0, 0], [n ebar, 0, 0]] with a in e*Os, e = (1+ell)/2."""
    c = J.h3_base
    if c.name != "Os":
        raise ValueError("the construction uses an idempotent of the split octonions")
    d = c.dim
    e = [Fraction(0)] * d
    e[0] = e[4] = Fraction(1, 2)  # ell = (0, 1) of the last doubling, ell^2 = 1
    vecs = [h3_element(J, {(0, 0): 1}), h3_element(J, {(0, 2): e})]
    for k in range(d):
        ek = [Fraction(int(i == k)) for i in range(d)]
        a = c.product(e, ek)
        if any(a):
            vecs.append(h3_element(J, {(0, 1): a}))
    return Subspace.span(vecs, J.dim)


# ----- identification -----

_EXC_DIMS = {"e6": 78, "e7": 133, "e8": 248, "f4": 52, "g2": 14}


def identify_signature(dim: int, value: int) -> RealFormId:
    """Exceptional real form with the given dimension and Killing signature n+ - n-."""
    from .rootsys import RootSystemType

    for (name, label), val in EXCEPTIONAL_SIGNATURE.items():
        if _EXC_DIMS[name] == dim and val == value:
            return RealFormId(name, (label,))
    for name, d in _EXC_DIMS.items():
        if d == dim and value == -dim:
            return RealFormId("compact", (RootSystemType(name[0].upper(), int(name[1])),))
    raise ValueError(f"no exceptional real form with (dim, signature) = ({dim}, {value})")


def identify_real_form(L: FiniteLieAlgebra, sig: tuple[int, int, int] | None = None) -> RealFormId:
    sig = sig or killing_signature(L)
    if sig[2]:
        raise ValueError(f"Killing form is degenerate: {sig}")
    return identify_signature(L.dim, signature_value(sig))
