"""Structure-constant Lie algebras and exact checks on them.

Internally every algebra keeps a common denominator ``scale`` and the
integer matrices ``scale * ad(e_i)`` in scipy sparse form.  Scaling all
structure constants by one positive integer leaves the Jacobi identity,
spans of brackets and the sign pattern of the Killing form unchanged, so the
heavy checks run on integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Hashable, Sequence

import numpy as np
import scipy.sparse as sp

from .exact import (
    Subspace,
    frac,
    integerize,
    maxabs,
    nullspace,
    primitive,
    signature,
    solve,
)

_BOUND = 1 << 62

Vector = Sequence  # of int / Fraction


class FiniteLieAlgebra:
    """Finite-dimensional Lie algebra given by sparse structure constants.

    ``[e_i, e_j] = sum_k c[i, j][k] e_k``.
    """

    def __init__(
        self,
        dim: int,
        basis_labels: Sequence[Hashable],
        int_table: dict[tuple[int, int], dict[int, int]],
        scale: int = 1,
        grading: Sequence[int] | None = None,
        name: str = "",
    ):
        self.dim = dim
        self.basis_labels = tuple(basis_labels)
        self.scale = scale
        self.grading = tuple(grading) if grading is not None else None
        self.name = name
        self._int = {k: dict(v) for k, v in int_table.items() if v}
        if len(self.basis_labels) != dim:
            raise ValueError("one label per basis vector expected")
        for (i, j), row in self._int.items():
            other = self._int.get((j, i), {})
            if {k: -c for k, c in row.items()} != other:
                raise ValueError(f"structure constants not antisymmetric at ({i}, {j})")
        if self.grading is not None:
            for (i, j), row in self._int.items():
                for k in row:
                    if self.grading[k] != self.grading[i] + self.grading[j]:
                        raise ValueError(f"bracket of basis {i},{j} leaves the grading")

    @classmethod
    def from_int_table(cls, dim, labels, table, scale: int = 1, grading=None, name=""):
        return cls(dim, labels, table, scale=scale, grading=grading, name=name)

    @classmethod
    def from_constants(cls, dim, labels, constants: dict[tuple[int, int], Sequence[tuple[int, Fraction]]], grading=None, name=""):
        """Build from rational constants; (j,i) entries are filled by antisymmetry."""
        full: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), items in constants.items():
            for k, c in items:
                c = frac(c)
                if not c:
                    continue
                for key, val in (((i, j), c), ((j, i), -c)):
                    row = full.setdefault(key, {})
                    if k in row and row[k] != val:
                        raise ValueError(f"conflicting constants at {key}")
                    row[k] = val
        d = 1
        for row in full.values():
            for c in row.values():
                d = lcm(d, c.denominator)
        table = {key: {k: int(c * d) for k, c in row.items()} for key, row in full.items()}
        return cls(dim, labels, table, scale=d, grading=grading, name=name)

    def __repr__(self):
        return f"FiniteLieAlgebra({self.name or '?'}, dim={self.dim})"

    @cached_property
    def structure_constants(self) -> dict[tuple[int, int], list[tuple[int, Fraction]]]:
        d = self.scale
        return {key: sorted((k, Fraction(c, d)) for k, c in row.items()) for key, row in self._int.items()}

    def constant(self, i: int, j: int, k: int) -> Fraction:
        return Fraction(self._int.get((i, j), {}).get(k, 0), self.scale)

    def with_constant(self, i: int, j: int, k: int, c) -> "FiniteLieAlgebra":
        """Copy with one structure constant (and its antisymmetric partner) replaced."""
        c = frac(c)
        consts = {key: list(v) for key, v in self.structure_constants.items()}
        for key, val in (((i, j), c), ((j, i), -c)):
            row = dict(consts.get(key, []))
            row[k] = val
            consts[key] = list(row.items())
        return FiniteLieAlgebra.from_constants(self.dim, self.basis_labels, consts, name=self.name + "*")

    def triples_json(self) -> list[dict]:
        out = []
        for (i, j), row in sorted(self.structure_constants.items()):
            if i < j:
                for k, c in row:
                    out.append({"i": int(i), "j": int(j), "k": int(k), "c": f"{c.numerator}/{c.denominator}"})
        return out

    # ----- integer adjoint representation -----

    @cached_property
    def ad_basis(self) -> list[sp.csr_matrix]:
        """scale * ad(e_i) as integer sparse matrices."""
        n = self.dim
        rows: list[list[int]] = [[] for _ in range(n)]
        cols: list[list[int]] = [[] for _ in range(n)]
        vals: list[list[int]] = [[] for _ in range(n)]
        for (i, j), row in self._int.items():
            for k, c in row.items():
                rows[i].append(k)
                cols[i].append(j)
                vals[i].append(c)
        return [
            sp.csr_matrix((np.array(vals[i], dtype=np.int64), (rows[i], cols[i])), shape=(n, n), dtype=np.int64)
            for i in range(n)
        ]

    def unit(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def ad_int(self, x: Vector) -> tuple[sp.csr_matrix, int]:
        """(M, den) with ad(x) = M / den and M integral."""
        if len(x) != self.dim:
            raise ValueError(f"vector of length {len(x)} in an algebra of dimension {self.dim}")
        ints, dx = integerize([frac(t) for t in x])
        m = sp.csr_matrix((self.dim, self.dim), dtype=np.int64)
        big = max((abs(t) for t in ints), default=0)
        amax = max((maxabs(a.data) for a in self.ad_basis if a.nnz), default=0)
        if big * amax * self.dim >= _BOUND:
            raise OverflowError("coefficients too large for the integer adjoint path")
        for i, t in enumerate(ints):
            if t:
                m = m + t * self.ad_basis[i]
        m.eliminate_zeros()
        return m.tocsr(), dx * self.scale

    def ad(self, x: Vector) -> list[list[Fraction]]:
        m, d = self.ad_int(x)
        dense = m.toarray()
        return [[Fraction(int(v), d) for v in row] for row in dense]

    def bracket(self, x: Vector, y: Vector) -> list[Fraction]:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("dimension mismatch")
        out: dict[int, Fraction] = {}
        xs = {i: frac(a) for i, a in enumerate(x) if a}
        ys = {j: frac(b) for j, b in enumerate(y) if b}
        for i, a in xs.items():
            for j, b in ys.items():
                row = self._int.get((i, j))
                if row:
                    ab = a * b
                    for k, c in row.items():
                        out[k] = out.get(k, 0) + ab * c
        res = [Fraction(0)] * self.dim
        for k, v in out.items():
            res[k] = Fraction(v) / self.scale
        return res

    # ----- axioms -----

    def verify_jacobi(self) -> tuple[int, int, int] | None:
        """Exhaustive Jacobi check; None when it holds, else a failing triple.

        Checks ad[e_i, e_j] = [ad e_i, ad e_j] for all i, j, which is the
        Jacobi identity on every basis triple, as sparse integer products:
        A_i H - H kron(I, A_i) = H kron(A_i, I) with H = [A_0 ... A_{n-1}].
        """
        n = self.dim
        ads = self.ad_basis
        h = sp.hstack(ads, format="csr")
        eye = sp.identity(n, dtype=np.int64, format="csr")
        amax = max((maxabs(a.data) for a in ads if a.nnz), default=0)
        if amax * amax * n * 3 >= _BOUND:
            raise OverflowError("structure constants too large for the integer Jacobi check")
        for i in range(n):
            a = ads[i]
            lhs = a @ h - h @ sp.kron(eye, a, format="csr")
            rhs = h @ sp.kron(a, eye, format="csr")
            diff = (lhs - rhs).tocoo()
            diff.eliminate_zeros()
            if diff.nnz:
                col = int(diff.col[0])
                return (i, col // n, col % n)
        return None

    def verify_antisymmetry(self) -> bool:
        return all(
            {k: -c for k, c in row.items()} == self._int.get((j, i), {})
            for (i, j), row in self._int.items()
        )

    # ----- Killing form -----

    def killing_matrix_int(self) -> tuple[np.ndarray, int]:
        """(K, s) with kappa(e_i, e_j) = K[i, j] / s."""
        n = self.dim
        w = sp.vstack([a.reshape(1, n * n) for a in self.ad_basis], format="csr")
        wt = sp.vstack([a.T.tocsr().reshape(1, n * n) for a in self.ad_basis], format="csr")
        k = (w @ wt.T).toarray()
        return k, self.scale * self.scale

    def killing_form(self) -> "QuadraticForm":
        k, s = self.killing_matrix_int()
        return QuadraticForm(self.dim, tuple(tuple(Fraction(int(x), s) for x in row) for row in k))

    def graded_copy(self, degrees: Sequence[int], name: str | None = None) -> "FiniteLieAlgebra":
        return FiniteLieAlgebra(self.dim, self.basis_labels, self._int, self.scale, degrees, name or self.name)


@dataclass(frozen=True)
class QuadraticForm:
    dim: int
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = self.gram
        if len(g) != self.dim or any(len(r) != self.dim for r in g):
            raise ValueError("gram must be dim x dim")
        if any(g[i][j] != g[j][i] for i in range(self.dim) for j in range(i)):
            raise ValueError("gram must be symmetric")

    @classmethod
    def diagonal(cls, entries: Sequence) -> "QuadraticForm":
        n = len(entries)
        return cls(n, tuple(tuple(frac(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    def __call__(self, x: Vector) -> Fraction:
        return self.polar(x, x)

    def polar(self, x: Vector, y: Vector) -> Fraction:
        return sum((frac(a) * self.gram[i][j] * frac(b) for i, a in enumerate(x) if a for j, b in enumerate(y) if b), Fraction(0))

    def signature(self) -> tuple[int, int, int]:
        return signature(self.gram)

    def is_isotropic(self, sub: Subspace) -> bool:
        return all(self.polar(u, v) == 0 for a, u in enumerate(sub.basis) for v in sub.basis[a:])


@dataclass(frozen=True)
class Sl2Triple:
    e: tuple[Fraction, ...]
    h: tuple[Fraction, ...]
    f: tuple[Fraction, ...]


def killing_signature(L: FiniteLieAlgebra) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of the Killing form, exactly."""
    k, _ = L.killing_matrix_int()
    gram = {i: {} for i in range(L.dim)}
    nz = np.nonzero(k)
    for i, j in zip(*nz):
        gram[int(i)][int(j)] = int(k[i, j])
    return signature(gram)


def signature_value(sig: tuple[int, int, int]) -> int:
    """The usual label: n_plus - n_minus (dim p - dim k)."""
    return sig[0] - sig[1]


def bracket(L: FiniteLieAlgebra, x: Vector, y: Vector) -> list[Fraction]:
    return L.bracket(x, y)


def verify_jacobi(L: FiniteLieAlgebra):
    bad = L.verify_jacobi()
    return "ok" if bad is None else bad


# ----- subspace predicates -----

def _subspace(L: FiniteLieAlgebra, B) -> Subspace:
    if isinstance(B, Subspace):
        if B.ambient_dim != L.dim:
            raise ValueError("subspace lives in a different ambient space")
        return B
    return Subspace.span(B, L.dim)


def _int_rows(B: Subspace) -> list[list[int]]:
    return [list(primitive(integerize(list(r))[0])) for r in B.basis]


def _columns_in(B: Subspace, m: sp.spmatrix) -> bool:
    """Every column of the integer sparse matrix m lies in B."""
    m = sp.csc_matrix(m)
    m.eliminate_zeros()
    if m.nnz == 0:
        return True
    if B.dim == 0:
        return False
    r, d = B.int_basis()
    if r.dtype == object or maxabs(m.data) * max(d, maxabs(r)) * (B.dim + 1) >= _BOUND:
        cols = np.unique(m.nonzero()[1])
        dense = m[:, cols].toarray().astype(object).T
        return not B.rows_outside(dense)
    rs = sp.csr_matrix(r)
    piv = list(B.pivots)
    res = m * d - rs.T @ m[piv, :]
    res = sp.csc_matrix(res)
    res.eliminate_zeros()
    return res.nnz == 0


def is_abelian(L: FiniteLieAlgebra, B) -> bool:
    B = _subspace(L, B)
    rows = _int_rows(B)
    for a, x in enumerate(rows):
        m, _ = L.ad_int(x)
        for y in rows[a + 1:]:
            if np.any(m @ np.array(y, dtype=np.int64)):
                return False
    return True


def is_inner_ideal(L: FiniteLieAlgebra, B) -> bool:
    """[B, [B, L]] is contained in B, checked on basis pairs of B."""
    B = _subspace(L, B)
    if B.dim == 0:
        return True
    if B.dim == L.dim:
        return True
    ads = [L.ad_int(x)[0] for x in _int_rows(B)]
    for x in ads:
        for y in ads:
            if not _columns_in(B, x @ y):
                return False
    return True


def is_extremal(L: FiniteLieAlgebra, e: Vector) -> bool:
    if not any(e):
        raise ValueError("extremal elements are nonzero")
    m, _ = L.ad_int(e)
    return _columns_in(Subspace.span([e], L.dim), m @ m)


def is_point_space(L: FiniteLieAlgebra, P) -> bool:
    """Abelian subspace all of whose nonzero elements are extremal.

    With M_ij = ad p_i ad p_j on a basis p_1..p_r, write
    [x, [x, z]] = sum_ij t_i t_j M_ij z for x = sum t_i p_i.  If every x is
    extremal then M_ii z = a_i(z) p_i, and comparing the coefficients of t
    in (M_ii + t N + t^2 M_jj) z = g_t(z) (p_i + t p_j), N = M_ij + M_ji,
    forces N z = a_j(z) p_i + a_i(z) p_j.  Conversely these identities give
    [x, [x, z]] = (sum_j t_j a_j(z)) x for every x.  So the pairwise test
    below is equivalent to extremality of all of P.
    """
    P = _subspace(L, P)
    if P.dim == 0:
        raise ValueError("point spaces are nonzero")
    ps = [np.array(r, dtype=np.int64) for r in _int_rows(P)]
    ads = [L.ad_int(p)[0] for p in ps]
    for a in ads:
        for p in ps:
            if np.any(a @ p):
                return False
    piv = [int(np.flatnonzero(p)[0]) for p in ps]
    lead = [int(p[c]) for p, c in zip(ps, piv)]
    alpha = []
    for i, (a, p) in enumerate(zip(ads, ps)):
        mii = (a @ a).toarray().astype(object)
        al = mii[piv[i], :]
        if not np.array_equal(mii * lead[i], np.outer(p.astype(object), al)):
            return False
        alpha.append(al)
    r = len(ps)
    for i in range(r):
        for j in range(i + 1, r):
            n = (ads[i] @ ads[j] + ads[j] @ ads[i]).toarray().astype(object)
            lhs = n * (lead[i] * lead[j])
            rhs = np.outer(ps[i].astype(object), alpha[j]) * lead[i] + np.outer(ps[j].astype(object), alpha[i]) * lead[j]
            if not np.array_equal(lhs, rhs):
                return False
    return True


def ad_nilpotency_index(L: FiniteLieAlgebra, e: Vector) -> int:
    """Least k with (ad e)^k = 0."""
    if not any(e):
        raise ValueError("element must be nonzero")
    m, _ = L.ad_int(e)
    power = sp.identity(L.dim, dtype=np.int64, format="csr")
    for k in range(1, L.dim + 2):
        power = (power @ m).tocsr()
        power.eliminate_zeros()
        if power.nnz == 0:
            return k
        if maxabs(power.data) >= (1 << 40):
            power = sp.csr_matrix(_reduce_content(power))
    raise ValueError("element is not ad-nilpotent")


def _reduce_content(m: sp.csr_matrix) -> sp.csr_matrix:
    from math import gcd
    g = 0
    for x in m.data:
        g = gcd(g, int(x))
    out = m.copy()
    if g > 1:
        out.data = out.data // g
    return out


def _rows_of(m: sp.spmatrix, den: int = 1) -> list[dict[int, Fraction]]:
    m = sp.csr_matrix(m)
    out = []
    for i in range(m.shape[0]):
        lo, hi = m.indptr[i], m.indptr[i + 1]
        out.append({int(c): Fraction(int(v), den) for c, v in zip(m.indices[lo:hi], m.data[lo:hi]) if v})
    return out


def sl2_triple(L: FiniteLieAlgebra, e: Vector) -> Sl2Triple:
    """Embed a nonzero ad-nilpotent e into an sl2-triple by exact solves.

    z with [e,[e,z]] = -2e gives h = [e, z] in the image of ad e with
    [h, e] = 2e; then f = z + k with [e, k] = 0 and [h, f] = -2f.
    """
    ad_nilpotency_index(L, e)
    n = L.dim
    e = [frac(x) for x in e]
    me, de = L.ad_int(e)
    m2 = me @ me
    rhs = [-2 * x * de * de for x in e]
    z = solve(_rows_of(m2), rhs, n)
    if z is None:
        raise ArithmeticError("no z with [e,[e,z]] = -2e; e is not nilpotent in a semisimple algebra")
    h = L.bracket(e, z)
    mh, dh = L.ad_int(h)
    shifted = mh + 2 * dh * sp.identity(n, dtype=np.int64, format="csr")
    zi, dz = integerize(z)
    target = shifted @ np.array(zi, dtype=np.int64)
    rows = _rows_of(me) + _rows_of(shifted)
    rhs = [Fraction(0)] * n + [Fraction(-int(t), dz) for t in target]
    k = solve(rows, rhs, n)
    if k is None:
        raise ArithmeticError("no f completing the triple")
    f = [a + b for a, b in zip(z, k)]
    tri = Sl2Triple(tuple(e), tuple(h), tuple(f))
    if not _is_triple(L, tri):
        raise ArithmeticError("internal error: triple relations fail")
    return tri


def _is_triple(L: FiniteLieAlgebra, t: Sl2Triple) -> bool:
    return (
        L.bracket(t.h, t.e) == [2 * x for x in t.e]
        and L.bracket(t.e, t.f) == list(t.h)
        and L.bracket(t.h, t.f) == [-2 * x for x in t.f]
    )


def eigenspace_grading(L: FiniteLieAlgebra, h: Vector) -> dict[int, Subspace]:
    """Exact eigenspace decomposition of ad h with integer spectrum.

    Candidate eigenvalues come from a floating point eigensolve; each is then
    certified by an exact kernel computation, and the kernels must fill L.
    """
    n = L.dim
    mh, dh = L.ad_int(h)
    dense = mh.toarray().astype(np.float64) / dh
    ev = np.linalg.eigvals(dense)
    cands = sorted({int(round(x.real)) for x in ev})
    if np.any(np.abs(ev.imag) > 1e-6) or np.any(np.abs(ev.real - np.round(ev.real)) > 1e-6):
        raise ValueError("ad h has non-integer eigenvalues")
    spaces: dict[int, Subspace] = {}
    eye = sp.identity(n, dtype=np.int64, format="csr")
    for lam in cands:
        ker = nullspace(_rows_of(mh - lam * dh * eye), n)
        if ker:
            spaces[lam] = Subspace.span(ker, n)
    if sum(s.dim for s in spaces.values()) != n:
        raise ValueError("ad h is not diagonalizable over the rationals with integer spectrum")
    # grading compatibility: [ad h, ad u] = lam ad u for u in L_lam
    for lam, s in spaces.items():
        for row in _int_rows(s):
            mu, _ = L.ad_int(row)
            c = (mh @ mu - mu @ mh) - lam * dh * mu
            c.eliminate_zeros()
            if c.nnz:
                raise AssertionError("eigenspaces do not grade the algebra")
    return spaces
