"""Exact rational linear algebra on sparse rows.

Rows are dicts ``{column: Fraction}``.  Large generator sets are screened
modulo a prime with numpy first; every reported rank is then certified with
exact arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

PRIME = 2147483629  # largest prime below 2**31; products fit in int64

_F53 = 1 << 53
_I62 = 1 << 62


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact number: {x!r}")


def to_sparse(vec: Sequence) -> dict[int, Fraction]:
    return {i: frac(x) for i, x in enumerate(vec) if x}


def to_dense(row: dict, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in row.items():
        out[i] = x
    return out


def integerize(vec: Sequence) -> tuple[list[int], int]:
    """Return (ints, den) with vec == ints / den."""
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return [int(x * den) for x in vec], den


def primitive(ints: Sequence[int]) -> tuple[int, ...]:
    """Divide by the content and make the first nonzero entry positive."""
    g = 0
    first = 0
    for x in ints:
        if x:
            g = gcd(g, x)
            if not first:
                first = x
    if not g:
        return tuple(ints)
    if first < 0:
        g = -g
    return tuple(x // g for x in ints)


def maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def safe_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product.

    Uses float64 BLAS when every partial sum is provably below 2**53, int64
    when below 2**62, and Python integers otherwise.
    """
    inner = a.shape[-1]
    bound = maxabs(a) * maxabs(b) * max(inner, 1)
    if bound < _F53:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < _I62 and a.dtype != object and b.dtype != object:
        return a.astype(np.int64) @ b.astype(np.int64)
    return np.dot(a.astype(object), b.astype(object))


class Echelon:
    """Incrementally maintained fully reduced basis.

    Every stored row has a 1 in its pivot column and 0 in every other pivot
    column, so one pass over the pivots reduces any vector.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(v)
        for c in [c for c in v if c in self.rows]:
            a = v.get(c)
            if not a:
                continue
            for k, x in self.rows[c].items():
                y = v.get(k, 0) - a * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict[int, Fraction], pivot_limit: int | None = None) -> int | None:
        """Insert v; return its new pivot or None when v is dependent."""
        v = self.reduce(v)
        cols = [c for c in v if pivot_limit is None or c < pivot_limit]
        if not cols:
            return None
        p = min(cols)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        for row in self.rows.values():
            a = row.get(p)
            if a:
                for k, x in v.items():
                    y = row.get(k, 0) - a * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return p

    def contains(self, v: dict[int, Fraction]) -> bool:
        return not self.reduce(v)


def rref(rows: Iterable[dict[int, Fraction]], ncols: int) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Canonical reduced row echelon form of the span of ``rows``."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    basis = list(ech.rows.values())
    # a second pass in column order yields the canonical pivots
    out: list[dict[int, Fraction]] = []
    pivots: list[int] = []
    work = [dict(r) for r in basis]
    while work:
        c = min(min(r) for r in work)
        idx = min((i for i, r in enumerate(work) if c in r), key=lambda i: len(work[i]))
        piv = work.pop(idx)
        inv = 1 / piv[c]
        piv = {k: x * inv for k, x in piv.items()}
        for r in work + out:
            a = r.get(c)
            if a:
                for k, x in piv.items():
                    y = r.get(k, 0) - a * x
                    if y:
                        r[k] = y
                    else:
                        r.pop(k, None)
        work = [r for r in work if r]
        out.append(piv)
        pivots.append(c)
    return out, pivots


def independent_rows_modp(m: np.ndarray, p: int = PRIME) -> list[int]:
    """Greedy maximal set of rows independent modulo p (in row order).

    Rows independent mod p are independent over Q, so this is a certified
    lower bound for the rank; callers certify the upper bound exactly.
    """
    a = np.mod(np.asarray(m, dtype=object), p).astype(np.int64) if m.dtype == object else np.mod(m.astype(np.int64), p)
    order = np.arange(a.shape[0])
    chosen: list[int] = []
    while a.shape[0]:
        nz = np.flatnonzero(a.any(axis=1))
        if nz.size == 0:
            break
        i = nz[0]
        row = a[i]
        c = int(np.flatnonzero(row)[0])
        row = row * pow(int(row[c]), p - 2, p) % p
        chosen.append(int(order[i]))
        keep = nz[nz != i]
        a = a[keep]
        order = order[keep]
        if a.shape[0]:
            a = (a - np.outer(a[:, c], row) % p) % p
    return sorted(chosen)


@dataclass(frozen=True)
class Subspace:
    """Row space in reduced row echelon form over Q."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    def __post_init__(self):
        assert all(a < b for a, b in zip(self.pivots, self.pivots[1:]))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def from_sparse(cls, rows: Iterable[dict[int, Fraction]], n: int) -> "Subspace":
        out, piv = rref(rows, n)
        order = sorted(range(len(piv)), key=piv.__getitem__)
        return cls(n, tuple(tuple(to_dense(out[i], n)) for i in order), tuple(piv[i] for i in order))

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int | None = None) -> "Subspace":
        vecs = [list(v) for v in vectors]
        if n is None:
            if not vecs:
                raise ValueError("ambient dimension needed for an empty span")
            n = len(vecs[0])
        return cls.from_sparse((to_sparse(v) for v in vecs), n)

    @classmethod
    def span_int(cls, m: np.ndarray) -> "Subspace":
        """Row space of a large integer matrix, with modular screening."""
        n = m.shape[1]
        seen: dict[tuple, int] = {}
        for i, r in enumerate(m.tolist()):
            key = primitive(r)
            if any(key) and key not in seen:
                seen[key] = i
        keys = list(seen)
        if not keys:
            return cls.zero(n)
        dedup = np.array(keys, dtype=object if m.dtype == object else np.int64)
        sel = independent_rows_modp(dedup) if len(keys) > 64 else range(len(keys))
        sub = cls.from_sparse(({c: Fraction(x) for c, x in enumerate(keys[i]) if x} for i in sel), n)
        while True:
            bad = sub.rows_outside(dedup)
            if not bad:
                return sub
            extra = [{c: Fraction(x) for c, x in enumerate(keys[i]) if x} for i in bad]
            sub = cls.from_sparse([to_sparse(b) for b in sub.basis] + extra, n)

    @cached_property
    def _int_basis(self) -> tuple[np.ndarray, int]:
        d = 1
        for row in self.basis:
            for x in row:
                d = lcm(d, x.denominator)
        r = [[int(x * d) for x in row] for row in self.basis]
        big = d >= _I62 or any(abs(x) >= _I62 for row in r for x in row)
        arr = np.array(r, dtype=object if big else np.int64).reshape(len(r), self.ambient_dim)
        arr.flags.writeable = False
        return arr, d

    def int_basis(self) -> tuple[np.ndarray, int]:
        """(R, d) with R integer and basis == R / d."""
        return self._int_basis

    def rows_outside(self, vs: np.ndarray) -> list[int]:
        """Indices of the integer rows of vs that are not in this subspace."""
        if vs.shape[0] == 0:
            return []
        if self.dim == 0:
            return [int(i) for i in np.flatnonzero(np.asarray(vs != 0).any(axis=1))]
        r, d = self.int_basis()
        coords = vs[:, list(self.pivots)]
        rhs = safe_matmul(coords, r)
        lhs = vs.astype(object) * d if (d > 1 and maxabs(vs) * d >= _I62) else vs * d
        diff = np.asarray(lhs != rhs)
        return [int(i) for i in np.flatnonzero(diff.any(axis=1))]

    def contains(self, v: Sequence) -> bool:
        v = [frac(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            a = v[p]
            if a:
                v = [x - a * y for x, y in zip(v, row)]
        return not any(v)

    def contains_int_columns(self, cols: np.ndarray) -> bool:
        """True when every column of the integer matrix lies in the span."""
        return not self.rows_outside(np.asarray(cols).T)

    def coords(self, v: Sequence) -> list[Fraction]:
        """Coordinates of v in the echelon basis; raises if v is outside."""
        v = [frac(x) for x in v]
        c = [v[p] for p in self.pivots]
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return c

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.basis, self.pivots) == (other.ambient_dim, other.basis, other.pivots)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))


def solve(rows: Sequence[dict[int, Fraction]], rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One solution x of A x = b (free variables zero), or None."""
    ech = Echelon(ncols + 1)
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = frac(b)
        red = ech.reduce(row)
        if not red:
            continue
        if all(c == ncols for c in red):
            return None
        ech.add(red, pivot_limit=ncols)
    x = [Fraction(0)] * ncols
    for p, row in ech.rows.items():
        x[p] = row.get(ncols, Fraction(0))
    return x


def nullspace(rows: Sequence[dict[int, Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}."""
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    free = [c for c in range(ncols) if c not in ech.rows]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for p, row in ech.rows.items():
            a = row.get(f)
            if a:
                x[p] = -a
        basis.append(x)
    return basis


def rank(rows: Iterable[dict[int, Fraction]], ncols: int) -> int:
    ech = Echelon(ncols)
    for r in rows:
        ech.add(r)
    return len(ech)


def signature(gram) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric matrix by congruence.

    ``gram`` may be a dense square sequence or a dict-of-dicts.  Pivots on a
    nonzero diagonal entry; when only off-diagonal entries remain in a row,
    row and column i absorb row and column j (a congruence) to create one.
    """
    if isinstance(gram, dict):
        s = {i: {j: frac(x) for j, x in row.items() if x} for i, row in gram.items()}
        n = len(s)
    else:
        n = len(gram)
        s = {i: {} for i in range(n)}
        for i in range(n):
            for j in range(n):
                x = gram[i][j]
                if x:
                    s[i][j] = frac(x)
    for i in s:
        for j, x in s[i].items():
            if s[j].get(i) != x:
                raise ValueError("matrix is not symmetric")
    pos = neg = zero = 0
    active = set(s)
    while active:
        diag = [i for i in active if s[i].get(i)]
        if diag:
            i = min(diag, key=lambda k: (len(s[k]), k))
            d = s[i][i]
            if d > 0:
                pos += 1
            else:
                neg += 1
            nb = [(j, x) for j, x in s[i].items() if j != i]
            for j, xj in nb:
                f = xj / d
                rj = s[j]
                for k, xk in nb:
                    y = rj.get(k, 0) - f * xk
                    if y:
                        rj[k] = y
                    else:
                        rj.pop(k, None)
                rj.pop(i, None)
            active.discard(i)
            del s[i]
            continue
        i = min(active, key=lambda k: (len(s[k]), k))
        if not s[i]:
            zero += 1
            active.discard(i)
            del s[i]
            continue
        j = min(s[i])
        # congruence: row/col i += row/col j
        rj = dict(s[j])
        sii = 2 * s[i][j] + s[j].get(j, 0)
        for k, x in rj.items():
            if k in (i, j):
                continue
            y = s[i].get(k, 0) + x
            if y:
                s[i][k] = y
                s[k][i] = y
            else:
                s[i].pop(k, None)
                s[k].pop(i, None)
        y = s[i][j] + s[j].get(j, 0)
        if y:
            s[i][j] = y
            s[j][i] = y
        else:
            s[i].pop(j, None)
            s[j].pop(i, None)
        s[i][i] = sii
    return pos, neg, zero
