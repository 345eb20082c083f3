"""Exact integer linear algebra: sparse matrices, Smith normal form, lattices.

Everything is done with Python integers, so there is no overflow.  Boundary
matrices are sparse with +-1 entries; the eliminations below pick unit
pivots of low Markowitz cost first and only fall back to gcd steps (or a
dense Smith reduction) on what remains.
"""

from __future__ import annotations

from dataclasses import dataclass
import heapq
from math import gcd
from typing import Iterable, Sequence

Vector = dict  # sparse vector: {index: nonzero int}


class SparseMatrix:
    """Column-major sparse integer matrix."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = [dict(c) for c in cols]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> SparseMatrix:
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        cols = [{} for _ in range(ncols)]
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v:
                    cols[j][i] = int(v)
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[dict]) -> SparseMatrix:
        cols = [{k: v for k, v in c.items() if v} for c in columns]
        return cls(nrows, len(cols), cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def transpose(self) -> SparseMatrix:
        cols = [{} for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                cols[i][j] = v
        return SparseMatrix(self.ncols, self.nrows, cols)

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse vector."""
        out: dict[int, int] = {}
        for j, x in vec.items():
            if x:
                for i, v in self.cols[j].items():
                    out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __neg__(self):
        return SparseMatrix(self.nrows, self.ncols, [{i: -v for i, v in c.items()} for c in self.cols])

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                c[i] = c.get(i, 0) + v
            cols.append({i: v for i, v in c.items() if v})
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}
            for a, b in zip(self.cols, other.cols))

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def hstack(self, other: SparseMatrix) -> SparseMatrix:
        if self.nrows != other.nrows:
            raise ValueError("row mismatch")
        return SparseMatrix(self.nrows, self.ncols + other.ncols, self.cols + other.cols)

    def mod(self, q: int) -> SparseMatrix:
        return SparseMatrix(self.nrows, self.ncols,
                            [{i: v % q for i, v in c.items() if v % q} for c in self.cols])

    def triplets(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, v) for j, c in enumerate(self.cols) for i, v in c.items())

    def to_triplet_text(self) -> str:
        lines = [f"# shape {self.nrows} {self.ncols} nnz {self.nnz()}"]
        lines += [f"{i} {j} {v}" for i, j, v in self.triplets()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplet_text(cls, text: str) -> SparseMatrix:
        nrows = ncols = None
        entries = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if parts and parts[0] == "shape":
                    nrows, ncols = int(parts[1]), int(parts[2])
                continue
            i, j, v = map(int, line.split())
            entries.append((i, j, v))
        if nrows is None:
            raise ValueError("missing shape header")
        m = cls(nrows, ncols)
        for i, j, v in entries:
            m.cols[j][i] = m.cols[j].get(i, 0) + v
        return m

    def to_json(self) -> dict:
        return {"shape": [self.nrows, self.ncols], "entries": [list(t) for t in self.triplets()]}

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


# ---------------------------------------------------------------- dense Smith form


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if inner else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SmithDecomposition:
    """U A V = D with U, V unimodular and diag(D) a divisibility chain.

    ``U_inv`` is U^{-1}; its columns express the new row basis in the old one.
    """

    U: list[list[int]]
    V: list[list[int]]
    D: list[list[int]]
    U_inv: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith(A: Sequence[Sequence[int]], ncols: int | None = None, transforms: bool = True) -> SmithDecomposition:
    """Smith normal form of a dense integer matrix.

    Pivots are the smallest nonzero entries of the remaining block, which
    keeps coefficient growth down on +-1 matrices.
    """
    m = len(A)
    n = (len(A[0]) if m else 0) if ncols is None else ncols
    D = [list(map(int, r)) for r in A]
    U = identity(m) if transforms else None
    Ui = identity(m) if transforms else None
    V = identity(n) if transforms else None

    def row_add(dst, src, c, start):
        # row_dst += c * row_src
        rd, rs = D[dst], D[src]
        for j in range(start, n):
            if rs[j]:
                rd[j] += c * rs[j]
        if transforms:
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] += c * us[j]
            for r in Ui:
                if r[dst]:
                    r[src] -= c * r[dst]

    def col_add(dst, src, c, start):
        # col_dst += c * col_src
        for i in range(start, m):
            r = D[i]
            if r[src]:
                r[dst] += c * r[src]
        if transforms:
            for r in V:
                if r[src]:
                    r[dst] += c * r[src]

    def swap_rows(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in D:
            r[i], r[j] = r[j], r[i]
        if transforms:
            for r in V:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p), t)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p), t)
                    if D[t][j]:
                        clean = False
            if not clean:
                best = None
                for i in range(t, m):
                    v = D[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t, n):
                    v = D[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            if abs(p) != 1:
                bad = None
                for i in range(t + 1, m):
                    row = D[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    row_add(t, bad, 1, t)
                    continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
                for r in Ui:
                    r[t] = -r[t]
        t += 1
    return SmithDecomposition(U, V, D, Ui)


def canonical_invariant_factors(orders: Iterable[int]) -> list[int]:
    """Invariant factors (each >= 2, d_i | d_{i+1}) of a direct sum of cyclic groups."""
    ds = [abs(int(d)) for d in orders if abs(int(d)) != 1]
    free = sum(1 for d in ds if d == 0)
    ds = [d for d in ds if d]
    # repeatedly replace pairs by (gcd, lcm) until the chain divides
    changed = True
    while changed:
        changed = False
        ds.sort()
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                a, b = ds[i], ds[j]
                if b % a:
                    g = gcd(a, b)
                    ds[i], ds[j] = g, a * b // g
                    changed = True
    ds = sorted(d for d in ds if d != 1)
    return ds + [0] * free


# ---------------------------------------------------------------- sparse Schur elimination


def _schur_eliminate(M: SparseMatrix, modulus: int = 0):
    """Eliminate pivots from a copy of M.

    Over F_p every nonzero entry is a pivot and nothing remains.  Over Z a
    pivot p is used when it divides every entry of its row and column; then
    the cokernel splits off a Z/p summand and the elimination is exact.
    Units come first, then the smallest such entries.  Returns the list of
    pivot values and the remaining block as a dense matrix.
    """
    rows: dict[int, dict[int, int]] = {}
    colsets: dict[int, set[int]] = {}
    for j, c in enumerate(M.cols):
        for i, v in c.items():
            if modulus:
                v %= modulus
            if v:
                rows.setdefault(i, {})[j] = v
                colsets.setdefault(j, set()).add(i)
    pivots: list[int] = []

    def is_unit(v):
        return v != 0 if modulus else v in (1, -1)

    # lazily updated heap of (column weight, column) for unit-pivot search
    heap = [(len(rs), j) for j, rs in colsets.items()]
    heapq.heapify(heap)
    no_unit: set[int] = set()

    def find_unit():
        while heap:
            w, j = heap[0]
            rs = colsets.get(j)
            if rs is None or len(rs) != w:
                heapq.heappop(heap)
                if rs is not None and j not in no_unit:
                    heapq.heappush(heap, (len(rs), j))
                continue
            cand = None
            for i in rs:
                if is_unit(rows[i][j]) and (cand is None or len(rows[i]) < len(rows[cand])):
                    cand = i
            heapq.heappop(heap)
            if cand is not None:
                return (w, cand, j)
            no_unit.add(j)
        return None

    def find_dividing():
        by_abs: dict[int, list] = {}
        for i, r in rows.items():
            for j, v in r.items():
                by_abs.setdefault(abs(v), []).append((len(r) * len(colsets[j]), i, j))
        for a in sorted(by_abs):
            for _, i, j in sorted(by_abs[a]):
                if all(v % a == 0 for v in rows[i].values()) and \
                        all(rows[k][j] % a == 0 for k in colsets[j]):
                    return (0, i, j)
        return None

    while colsets:
        best = find_unit()
        if best is None and not modulus:
            best = find_dividing()
        if best is None:
            break
        _, r, c = best
        prow = rows.pop(r)
        pv = prow[c]
        others = [i for i in colsets[c] if i != r]
        for j in prow:
            colsets[j].discard(r)
        for i in others:
            row = rows[i]
            if modulus:
                f = row[c] * pow(pv, -1, modulus) % modulus
            else:
                f = row[c] // pv
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if modulus:
                    nv %= modulus
                if nv:
                    if j not in row:
                        colsets[j].add(i)
                    row[j] = nv
                elif j in row:
                    del row[j]
                    colsets[j].discard(i)
            if not row:
                del rows[i]
        for j in prow:
            if not colsets[j]:
                del colsets[j]
        colsets.pop(c, None)
        for j in prow:
            if j in colsets:
                no_unit.discard(j)
                heapq.heappush(heap, (len(colsets[j]), j))
        pivots.append(abs(pv))
    if not rows:
        return pivots, []
    rlist = sorted(rows)
    clist = sorted(colsets)
    cpos = {j: k for k, j in enumerate(clist)}
    dense = []
    for i in rlist:
        r = [0] * len(clist)
        for j, v in rows[i].items():
            r[cpos[j]] = v
        dense.append(r)
    return pivots, dense


def invariant_factors(M: SparseMatrix) -> list[int]:
    """Nonzero Smith diagonal entries of M (ones included), ascending."""
    pivots, rest = _schur_eliminate(M)
    if rest:
        pivots = pivots + smith(rest, transforms=False).invariant_factors
    torsion = canonical_invariant_factors(pivots)
    return [1] * (len(pivots) - len(torsion)) + torsion


def rank(M: SparseMatrix) -> int:
    """Rank over Q."""
    pivots, rest = _schur_eliminate(M)
    if rest:
        return len(pivots) + smith(rest, transforms=False).rank
    return len(pivots)


def rank_mod_p(M: SparseMatrix, p: int) -> int:
    pivots, rest = _schur_eliminate(M, p)
    assert not rest
    return len(pivots)


# ---------------------------------------------------------------- column echelon lattices


class ColumnEchelon:
    """Column reduction of a list of sparse integer (or mod-p) vectors.

    Produces an echelon basis of the lattice (or F_p-span) the vectors
    generate: pivot k has a nonzero entry at row ``pivot_rows[k]`` and every
    later pivot vector vanishes there.  With ``track=True`` each basis vector
    and each kernel vector is also expressed in the original columns, and
    those combinations come from unimodular column operations, so the
    kernel vectors form a basis of the full integer kernel.
    """

    def __init__(self, columns: Iterable[dict], modulus: int = 0, track: bool = False):
        self.modulus = modulus
        self.track = track
        cols: dict[int, dict] = {}
        trans: dict[int, dict] = {}
        self.kernel: list[dict] = []
        self.ncols = 0
        q = modulus
        for k, c in enumerate(columns):
            self.ncols += 1
            v = {i: (x % q if q else x) for i, x in c.items()}
            v = {i: x for i, x in v.items() if x}
            if v:
                cols[k] = v
                if track:
                    trans[k] = {k: 1}
            elif track:
                self.kernel.append({k: 1})
        row_index: dict[int, set[int]] = {}
        for k, v in cols.items():
            for i in v:
                row_index.setdefault(i, set()).add(k)
        self.pivot_rows: list[int] = []
        self.basis: list[dict] = []
        self.basis_transforms: list[dict] = []

        def axpy(dst: int, src: int, f: int):
            # cols[dst] += f * cols[src]
            d = cols[dst]
            for i, x in cols[src].items():
                nv = d.get(i, 0) + f * x
                if q:
                    nv %= q
                if nv:
                    if i not in d:
                        row_index.setdefault(i, set()).add(dst)
                    d[i] = nv
                elif i in d:
                    del d[i]
                    row_index[i].discard(dst)
            if track:
                td = trans[dst]
                for i, x in trans[src].items():
                    nv = td.get(i, 0) + f * x
                    if nv:
                        td[i] = nv
                    else:
                        td.pop(i, None)

        def retire_if_zero(k: int):
            if not cols[k]:
                del cols[k]
                if track:
                    self.kernel.append(trans.pop(k))

        def is_unit(x):
            return x != 0 if q else x in (1, -1)

        while cols:
            # pick the pivot row/column of least fill, preferring unit entries
            best = None
            for i, ks in row_index.items():
                if not ks:
                    continue
                if best is not None and len(ks) >= best[0]:
                    continue
                unit = None
                for k in ks:
                    if is_unit(cols[k][i]) and (unit is None or len(cols[k]) < len(cols[unit])):
                        unit = k
                if unit is not None:
                    best = (len(ks), i, unit)
                    if len(ks) == 1:
                        break
            if best is None:
                # no unit pivot anywhere (Z only): gcd-reduce the sparsest row
                i = min((r for r, ks in row_index.items() if ks), key=lambda r: len(row_index[r]))
                while len(row_index[i]) > 1:
                    ks = sorted(row_index[i], key=lambda k: (abs(cols[k][i]), k))
                    j = ks[0]
                    pj = cols[j][i]
                    for k in ks[1:]:
                        axpy(k, j, -(cols[k][i] // pj))
                        retire_if_zero(k)
                (j,) = tuple(row_index[i])
            else:
                _, i, j = best
                pj = cols[j][i]
                inv = pow(pj, -1, q) if q else pj
                for k in list(row_index[i]):
                    if k == j:
                        continue
                    f = -cols[k][i] * inv
                    axpy(k, j, f % q if q else f)
                    retire_if_zero(k)
            vec = cols.pop(j)
            for r in vec:
                row_index[r].discard(j)
            self.pivot_rows.append(i)
            self.basis.append(vec)
            if track:
                self.basis_transforms.append(trans.pop(j))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, b: dict) -> tuple[dict, dict]:
        """Reduce b by the basis; returns (remainder, coefficients on basis vectors)."""
        q = self.modulus
        rem = {i: (x % q if q else x) for i, x in b.items()}
        rem = {i: x for i, x in rem.items() if x}
        coeffs = {}
        for k, (r, vec) in enumerate(zip(self.pivot_rows, self.basis)):
            x = rem.get(r, 0)
            if not x:
                continue
            p = vec[r]
            if q:
                c = x * pow(p, -1, q) % q
            else:
                c = x // p
                if c == 0:
                    continue
            coeffs[k] = c
            for i, y in vec.items():
                nv = rem.get(i, 0) - c * y
                if q:
                    nv %= q
                if nv:
                    rem[i] = nv
                else:
                    rem.pop(i, None)
        return rem, coeffs

    def contains(self, b: dict) -> bool:
        rem, _ = self.reduce(b)
        return not rem

    def solve(self, b: dict) -> dict | None:
        """Coefficients x on the original columns with sum x_k col_k = b, or None."""
        if not self.track:
            raise ValueError("solve() needs track=True")
        rem, coeffs = self.reduce(b)
        if rem:
            return None
        q = self.modulus
        out: dict[int, int] = {}
        for k, c in coeffs.items():
            for j, t in self.basis_transforms[k].items():
                out[j] = out.get(j, 0) + c * t
        if q:
            out = {j: v % q for j, v in out.items()}
        return {j: v for j, v in out.items() if v}


def kernel_basis(M: SparseMatrix, modulus: int = 0) -> list[dict]:
    """Basis of the (integer or mod-p) kernel of M as sparse vectors."""
    return ColumnEchelon(M.cols, modulus=modulus, track=True).kernel


def lattice_equal(a: Iterable[dict], b: Iterable[dict]) -> bool:
    a, b = list(a), list(b)
    ea, eb = ColumnEchelon(a), ColumnEchelon(b)
    return all(eb.contains(v) for v in a) and all(ea.contains(v) for v in b)


# ---------------------------------------------------------------- modular solving


def solve_mod(A: Sequence[Sequence[int]], b: Sequence[int], q: int, ncols: int | None = None):
    """A solution x of A x = b (mod q), or None; dense, via Smith form over Z."""
    m = len(A)
    n = (len(A[0]) if m else 0) if ncols is None else ncols
    snf = smith(A, ncols=n)
    ub = [sum(u * x for u, x in zip(row, b)) for row in snf.U]
    y = [0] * n
    for i in range(m):
        d = snf.D[i][i] if i < n else 0
        target = ub[i] % q
        if d == 0:
            if target:
                return None
            continue
        g = gcd(d, q)
        if target % g:
            return None
        # d y = target mod q
        dq, tq, qq = d // g, target // g, q // g
        y[i] = (tq * pow(dq, -1, qq)) % qq if qq > 1 else 0
    x = [sum(snf.V[r][c] * y[c] for c in range(n)) % q for r in range(n)]
    return x


def kernel_mod(A: Sequence[Sequence[int]], q: int, ncols: int | None = None) -> list[list[int]]:
    """Generators of {x in Z_q^n : A x = 0 mod q}."""
    m = len(A)
    n = (len(A[0]) if m else 0) if ncols is None else ncols
    snf = smith(A, ncols=n)
    gens = []
    for c in range(n):
        d = snf.D[c][c] if c < m else 0
        scale = q // gcd(d, q) if d else 1
        if scale % q == 0:
            continue
        vec = [(snf.V[r][c] * scale) % q for r in range(n)]
        if any(vec):
            gens.append(vec)
    return gens
