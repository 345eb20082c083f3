"""Tuple bases, boundary matrices and chain maps of the rack/quandle complexes.

Five complexes are built on n-tuples of elements of a finite quandle:

* ``R``        every n-tuple,
* ``D``        degenerate tuples (x_i = x_{i+1} for some i),
* ``Q``        non-degenerate tuples, with the boundary projected to them,
* ``DD``       tuples with x_1 = x_2,
* ``DoverDD``  degenerate tuples with x_1 != x_2 (the quotient D/DD).

The boundary of (x_1, ..., x_n) is
sum_{i=2}^n (-1)^i [(.., x_i omitted, ..) - (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, .., x_n)].
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import BadOrbitTuple, DegreeTooLarge, KindUnavailable
from .linalg import SparseMatrix
from .quandles import FiniteQuandle, QuandleHom, orbits

DEGREE_CAP = 10**7


class Kind(str, enum.Enum):
    R = "R"
    D = "D"
    Q = "Q"
    DD = "DD"
    DoverDD = "DoverDD"

    @classmethod
    def parse(cls, value) -> Kind:
        if isinstance(value, Kind):
            return value
        text = str(value).strip()
        aliases = {"D/DD": "DoverDD", "DOVERDD": "DoverDD", "D_OVER_DD": "DoverDD"}
        text = aliases.get(text.upper(), text)
        for k in cls:
            if k.value.upper() == text.upper():
                return k
        raise ValueError(f"unknown complex kind {value!r}")


def is_degenerate(t: tuple) -> bool:
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


def _member(kind: Kind, t: tuple) -> bool:
    if kind is Kind.R:
        return True
    if kind is Kind.Q:
        return not is_degenerate(t)
    if kind is Kind.D:
        return is_degenerate(t)
    if kind is Kind.DD:
        return len(t) >= 2 and t[0] == t[1]
    return is_degenerate(t) and t[0] != t[1]


def degenerate_count(m: int, n: int) -> int:
    """Number of degenerate n-tuples via a_1 = 0, a_n = (m-1) a_{n-1} + m^{n-1}."""
    a = 0
    for k in range(2, n + 1):
        a = (m - 1) * a + m ** (k - 1)
    return a if n >= 1 else 0


def nondegenerate_count(m: int, n: int) -> int:
    return m * (m - 1) ** (n - 1) if n >= 1 else 1


@dataclass(frozen=True, eq=False)
class TupleBasis:
    quandle: FiniteQuandle
    degree: int
    kind: Kind
    tuples: tuple
    index_of: dict = field(repr=False)

    def __len__(self):
        return len(self.tuples)

    def __contains__(self, t):
        return t in self.index_of

    def chain(self, terms: Mapping[tuple, int] | Iterable[tuple[tuple, int]]) -> Chain:
        return Chain.from_terms(self, terms)


def _check_kind(X: FiniteQuandle, kind: Kind) -> None:
    if kind is not Kind.R and X.is_rack:
        raise KindUnavailable(f"complex {kind.value} needs a quandle, {X.label} is only a rack")


def _degenerate_tuples(m: int, n: int) -> list[tuple]:
    """Degenerate n-tuples in lexicographic order, grouped by first entry.

    A degenerate tuple (x, y, ...) either has y = x (any tail) or a
    degenerate tail starting with y.
    """
    blocks: list[list[tuple]] = [[] for _ in range(m)]
    for k in range(2, n + 1):
        full = [[(y,) + r for r in itertools.product(range(m), repeat=k - 2)] for y in range(m)]
        new = []
        for x in range(m):
            out: list[tuple] = []
            for y in range(m):
                out += [(x,) + t for t in (full[y] if y == x else blocks[y])]
            new.append(out)
        blocks = new
    return [t for b in blocks for t in b]


@lru_cache(maxsize=256)
def _basis_cached(X: FiniteQuandle, n: int, kind: Kind) -> TupleBasis:
    m = X.size
    if kind is Kind.R:
        tuples = list(itertools.product(range(m), repeat=n))
    elif kind is Kind.DD:
        tuples = [(x, x) + r for x in range(m) for r in itertools.product(range(m), repeat=n - 2)] \
            if n >= 2 else []
    elif kind is Kind.Q:
        # non-degenerate tuples grow directly in lexicographic order
        tuples = [()] if n == 0 else [(x,) for x in range(m)]
        for _ in range(max(n - 1, 0)):
            tuples = [t + (y,) for t in tuples for y in range(m) if y != t[-1]]
    else:
        tuples = _degenerate_tuples(m, n)
        if kind is Kind.DoverDD:
            tuples = [t for t in tuples if t[0] != t[1]]
    tuples = tuple(tuples)
    return TupleBasis(X, n, kind, tuples, {t: i for i, t in enumerate(tuples)})


def basis(X: FiniteQuandle, n: int, kind: Kind | str = Kind.R, force: bool = False) -> TupleBasis:
    """Lexicographically ordered basis of C_n of the given kind."""
    kind = Kind.parse(kind)
    if n < 0:
        raise ValueError("degree must be non-negative")
    _check_kind(X, kind)
    if X.size**n > DEGREE_CAP and not force:
        raise DegreeTooLarge(f"{X.size}^{n} generators exceed the cap of {DEGREE_CAP}")
    return _basis_cached(X, n, kind)


def boundary_terms(X: FiniteQuandle, t: tuple) -> dict[tuple, int]:
    """The rack boundary of a single tuple as {tuple: coefficient}."""
    n = len(t)
    out: dict[tuple, int] = {}
    if n <= 1:
        return out
    table = X.table
    for i in range(1, n):  # 0-based position of x_i for i = 2..n
        sign = 1 if (i + 1) % 2 == 0 else -1
        xi = t[i]
        a = t[:i] + t[i + 1:]
        b = tuple(table[x][xi] for x in t[:i]) + t[i + 1:]
        out[a] = out.get(a, 0) + sign
        out[b] = out.get(b, 0) - sign
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    degree: int
    kind: Kind
    source: TupleBasis
    target: TupleBasis
    matrix: SparseMatrix

    @property
    def shape(self):
        return self.matrix.shape


@lru_cache(maxsize=256)
def _boundary_cached(X: FiniteQuandle, n: int, kind: Kind) -> BoundaryMatrix:
    src = _basis_cached(X, n, kind)
    tgt = _basis_cached(X, n - 1, kind) if n >= 1 else TupleBasis(X, -1, kind, (), {})
    idx = tgt.index_of
    cols = []
    for t in src.tuples:
        col = {}
        for s, c in boundary_terms(X, t).items():
            j = idx.get(s)
            if j is not None:  # Q and DoverDD drop the outputs outside the basis
                col[j] = col.get(j, 0) + c
        cols.append({k: v for k, v in col.items() if v})
    return BoundaryMatrix(n, kind, src, tgt, SparseMatrix(len(tgt), len(src), cols))


def boundary(X: FiniteQuandle, n: int, kind: Kind | str = Kind.R, force: bool = False) -> BoundaryMatrix:
    """Matrix of the boundary C_n -> C_{n-1} of the given kind (zero for n <= 1)."""
    kind = Kind.parse(kind)
    basis(X, n, kind, force=force)
    return _boundary_cached(X, n, kind)


class Chain:
    """A sparse integer combination of basis tuples."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: TupleBasis, coeffs: Mapping[int, int] | None = None):
        self.basis = basis
        self.coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def from_terms(cls, basis: TupleBasis, terms) -> Chain:
        if isinstance(terms, Mapping):
            terms = terms.items()
        coeffs: dict[int, int] = {}
        for t, c in terms:
            t = tuple(t)
            if t not in basis.index_of:
                raise KeyError(f"{t} is not in the {basis.kind.value} basis of degree {basis.degree}")
            i = basis.index_of[t]
            coeffs[i] = coeffs.get(i, 0) + c
        return cls(basis, coeffs)

    def terms(self) -> dict[tuple, int]:
        return {self.basis.tuples[i]: c for i, c in sorted(self.coeffs.items())}

    def is_zero(self) -> bool:
        return not self.coeffs

    def boundary(self) -> Chain:
        B = boundary(self.basis.quandle, self.basis.degree, self.basis.kind)
        return Chain(B.target, B.matrix.apply(self.coeffs))

    def is_cycle(self) -> bool:
        return self.boundary().is_zero()

    def __add__(self, other: Chain) -> Chain:
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Chain(self.basis, out)

    def __neg__(self):
        return Chain(self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c: int) -> Chain:
        return Chain(self.basis, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, Chain) and self.basis is other.basis and self.coeffs == other.coeffs

    def __repr__(self):
        parts = [f"{c:+d}{t}" for t, c in self.terms().items()]
        return "Chain(" + (" ".join(parts) if parts else "0") + ")"


def tuple_map_matrix(src: TupleBasis, tgt: TupleBasis, fn) -> SparseMatrix:
    """Matrix sending each source tuple t to fn(t) (a tuple, or None for zero)."""
    cols = []
    for t in src.tuples:
        s = fn(t)
        j = tgt.index_of.get(s) if s is not None else None
        cols.append({j: 1} if j is not None else {})
    return SparseMatrix(len(tgt), len(src), cols)


def induced_chain_map(f: QuandleHom, n: int, kind: Kind | str = Kind.R) -> SparseMatrix:
    """f_# on C_n; images falling outside the target basis (degenerate for Q) are zero."""
    kind = Kind.parse(kind)
    src = basis(f.source, n, kind)
    tgt = basis(f.target, n, kind)
    m = f.map
    return tuple_map_matrix(src, tgt, lambda t: tuple(m[x] for x in t))


def inclusion(X: FiniteQuandle, n: int, sub: Kind | str, sup: Kind | str) -> SparseMatrix:
    """Inclusion of basis ``sub`` into basis ``sup`` (e.g. D into R, DD into D)."""
    a, b = basis(X, n, sub), basis(X, n, sup)
    return tuple_map_matrix(a, b, lambda t: t)


def projection(X: FiniteQuandle, n: int, sup: Kind | str, quotient: Kind | str) -> SparseMatrix:
    """Projection of ``sup`` onto the quotient basis (R onto Q, D onto DoverDD)."""
    a, b = basis(X, n, sup), basis(X, n, quotient)
    return tuple_map_matrix(a, b, lambda t: t if t in b.index_of else None)


def drop_second_map(X: FiniteQuandle, n: int) -> SparseMatrix:
    """The degree -1 map C_n^DD -> C_{n-1}^R, (x, x, x_3, ..., x_n) -> (x, x_3, ..., x_n)."""
    if n < 2:
        raise ValueError("defined for n >= 2")
    return tuple_map_matrix(basis(X, n, Kind.DD), basis(X, n - 1, Kind.R), lambda t: t[:1] + t[2:])


def dd_connecting_map(X: FiniteQuandle, n: int) -> SparseMatrix:
    """The degree -1 map C_n^{D/DD} -> C_{n-1}^DD: the DD part of the D-boundary.

    Lifting a D/DD tuple to itself and taking the boundary in C^D, the part
    supported on tuples with x_1 = x_2 is this map; it anticommutes with the
    boundaries and induces the connecting map of 0 -> DD -> D -> D/DD -> 0.
    """
    if n < 2:
        raise ValueError("defined for n >= 2")
    src = basis(X, n, Kind.DoverDD)
    tgt = basis(X, n - 1, Kind.DD)
    cols = []
    for t in src.tuples:
        col = {}
        for s, c in boundary_terms(X, t).items():
            j = tgt.index_of.get(s)
            if j is not None:
                col[j] = col.get(j, 0) + c
        cols.append({k: v for k, v in col.items() if v})
    return SparseMatrix(len(tgt), len(src), cols)


# ---------------------------------------------------------------- transfer chains


def transfer_chain(X: FiniteQuandle, omega, variant: str = "R", i0: int | None = None,
                   xn: int | None = None) -> Chain:
    """Orbit-summed chain over an orbit tuple.

    ``omega`` is a sequence of orbit indices (as numbered by ``orbits``).
    ``variant`` is ``R`` or ``D``; ``D`` additionally needs ``i0`` (1-based)
    with omega[i0] == omega[i0+1] and constrains x_{i0} = x_{i0+1}.  Passing
    ``xn`` fixes the last entry to that element (the pointed variants).
    The R variant is returned in the R basis, the D variant in the D basis.
    """
    variant = variant.upper()
    if variant not in ("R", "D"):
        raise ValueError("variant must be R or D")
    omega = tuple(int(w) for w in omega)
    n = len(omega)
    dec = orbits(X)
    if any(w < 0 or w >= len(dec.orbits) for w in omega):
        raise BadOrbitTuple(f"orbit index out of range in {omega}")
    choices = [list(dec.orbits[w]) for w in omega]
    if xn is not None:
        if n == 0 or dec.orbit_of[xn] != omega[-1]:
            raise BadOrbitTuple(f"x_n = {xn} does not lie in orbit {omega[-1] if n else None}")
        choices[-1] = [xn]
    if variant == "D":
        if i0 is None or not 1 <= i0 < n or omega[i0 - 1] != omega[i0]:
            raise BadOrbitTuple(f"need 1 <= i0 < n with omega_i0 = omega_(i0+1), got i0={i0} for {omega}")
        if xn is not None and i0 == n - 1:
            choices[i0 - 1] = [xn]
        B = basis(X, n, Kind.D)
        terms: dict[tuple, int] = {}
        k = i0 - 1
        reduced = choices[:k] + choices[k + 1:]
        for t in itertools.product(*reduced):
            full = t[:k] + (t[k],) + t[k:]
            terms[full] = terms.get(full, 0) + 1
        return Chain.from_terms(B, terms)
    B = basis(X, n, Kind.R)
    return Chain.from_terms(B, {t: 1 for t in itertools.product(*choices)})


def orbit_tuples(X: FiniteQuandle, n: int, kind: Kind | str = Kind.R) -> tuple:
    """Basis tuples of the orbit quandle (trivial) of the given kind."""
    k = len(orbits(X).orbits)
    from .quandles import make_trivial

    return basis(make_trivial(k), n, kind).tuples
