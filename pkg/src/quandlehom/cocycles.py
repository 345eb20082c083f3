"""Quandle 2-cocycles with values in finite abelian groups, and group-ring values.

A coefficient group is a direct sum of cyclic groups given by their orders
(order 0 means Z).  Group elements are tuples of integers, one per factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .chains import Kind, basis, boundary
from .errors import ParseError
from .homology import is_prime
from .linalg import ColumnEchelon, kernel_mod, solve_mod
from .quandles import FiniteQuandle, QuandleHom


@dataclass(frozen=True)
class CyclicGroup:
    """Direct sum of Z_{q_i}; ``orders`` of 0 means a factor Z."""

    orders: tuple[int, ...]

    @classmethod
    def parse(cls, value) -> CyclicGroup:
        if isinstance(value, CyclicGroup):
            return value
        if isinstance(value, int):
            return cls((value,))
        if isinstance(value, (list, tuple)):
            return cls(tuple(int(v) for v in value))
        text = str(value).replace(" ", "")
        orders = []
        for part in text.replace("x", "+").split("+"):
            p = part.upper().replace("_", "")
            if p == "Z":
                orders.append(0)
            elif p.startswith("Z") and p[1:].isdigit():
                orders.append(int(p[1:]))
            else:
                raise ParseError(f"cannot parse group {value!r}")
        return cls(tuple(orders))

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def reduce(self, g: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % q if q else x for x, q in zip(g, self.orders))

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a):
        return self.reduce([-x for x in a])

    def scale(self, c: int, a):
        return self.reduce([c * x for x in a])

    def element(self, g) -> tuple[int, ...]:
        if isinstance(g, int):
            g = (g,)
        g = tuple(g)
        if len(g) != len(self.orders):
            raise ValueError("group element has the wrong number of components")
        return self.reduce(g)

    def __str__(self):
        return " + ".join("Z" if q == 0 else f"Z{q}" for q in self.orders)


def format_group_element(g: Sequence[int], var: str = "t") -> str:
    """Multiplicative rendering: identity "0", then "t", "t^2", "t1^2 t2" ..."""
    if not any(g):
        return "0"
    if len(g) == 1:
        return var if g[0] == 1 else f"{var}^{g[0]}"
    parts = []
    for k, x in enumerate(g, start=1):
        if x:
            parts.append(f"{var}{k}" if x == 1 else f"{var}{k}^{x}")
    return " ".join(parts)


class GroupRingValue:
    """A finitely supported map G -> N (an element of the group rig N[G])."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: CyclicGroup, coeffs: Mapping[tuple, int] | None = None):
        self.group = group
        self.coeffs: dict[tuple, int] = {}
        for g, c in (coeffs or {}).items():
            if c:
                g = group.element(g)
                self.coeffs[g] = self.coeffs.get(g, 0) + c

    def add_term(self, g, c: int = 1) -> None:
        g = self.group.element(g)
        v = self.coeffs.get(g, 0) + c
        if v:
            self.coeffs[g] = v
        else:
            self.coeffs.pop(g, None)

    @property
    def mass(self) -> int:
        return sum(self.coeffs.values())

    def __add__(self, other: GroupRingValue) -> GroupRingValue:
        out = GroupRingValue(self.group, self.coeffs)
        for g, c in other.coeffs.items():
            out.add_term(g, c)
        return out

    def __mul__(self, other: GroupRingValue) -> GroupRingValue:
        out = GroupRingValue(self.group)
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                out.add_term(self.group.add(g, h), a * b)
        return out

    def __eq__(self, other):
        return isinstance(other, GroupRingValue) and self.group == other.group and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def has_nonidentity_term(self) -> bool:
        zero = self.group.zero
        return any(g != zero for g in self.coeffs)

    def to_json(self) -> dict:
        return {format_group_element(g): c for g, c in sorted(self.coeffs.items())}

    def __repr__(self):
        terms = [f"{c}*{format_group_element(g)}" for g, c in sorted(self.coeffs.items())]
        return "GroupRingValue(" + (" + ".join(terms) or "0") + ")"


class Cocycle2:
    """A function X x X -> G, stored as a full table of group elements."""

    def __init__(self, quandle: FiniteQuandle, group, values: Mapping[tuple, Sequence[int] | int] | None = None):
        self.quandle = quandle
        self.group = CyclicGroup.parse(group)
        m = quandle.size
        zero = self.group.zero
        table = [[zero] * m for _ in range(m)]
        for (x, y), g in (values or {}).items():
            table[x][y] = self.group.element(g)
        self.table = tuple(tuple(r) for r in table)

    def __call__(self, x: int, y: int) -> tuple[int, ...]:
        return self.table[x][y]

    def __add__(self, other: Cocycle2) -> Cocycle2:
        m = self.quandle.size
        return Cocycle2(self.quandle, self.group, {
            (x, y): self.group.add(self.table[x][y], other.table[x][y]) for x in range(m) for y in range(m)})

    def __eq__(self, other):
        return isinstance(other, Cocycle2) and self.group == other.group and self.table == other.table

    def support(self) -> dict:
        zero = self.group.zero
        m = self.quandle.size
        return {(x, y): self.table[x][y] for x in range(m) for y in range(m) if self.table[x][y] != zero}

    def coboundary_values(self):
        """Nonzero values of (delta phi)(x, y, z); empty exactly when phi is a rack 2-cocycle."""
        X, g = self.quandle, self.group
        t = X.table
        bad = {}
        m = X.size
        for x in range(m):
            for y in range(m):
                for z in range(m):
                    v = [a - b - c + d for a, b, c, d in zip(
                        self.table[x][z], self.table[t[x][y]][z], self.table[x][y], self.table[t[x][z]][t[y][z]])]
                    v = g.reduce(v)
                    if any(v):
                        bad[(x, y, z)] = v
        return bad

    def is_cocycle(self) -> bool:
        """Quandle condition phi(x, x) = 0 plus the 2-cocycle condition."""
        if any(any(self.table[x][x]) for x in range(self.quandle.size)):
            return False
        return not self.coboundary_values()

    def is_coboundary(self) -> bool:
        """Whether phi = delta psi for some psi: X -> G, (delta psi)(x, y) = psi(x) - psi(x * y)."""
        X = self.quandle
        m = X.size
        pairs = [(x, y) for x in range(m) for y in range(m)]
        rows = []
        for (x, y) in pairs:
            r = [0] * m
            r[x] += 1
            r[X.table[x][y]] -= 1
            rows.append(r)
        for k, q in enumerate(self.group.orders):
            b = [self.table[x][y][k] for (x, y) in pairs]
            if q == 0:
                cols = [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(m)]
                if not ColumnEchelon(cols).contains({i: v for i, v in enumerate(b) if v}):
                    return False
            elif solve_mod(rows, b, q, ncols=m) is None:
                return False
        return True

    def to_json(self) -> dict:
        return {"group": list(self.group.orders),
                "values": [[x, y, list(g)] for (x, y), g in sorted(self.support().items())]}

    def __repr__(self):
        return f"Cocycle2({self.quandle.label}, {self.group}, support={len(self.support())})"


def characteristic(X: FiniteQuandle, pairs: Iterable[tuple[int, int]], group=2) -> Cocycle2:
    """Sum of characteristic functions chi_{(a, b)}: each listed pair gets the generator."""
    G = CyclicGroup.parse(group)
    one = (1,) + (0,) * (len(G.orders) - 1)
    values: dict = {}
    for a, b in pairs:
        values[(a, b)] = G.add(values.get((a, b), G.zero), one)
    return Cocycle2(X, G, values)


def coboundary_of(X: FiniteQuandle, psi: Sequence, group) -> Cocycle2:
    """delta psi as a 2-cochain, (delta psi)(x, y) = psi(x) - psi(x * y)."""
    G = CyclicGroup.parse(group)
    psi = [G.element(p) for p in psi]
    m = X.size
    return Cocycle2(X, G, {(x, y): G.add(psi[x], G.neg(psi[X.table[x][y]]))
                           for x in range(m) for y in range(m)})


def pullback_cocycle(f: QuandleHom, phi: Cocycle2) -> Cocycle2:
    """(f^# phi)(x, y) = phi(f(x), f(y))."""
    if phi.quandle != f.target:
        raise ValueError("cocycle lives on a different quandle")
    m = f.source.size
    return Cocycle2(f.source, phi.group, {(x, y): phi(f.map[x], f.map[y]) for x in range(m) for y in range(m)})


@dataclass
class CocycleSpace:
    """Z^2_Q(X; Z_q) and B^2_Q(X; Z_q) as lists of cocycles, with their orders."""

    quandle: FiniteQuandle
    modulus: int
    cocycles: list[Cocycle2]
    coboundaries: list[Cocycle2]
    cocycle_dim: int
    coboundary_dim: int

    @property
    def cohomology_dim(self) -> int:
        return self.cocycle_dim - self.coboundary_dim


def cocycle_space(X: FiniteQuandle, q: int) -> CocycleSpace:
    """Generators of quandle 2-cocycles and 2-coboundaries with values in Z_q.

    For q prime, dimensions are over F_q; otherwise ``cocycle_dim`` counts
    Smith-reduced generators of the kernel (a generating set, not a basis).
    """
    Qb2 = basis(X, 2, Kind.Q)
    d3t = boundary(X, 3, Kind.Q).matrix.transpose()   # cochain map C^2 -> C^3
    d2t = boundary(X, 2, Kind.Q).matrix.transpose()   # C^1 -> C^2
    G = CyclicGroup((q,))

    def to_cocycle(vec):
        return Cocycle2(X, G, {Qb2.tuples[i]: (v,) for i, v in vec.items() if v % q})

    if is_prime(q):
        kernel = ColumnEchelon(d3t.cols, modulus=q, track=True).kernel
        cob = ColumnEchelon(d2t.cols, modulus=q)
        cocycles = [to_cocycle({i: v % q for i, v in k.items()}) for k in kernel]
        coboundaries = [to_cocycle(b) for b in cob.basis]
        return CocycleSpace(X, q, cocycles, coboundaries, len(kernel), cob.rank)
    dense = d3t.to_dense()
    gens = kernel_mod(dense, q, ncols=d3t.ncols)
    cocycles = [to_cocycle(dict(enumerate(g))) for g in gens]
    cob_gens = [to_cocycle(c) for c in d2t.cols]
    return CocycleSpace(X, q, cocycles, cob_gens, len(gens), len(ColumnEchelon(d2t.cols).basis))


def load_cocycle(data: dict | str, X: FiniteQuandle) -> Cocycle2:
    """Read {"group": [2], "values": [[x, y, g], ...]}; elements may be names."""
    if isinstance(data, str):
        data = json.loads(data)
    G = CyclicGroup.parse(data.get("group", [2]))
    values = {}
    for entry in data.get("values", []):
        x, y, g = entry
        values[(X.element_index(x), X.element_index(y))] = g
    return Cocycle2(X, G, values)
