"""Quandle colorings of closed virtual braids and the cocycle state-sum.

A coloring is determined by the colors on the top of the braid: they are
pushed through the letters and must come back unchanged at the bottom.
Every classical crossing records the pair (x, y) used by the Boltzmann
weight: y is the over-arc color and x the under-arc color on the side the
over-arc normal points away from, so the weight is phi(x, y)^sign.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..chains import Chain, Kind, basis
from ..cocycles import Cocycle2, GroupRingValue
from ..errors import SearchTooLarge, UnsupportedDiagram
from ..polynomials import LaurentPoly, ResidueRing
from ..quandles import FiniteQuandle
from .braids import VirtualBraidWord, VirtualLinkDiagram, as_diagram, components_and_vlk

COLORING_CAP = 10**7


@dataclass(frozen=True)
class CrossingColor:
    letter: int   # position in the compiled word
    sign: int
    x: int        # under color on the normal-source side
    y: int        # over color
    under_in: int
    under_out: int


@dataclass(frozen=True)
class Coloring:
    diagram: VirtualLinkDiagram
    top: tuple[int, ...]
    slices: tuple[tuple[int, ...], ...]   # colors by position after each letter
    crossings: tuple[CrossingColor, ...]

    def pairs(self) -> list[tuple[int, int, int]]:
        return [(c.x, c.y, c.sign) for c in self.crossings]


def push_colors(X: FiniteQuandle, w: VirtualBraidWord, top: Sequence[int]):
    """Propagate top colors through the word; returns (slices, crossings)."""
    T, Tinv = X.table, X.inverse_table
    cur = list(top)
    slices = [tuple(cur)]
    crossings = []
    for n, L in enumerate(w.letters):
        i = L.index - 1
        a, b = cur[i], cur[i + 1]
        if L.kind == "v":
            cur[i], cur[i + 1] = b, a
        elif L.sign > 0:
            out = T[a][b]
            cur[i], cur[i + 1] = b, out
            crossings.append(CrossingColor(n, 1, a, b, a, out))
        else:
            out = Tinv[b][a]
            cur[i], cur[i + 1] = out, a
            crossings.append(CrossingColor(n, -1, out, a, b, out))
        slices.append(tuple(cur))
    return slices, crossings


def coloring_from_top(D, X: FiniteQuandle, top: Sequence[int]) -> Coloring | None:
    """The coloring with the given top colors, or None if it does not close up."""
    D = as_diagram(D)
    w = D.compiled()
    if len(top) != w.strands:
        raise ValueError(f"need {w.strands} top colors")
    slices, crossings = push_colors(X, w, top)
    if slices[-1] != tuple(top):
        return None
    return Coloring(D, tuple(top), tuple(slices), tuple(crossings))


def enumerate_colorings(D, X: FiniteQuandle, candidates: Sequence[Sequence[int]] | None = None,
                        cap: int = COLORING_CAP) -> list[Coloring]:
    """All colorings of D by X.

    ``candidates`` optionally restricts the top color of each strand
    position (base strands, then loop strands).  Loops with a fixed color
    are restricted to it automatically.
    """
    D = as_diagram(D)
    w = D.compiled()
    j = D.base.strands
    slots: list[Sequence[int]] = []
    for p in range(w.strands):
        if candidates is not None and p < len(candidates) and candidates[p] is not None:
            slots.append(tuple(candidates[p]))
        elif p >= j and D.loops[p - j].color is not None:
            slots.append((D.loops[p - j].color,))
        else:
            slots.append(tuple(range(X.size)))
    total = 1
    for s in slots:
        total *= len(s)
    if total > cap:
        raise SearchTooLarge(f"{total} candidate top colorings exceed the cap of {cap}")
    out = []
    for top in itertools.product(*slots):
        slices, crossings = push_colors(X, w, top)
        if slices[-1] == top:
            out.append(Coloring(D, top, tuple(slices), tuple(crossings)))
    return out


def check_coloring(X: FiniteQuandle, C: Coloring) -> bool:
    """Crossing rule at every classical crossing and constancy through virtual ones."""
    w = C.diagram.compiled()
    T = X.table
    ci = 0
    for n, L in enumerate(w.letters):
        i = L.index - 1
        before, after = C.slices[n], C.slices[n + 1]
        a, b = before[i], before[i + 1]
        if L.kind == "v":
            ok = after[i] == b and after[i + 1] == a
        elif L.sign > 0:
            ok = after[i] == b and after[i + 1] == T[a][b]
        else:
            ok = after[i + 1] == a and T[after[i]][a] == b
        if not ok or any(after[k] != before[k] for k in range(len(before)) if k not in (i, i + 1)):
            return False
        if L.kind == "s":
            ci += 1
    return C.slices[-1] == C.slices[0]


def weight(phi: Cocycle2, C: Coloring) -> tuple[int, ...]:
    """Product of Boltzmann weights (additively, in G) for one coloring."""
    G = phi.group
    total = G.zero
    for c in C.crossings:
        v = phi(c.x, c.y)
        total = G.add(total, v if c.sign > 0 else G.neg(v))
    return total


def state_sum(D, X: FiniteQuandle, phi: Cocycle2, colorings: list[Coloring] | None = None) -> GroupRingValue:
    """Sum over colorings of the product of Boltzmann weights, in N[G]."""
    if phi.quandle != X:
        raise ValueError("cocycle is defined on a different quandle")
    if colorings is None:
        colorings = enumerate_colorings(D, X)
    out = GroupRingValue(phi.group)
    for C in colorings:
        out.add_term(weight(phi, C), 1)
    return out


def cycle_from_coloring(X: FiniteQuandle, C: Coloring, kind: Kind | str = Kind.R) -> Chain:
    """The 2-chain sum of sign * (x, y) over classical crossings (degenerate pairs dropped for Q)."""
    kind = Kind.parse(kind)
    B = basis(X, 2, kind)
    terms: dict[tuple, int] = {}
    for c in C.crossings:
        t = (c.x, c.y)
        if t in B.index_of:
            terms[t] = terms.get(t, 0) + c.sign
    return Chain.from_terms(B, {t: v for t, v in terms.items() if v})


def trivial_quandle_statesum_formula(D, k: int, phi: Cocycle2) -> GroupRingValue:
    """State-sum over the trivial quandle T_k from linking numbers alone.

    Each component carries a constant color; a crossing of component j over
    component i contributes phi(c_i, c_j) with its sign, so the term is
    sum_{i != j} vlk[j][i] * phi(c_i, c_j).
    """
    data = components_and_vlk(D)
    vlk = data.vlk
    n = len(vlk)
    G = phi.group
    out = GroupRingValue(G)
    for c in itertools.product(range(k), repeat=n):
        total = G.zero
        for i in range(n):
            for j in range(n):
                if i != j and vlk[j][i]:
                    total = G.add(total, G.scale(vlk[j][i], phi(c[i], c[j])))
        out.add_term(total, 1)
    return out


# ---------------------------------------------------------------- Alexander colorings and Burau matrices


def _poly_matrix_mul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def burau_color_matrix(w: VirtualBraidWord | str) -> list[list[LaurentPoly]]:
    """2x2 matrix M over Z[T, T^-1] with [a, b] M = bottom colors of a 2-strand word."""
    if isinstance(w, str):
        w = VirtualBraidWord.parse(w)
    if w.strands != 2:
        raise UnsupportedDiagram("Burau color matrices are implemented for 2-strand words")
    one, zero = LaurentPoly.constant(1), LaurentPoly()
    t, tinv = LaurentPoly.monomial(1, 1), LaurentPoly.monomial(1, -1)
    B = [[zero, t], [one, one - t]]
    Binv = [[one - tinv, one], [tinv, zero]]
    P = [[zero, one], [one, zero]]
    M = [[one, zero], [zero, one]]
    for L in w.letters:
        M = _poly_matrix_mul(M, P if L.kind == "v" else (B if L.sign > 0 else Binv))
    return M


def reduce_matrix(M, ring: ResidueRing):
    return [[ring.reduce(p) for p in row] for row in M]


def push_symbolic(w: VirtualBraidWord, top: Sequence[LaurentPoly]):
    """Alexander coloring over Z[T, T^-1] without any quotient: returns (slices, crossings).

    a * b = T a + (1 - T) b and its inverse a *^-1 b = T^-1 a + (1 - T^-1) b.
    """
    t, tinv = LaurentPoly.monomial(1, 1), LaurentPoly.monomial(1, -1)
    one = LaurentPoly.constant(1)
    cur = list(top)
    slices = [tuple(cur)]
    crossings = []
    for L in w.letters:
        i = L.index - 1
        a, b = cur[i], cur[i + 1]
        if L.kind == "v":
            cur[i], cur[i + 1] = b, a
        elif L.sign > 0:
            out = t * a + (one - t) * b
            cur[i], cur[i + 1] = b, out
            crossings.append((1, a, b))
        else:
            out = tinv * b + (one - tinv) * a
            cur[i], cur[i + 1] = out, a
            crossings.append((-1, out, a))
        slices.append(tuple(cur))
    return slices, crossings


# ---------------------------------------------------------------- shadow colorings


@dataclass(frozen=True)
class ShadowColoring:
    coloring: Coloring
    outer: int                                 # color of the region left of every strand
    regions: tuple[tuple[int, ...], ...]       # region colors per slice, left to right
    terms: tuple[tuple[int, int, int, int], ...]  # (sign, region, x, y) per crossing

    def cycle(self, X: FiniteQuandle) -> Chain:
        B = basis(X, 3, Kind.R)
        acc: dict[tuple, int] = {}
        for s, r, x, y in self.terms:
            acc[(r, x, y)] = acc.get((r, x, y), 0) + s
        return Chain.from_terms(B, {t: v for t, v in acc.items() if v})


def _regions(X: FiniteQuandle, r: int, colors: Sequence[int]) -> tuple[int, ...]:
    out = [r]
    for c in colors:
        out.append(X.table[out[-1]][c])
    return tuple(out)


def shadow_from_coloring(X: FiniteQuandle, C: Coloring, outer: int) -> ShadowColoring:
    """Region colors of a classical closed braid, starting from the leftmost region.

    Crossing an arc from left to right acts by its color, so in every
    horizontal slice region k has color outer * c_1 * ... * c_k.  A
    crossing on positions (i, i+1) contributes sign * (rho, x, y), with rho
    the region immediately left of the crossing.
    """
    D = C.diagram
    if D.loops or not D.base.is_classical():
        raise UnsupportedDiagram("shadow colorings need a classical closed braid without loops")
    regions = tuple(_regions(X, outer, s) for s in C.slices)
    w = D.compiled()
    terms = []
    ci = 0
    for n, L in enumerate(w.letters):
        c = C.crossings[ci]
        ci += 1
        rho = regions[n][L.index - 1]
        terms.append((c.sign, rho, c.x, c.y))
    return ShadowColoring(C, outer, regions, tuple(terms))


def enumerate_shadow_colorings(D, X: FiniteQuandle) -> list[ShadowColoring]:
    D = as_diagram(D)
    if D.loops or not D.base.is_classical():
        raise UnsupportedDiagram("shadow colorings need a classical closed braid without loops")
    return [shadow_from_coloring(X, C, r) for C in enumerate_colorings(D, X) for r in range(X.size)]


def shadow_cycle(X: FiniteQuandle, sc: ShadowColoring) -> Chain:
    return sc.cycle(X)
