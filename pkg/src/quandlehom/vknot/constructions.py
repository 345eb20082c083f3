"""Diagram families built to realize prescribed colorings.

* ``attach_virtual_loops`` closes up a lifted coloring by letting loops
  colored by equalizer elements cross over the strands whose bottom color
  differs from the top color.
* ``linking_family`` builds, for h(T) with h(1) = 0, a link whose sublink
  crossings drive the color of one component through h(T).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BadPolynomial, WordMismatch
from ..polynomials import LaurentPoly
from ..quandles import InnerWord, QuandleHom, apply_inner_word, is_locally_homogeneous
from .braids import Letter, LoopSpec, VirtualBraidWord, VirtualLinkDiagram, as_diagram, over_gadget
from .colorings import Coloring, coloring_from_top, push_colors, push_symbolic


def attach_virtual_loops(beta, top: tuple[int, ...], f: QuandleHom,
                         words: dict[int, InnerWord] | None = None):
    """Close a lifted coloring of ``beta`` with virtual loops.

    ``top`` are colors in the source of f.  Pushing them through beta gives
    bottom colors c'_i in the same fibers; strand i gets one loop per letter
    (d, e) of a word w_i with c'_i * w_i = c_i, colored d and crossing with
    sign e.  Words default to the breadth-first words of the fibers.
    Returns (diagram, coloring).
    """
    D = as_diagram(beta)
    if D.loops:
        raise ValueError("beta must not already carry loops")
    X = f.source
    slices, _ = push_colors(X, D.base, top)
    bottom = slices[-1]
    auto = None
    loops = []
    end = len(D.base)
    for i, (c, cp) in enumerate(zip(top, bottom)):
        if f(c) != f(cp):
            raise WordMismatch(f"strand {i + 1}: bottom color is in a different fiber")
        if words is not None and i in words:
            w = words[i]
        elif c == cp:
            w = InnerWord()
        else:
            if auto is None:
                auto = is_locally_homogeneous(f)[1]
            if (cp, c) not in auto:
                raise WordMismatch(f"strand {i + 1}: no word in the equalizer maps {cp} to {c}")
            w = auto[(cp, c)]
        if apply_inner_word(X, cp, w) != c:
            raise WordMismatch(f"strand {i + 1}: word does not map {cp} to {c}")
        for d, e in w.letters:
            if f(d) != f(c):
                raise WordMismatch(f"loop color {d} lies outside the equalizer of strand {i + 1}")
            loops.append(LoopSpec(i + 1, end, e, d))
    diagram = VirtualLinkDiagram(D.base, tuple(loops), D.label + "+loops" if D.label else "")
    full_top = tuple(top) + tuple(lp.color for lp in loops)
    C = coloring_from_top(diagram, X, full_top)
    if C is None:
        raise WordMismatch("loops do not close the coloring")
    return diagram, C


@dataclass
class LinkingFamily:
    """The link, its vlk data and the color recipe of ``linking_family``."""

    diagram: VirtualLinkDiagram
    exponents: tuple[int, ...]        # m_1 < ... < m_k
    coefficients: tuple[int, ...]     # c_0, c_1, ..., c_k
    crossing_counts: tuple[int, ...]  # n_1, ..., n_k: times K_i crosses over K_0
    colors: tuple[int, ...]           # b_0 = 0, b_1, ..., b_k as integers

    def top_polys(self, modulus: int = 0) -> tuple[LaurentPoly, ...]:
        return tuple(LaurentPoly.constant(b, modulus) for b in self.colors)

    def final_color(self) -> LaurentPoly:
        """Color of K_0 after all crossings, computed over Z[T, T^-1]."""
        slices, _ = push_symbolic(self.diagram.compiled(), self.top_polys())
        return slices[-1][0]


def linking_family(h: LaurentPoly | str) -> LinkingFamily:
    """Link K_0 u K_1 u ... u K_k colored by constants, for h(1) = 0.

    Write h = c_0 + sum_{i=1}^k c_i T^{m_i} with 0 < m_1 < ... < m_k.  K_i
    is colored b_i with b_{k-j} = c_0 + ... + c_j (so b_0 = h(1) = 0) and
    crosses over K_0 n_i times, where n_k = m_1 and n_{k-i} = m_{i+1} - m_i.
    Starting from color 0, K_0 ends with color h(T), so the coloring closes
    in any Alexander quandle in which h(T) = 0.
    """
    if isinstance(h, str):
        h = LaurentPoly.parse(h)
    h = h.with_modulus(0).normalized()
    if h.is_zero():
        raise BadPolynomial("h must be nonzero")
    if h.evaluate(1) != 0:
        raise BadPolynomial(f"h(1) = {h.evaluate(1)} must vanish")
    coeffs = h.coefficient_list()
    exps = [e for e in range(1, len(coeffs)) if coeffs[e]]
    k = len(exps)
    c = [coeffs[0]] + [coeffs[e] for e in exps]
    b = [0] * (k + 1)
    for j in range(k + 1):
        b[k - j] = sum(c[: j + 1])
    n = [0] * (k + 1)
    n[k] = exps[0]
    for i in range(1, k):
        n[k - i] = exps[i] - exps[i - 1]
    letters: list[Letter] = []
    for i in range(1, k + 1):
        for _ in range(n[i]):
            letters += over_gadget(i + 1, 1, 1)
    w = VirtualBraidWord(k + 1, tuple(letters))
    D = VirtualLinkDiagram(w, label=f"linking-family({h})")
    return LinkingFamily(D, tuple(exps), tuple(c), tuple(n[1:]), tuple(b))


def linking_family_coloring(fam: LinkingFamily, X) -> Coloring | None:
    """Instantiate the color recipe in an Alexander quandle X (constants as elements)."""
    top = tuple(X.element_of(LaurentPoly.constant(b)) for b in fam.colors)
    return coloring_from_top(fam.diagram, X, top)
