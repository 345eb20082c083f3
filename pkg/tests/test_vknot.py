import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from quandlehom.chains import Kind
from quandlehom.cocycles import characteristic, coboundary_of, pullback_cocycle
from quandlehom.errors import BadPolynomial, ParseError, UnsupportedDiagram, WordMismatch
from quandlehom.homology import is_boundary, orbit_writhe
from quandlehom.polynomials import LaurentPoly
from quandlehom.quandles import InnerWord, alexander_evaluation, alexander_reduction, make_alexander, make_trivial
from quandlehom.verify import TREFOIL_S4_GOLDEN, random_h, s4_cocycle, shadow_cycles
from quandlehom.vknot import (
    VirtualBraidWord,
    attach_virtual_loops,
    burau_color_matrix,
    check_coloring,
    coloring_from_top,
    components_and_vlk,
    cycle_from_coloring,
    disjoint_union,
    enumerate_colorings,
    enumerate_shadow_colorings,
    linking_family,
    linking_family_coloring,
    move_variants,
    parse_diagram,
    prescribed_vlk_link,
    random_word,
    reduce_matrix,
    state_sum,
    trefoil,
    trivial_quandle_statesum_formula,
    twisted_family,
    unknot,
    virtual_hopf,
    weight,
)


def trefoil_arc_colorings(X):
    """Colorings of the three arcs of the trefoil: x0*x1 = x2, x1*x2 = x0, x2*x0 = x1."""
    op = X.op
    return [(a, b, c) for a, b, c in itertools.product(range(X.size), repeat=3)
            if op(a, b) == c and op(b, c) == a and op(c, a) == b]


def test_word_parsing():
    w = VirtualBraidWord.parse("s1 s2^-1 v1")
    assert str(w) == "s1 s2^-1 v1" and w.strands == 3
    assert (w + w.inverse()).permutation() == (1, 2, 3)
    assert not w.is_classical() and VirtualBraidWord.parse("s1 s1").is_classical()
    with pytest.raises(ParseError):
        VirtualBraidWord.parse("x1")


def test_diagram_text_round_trip(S4):
    text = "s1 s1 s1\nloop strand=1 pos=3 sign=+1 color=1+T\n"
    D = parse_diagram(text, S4.element_index)
    assert D.loops[0].color == S4.element_of("1+T")
    again = parse_diagram(D.to_text(S4.names), S4.element_index)
    assert again == D


def test_trefoil_has_nine_three_colorings(R3):
    C = enumerate_colorings(trefoil(), R3)
    assert len(C) == 9 == len(trefoil_arc_colorings(R3))
    assert all(check_coloring(R3, c) for c in C)


@pytest.mark.parametrize("name", ["R3", "R4", "R5", "S4", "QS5"])
def test_trefoil_coloring_count_matches_arc_oracle(name):
    from conftest import SMALL_QUANDLES
    X = SMALL_QUANDLES[name]()
    assert len(enumerate_colorings(trefoil(), X)) == len(trefoil_arc_colorings(X))


def test_s4_trefoil_golden_value(S4):
    phi = s4_cocycle(S4)
    # independent route: sum phi over the three crossings of each arc coloring
    expected = {}
    for a, b, c in trefoil_arc_colorings(S4):
        g = (phi(a, b)[0] + phi(b, c)[0] + phi(c, a)[0]) % 2
        key = "0" if g == 0 else "t"
        expected[key] = expected.get(key, 0) + 1
    assert expected == TREFOIL_S4_GOLDEN
    assert state_sum(trefoil(), S4, phi).to_json() == TREFOIL_S4_GOLDEN
    assert list(weight(phi, coloring_from_top(trefoil(), S4, (0, 1)))) == [1]


def test_unknot_state_sum_is_constant_mass(S4):
    value = state_sum(unknot(), S4, s4_cocycle(S4))
    assert value.to_json() == {"0": 4}


def test_trefoil_cycle_orbit_writhe(R3):
    for C in enumerate_colorings(trefoil(), R3):
        z = cycle_from_coloring(R3, C, Kind.R)
        assert z.is_cycle()
        assert orbit_writhe(R3, z, (0, 0)) == 3


def test_virtual_hopf_linking_numbers():
    assert components_and_vlk(virtual_hopf(1)).vlk == [[0, 1], [0, 0]]
    assert components_and_vlk(virtual_hopf(-1)).vlk == [[0, -1], [0, 0]]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_prescribed_vlk_round_trip(entries):
    M = [[0 if i == j else entries[3 * i + j] for j in range(3)] for i in range(3)]
    assert components_and_vlk(prescribed_vlk_link(M)).vlk == M


def test_disjoint_union_has_no_linking():
    D = disjoint_union(trefoil(), virtual_hopf(1))
    data = components_and_vlk(D)
    assert len(data.components) == 3
    assert data.vlk[0][1] == data.vlk[0][2] == 0


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_state_sum_invariant_under_moves(seed):
    rng = random.Random(seed)
    X = [make_trivial(3), make_alexander(2, "T^2+T+1"), make_alexander(3, "T+1")][seed % 3]
    q = 2 if X.size == 4 else 3
    phi = s4_cocycle(X) if X.size == 4 else characteristic(X, [(0, 1), (1, 2)], q)
    if not phi.is_cocycle():
        phi = coboundary_of(X, [rng.randrange(q) for _ in range(X.size)], q)
    w = random_word(rng.randint(2, 3), rng.randint(1, 6), rng)
    base = state_sum(w, X, phi)
    for v in move_variants(w, count=2, steps=3, seed=seed):
        assert state_sum(v, X, phi) == base
        assert components_and_vlk(v).vlk == components_and_vlk(w).vlk


def test_trivial_quandle_formula_matches_brute_force():
    rng = random.Random(11)
    T3 = make_trivial(3)
    for _ in range(50):
        w = random_word(rng.randint(2, 4), rng.randint(0, 8), rng)
        phi = characteristic(T3, [(a, b) for a in range(3) for b in range(3) if a != b and rng.random() < 0.4],
                             rng.choice([2, 3, 0]))
        assert trivial_quandle_statesum_formula(w, 3, phi) == state_sum(w, T3, phi)


def test_burau_matrix_of_k3():
    M = burau_color_matrix(twisted_family(3).base)
    assert [[str(p) for p in row] for row in M] == [
        ["T-T^3+T^5-T^6", "T-T^3+T^5"], ["1-T+T^3-T^5+T^6", "1-T+T^3-T^5"]]
    X16 = make_alexander(2, "T^4+T^2+1")
    one, zero = X16.ring.from_int(1), X16.ring.from_int(0)
    assert reduce_matrix(M, X16.ring) == [[one, zero], [zero, one]]
    with pytest.raises(UnsupportedDiagram):
        burau_color_matrix(VirtualBraidWord.parse("s1 s2"))


def test_k3_pullback_weight():
    X16 = make_alexander(2, "T^4+T^2+1")
    S4 = make_alexander(2, "T^2+T+1")
    f = alexander_reduction(X16, S4)
    C = coloring_from_top(twisted_family(3), X16, (0, 1))
    assert list(weight(pullback_cocycle(f, s4_cocycle(S4)), C)) == [1]


def test_virtual_loops_with_given_words():
    X = make_alexander(4, "T^2+3T+3")
    S4 = make_alexander(2, "T^2+T+1")
    f = alexander_reduction(X, S4)
    e = X.element_of
    words = {0: InnerWord(((e("2+2T"), 1),)), 1: InnerWord(((e("3"), 1),))}
    D, C = attach_virtual_loops(trefoil(), (0, e("1")), f, words)
    assert check_coloring(X, C)
    assert [X.element_name(c) for c in C.slices[len(D.base)][:2]] == ["2", "1+2T"]
    assert list(weight(pullback_cocycle(f, s4_cocycle(S4)), C)) == [1]
    D2, C2 = attach_virtual_loops(trefoil(), (0, e("1")), f)
    assert check_coloring(X, C2)
    with pytest.raises(WordMismatch):
        attach_virtual_loops(trefoil(), (0, e("1")), f, {0: InnerWord(((e("1"), 1),))})


def test_shadow_cycles():
    R3, X9, h0, h1, pi = shadow_cycles()
    assert h0.terms() == {(2, 0, 2): 1, (2, 1, 0): 1, (2, 2, 1): 1}
    assert h0.is_cycle() and h1.is_cycle()
    assert not is_boundary(R3, 3, "R", h0, 3)
    for sc in enumerate_shadow_colorings(trefoil(), R3):
        assert sc.cycle(R3).is_cycle()
    with pytest.raises(UnsupportedDiagram):
        enumerate_shadow_colorings(virtual_hopf(1), R3)


def test_linking_family_example():
    fam = linking_family("T^2-2T+1")
    assert fam.colors == (0, -1, 1) and fam.crossing_counts == (1, 1)
    assert fam.final_color() == LaurentPoly.parse("T^2-2T+1")
    X9 = make_alexander(3, "T^2-2T+1")
    C = linking_family_coloring(fam, X9)
    assert C is not None and check_coloring(X9, C)
    pi = alexander_evaluation(X9, 1)
    chi = characteristic(pi.target, [(0, 2)], 0)
    assert list(weight(pullback_cocycle(pi, chi), C)) == [1]
    with pytest.raises(BadPolynomial):
        linking_family("T+1")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_linking_family_ends_at_h(seed):
    h = random_h(random.Random(seed))
    assert linking_family(h).final_color() == h.normalized()
