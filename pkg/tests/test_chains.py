import itertools

import pytest
from hypothesis import given, settings, strategies as st

from quandlehom.chains import (
    DEGREE_CAP,
    Chain,
    Kind,
    basis,
    boundary,
    degenerate_count,
    drop_second_map,
    induced_chain_map,
    inclusion,
    nondegenerate_count,
    projection,
)
from quandlehom.errors import DegreeTooLarge, KindUnavailable
from quandlehom.quandles import make_dihedral, orbit_projection, validate_rack

from conftest import SMALL_QUANDLES


def reference_boundary(X, t):
    """Rack boundary written straight from the face formula."""
    n = len(t)
    out = {}
    for i in range(2, n + 1):
        sign = (-1) ** i
        xi = t[i - 1]
        left = t[: i - 1] + t[i:]
        right = tuple(X.op(t[j], xi) for j in range(i - 1)) + t[i:]
        out[left] = out.get(left, 0) + sign
        out[right] = out.get(right, 0) - sign
    return {k: v for k, v in out.items() if v}


def test_counts_match_formulas():
    for m in range(1, 5):
        for n in range(1, 6):
            X = SMALL_QUANDLES["T%d" % m]() if m <= 3 else make_dihedral(4)
            assert len(basis(X, n, "D")) == degenerate_count(m, n)
            assert len(basis(X, n, "Q")) == nondegenerate_count(m, n) == m * (m - 1) ** (n - 1)
            brute_dd = sum(1 for t in itertools.product(range(m), repeat=n) if n >= 2 and t[0] == t[1])
            assert len(basis(X, n, "DD")) == brute_dd


def test_degenerate_count_recursion():
    # a_n counts tuples with some x_i = x_{i+1}; a_{n+1} = m a_n + (m^n - a_n)
    for m in range(1, 6):
        for n in range(1, 8):
            assert degenerate_count(m, n + 1) == m * degenerate_count(m, n) + m**n - degenerate_count(m, n)


def test_bases_are_lexicographic(R4):
    for kind in Kind:
        B = basis(R4, 3, kind)
        assert list(B.tuples) == sorted(B.tuples)


@pytest.mark.parametrize("name", ["R3", "R4", "S4", "QS5", "T3"])
def test_rack_boundary_matches_reference(name):
    X = SMALL_QUANDLES[name]()
    for n in range(1, 4):
        B = boundary(X, n, "R")
        for j, t in enumerate(B.source.tuples):
            got = {B.target.tuples[i]: v for i, v in B.matrix.cols[j].items()}
            assert got == reference_boundary(X, t)


@pytest.mark.parametrize("name", ["R3", "R4", "S4", "QS5", "T3"])
@pytest.mark.parametrize("kind", list(Kind))
def test_boundary_squares_to_zero(name, kind):
    X = SMALL_QUANDLES[name]()
    for n in range(2, 5):
        assert (boundary(X, n - 1, kind).matrix @ boundary(X, n, kind).matrix).is_zero()


def test_chain_maps_commute_with_boundary(R4):
    f = orbit_projection(R4)
    for kind in ("R", "D", "Q"):
        for n in range(2, 5):
            lhs = boundary(f.target, n, kind).matrix @ induced_chain_map(f, n, kind)
            rhs = induced_chain_map(f, n - 1, kind) @ boundary(R4, n, kind).matrix
            assert lhs == rhs
    for n in range(2, 5):
        i_lo, i_hi = inclusion(R4, n - 1, "D", "R"), inclusion(R4, n, "D", "R")
        assert boundary(R4, n, "R").matrix @ i_hi == i_lo @ boundary(R4, n, "D").matrix
        p_lo, p_hi = projection(R4, n - 1, "R", "Q"), projection(R4, n, "R", "Q")
        assert p_lo @ boundary(R4, n, "R").matrix == boundary(R4, n, "Q").matrix @ p_hi


def test_drop_second_map_shape(R3):
    u = drop_second_map(R3, 3)
    assert u.shape == (len(basis(R3, 2, "R")), len(basis(R3, 3, "DD")))


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.integers(0, 63), st.integers(-3, 3), max_size=8))
def test_boundary_of_boundary_of_random_chain(coeffs):
    R4 = make_dihedral(4)
    z = Chain(basis(R4, 3, "R"), coeffs)
    assert z.boundary().boundary().is_zero()


def test_caps_and_kind_errors():
    X = make_dihedral(5)
    assert 5**11 > DEGREE_CAP
    with pytest.raises(DegreeTooLarge):
        basis(X, 11, "R")
    rack = validate_rack([[1, 1], [0, 0]])
    assert len(basis(rack, 2, "R")) == 4
    with pytest.raises(KindUnavailable):
        basis(rack, 2, "Q")
    assert Kind.parse("D/DD") is Kind.DoverDD
    with pytest.raises(ValueError):
        Kind.parse("X")


def test_degenerate_bases_match_filter():
    for m in range(1, 4):
        X = SMALL_QUANDLES["T%d" % m]()
        for n in range(1, 6):
            all_tuples = list(itertools.product(range(m), repeat=n))
            deg = [t for t in all_tuples if any(t[i] == t[i + 1] for i in range(n - 1))]
            assert list(basis(X, n, "D").tuples) == deg
            assert list(basis(X, n, "DoverDD").tuples) == [t for t in deg if t[0] != t[1]]
