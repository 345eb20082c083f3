import random

from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from quandlehom.linalg import (
    ColumnEchelon,
    SparseMatrix,
    canonical_invariant_factors,
    determinant,
    identity,
    invariant_factors,
    kernel_basis,
    kernel_mod,
    matmul,
    rank,
    rank_mod_p,
    smith,
    solve_mod,
)

matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def oracle_factors(A):
    """Nonzero invariant factors from sympy, ascending, and the rank."""
    fs = sorted(abs(int(f)) for f in sympy_invariant_factors(Matrix(A), domain=ZZ) if f)
    return fs, len(fs)


def test_smith_small_example():
    d = smith([[2, 4], [6, 8]])
    assert d.diagonal == [2, 4]
    assert matmul(matmul(d.U, [[2, 4], [6, 8]]), d.V) == d.D
    assert matmul(d.U, d.U_inv) == identity(2)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_reconstructs_and_divides(A):
    d = smith(A)
    assert matmul(matmul(d.U, A), d.V) == d.D
    assert abs(determinant(d.U)) == 1 and abs(determinant(d.V)) == 1
    assert matmul(d.U, d.U_inv) == identity(len(A))
    diag = [x for x in d.diagonal if x]
    assert all(x > 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    off = [(i, j) for i in range(len(A)) for j in range(len(A[0])) if i != j and d.D[i][j]]
    assert not off


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_sparse_elimination_matches_sympy(A):
    M = SparseMatrix.from_dense(A)
    fs, r = oracle_factors(A)
    assert invariant_factors(M) == fs
    assert rank(M) == r
    assert canonical_invariant_factors(smith(A, transforms=False).diagonal[:r]) == [f for f in fs if f > 1]


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5]))
def test_rank_mod_p_matches_sympy(A, p):
    # rank over F_p is the number of invariant factors not divisible by p
    fs = [int(f) for f in sympy_invariant_factors(Matrix(A), domain=ZZ)]
    assert rank_mod_p(SparseMatrix.from_dense(A), p) == sum(1 for f in fs if f % p)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_basis_is_saturated_kernel(A):
    M = SparseMatrix.from_dense(A)
    K = kernel_basis(M)
    assert len(K) == M.shape[1] - rank(M)
    for v in K:
        assert not M.apply(v)
    # saturated: the kernel lattice has no torsion in the quotient Z^n / ker
    if K:
        dense = [[v.get(i, 0) for v in K] for i in range(M.shape[1])]
        assert all(f == 1 for f in smith(dense, transforms=False).diagonal[:len(K)])


def test_column_echelon_membership_and_solve():
    rng = random.Random(1)
    for _ in range(100):
        cols = [{i: rng.randint(-3, 3) for i in range(4) if rng.random() < 0.6} for _ in range(3)]
        E = ColumnEchelon(cols, track=True)
        x = [rng.randint(-4, 4) for _ in cols]
        b = {}
        for c, coef in zip(cols, x):
            for i, v in c.items():
                b[i] = b.get(i, 0) + coef * v
        b = {i: v for i, v in b.items() if v}
        assert E.contains(b)
        sol = E.solve(b)
        recon = {}
        for j, coef in sol.items():
            for i, v in cols[j].items():
                recon[i] = recon.get(i, 0) + coef * v
        assert {i: v for i, v in recon.items() if v} == b
    assert not ColumnEchelon([{0: 2}]).contains({0: 1})
    assert ColumnEchelon([{0: 2}], modulus=3).contains({0: 1})


def test_solve_and_kernel_mod_composite():
    A = [[2, 0], [0, 3]]
    x = solve_mod(A, [4, 3], 6)
    assert x is not None and (2 * x[0]) % 6 == 4 and (3 * x[1]) % 6 == 3
    assert solve_mod(A, [1, 0], 6) is None
    K = kernel_mod(A, 6)
    for v in K:
        assert all(sum(A[i][j] * v[j] for j in range(2)) % 6 == 0 for i in range(2))
    # the kernel of diag(2, 3) mod 6 has 2 * 3 = 6 elements, generated by (3, 0) and (0, 2)
    span = {((a * K[0][0] + b * (K[1][0] if len(K) > 1 else 0)) % 6,
             (a * K[0][1] + b * (K[1][1] if len(K) > 1 else 0)) % 6) for a in range(6) for b in range(6)}
    assert len(span) == 6


def test_triplet_round_trip():
    M = SparseMatrix.from_dense([[1, 0, -2], [0, 0, 3]])
    assert SparseMatrix.from_triplet_text(M.to_triplet_text()) == M
    assert M.transpose().transpose() == M
    assert (M @ SparseMatrix.identity(3)) == M
