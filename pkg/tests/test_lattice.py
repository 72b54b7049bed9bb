import random

from hypothesis import given, settings
from hypothesis import strategies as st

from akashi import zpoly
from akashi.lattice import column_basis, kernel, matmul, smith, subquotient

matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(st.integers(-20, 20), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form(A):
    n, m = len(A), len(A[0])
    diag, U, Uinv, V = smith(A, n, m)
    SA = matmul(matmul(U, A), V)
    for i in range(n):
        for j in range(m):
            assert SA[i][j] == (diag[i] if i == j else 0)
    assert matmul(U, Uinv) == [[int(i == j) for j in range(n)] for i in range(n)]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_is_annihilated(A):
    K = kernel(A, len(A[0]))
    if K and K[0]:
        assert all(v == 0 for row in matmul(A, K) for v in row)


def test_subquotient_with_action():
    B = [[1, 0], [0, 1]]
    J = [[4, 0], [0, 2]]
    orders, theta_q, gens = subquotient(B, J, [[0, 2], [0, 0]])
    assert sorted(orders) == [2, 4]
    assert len(theta_q) == 2


def test_column_basis_spans_same_lattice():
    G = [[2, 4, 6], [0, 3, 3]]
    B = column_basis(G, 2)
    assert len(B[0]) == 2
    assert abs(B[0][0] * B[1][1] - B[0][1] * B[1][0]) == 6


def test_lambda_gcd_examples():
    T = zpoly.from_ascending
    mu, g = zpoly.lambda_gcd([T([0, 1]), T([2])], 2)
    assert mu == 0 and zpoly.is_lambda_unit(g, 2)
    mu, g = zpoly.lambda_gcd([T([0, 0, 3]), T([0, 3, 3])], 3)
    assert mu == 1 and zpoly.to_ascending(g) == [0, 1]


def test_det_and_rank():
    rng = random.Random(7)
    T = zpoly.from_ascending
    for _ in range(20):
        a, b, c = ([rng.randint(-3, 3) for _ in range(2)] for _ in range(3))
        A = [[T(a), T(b)], [zpoly.mul(T(a), T(c)), zpoly.mul(T(b), T(c))]]
        assert not zpoly.det(A)
        assert zpoly.rank(A) <= 1
