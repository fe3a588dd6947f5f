import random
from fractions import Fraction

from nestfan.exactla import (
    bareiss_det,
    det_sign,
    lp_feasible,
    matrix_rank,
    nullspace_dependence,
    solve_square,
)
from helpers import cofactor_det, fourier_motzkin_feasible, gauss_kernel


def test_det_sign_basics():
    assert det_sign([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det_sign([[1, 1], [2, 2]]) == 0
    assert det_sign([[1, 2], [1, 1]]) == -1


def test_det_sign_rational_rows():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(2, 7)]]
    assert det_sign(rows) == ((cofactor_det(rows) > 0) - (cofactor_det(rows) < 0))


def test_det_matches_cofactor_randomized():
    rng = random.Random(20240517)
    for _ in range(300):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(rows) == cofactor_det(rows)


def test_nullspace_examples():
    dep = nullspace_dependence([(1, 0), (1, 1), (2, 1)], 0)
    assert dep.coeffs == (1, 1, -1) and not dep.pivot_zero
    dep = nullspace_dependence([(1, 0), (0, 1), (-1, -1)], 0)
    assert dep.coeffs == (1, 1, 1)
    dep = nullspace_dependence([(1, 0), (0, 1), (1, 0)], 1)
    assert dep.pivot_zero
    assert dep.coeffs == (1, 0, -1)


def test_nullspace_rank_deficient():
    assert nullspace_dependence([(1, 0), (2, 0), (3, 0)], 0) is None


def test_nullspace_randomized_against_gauss():
    rng = random.Random(99)
    hits = 0
    while hits < 300:
        n = rng.randint(2, 5)
        vecs = [tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(n + 1)]
        kernel = gauss_kernel(vecs)
        dep = nullspace_dependence(vecs, 0)
        if len(kernel) != 1:
            assert dep is None
            continue
        hits += 1
        assert dep is not None
        # exactness: sum c_i v_i = 0 and the coefficients are primitive
        for coord in range(n):
            assert sum(c * v[coord] for c, v in zip(dep.coeffs, vecs)) == 0
        from math import gcd

        g = 0
        for c in dep.coeffs:
            g = gcd(g, c)
        assert g == 1
        lead = dep.coeffs[0] if not dep.pivot_zero else next(c for c in dep.coeffs if c)
        assert lead > 0


def test_nullspace_rational_columns():
    vecs = [(Fraction(1, 2), 0), (0, Fraction(1, 3)), (Fraction(1, 2), Fraction(1, 3))]
    dep = nullspace_dependence(vecs, 0)
    for coord in range(2):
        assert sum(c * v[coord] for c, v in zip(dep.coeffs, vecs)) == 0


def test_solve_square():
    x = solve_square([[2, 1], [1, 3]], [5, 10])
    assert x == [Fraction(1), Fraction(3)]
    assert solve_square([[1, 1], [2, 2]], [1, 2]) is None


def test_matrix_rank():
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 0], [0, 1]]) == 2


def test_lp_feasible_trivial():
    x = lp_feasible([([1], 1)], 1)
    assert x is not None and x[0] >= 1
    assert lp_feasible([([1], 1), ([-1], 0)], 1) is None


def test_lp_feasible_with_lower_bounds():
    x = lp_feasible([([1, 1], 5)], 2, lower=[Fraction(1), Fraction(1)])
    assert x is not None and x[0] >= 1 and x[1] >= 1 and x[0] + x[1] >= 5


def test_lp_feasible_equalities_via_pairs():
    rows = [([1, 1], 2), ([-1, -1], -2), ([1, -1], 0), ([-1, 1], 0)]
    x = lp_feasible(rows, 2)
    assert x == [Fraction(1), Fraction(1)]


def test_lp_matches_fourier_motzkin_randomized():
    rng = random.Random(4242)
    agree = 0
    for _ in range(200):
        n = rng.randint(1, 6)
        m = rng.randint(1, 5)
        rows = [
            ([rng.randint(-3, 3) for _ in range(n)], rng.randint(-4, 4))
            for _ in range(m)
        ]
        got = lp_feasible(rows, n)
        want = fourier_motzkin_feasible(rows, n)
        assert (got is not None) == want
        agree += 1
    assert agree == 200
