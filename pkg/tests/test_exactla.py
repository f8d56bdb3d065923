"""Exact linear algebra: both determinant backends against a cofactor oracle."""

import random
from fractions import Fraction

import pytest

from hgdet.exactla import (ExactMatrix, ReconstructionError, crt_combine,
                           det_bareiss, det_exact, det_multimodular,
                           hadamard_bound, modular_primes, rank_exact)


def cofactor_det(rows):
    """Independent reference determinant by Laplace expansion."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def random_dense(n, rng, rational=False):
    if rational:
        return [[Fraction(rng.randint(-4, 4), rng.randint(1, 4))
                 for _ in range(n)] for _ in range(n)]
    return [[rng.randint(-4, 4) if rng.random() < 0.8 else 0
             for _ in range(n)] for _ in range(n)]


def test_det_identity_and_zero():
    eye = ExactMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert det_bareiss(eye) == 1
    assert det_multimodular(eye) == 1
    assert det_bareiss(ExactMatrix(0, 0)) == 1
    equal_cols = ExactMatrix.from_rows([[2, 2, 5], [1, 1, 3], [7, 7, 2]])
    assert det_bareiss(equal_cols) == 0
    assert det_multimodular(equal_cols) == 0


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det_bareiss(ExactMatrix(2, 3))
    with pytest.raises(ValueError):
        det_multimodular(ExactMatrix(2, 3))


def test_det_against_cofactor_oracle_integers():
    rng = random.Random(101)
    for _ in range(200):
        n = rng.randint(0, 6)
        rows = random_dense(n, rng)
        expected = cofactor_det(rows)
        m = ExactMatrix.from_rows(rows) if n else ExactMatrix(0, 0)
        assert det_bareiss(m) == expected
        assert det_multimodular(m) == expected


def test_det_against_cofactor_oracle_rationals():
    rng = random.Random(202)
    for _ in range(60):
        n = rng.randint(1, 5)
        rows = random_dense(n, rng, rational=True)
        expected = cofactor_det(rows)
        m = ExactMatrix.from_rows(rows)
        assert det_bareiss(m) == expected
        assert det_multimodular(m) == expected


def test_integer_form_bookkeeping():
    m = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)],
                               [Fraction(2, 5), 1]])
    ints, divisor = m.integer_form()
    assert divisor == 30  # lcm(2,3) * lcm(5,1)
    assert ints == {(0, 0): 3, (0, 1): 2, (1, 0): 2, (1, 1): 5}
    assert det_bareiss(m) == Fraction(3 * 5 - 2 * 2, 30)


def test_rank_basics():
    assert rank_exact(ExactMatrix(4, 7)) == 0
    eye = ExactMatrix(5, 5, {(i, i): 1 for i in range(5)})
    assert rank_exact(eye) == 5
    m = ExactMatrix.from_rows([[1, 2], [2, 4], [3, 6]])
    assert rank_exact(m) == 1


def test_rank_transpose_invariance():
    rng = random.Random(303)
    for _ in range(40):
        n, c = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randint(-3, 3) if rng.random() < 0.6 else 0
                 for _ in range(c)] for _ in range(n)]
        m = ExactMatrix.from_rows(rows)
        assert rank_exact(m) == rank_exact(m.transpose())


def test_backends_agree_on_larger_sparse():
    rng = random.Random(404)
    entries = {}
    n = 200
    for i in range(n):
        entries[(i, i)] = rng.choice((-1, 1))
        for _ in range(2):
            entries[(i, rng.randrange(n))] = rng.choice((-1, 1))
    m = ExactMatrix(n, n, entries)
    assert det_bareiss(m) == det_multimodular(m)


def test_multimodular_zero_row_shortcut():
    m = ExactMatrix(3, 3, {(0, 0): 1, (0, 1): 2, (2, 2): 5})
    assert det_multimodular(m) == 0
    assert det_bareiss(m) == 0


def test_multimodular_threads_match():
    rng = random.Random(505)
    rows = random_dense(40, rng)
    m = ExactMatrix.from_rows(rows)
    assert det_multimodular(m, threads=1) == det_multimodular(m, threads=3)


def test_det_exact_dispatch():
    rows = [[3, 1], [4, 2]]
    m = ExactMatrix.from_rows(rows)
    assert det_exact(m, backend="auto") == 2
    assert det_exact(m, backend="auto", threshold=1) == 2  # multimodular route
    assert det_exact(m, backend="bareiss") == 2
    assert det_exact(m, backend="multimodular") == 2
    with pytest.raises(ValueError):
        det_exact(m, backend="gauss")


def test_modular_primes_properties():
    primes = modular_primes(40)
    assert len(set(primes)) == 40
    assert all(p < 2 ** 31 for p in primes)
    assert primes == sorted(primes, reverse=True)
    for p in primes[:5]:
        assert pow(2, p - 1, p) == 1  # Fermat spot-check
    # deterministic across calls
    assert modular_primes(10) == primes[:10]


def test_crt_combine():
    primes = modular_primes(5)
    value = 12345678901234567890
    residues = [value % p for p in primes]
    combined = crt_combine(residues, primes)
    modulus = 1
    for p in primes:
        modulus *= p
    assert combined == value % modulus


def test_hadamard_bound_dominates_det():
    rng = random.Random(606)
    for _ in range(50):
        n = rng.randint(1, 5)
        rows = random_dense(n, rng)
        m = ExactMatrix.from_rows(rows)
        ints, _ = m.integer_form()
        assert abs(cofactor_det(rows)) <= hadamard_bound(ints, n)


def test_rank_and_det_against_sympy():
    sympy = pytest.importorskip("sympy")
    rng = random.Random(707)
    for _ in range(60):
        n, c = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                 if rng.random() < 0.7 else 0 for _ in range(c)]
                for _ in range(n)]
        m = ExactMatrix.from_rows(rows)
        sm = sympy.Matrix(rows)
        assert rank_exact(m) == sm.rank()
        if n == c:
            assert det_bareiss(m) == Fraction(str(sm.det()))


def test_reconstruction_error_is_raised_on_corrupt_residues(monkeypatch):
    import hgdet.exactla as ex

    m = ExactMatrix.from_rows([[2, 1], [1, 2]])
    original = ex._residue_mod_p
    calls = []

    def corrupt(ints, n, p):
        calls.append(p)
        r = original(ints, n, p)
        return r if len(calls) > 1 else (r + 1) % p

    monkeypatch.setattr(ex, "_residue_mod_p", corrupt)
    with pytest.raises(ReconstructionError):
        ex.det_multimodular(m)
