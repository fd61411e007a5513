import random
from fractions import Fraction

import pytest

from letterbraid.rings import (QQ, ZZ, Matrix, PrimeField, det, kernel_basis,
                               mat_mul, membership, rank, ring_from_flag,
                               smith_form)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        PrimeField(1)
    assert PrimeField(2).p == 2
    assert PrimeField(101).invert(7) * 7 % 101 == 1


def test_ring_flags():
    assert ring_from_flag("z") == ZZ
    assert ring_from_flag("q") == QQ
    assert ring_from_flag("fp:5") == PrimeField(5)
    with pytest.raises(ValueError):
        ring_from_flag("fp:8")
    with pytest.raises(ValueError):
        ring_from_flag("r")


def test_rational_canonical_form():
    assert QQ.parse("4/6") == Fraction(2, 3)
    v = QQ.divide(QQ.from_int(3), QQ.from_int(-6))
    assert v.denominator > 0 and v == Fraction(-1, 2)


def test_kernel_of_invertible_matrix_is_empty():
    M = Matrix(QQ, [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])
    assert kernel_basis(M) == []


def test_integer_kernel_is_saturated_on_rank_one_example():
    M = Matrix(ZZ, [[2, -2]])
    assert kernel_basis(M) == [[1, 1]]


def test_kernel_of_zero_map_is_standard_basis():
    F3 = PrimeField(3)
    M = Matrix(F3, [[0, 0, 0]])
    assert kernel_basis(M) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_smith_form_examples():
    _, D, _ = smith_form(Matrix(ZZ, [[2, 0], [0, 3]]))
    assert [D.entries[i][i] for i in range(2)] == [1, 6]
    _, D, _ = smith_form(Matrix(ZZ, [[1, 0], [0, 1]]))
    assert [D.entries[i][i] for i in range(2)] == [1, 1]
    _, D, _ = smith_form(Matrix(ZZ, [[0]]))
    assert D.entries[0][0] == 0


def test_membership_examples():
    assert membership(Matrix(ZZ, [[2]]), [4]) == [2]
    assert membership(Matrix(ZZ, [[2]]), [3]) is None
    x = membership(Matrix(QQ, [[Fraction(2)]]), [Fraction(3)])
    assert x == [Fraction(3, 2)]
    with pytest.raises(ValueError):
        membership(Matrix(ZZ, [[1, 2]]), [1, 2])


def test_smith_form_random_matrices_exact():
    rng = random.Random(1)
    for _ in range(60):
        m = rng.randint(1, 8)
        n = rng.randint(1, 8)
        M = Matrix(ZZ, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
        U, D, V = smith_form(M)
        assert mat_mul(mat_mul(U, M), V).entries == D.entries
        assert det(U) in (1, -1)
        assert det(V) in (1, -1)
        divisors = [D.entries[i][i] for i in range(min(m, n))]
        for a, b in zip(divisors, divisors[1:]):
            assert a >= 0 and (a == 0 and b == 0 or b % max(a, 1) == 0 or a == 0)
        # off-diagonal must vanish
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert D.entries[i][j] == 0


def test_integer_kernel_saturation_random():
    # Any integer kernel vector (rational kernel with denominators cleared)
    # must be an integer combination of the returned lattice basis.
    rng = random.Random(2)
    for _ in range(100):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        M = Matrix(ZZ, rows)
        basis = kernel_basis(M)
        for v in basis:
            assert all(x == 0 for x in M.mul_vec(v))
        Mq = Matrix(QQ, [[Fraction(x) for x in row] for row in rows])
        qbasis = kernel_basis(Mq)
        if not qbasis:
            assert basis == []
            continue
        combo = [QQ.zero] * n
        for vec in qbasis:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            combo = [combo[j] + c * vec[j] for j in range(n)]
        denom = 1
        for x in combo:
            denom = denom * x.denominator // __import__("math").gcd(denom, x.denominator)
        target = [int(x * denom) for x in combo]
        lattice = Matrix(ZZ, [[b[i] for b in basis] for i in range(n)], cols=len(basis))
        assert membership(lattice, target) is not None


def test_field_axioms_random_triples():
    rng = random.Random(3)
    for ring in (QQ, PrimeField(5), PrimeField(97)):
        for _ in range(200):
            a, b, c = (ring.from_int(rng.randint(-30, 30)) for _ in range(3))
            assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
            assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
            assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
            if a != ring.zero:
                assert ring.mul(a, ring.invert(a)) == ring.one


def test_scalar_wrapper():
    from letterbraid.rings import Scalar
    F5 = PrimeField(5)
    a = Scalar(F5, 7)
    assert a.value == 2 and str(a) == "2"
    assert (a + Scalar(F5, 4)).value == 1
    assert (-Scalar(ZZ, 3)).value == -3
    assert (Scalar(QQ, 2) * Scalar(QQ, Fraction(1, 2))).value == 1


def test_rank_and_kernel_dimensions_agree():
    rng = random.Random(4)
    for ring in (QQ, PrimeField(3)):
        for _ in range(50):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            M = Matrix(ring, [[ring.from_int(rng.randint(-4, 4)) for _ in range(n)]
                              for _ in range(m)])
            assert rank(M) + len(kernel_basis(M)) == n
