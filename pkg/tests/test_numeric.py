import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymq.errors import DomainError
from asymq.numeric import (LogValue, binary_entropy, binary_entropy_family, binomial_exact,
                           gaussian_cdf, gaussian_quantile, log_binomial, log_fraction)


def pascal_triangle(rows):
    tri = [[1]]
    for n in range(1, rows + 1):
        prev = tri[-1]
        tri.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return tri


class TestBinomialExact:
    def test_small_values(self):
        assert binomial_exact(4, 2) == 6
        assert binomial_exact(4, -1) == 0
        assert binomial_exact(4, 5) == 0
        assert binomial_exact(0, 0) == 1

    def test_against_pascal_recurrence(self):
        tri = pascal_triangle(60)
        for n in range(61):
            for r in range(n + 1):
                assert binomial_exact(n, r) == tri[n][r]
        assert binomial_exact(30, 15) == tri[30][15] == 155117520

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            binomial_exact(-1, 0)


class TestLogBinomial:
    def test_exact_small(self):
        assert log_binomial(4, 2) == pytest.approx(math.log(6), abs=1e-15)
        assert log_binomial(7, 0) == 0.0

    def test_base(self):
        assert log_binomial(4, 2, base=2.0) == pytest.approx(math.log2(6), abs=1e-13)

    def test_paths_agree(self):
        for n in range(201):
            for r in range(n + 1):
                want = binomial_exact(n, r)
                for exact in (True, False):
                    got = math.exp(log_binomial(n, r, exact=exact))
                    assert got == pytest.approx(want, rel=1e-12)

    def test_large_n_entropy_form(self):
        # n h(r/n) - (1/2) log n - (1/2) log(2 pi (r/n)(1 - r/n)) at n = 10^4
        n, r = 10000, 5000
        rhs = (n * binary_entropy(0.5) - 0.5 * math.log(n)
               - 0.5 * math.log(2 * math.pi * 0.25))
        assert log_binomial(n, r) == pytest.approx(rhs, rel=1e-4)

    def test_domain(self):
        with pytest.raises(DomainError):
            log_binomial(4, 5)
        with pytest.raises(DomainError):
            log_binomial(4, -1)


class TestBinaryEntropy:
    def test_values(self):
        assert binary_entropy_family(0.5, 0, 2.0) == pytest.approx(1.0, abs=1e-15)
        assert binary_entropy_family(0.0) == 0.0
        assert binary_entropy_family(1.0) == 0.0
        assert binary_entropy_family(0.3, 0, 2.0) == pytest.approx(0.881291, abs=1e-6)

    def test_symmetry(self):
        for i in range(1, 20):
            t = i / 20
            assert binary_entropy(t) == pytest.approx(binary_entropy(1 - t), abs=1e-14)
            assert binary_entropy_family(t, 1) == pytest.approx(-binary_entropy_family(1 - t, 1), abs=1e-12)

    def test_first_derivative_finite_difference(self):
        eps = 1e-5
        for i in range(1, 19):
            t = 0.05 * i
            fd = (binary_entropy(t + eps) - binary_entropy(t - eps)) / (2 * eps)
            assert abs(binary_entropy_family(t, 1) - fd) < 1e-6

    def test_second_derivative_finite_difference(self):
        eps = 1e-4
        for t in (0.2, 0.5, 0.7):
            fd = (binary_entropy_family(t + eps, 1) - binary_entropy_family(t - eps, 1)) / (2 * eps)
            assert abs(binary_entropy_family(t, 2) - fd) < 1e-5

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            binary_entropy_family(-0.1)
        with pytest.raises(DomainError):
            binary_entropy_family(1.1)
        with pytest.raises(DomainError):
            binary_entropy_family(0.0, 1)
        with pytest.raises(DomainError):
            binary_entropy_family(1.0, 2)
        with pytest.raises(DomainError):
            binary_entropy_family(0.5, 3)


def gaussian_cdf_series(t):
    # Taylor series Phi(t) = 1/2 + (1/sqrt(2 pi)) sum (-1)^k t^(2k+1) / (k! 2^k (2k+1))
    acc = 0.0
    term_k = t
    for k in range(0, 60):
        acc += term_k / (2 * k + 1)
        term_k *= -t * t / (2 * (k + 1))
    return 0.5 + acc / math.sqrt(2 * math.pi)


class TestGaussian:
    def test_symmetry_points(self):
        assert gaussian_cdf(0.0) == pytest.approx(0.5, abs=1e-15)
        assert gaussian_quantile(0.5) == pytest.approx(0.0, abs=1e-12)

    def test_against_series_oracle(self):
        for t in (-2.5, -1.0, 0.3, 1.96, 3.0):
            assert gaussian_cdf(t) == pytest.approx(gaussian_cdf_series(t), abs=1e-12)
        assert gaussian_cdf(1.96) == pytest.approx(0.975002, abs=5e-7)

    def test_roundtrip(self):
        for i in range(1, 100):
            p = i / 100
            assert abs(gaussian_cdf(gaussian_quantile(p)) - p) < 1e-10
        for p in (1e-6, 1 - 1e-6):
            assert abs(gaussian_cdf(gaussian_quantile(p)) - p) < 1e-10

    def test_reflection_and_monotone(self):
        grid = [i / 10 for i in range(-40, 41)]
        for t in grid:
            assert abs(gaussian_cdf(-t) - (1 - gaussian_cdf(t))) < 1e-12
        values = [gaussian_cdf(t) for t in grid]
        assert all(a <= b for a, b in zip(values, values[1:]))

    def test_quantile_domain(self):
        for p in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(DomainError):
                gaussian_quantile(p)


class TestLogValue:
    @given(st.floats(min_value=1e-300, max_value=1e300))
    def test_roundtrip_positive(self, x):
        assert LogValue.from_float(x).to_float() == pytest.approx(x, rel=1e-12)

    @given(st.floats(min_value=-1e300, max_value=-1e-300))
    def test_roundtrip_negative(self, x):
        v = LogValue.from_float(x)
        assert v.sign == -1
        assert v.to_float() == pytest.approx(x, rel=1e-12)

    def test_zero(self):
        v = LogValue.from_float(0.0)
        assert v.sign == 0 and v.to_float() == 0.0

    def test_arithmetic(self):
        # products far beyond float range stay representable on the log scale
        a = LogValue.from_float(1e200)
        b = LogValue.from_float(-4e150)
        prod = a * b
        assert prod.sign == -1
        assert prod.value == pytest.approx(200 * math.log(10) + math.log(4e150), rel=1e-12)
        quot = a / b
        assert quot.sign == -1
        assert quot.to_float() == pytest.approx(-2.5e49, rel=1e-12)
        with pytest.raises(ZeroDivisionError):
            a / LogValue.from_float(0.0)


class TestLogFraction:
    def test_huge_rational(self):
        q = Fraction(math.factorial(500), math.factorial(300) * math.factorial(200))
        assert log_fraction(q) == pytest.approx(log_binomial(500, 200), rel=1e-13)

    def test_base_and_domain(self):
        assert log_fraction(Fraction(1, 8), base=2.0) == pytest.approx(-3.0, abs=1e-13)
        with pytest.raises(DomainError):
            log_fraction(Fraction(0))
