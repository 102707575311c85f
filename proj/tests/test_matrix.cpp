#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qwit/matrix.hpp"
#include "qwit/rng.hpp"
#include "qwit/states.hpp"

using qwit::cd;
using qwit::ComplexMatrix;
using qwit::Rng;

namespace {

ComplexMatrix random_matrix(Rng& rng, std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            m(i, j) = cd{rng.next_gaussian(), rng.next_gaussian()};
        }
    }
    return m;
}

// Entries from a small dyadic set keep all kron products exact in binary64.
ComplexMatrix random_dyadic_matrix(Rng& rng, std::size_t dim) {
    static const double vals[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            m(i, j) = cd{vals[rng.next_below(5)], vals[rng.next_below(5)]};
        }
    }
    return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
    ComplexMatrix a = random_matrix(rng, dim);
    ComplexMatrix h = a;
    h += a.adjoint();
    h *= 0.5;
    return h;
}

// LU determinant, used as an eigenvalue oracle independent of the QR path.
cd det4(const ComplexMatrix& m) {
    std::vector<cd> a(m.data(), m.data() + 16);
    cd det = 1.0;
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < 4; ++r) {
            if (std::abs(a[r * 4 + c]) > std::abs(a[p * 4 + c])) {
                p = r;
            }
        }
        if (std::abs(a[p * 4 + c]) == 0.0) {
            return 0.0;
        }
        if (p != c) {
            for (std::size_t j = 0; j < 4; ++j) {
                std::swap(a[p * 4 + j], a[c * 4 + j]);
            }
            det = -det;
        }
        det *= a[c * 4 + c];
        for (std::size_t r = c + 1; r < 4; ++r) {
            const cd f = a[r * 4 + c] / a[c * 4 + c];
            for (std::size_t j = c; j < 4; ++j) {
                a[r * 4 + j] -= f * a[c * 4 + j];
            }
        }
    }
    return det;
}

} // namespace

TEST_CASE("tensor identity and diagonal cases") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(qwit::max_abs_diff(qwit::tensor(i2, i2), ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix zz = qwit::tensor(qwit::pauli(3), qwit::pauli(3));
    const ComplexMatrix expected = ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                                             {0.0, -1.0, 0.0, 0.0},
                                                             {0.0, 0.0, -1.0, 0.0},
                                                             {0.0, 0.0, 0.0, 1.0}});
    CHECK(qwit::max_abs_diff(zz, expected) == 0.0);
}

TEST_CASE("tensor of bit flips swaps |HV> to |VH> as a column action") {
    const ComplexMatrix xx = qwit::tensor(qwit::pauli(1), qwit::pauli(1));
    // column 1 (|HV>) must be the unit vector at row 2 (|VH>)
    for (std::size_t r = 0; r < 4; ++r) {
        CHECK(xx(r, 1) == (r == 2 ? cd{1.0, 0.0} : cd{0.0, 0.0}));
    }
}

TEST_CASE("tensor is associative with exact entries") {
    Rng rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        const ComplexMatrix a = random_dyadic_matrix(rng, 2);
        const ComplexMatrix b = random_dyadic_matrix(rng, 2);
        const ComplexMatrix c = random_dyadic_matrix(rng, 4);
        const ComplexMatrix left = qwit::tensor(qwit::tensor(a, b), c);
        const ComplexMatrix right = qwit::tensor(a, qwit::tensor(b, c));
        CHECK(qwit::max_abs_diff(left, right) == 0.0);
    }
}

TEST_CASE("trace of a tensor product factorizes") {
    Rng rng(12);
    for (int rep = 0; rep < 25; ++rep) {
        const ComplexMatrix a = random_matrix(rng, 2);
        const ComplexMatrix b = random_matrix(rng, 4);
        const cd lhs = qwit::tensor(a, b).trace();
        const cd rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("partial trace reduces maximally entangled states to I/2") {
    const ComplexMatrix phi = qwit::bell_projector(qwit::Bell::phi_plus);
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= 0.5;
    CHECK(qwit::max_abs_diff(qwit::partial_trace(phi, qwit::Subsystem::b, 2, 2), half) <
          1e-14);
    // fully dephased member of the family reduces the same way
    const ComplexMatrix rho1 = qwit::rho_v(1.0).matrix();
    CHECK(qwit::max_abs_diff(qwit::partial_trace(rho1, qwit::Subsystem::b, 2, 2), half) <
          1e-14);
}

TEST_CASE("partial trace of a product factorizes and preserves trace") {
    Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_matrix(rng, 2);
        const ComplexMatrix b = random_matrix(rng, 2);
        const ComplexMatrix ab = qwit::tensor(a, b);
        ComplexMatrix scaled = a;
        scaled *= b.trace();
        CHECK(qwit::max_abs_diff(qwit::partial_trace(ab, qwit::Subsystem::b, 2, 2), scaled) <
              1e-12);

        const ComplexMatrix m = random_matrix(rng, 4);
        const cd t0 = m.trace();
        CHECK(std::abs(qwit::partial_trace(m, qwit::Subsystem::a, 2, 2).trace() - t0) < 1e-12);
        CHECK(std::abs(qwit::partial_trace(m, qwit::Subsystem::b, 2, 2).trace() - t0) < 1e-12);
    }
}

TEST_CASE("partial trace rejects inconsistent dimensions") {
    CHECK_THROWS_AS(qwit::partial_trace(ComplexMatrix::identity(4), qwit::Subsystem::b, 2, 3),
                    std::invalid_argument);
}

TEST_CASE("eigenvalues of a diagonal matrix come back sorted") {
    const ComplexMatrix d = ComplexMatrix::from_rows({{4.0, 0.0, 0.0, 0.0},
                                                      {0.0, 3.0, 0.0, 0.0},
                                                      {0.0, 0.0, 2.0, 0.0},
                                                      {0.0, 0.0, 0.0, 1.0}});
    const auto eig = qwit::eigenvalues_4x4(d);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(eig[static_cast<std::size_t>(i)] - cd{4.0 - i, 0.0}) < 1e-12);
    }
}

TEST_CASE("eigenvalue sum matches trace and Hermitian spectra are real") {
    Rng rng(14);
    for (int rep = 0; rep < 40; ++rep) {
        const ComplexMatrix m = random_matrix(rng, 4);
        const auto eig = qwit::eigenvalues_4x4(m);
        cd sum = 0.0;
        for (cd l : eig) {
            sum += l;
        }
        CHECK(std::abs(sum - m.trace()) < 1e-9);

        const ComplexMatrix h = random_hermitian(rng, 4);
        for (cd l : qwit::eigenvalues_4x4(h)) {
            CHECK(std::abs(l.imag()) < 1e-10);
        }
    }
}

TEST_CASE("every reported eigenvalue annihilates the characteristic polynomial") {
    Rng rng(15);
    for (int rep = 0; rep < 40; ++rep) {
        const ComplexMatrix m = random_matrix(rng, 4);
        const double scale = std::pow(m.frobenius_norm() + 1.0, 3.0);
        for (cd lambda : qwit::eigenvalues_4x4(m)) {
            ComplexMatrix shifted = m;
            for (std::size_t i = 0; i < 4; ++i) {
                shifted(i, i) -= lambda;
            }
            CHECK(std::abs(det4(shifted)) < 1e-8 * scale);
        }
    }
}

TEST_CASE("repeated eigenvalues of a Jordan-like block converge") {
    const ComplexMatrix j = ComplexMatrix::from_rows({{2.0, 1.0, 0.0, 0.0},
                                                      {0.0, 2.0, 1.0, 0.0},
                                                      {0.0, 0.0, 2.0, 1.0},
                                                      {0.0, 0.0, 0.0, 2.0}});
    for (cd l : qwit::eigenvalues_4x4(j)) {
        CHECK(std::abs(l - cd{2.0, 0.0}) < 1e-3); // defective: eigenvalues split O(eps^(1/4))
    }
}

TEST_CASE("eigenvalues_4x4 rejects other dimensions") {
    CHECK_THROWS_AS(qwit::eigenvalues_4x4(ComplexMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("expectation agrees with the explicit product trace") {
    Rng rng(16);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix h = random_hermitian(rng, 4);
        const ComplexMatrix s = random_hermitian(rng, 4);
        const double direct = qwit::trace_of_product(h, s).real();
        CHECK(qwit::expectation(h, s) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("inverse round-trips and rejects singular input") {
    Rng rng(17);
    for (std::size_t dim : {2u, 4u}) {
        const ComplexMatrix m = random_matrix(rng, dim);
        const ComplexMatrix prod = m * qwit::inverse(m);
        CHECK(qwit::max_abs_diff(prod, ComplexMatrix::identity(dim)) < 1e-10);
    }
    ComplexMatrix singular(2);
    singular(0, 0) = 1.0;
    singular(0, 1) = 2.0;
    singular(1, 0) = 2.0;
    singular(1, 1) = 4.0;
    CHECK_THROWS_AS(qwit::inverse(singular), std::invalid_argument);
}

TEST_CASE("trace distance separates orthogonal pure states by one") {
    const ComplexMatrix a = qwit::bell_projector(qwit::Bell::phi_plus);
    const ComplexMatrix b = qwit::bell_projector(qwit::Bell::psi_minus);
    CHECK(qwit::trace_distance(a, a) < 1e-14);
    CHECK(qwit::trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-10));
}
