#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qwit/states.hpp"
#include "qwit/tomography.hpp"

using qwit::AncillaIndex;
using qwit::AncillaState;
using qwit::cd;
using qwit::ComplexMatrix;

namespace {

// closed-form 2x2 Hermitian spectrum
std::pair<double, double> eig2(const ComplexMatrix& m) {
    const double tr = m.trace().real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return {tr / 2.0 + disc, tr / 2.0 - disc};
}

} // namespace

TEST_CASE("rho_v endpoints match the pure and dephased states") {
    CHECK(qwit::max_abs_diff(qwit::rho_v(0.0).matrix(),
                             qwit::bell_projector(qwit::Bell::psi_minus)) < 1e-15);

    const ComplexMatrix dephased = ComplexMatrix::from_rows({{0.5, 0.0, 0.0, 0.0},
                                                             {0.0, 0.0, 0.0, 0.0},
                                                             {0.0, 0.0, 0.0, 0.0},
                                                             {0.0, 0.0, 0.0, 0.5}});
    CHECK(qwit::max_abs_diff(qwit::rho_v(1.0).matrix(), dephased) == 0.0);
}

TEST_CASE("rho_v midpoint entries") {
    const ComplexMatrix m = qwit::rho_v(0.5).matrix();
    CHECK(m(0, 0) == cd{0.25, 0.0});
    CHECK(m(3, 3) == cd{0.25, 0.0});
    CHECK(m(1, 1) == cd{0.25, 0.0});
    CHECK(m(2, 2) == cd{0.25, 0.0});
    CHECK(m(1, 2) == cd{-0.25, 0.0});
    CHECK(m(2, 1) == cd{-0.25, 0.0});
    CHECK(m(0, 3) == cd{0.0, 0.0});
}

TEST_CASE("rho_v rejects out-of-range v") {
    CHECK_THROWS_AS(qwit::rho_v(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(qwit::rho_v(1.01), std::invalid_argument);
}

TEST_CASE("rho_v is affine in v") {
    const ComplexMatrix lo = qwit::rho_v(0.0).matrix();
    const ComplexMatrix hi = qwit::rho_v(1.0).matrix();
    for (int i = 0; i <= 20; ++i) {
        const double lambda = static_cast<double>(i) / 20.0;
        ComplexMatrix blend = hi;
        blend *= lambda;
        ComplexMatrix rest = lo;
        rest *= (1.0 - lambda);
        blend += rest;
        CHECK(qwit::max_abs_diff(qwit::rho_v(lambda).matrix(), blend) < 1e-12);
    }
}

TEST_CASE("rho_v entanglement boundary sits at v = 1/2") {
    CHECK(qwit::tangle(qwit::rho_v(0.49)).tangle > 0.0);
    CHECK(qwit::tangle(qwit::rho_v(0.5)).tangle == 0.0);
    CHECK(qwit::tangle(qwit::rho_v(0.51)).tangle == 0.0);
}

TEST_CASE("v_from_theta hits the tabulated angles") {
    CHECK(qwit::v_from_theta(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(qwit::v_from_theta(22.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(qwit::v_from_theta(45.0)) < 1e-12);
    CHECK(qwit::v_from_theta(30.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(qwit::v_from_theta(15.0) == doctest::Approx(0.75).epsilon(1e-12));

    const qwit::MixingAngle angle = qwit::MixingAngle::from_theta(22.5);
    CHECK(std::abs(angle.v - qwit::v_from_theta(angle.theta_deg)) < 1e-12);
}

TEST_CASE("flipped family swaps the support to HV/VH") {
    const ComplexMatrix m1 = qwit::rho_v_flipped(1.0).matrix();
    const ComplexMatrix expected = ComplexMatrix::from_rows({{0.0, 0.0, 0.0, 0.0},
                                                             {0.0, 0.5, 0.0, 0.0},
                                                             {0.0, 0.0, 0.5, 0.0},
                                                             {0.0, 0.0, 0.0, 0.0}});
    CHECK(qwit::max_abs_diff(m1, expected) < 1e-14);
    // v = 0 lands on the Phi- projector
    CHECK(qwit::max_abs_diff(qwit::rho_v_flipped(0.0).matrix(),
                             qwit::bell_projector(qwit::Bell::phi_minus)) < 1e-14);
}

TEST_CASE("ancilla catalog satisfies its invariants") {
    using I = AncillaIndex;
    for (I idx : {I::mixed0, I::x1, I::y2, I::z3, I::diag4, I::diag4p}) {
        const AncillaState a(idx);
        CHECK(a.matrix().is_hermitian(1e-12));
        CHECK(std::abs(a.matrix().trace() - cd{1.0, 0.0}) < 1e-12);
        const auto [hi, lo] = eig2(a.matrix());
        CHECK(lo > -1e-10);
        CHECK(hi < 1.0 + 1e-10);
        const double target_purity = (idx == I::mixed0) ? 0.5 : 1.0;
        CHECK(a.purity() == doctest::Approx(target_purity).epsilon(1e-10));
    }
}

TEST_CASE("ancilla_set returns the documented pairs") {
    const auto same = qwit::ancilla_set(qwit::PairClass::same_sign);
    const auto mixed = qwit::ancilla_set(qwit::PairClass::mixed_sign);
    REQUIRE(same.size() == 6);
    REQUIRE(mixed.size() == 6);

    // (tau_3, omega_3) is |H><H| on both sides
    const ComplexMatrix h_proj = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    CHECK(qwit::max_abs_diff(same[3].first.matrix(), h_proj) < 1e-15);
    CHECK(qwit::max_abs_diff(same[3].second.matrix(), h_proj) < 1e-15);

    // tau_4 = (I + (x+y+z)/sqrt3)/2 appears in the same-sign set only
    const double r3 = 1.0 / std::sqrt(3.0);
    ComplexMatrix diag = ComplexMatrix::identity(2);
    diag += r3 * qwit::pauli(1) + r3 * qwit::pauli(2) + r3 * qwit::pauli(3);
    diag *= 0.5;
    CHECK(qwit::max_abs_diff(same[5].first.matrix(), diag) < 1e-15);

    ComplexMatrix diagp = ComplexMatrix::identity(2);
    diagp += (-r3) * qwit::pauli(1) + (-r3) * qwit::pauli(2) + r3 * qwit::pauli(3);
    diagp *= 0.5;
    CHECK(qwit::max_abs_diff(mixed[5].first.matrix(), diagp) < 1e-15);

    // union over both classes: exactly eight distinct settings
    std::set<std::pair<int, int>> keys;
    for (const auto& set : {same, mixed}) {
        for (const auto& [tau, omega] : set) {
            keys.emplace(static_cast<int>(tau.index()), static_cast<int>(omega.index()));
        }
    }
    CHECK(keys.size() == 8);
}

TEST_CASE("tilde flips off-diagonals, fixes diagonals, and is an involution") {
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= 0.5;
    CHECK(qwit::max_abs_diff(qwit::tilde(half), half) == 0.0);

    ComplexMatrix xp = ComplexMatrix::identity(2);
    xp += qwit::pauli(1);
    xp *= 0.5;
    ComplexMatrix xm = ComplexMatrix::identity(2);
    xm -= qwit::pauli(1);
    xm *= 0.5;
    CHECK(qwit::max_abs_diff(qwit::tilde(xp), xm) == 0.0);

    ComplexMatrix yp = ComplexMatrix::identity(2);
    yp += qwit::pauli(2);
    yp *= 0.5;
    CHECK(qwit::max_abs_diff(qwit::tilde(qwit::tilde(yp)), yp) == 0.0);

    CHECK_THROWS_AS(qwit::tilde(ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("tilde preserves hermiticity, trace, and the 2x2 spectrum") {
    for (AncillaIndex idx : {AncillaIndex::x1, AncillaIndex::y2, AncillaIndex::diag4}) {
        const ComplexMatrix m = AncillaState(idx).matrix();
        const ComplexMatrix t = qwit::tilde(m);
        CHECK(t.is_hermitian(1e-14));
        CHECK(std::abs(t.trace() - m.trace()) < 1e-14);
        const auto [h1, l1] = eig2(m);
        const auto [h2, l2] = eig2(t);
        CHECK(h1 == doctest::Approx(h2).epsilon(1e-12));
        CHECK(l1 == doctest::Approx(l2).epsilon(1e-12));
    }
}

TEST_CASE("state validation rejects malformed density matrices") {
    ComplexMatrix nonherm(4);
    nonherm(0, 0) = 1.0;
    nonherm(0, 1) = cd{0.0, 0.5};
    CHECK_THROWS_AS(qwit::TwoQubitState::validated(nonherm, "bad"), std::invalid_argument);

    ComplexMatrix offtrace = ComplexMatrix::identity(4);
    CHECK_THROWS_AS(qwit::TwoQubitState::validated(offtrace, "bad"), std::invalid_argument);

    ComplexMatrix indefinite(4);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    CHECK_THROWS_AS(qwit::TwoQubitState::validated(indefinite, "bad"), std::invalid_argument);

    const qwit::TwoQubitState relaxed = qwit::TwoQubitState::relaxed(indefinite, "flagged");
    CHECK_FALSE(relaxed.physical());
    CHECK(relaxed.min_eigenvalue() == doctest::Approx(-0.5).epsilon(1e-10));
}
