#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwit/mdiew.hpp"
#include "qwit/witness.hpp"

using qwit::ComplexMatrix;
using qwit::Rng;
using qwit::TwoQubitState;

TEST_CASE("witness operator equals its Pauli expansion") {
    ComplexMatrix pauli_form(4);
    for (int i = 0; i < 4; ++i) {
        pauli_form += qwit::tensor(qwit::pauli(i), qwit::pauli(i));
    }
    pauli_form *= 0.25;
    CHECK(qwit::max_abs_diff(qwit::WitnessOperator::singlet().matrix(), pauli_form) < 1e-15);
    CHECK(qwit::WitnessOperator::singlet().matrix().is_hermitian(1e-15));
}

TEST_CASE("witness line across the family endpoints") {
    CHECK(qwit::witness_value_exact(qwit::rho_v(0.0)) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(qwit::witness_value_exact(qwit::rho_v(0.5))) < 1e-12);
    CHECK(qwit::witness_value_exact(qwit::rho_v(1.0)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("witness from correlations: fixed points") {
    CHECK(qwit::witness_value_from_correlations({-1.0, -1.0, -1.0}) ==
          doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(std::abs(qwit::witness_value_from_correlations({0.0, 0.0, -1.0})) < 1e-15);
    CHECK(qwit::witness_value_from_correlations({1.0, 1.0, 1.0}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(qwit::witness_value_from_correlations({1.5, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("correlations of the family endpoints") {
    const qwit::PauliCorrelations singlet = qwit::pauli_correlations(qwit::rho_v(0.0));
    CHECK(singlet.exx == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(singlet.eyy == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(singlet.ezz == doctest::Approx(-1.0).epsilon(1e-12));

    // dephased endpoint: only the zz correlation survives, with positive sign
    const qwit::PauliCorrelations dephased = qwit::pauli_correlations(qwit::rho_v(1.0));
    CHECK(std::abs(dephased.exx) < 1e-12);
    CHECK(std::abs(dephased.eyy) < 1e-12);
    CHECK(dephased.ezz == doctest::Approx(1.0).epsilon(1e-12));

    // the bit-flipped demo family carries the -1 zz correlation instead
    const qwit::PauliCorrelations flipped =
        qwit::pauli_correlations(qwit::rho_v_flipped(1.0));
    CHECK(std::abs(flipped.exx) < 1e-12);
    CHECK(std::abs(flipped.eyy) < 1e-12);
    CHECK(flipped.ezz == doctest::Approx(-1.0).epsilon(1e-12));

    ComplexMatrix mixed = ComplexMatrix::identity(4);
    mixed *= 0.25;
    const qwit::PauliCorrelations iso =
        qwit::pauli_correlations(TwoQubitState::validated(mixed, "I/4"));
    CHECK(std::abs(iso.exx) < 1e-15);
    CHECK(std::abs(iso.eyy) < 1e-15);
    CHECK(std::abs(iso.ezz) < 1e-15);
}

TEST_CASE("both witness evaluation routes agree on random states") {
    Rng rng(101);
    for (int rep = 0; rep < 100; ++rep) {
        const TwoQubitState rho =
            TwoQubitState::validated(qwit::random_density_matrix(rng, 4), "random");
        const double via_corr =
            qwit::witness_value_from_correlations(qwit::pauli_correlations(rho));
        const double exact = qwit::witness_value_exact(rho);
        CHECK(std::abs(via_corr - exact) < 1e-12);
    }
}

TEST_CASE("witness is nonnegative on product states") {
    Rng rng(102);
    for (int rep = 0; rep < 1000; ++rep) {
        CHECK(qwit::witness_value_exact(qwit::random_product_state(rng)) >= -1e-10);
    }
}

TEST_CASE("axis sign probabilities are normalized and consistent") {
    Rng rng(103);
    for (int rep = 0; rep < 50; ++rep) {
        const TwoQubitState rho =
            TwoQubitState::validated(qwit::random_density_matrix(rng, 4), "random");
        const auto axes = qwit::axis_sign_probabilities(rho);
        const qwit::PauliCorrelations corr = qwit::pauli_correlations(rho);
        const double expected[3] = {corr.exx, corr.eyy, corr.ezz};
        for (int i = 0; i < 3; ++i) {
            const auto& p = axes[static_cast<std::size_t>(i)];
            for (double q : {p.pp, p.pm, p.mp, p.mm}) {
                CHECK(q >= -1e-12);
            }
            CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(p.correlation() ==
                  doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-12));
        }
    }
}
