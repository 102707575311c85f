#include "qwit/witness.hpp"

#include <cmath>

namespace qwit {

WitnessOperator::WitnessOperator(ComplexMatrix m) : matrix_(std::move(m)) {
    if (matrix_.dim() != 4) {
        throw std::invalid_argument("witness operator must be 4x4");
    }
    if (!matrix_.is_hermitian(1e-12)) {
        throw std::invalid_argument("witness operator must be Hermitian");
    }
}

const WitnessOperator& WitnessOperator::singlet() {
    static const WitnessOperator w = [] {
        ComplexMatrix m = ComplexMatrix::identity(4);
        m *= 0.5;
        m -= bell_projector(Bell::psi_minus);
        return WitnessOperator(std::move(m));
    }();
    return w;
}

double witness_value_exact(const TwoQubitState& rho) {
    return expectation(WitnessOperator::singlet().matrix(), rho.matrix());
}

double witness_value_from_correlations(const PauliCorrelations& c) {
    for (double e : {c.exx, c.eyy, c.ezz}) {
        if (std::abs(e) > 1.0 + 1e-9) {
            throw std::invalid_argument("correlation outside [-1, 1]");
        }
    }
    return (1.0 + c.exx + c.eyy + c.ezz) / 4.0;
}

PauliCorrelations pauli_correlations(const TwoQubitState& rho) {
    auto corr = [&rho](int i) {
        return expectation(tensor(pauli(i), pauli(i)), rho.matrix());
    };
    return {corr(1), corr(2), corr(3)};
}

std::array<AxisSignProbs, 3> axis_sign_probabilities(const TwoQubitState& rho) {
    std::array<AxisSignProbs, 3> out{};
    for (int i = 1; i <= 3; ++i) {
        ComplexMatrix plus = ComplexMatrix::identity(2);
        plus += pauli(i);
        plus *= 0.5;
        ComplexMatrix minus = ComplexMatrix::identity(2);
        minus -= pauli(i);
        minus *= 0.5;
        AxisSignProbs& p = out[static_cast<std::size_t>(i - 1)];
        p.pp = expectation(tensor(plus, plus), rho.matrix());
        p.pm = expectation(tensor(plus, minus), rho.matrix());
        p.mp = expectation(tensor(minus, plus), rho.matrix());
        p.mm = expectation(tensor(minus, minus), rho.matrix());
    }
    return out;
}

} // namespace qwit
