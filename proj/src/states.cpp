#include "qwit/states.hpp"

#include <cmath>

namespace qwit {

namespace {

constexpr double kPi = 3.14159265358979323846;

ComplexMatrix outer(const std::array<cd, 4>& v) {
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            m(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return m;
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
    double lo = 0.0;
    bool first = true;
    for (cd lambda : eigenvalues_4x4(m)) {
        if (first || lambda.real() < lo) {
            lo = lambda.real();
            first = false;
        }
    }
    return lo;
}

ComplexMatrix bloch(double nx, double ny, double nz) {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m += nx * pauli(1) + ny * pauli(2) + nz * pauli(3);
    m *= 0.5;
    return m;
}

} // namespace

const ComplexMatrix& pauli(int i) {
    static const ComplexMatrix sigma[4] = {
        ComplexMatrix::identity(2),
        ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
        ComplexMatrix::from_rows({{0.0, cd{0.0, -1.0}}, {cd{0.0, 1.0}, 0.0}}),
        ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}),
    };
    if (i < 0 || i > 3) {
        throw std::invalid_argument("pauli index must be 0..3");
    }
    return sigma[i];
}

std::array<cd, 4> bell_vector(Bell b) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (b) {
    case Bell::phi_plus:
        return {r, 0.0, 0.0, r};
    case Bell::phi_minus:
        return {r, 0.0, 0.0, -r};
    case Bell::psi_plus:
        return {0.0, r, r, 0.0};
    case Bell::psi_minus:
        return {0.0, r, -r, 0.0};
    }
    throw std::invalid_argument("unknown Bell state");
}

ComplexMatrix bell_projector(Bell b) { return outer(bell_vector(b)); }

TwoQubitState TwoQubitState::validated(ComplexMatrix m, std::string label) {
    if (m.dim() != 4) {
        throw std::invalid_argument(label + ": density matrix must be 4x4");
    }
    if (!m.is_hermitian(1e-10)) {
        throw std::invalid_argument(label + ": density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - cd{1.0, 0.0}) > 1e-10) {
        throw std::invalid_argument(label + ": density matrix trace is not 1");
    }
    const double min_eig = min_hermitian_eigenvalue(m);
    if (min_eig < -1e-9) {
        throw std::invalid_argument(label + ": density matrix has a negative eigenvalue");
    }
    return TwoQubitState(std::move(m), std::move(label), true, min_eig);
}

TwoQubitState TwoQubitState::relaxed(ComplexMatrix m, std::string label) {
    if (m.dim() != 4) {
        throw std::invalid_argument(label + ": density matrix must be 4x4");
    }
    if (!m.is_hermitian(1e-10)) {
        throw std::invalid_argument(label + ": density matrix is not Hermitian");
    }
    if (std::abs(m.trace() - cd{1.0, 0.0}) > 1e-10) {
        throw std::invalid_argument(label + ": density matrix trace is not 1");
    }
    const double min_eig = min_hermitian_eigenvalue(m);
    return TwoQubitState(std::move(m), std::move(label), min_eig >= -1e-9, min_eig);
}

TwoQubitState rho_v(double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("rho_v: v must lie in [0, 1]");
    }
    ComplexMatrix m(4);
    m(0, 0) = v / 2.0;
    m(3, 3) = v / 2.0;
    m(1, 1) = (1.0 - v) / 2.0;
    m(2, 2) = (1.0 - v) / 2.0;
    m(1, 2) = -(1.0 - v) / 2.0;
    m(2, 1) = -(1.0 - v) / 2.0;
    return TwoQubitState::validated(std::move(m), "rho_v");
}

TwoQubitState rho_v_flipped(double v) {
    const ComplexMatrix flip = tensor(pauli(1), pauli(0));
    ComplexMatrix m = flip * rho_v(v).matrix() * flip;
    return TwoQubitState::validated(std::move(m), "rho_v_flipped");
}

double v_from_theta(double theta_deg) {
    const double c = std::cos(2.0 * theta_deg * kPi / 180.0);
    return c * c;
}

std::string ancilla_label(AncillaIndex idx) {
    switch (idx) {
    case AncillaIndex::mixed0:
        return "0";
    case AncillaIndex::x1:
        return "1";
    case AncillaIndex::y2:
        return "2";
    case AncillaIndex::z3:
        return "3";
    case AncillaIndex::diag4:
        return "4";
    case AncillaIndex::diag4p:
        return "4p";
    }
    throw std::invalid_argument("unknown ancilla index");
}

AncillaState::AncillaState(AncillaIndex idx) : index_(idx), matrix_(2) {
    const double r3 = 1.0 / std::sqrt(3.0);
    switch (idx) {
    case AncillaIndex::mixed0:
        matrix_ = bloch(0.0, 0.0, 0.0);
        break;
    case AncillaIndex::x1:
        matrix_ = bloch(1.0, 0.0, 0.0);
        break;
    case AncillaIndex::y2:
        matrix_ = bloch(0.0, 1.0, 0.0);
        break;
    case AncillaIndex::z3:
        matrix_ = bloch(0.0, 0.0, 1.0);
        break;
    case AncillaIndex::diag4:
        matrix_ = bloch(r3, r3, r3);
        break;
    case AncillaIndex::diag4p:
        matrix_ = bloch(-r3, -r3, r3);
        break;
    }
}

double AncillaState::purity() const {
    return trace_of_product(matrix_, matrix_).real();
}

std::vector<std::pair<AncillaState, AncillaState>> ancilla_set(PairClass cls) {
    using I = AncillaIndex;
    const I four = (cls == PairClass::same_sign) ? I::diag4 : I::diag4p;
    const std::pair<I, I> idx[6] = {
        {I::mixed0, I::mixed0}, {I::x1, I::x1},     {I::y2, I::y2},
        {I::z3, I::z3},         {I::mixed0, four},  {four, I::mixed0},
    };
    std::vector<std::pair<AncillaState, AncillaState>> out;
    out.reserve(6);
    for (const auto& [s, t] : idx) {
        out.emplace_back(AncillaState(s), AncillaState(t));
    }
    return out;
}

ComplexMatrix tilde(const ComplexMatrix& m) {
    if (m.dim() != 2) {
        throw std::invalid_argument("tilde expects a 2x2 matrix");
    }
    ComplexMatrix out = m;
    out(0, 1) = -out(0, 1);
    out(1, 0) = -out(1, 0);
    return out;
}

} // namespace qwit
