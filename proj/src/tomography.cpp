#include "qwit/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qwit/rng.hpp"

namespace qwit {

namespace {

ComplexMatrix sign_projector(int axis, int sign) {
    ComplexMatrix p = ComplexMatrix::identity(2);
    if (sign > 0) {
        p += pauli(axis);
    } else {
        p -= pauli(axis);
    }
    p *= 0.5;
    return p;
}

} // namespace

TomographyRecord exact_expectations(const TwoQubitState& rho) {
    TomographyRecord rec;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            rec.expectations[{i, j}] = expectation(tensor(pauli(i), pauli(j)), rho.matrix());
        }
    }
    rec.expectations[{0, 0}] = 1.0;
    return rec;
}

TomographyRecord sample_expectations(const TwoQubitState& rho, std::uint64_t shots_per_basis,
                                     std::uint64_t seed) {
    if (shots_per_basis == 0) {
        throw std::invalid_argument("shots_per_basis must be positive");
    }
    TomographyRecord rec;
    rec.shots_per_basis = shots_per_basis;
    rec.expectations[{0, 0}] = 1.0;

    double marg_a[4] = {0.0, 0.0, 0.0, 0.0};
    double marg_b[4] = {0.0, 0.0, 0.0, 0.0};

    std::uint64_t stream = 0;
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            double probs[4]; // ++, +-, -+, --
            int k = 0;
            for (int sa : {+1, -1}) {
                for (int sb : {+1, -1}) {
                    probs[k++] = expectation(
                        tensor(sign_projector(i, sa), sign_projector(j, sb)), rho.matrix());
                }
            }
            std::uint64_t n[4] = {0, 0, 0, 0};
            Rng rng = Rng::stream(seed, stream++);
            for (std::uint64_t shot = 0; shot < shots_per_basis; ++shot) {
                const double u = rng.next_double();
                double acc = 0.0;
                int pick = 3;
                for (int c = 0; c < 4; ++c) {
                    acc += probs[c];
                    if (u < acc) {
                        pick = c;
                        break;
                    }
                }
                ++n[pick];
            }
            const double total = static_cast<double>(shots_per_basis);
            const double npp = static_cast<double>(n[0]);
            const double npm = static_cast<double>(n[1]);
            const double nmp = static_cast<double>(n[2]);
            const double nmm = static_cast<double>(n[3]);
            rec.expectations[{i, j}] = (npp + nmm - npm - nmp) / total;
            marg_a[i] += (npp + npm - nmp - nmm) / total;
            marg_b[j] += (npp + nmp - npm - nmm) / total;
        }
    }
    for (int i = 1; i <= 3; ++i) {
        rec.expectations[{i, 0}] = marg_a[i] / 3.0;
        rec.expectations[{0, i}] = marg_b[i] / 3.0;
    }
    return rec;
}

Reconstruction reconstruct(const TomographyRecord& record) {
    std::string missing;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (!record.expectations.count({i, j})) {
                missing += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    }
    if (!missing.empty()) {
        throw std::invalid_argument("incomplete expectation map; missing pairs:" + missing);
    }
    ComplexMatrix sum(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double e = record.expectations.at({i, j});
            const ComplexMatrix term = tensor(pauli(i), pauli(j));
            kernels::active().axpy(cd{e / 4.0, 0.0}, term.data(), sum.data(), 16);
        }
    }
    TwoQubitState state = TwoQubitState::relaxed(std::move(sum), "reconstructed");
    const bool physical = state.physical();
    const double min_eig = state.min_eigenvalue();
    return Reconstruction{std::move(state), physical, min_eig};
}

VFit fit_v(const TwoQubitState& rho) {
    const ComplexMatrix& m = rho.matrix();
    VFit fit{};
    fit.v_r11 = 2.0 * m(0, 0).real();
    fit.v_r22 = 1.0 - 2.0 * m(1, 1).real();
    fit.v_r33 = 1.0 - 2.0 * m(2, 2).real();
    fit.v_r44 = 2.0 * m(3, 3).real();
    fit.v_r23 = 1.0 + 2.0 * m(1, 2).real();
    const double vals[5] = {fit.v_r11, fit.v_r22, fit.v_r33, fit.v_r44, fit.v_r23};
    double mean = 0.0;
    for (double v : vals) {
        mean += v;
    }
    mean /= 5.0;
    double ss = 0.0;
    for (double v : vals) {
        ss += (v - mean) * (v - mean);
    }
    fit.mean = mean;
    fit.spread = std::sqrt(ss / 4.0);
    return fit;
}

const ComplexMatrix& spin_flip_matrix() {
    static const ComplexMatrix sigma = ComplexMatrix::from_rows({
        {0.0, 0.0, 0.0, -1.0},
        {0.0, 0.0, 1.0, 0.0},
        {0.0, 1.0, 0.0, 0.0},
        {-1.0, 0.0, 0.0, 0.0},
    });
    return sigma;
}

TangleReport tangle(const TwoQubitState& rho) {
    const ComplexMatrix& m = rho.matrix();
    const ComplexMatrix& flip = spin_flip_matrix();
    const ComplexMatrix r = m * flip * m.transpose() * flip;

    TangleReport report{};
    std::size_t k = 0;
    double biggest = 0.0;
    for (cd lambda : eigenvalues_4x4(r)) {
        if (std::abs(lambda.imag()) > 1e-6) {
            throw std::runtime_error("spin-flip spectrum has a complex eigenvalue");
        }
        if (lambda.real() < -1e-6) {
            throw std::runtime_error("spin-flip spectrum has a negative eigenvalue");
        }
        report.lambdas[k++] = std::max(0.0, lambda.real());
        biggest = std::max(biggest, lambda.real());
    }
    // numerical zeros must not leak O(sqrt(eps)) noise into the concurrence
    for (double& l : report.lambdas) {
        if (l < 1e-12 * std::max(1.0, biggest)) {
            l = 0.0;
        }
    }
    std::sort(report.lambdas.begin(), report.lambdas.end(), std::greater<>());
    const double c = std::sqrt(report.lambdas[0]) - std::sqrt(report.lambdas[1]) -
                     std::sqrt(report.lambdas[2]) - std::sqrt(report.lambdas[3]);
    report.concurrence = std::max(0.0, c);
    report.tangle = report.concurrence * report.concurrence;
    return report;
}

} // namespace qwit
