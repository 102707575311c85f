#include "qwit/kernels.hpp"

// Reference kernels. The complex product is written out component by component
// so the SIMD backends can replay the identical operation sequence; do not
// replace these with std::complex operator overloads.

namespace qwit::kernels {

namespace {

inline cd cmul(cd a, cd b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

void kron_scalar(const cd* a, std::size_t na, const cd* b, std::size_t nb, cd* out) {
    const std::size_t n = na * nb;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const cd aij = a[i * na + j];
            for (std::size_t k = 0; k < nb; ++k) {
                cd* row = out + (i * nb + k) * n + j * nb;
                const cd* brow = b + k * nb;
                for (std::size_t l = 0; l < nb; ++l) {
                    row[l] = cmul(aij, brow[l]);
                }
            }
        }
    }
}

void matmul_scalar(const cd* a, const cd* b, cd* out, std::size_t n) {
    for (std::size_t i = 0; i < n * n; ++i) {
        out[i] = cd{0.0, 0.0};
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cd aik = a[i * n + k];
            const cd* brow = b + k * n;
            cd* crow = out + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                const cd t = cmul(aik, brow[j]);
                crow[j] = {crow[j].real() + t.real(), crow[j].imag() + t.imag()};
            }
        }
    }
}

// Two interleaved accumulators (even/odd index) mirror the 2-complex SIMD lane
// layout; the final cross-lane sum happens once, in fixed order.
cd conj_dot_scalar(const cd* x, const cd* y, std::size_t len) {
    double r0 = 0.0, i0 = 0.0, r1 = 0.0, i1 = 0.0;
    std::size_t m = 0;
    for (; m + 2 <= len; m += 2) {
        r0 += x[m].real() * y[m].real() + x[m].imag() * y[m].imag();
        i0 += x[m].real() * y[m].imag() - x[m].imag() * y[m].real();
        r1 += x[m + 1].real() * y[m + 1].real() + x[m + 1].imag() * y[m + 1].imag();
        i1 += x[m + 1].real() * y[m + 1].imag() - x[m + 1].imag() * y[m + 1].real();
    }
    if (m < len) {
        r0 += x[m].real() * y[m].real() + x[m].imag() * y[m].imag();
        i0 += x[m].real() * y[m].imag() - x[m].imag() * y[m].real();
    }
    return {r0 + r1, i0 + i1};
}

void axpy_scalar(cd alpha, const cd* x, cd* y, std::size_t len) {
    for (std::size_t m = 0; m < len; ++m) {
        const cd t = cmul(alpha, x[m]);
        y[m] = {y[m].real() + t.real(), y[m].imag() + t.imag()};
    }
}

void scale_scalar(cd alpha, cd* x, std::size_t len) {
    for (std::size_t m = 0; m < len; ++m) {
        x[m] = cmul(alpha, x[m]);
    }
}

} // namespace

const Backend& scalar_backend() {
    static const Backend table{kron_scalar, matmul_scalar, conj_dot_scalar,
                               axpy_scalar, scale_scalar, "scalar"};
    return table;
}

} // namespace qwit::kernels
