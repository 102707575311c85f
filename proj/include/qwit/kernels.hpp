#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Dense complex array kernels behind the matrix layer. Every backend computes
// the same IEEE operation sequence, so scalar and SIMD results are bit-identical;
// the equivalence tests assert exact equality, not a tolerance.
//
// Backend selection happens once per process: the QWIT_KERNELS environment
// variable ("scalar", "avx2", "auto") combined with runtime CPU detection.

namespace qwit::kernels {

using cd = std::complex<double>;

struct Backend {
    // out[(i*nb+k)*(na*nb) + (j*nb+l)] = a[i*na+j] * b[k*nb+l]; out must not alias inputs.
    void (*kron)(const cd* a, std::size_t na, const cd* b, std::size_t nb, cd* out);
    // Row-major n x n product, k-inner accumulation; out must not alias inputs.
    void (*matmul)(const cd* a, const cd* b, cd* out, std::size_t n);
    // sum_m conj(x[m]) * y[m], accumulated in two interleaved partial sums.
    cd (*conj_dot)(const cd* x, const cd* y, std::size_t len);
    // y[m] += alpha * x[m]
    void (*axpy)(cd alpha, const cd* x, cd* y, std::size_t len);
    // x[m] *= alpha
    void (*scale)(cd alpha, cd* x, std::size_t len);
    const char* name;
};

const Backend& scalar_backend();

bool avx2_supported();
// Valid to call only when avx2_supported(); returns the scalar table otherwise.
const Backend& avx2_backend();

// Backend picked at first use from QWIT_KERNELS and CPU support.
const Backend& active();
std::string_view active_name();

} // namespace qwit::kernels
