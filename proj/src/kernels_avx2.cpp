#include "qwit/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// AVX2 lane: two complex<double> per ymm register. Each element follows the
// exact operation sequence of the scalar backend (mul/addsub, no FMA), which
// keeps results bit-identical across backends.

namespace qwit::kernels {

namespace {

inline const double* dp(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cd* p) { return reinterpret_cast<double*>(p); }

inline cd cmul1(cd a, cd b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

// [ar*b0r - ai*b0i, ar*b0i + ai*b0r, ...] for broadcast scalar a
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d b) {
    const __m256d t1 = _mm256_mul_pd(ar, b);
    const __m256d bswap = _mm256_permute_pd(b, 0b0101);
    const __m256d t2 = _mm256_mul_pd(ai, bswap);
    return _mm256_addsub_pd(t1, t2);
}

void kron_avx2(const cd* a, std::size_t na, const cd* b, std::size_t nb, cd* out) {
    const std::size_t n = na * nb;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const cd aij = a[i * na + j];
            const __m256d ar = _mm256_set1_pd(aij.real());
            const __m256d ai = _mm256_set1_pd(aij.imag());
            for (std::size_t k = 0; k < nb; ++k) {
                cd* row = out + (i * nb + k) * n + j * nb;
                const cd* brow = b + k * nb;
                std::size_t l = 0;
                for (; l + 2 <= nb; l += 2) {
                    const __m256d bv = _mm256_loadu_pd(dp(brow + l));
                    _mm256_storeu_pd(dp(row + l), cmul_bcast(ar, ai, bv));
                }
                for (; l < nb; ++l) {
                    row[l] = cmul1(aij, brow[l]);
                }
            }
        }
    }
}

void matmul_avx2(const cd* a, const cd* b, cd* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n * n; i += 2) {
        _mm256_storeu_pd(dp(out + i), zero);
    }
    for (; i < n * n; ++i) {
        out[i] = cd{0.0, 0.0};
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const cd aik = a[r * n + k];
            const __m256d ar = _mm256_set1_pd(aik.real());
            const __m256d ai = _mm256_set1_pd(aik.imag());
            const cd* brow = b + k * n;
            cd* crow = out + r * n;
            std::size_t j = 0;
            for (; j + 2 <= n; j += 2) {
                const __m256d bv = _mm256_loadu_pd(dp(brow + j));
                const __m256d cv = _mm256_loadu_pd(dp(crow + j));
                _mm256_storeu_pd(dp(crow + j), _mm256_add_pd(cv, cmul_bcast(ar, ai, bv)));
            }
            for (; j < n; ++j) {
                const cd t = cmul1(aik, brow[j]);
                crow[j] = {crow[j].real() + t.real(), crow[j].imag() + t.imag()};
            }
        }
    }
}

cd conj_dot_avx2(const cd* x, const cd* y, std::size_t len) {
    const __m256d signs = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t m = 0;
    for (; m + 2 <= len; m += 2) {
        const __m256d xv = _mm256_loadu_pd(dp(x + m));
        const __m256d yv = _mm256_loadu_pd(dp(y + m));
        const __m256d t1 = _mm256_mul_pd(_mm256_movedup_pd(xv), yv);
        const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(xv, 0b1111),
                                         _mm256_permute_pd(yv, 0b0101));
        acc = _mm256_add_pd(acc, _mm256_addsub_pd(t1, _mm256_xor_pd(t2, signs)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double r0 = lanes[0], i0 = lanes[1];
    const double r1 = lanes[2], i1 = lanes[3];
    if (m < len) {
        r0 += x[m].real() * y[m].real() + x[m].imag() * y[m].imag();
        i0 += x[m].real() * y[m].imag() - x[m].imag() * y[m].real();
    }
    return {r0 + r1, i0 + i1};
}

void axpy_avx2(cd alpha, const cd* x, cd* y, std::size_t len) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t m = 0;
    for (; m + 2 <= len; m += 2) {
        const __m256d xv = _mm256_loadu_pd(dp(x + m));
        const __m256d yv = _mm256_loadu_pd(dp(y + m));
        _mm256_storeu_pd(dp(y + m), _mm256_add_pd(yv, cmul_bcast(ar, ai, xv)));
    }
    for (; m < len; ++m) {
        const cd t = cmul1(alpha, x[m]);
        y[m] = {y[m].real() + t.real(), y[m].imag() + t.imag()};
    }
}

void scale_avx2(cd alpha, cd* x, std::size_t len) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t m = 0;
    for (; m + 2 <= len; m += 2) {
        const __m256d xv = _mm256_loadu_pd(dp(x + m));
        _mm256_storeu_pd(dp(x + m), cmul_bcast(ar, ai, xv));
    }
    for (; m < len; ++m) {
        x[m] = cmul1(alpha, x[m]);
    }
}

} // namespace

const Backend& avx2_backend() {
    static const Backend table{kron_avx2, matmul_avx2, conj_dot_avx2,
                               axpy_avx2, scale_avx2, "avx2"};
    return table;
}

} // namespace qwit::kernels

#else

namespace qwit::kernels {

const Backend& avx2_backend() { return scalar_backend(); }

} // namespace qwit::kernels

#endif
