#include "qwit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qwit {

namespace {

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

} // namespace

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cd>> rows) {
    const std::size_t dim = rows.size();
    ComplexMatrix m(dim);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != dim) {
            throw std::invalid_argument("ragged row in matrix literal");
        }
        std::size_t j = 0;
        for (cd v : row) {
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

cd ComplexMatrix::trace() const {
    cd t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_ * dim_; ++i) {
        out.entries_[i] = std::conj(entries_[i]);
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cd& e : entries_) {
        s += std::norm(e);
    }
    return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("dimension mismatch in matrix addition");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += rhs.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rhs.dim_ != dim_) {
        throw std::invalid_argument("dimension mismatch in matrix subtraction");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= rhs.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd scalar) {
    kernels::active().scale(scalar, entries_.data(), entries_.size());
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in matrix product");
    }
    ComplexMatrix out(a.dim());
    kernels::active().matmul(a.data(), b.data(), out.data(), a.dim());
    return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.dim() * b.dim());
    kernels::active().kron(a.data(), a.dim(), b.data(), b.dim(), out.data());
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced_out,
                            std::size_t dim_a, std::size_t dim_b) {
    if (dim_a * dim_b != m.dim()) {
        throw std::invalid_argument("partial_trace: dim_a * dim_b must equal matrix dimension");
    }
    if (traced_out == Subsystem::b) {
        ComplexMatrix out(dim_a);
        for (std::size_t i = 0; i < dim_a; ++i) {
            for (std::size_t j = 0; j < dim_a; ++j) {
                cd s = 0.0;
                for (std::size_t k = 0; k < dim_b; ++k) {
                    s += m(i * dim_b + k, j * dim_b + k);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out(dim_b);
    for (std::size_t k = 0; k < dim_b; ++k) {
        for (std::size_t l = 0; l < dim_b; ++l) {
            cd s = 0.0;
            for (std::size_t i = 0; i < dim_a; ++i) {
                s += m(i * dim_b + k, i * dim_b + l);
            }
            out(k, l) = s;
        }
    }
    return out;
}

namespace {

constexpr double kDeflate = 1e-13;
constexpr int kMaxSweeps = 10000;

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(std::vector<cd>& h, std::size_t n) {
    std::vector<cd> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            colnorm += std::norm(h[i * n + k]);
        }
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) {
            continue;
        }
        double below = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) {
            below += std::norm(h[i * n + k]);
        }
        if (below == 0.0) {
            continue;
        }
        const cd x0 = h[(k + 1) * n + k];
        const cd phase = (x0 == cd{0.0, 0.0}) ? cd{1.0, 0.0} : x0 / std::abs(x0);
        const std::size_t m = n - k - 1;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = h[(k + 1 + i) * n + k];
        }
        v[0] += phase * colnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) {
            continue;
        }
        const double tau = 2.0 / vnorm2;
        // left: H := (I - tau v v^dag) H
        for (std::size_t j = 0; j < n; ++j) {
            cd u = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                u += std::conj(v[i]) * h[(k + 1 + i) * n + j];
            }
            u *= tau;
            for (std::size_t i = 0; i < m; ++i) {
                h[(k + 1 + i) * n + j] -= u * v[i];
            }
        }
        // right: H := H (I - tau v v^dag)
        for (std::size_t r = 0; r < n; ++r) {
            cd u = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                u += h[r * n + k + 1 + i] * v[i];
            }
            u *= tau;
            for (std::size_t i = 0; i < m; ++i) {
                h[r * n + k + 1 + i] -= u * std::conj(v[i]);
            }
        }
    }
}

struct Givens {
    double c;
    cd s;
};

// Rotation with [c, s; -conj(s), c] [a; b] = [r; 0], c real.
Givens make_givens(cd a, cd b) {
    const double aa = std::abs(a);
    const double bb = std::abs(b);
    if (bb == 0.0) {
        return {1.0, cd{0.0, 0.0}};
    }
    const double r = hypot2(aa, bb);
    if (aa == 0.0) {
        return {0.0, std::conj(b) / bb};
    }
    return {aa / r, (a / aa) * std::conj(b) / r};
}

// Eigenvalues of the 2x2 block [[a, b], [c, d]].
std::pair<cd, cd> eig2x2(cd a, cd b, cd c, cd d) {
    const cd half = (a + d) * 0.5;
    const cd disc = std::sqrt((a - d) * (a - d) * 0.25 + b * c);
    return {half + disc, half - disc};
}

// Wilkinson shift: 2x2 eigenvalue closest to the trailing diagonal entry.
cd wilkinson_shift(cd a, cd b, cd c, cd d) {
    auto [l1, l2] = eig2x2(a, b, c, d);
    return std::abs(l1 - d) <= std::abs(l2 - d) ? l1 : l2;
}

std::vector<cd> qr_eigenvalues(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<cd> h(m.data(), m.data() + n * n);
    hessenberg(h, n);
    auto at = [&](std::size_t i, std::size_t j) -> cd& { return h[i * n + j]; };

    std::vector<Givens> rot(n);
    int sweeps = 0;
    std::size_t hi = n - 1;
    while (hi > 0) {
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(at(lo, lo - 1));
            const double neighbors = std::abs(at(lo - 1, lo - 1)) + std::abs(at(lo, lo));
            if (sub <= kDeflate * neighbors || sub < 1e-300) {
                at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            continue;
        }
        if (lo + 1 == hi) {
            auto [l1, l2] = eig2x2(at(lo, lo), at(lo, hi), at(hi, lo), at(hi, hi));
            at(lo, lo) = l1;
            at(hi, hi) = l2;
            at(hi, lo) = 0.0;
            hi = (lo == 0) ? 0 : lo - 1;
            continue;
        }
        if (++sweeps > kMaxSweeps) {
            double resid = 0.0;
            for (std::size_t i = 1; i < n; ++i) {
                resid += std::norm(at(i, i - 1));
            }
            throw EigenvalueError("QR iteration did not converge", std::sqrt(resid));
        }
        const cd mu =
            wilkinson_shift(at(hi - 1, hi - 1), at(hi - 1, hi), at(hi, hi - 1), at(hi, hi));
        for (std::size_t r = lo; r <= hi; ++r) {
            at(r, r) -= mu;
        }
        // factor: apply Givens from the left to zero the subdiagonal
        for (std::size_t i = lo; i < hi; ++i) {
            const Givens g = make_givens(at(i, i), at(i + 1, i));
            rot[i] = g;
            for (std::size_t j = 0; j < n; ++j) {
                const cd t0 = at(i, j);
                const cd t1 = at(i + 1, j);
                at(i, j) = g.c * t0 + g.s * t1;
                at(i + 1, j) = -std::conj(g.s) * t0 + g.c * t1;
            }
        }
        // RQ: multiply the conjugate rotations back from the right
        for (std::size_t i = lo; i < hi; ++i) {
            const Givens g = rot[i];
            for (std::size_t r = 0; r < n; ++r) {
                const cd t0 = at(r, i);
                const cd t1 = at(r, i + 1);
                at(r, i) = t0 * g.c + t1 * std::conj(g.s);
                at(r, i + 1) = -t0 * g.s + t1 * g.c;
            }
        }
        for (std::size_t r = lo; r <= hi; ++r) {
            at(r, r) += mu;
        }
    }
    std::vector<cd> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = at(i, i);
    }
    std::sort(eig.begin(), eig.end(), [](cd a, cd b) {
        if (a.real() != b.real()) {
            return a.real() > b.real();
        }
        return a.imag() > b.imag();
    });
    return eig;
}

} // namespace

std::array<cd, 4> eigenvalues_4x4(const ComplexMatrix& m) {
    if (m.dim() != 4) {
        throw std::invalid_argument("eigenvalues_4x4 requires a 4x4 matrix");
    }
    const std::vector<cd> eig = qr_eigenvalues(m);
    return {eig[0], eig[1], eig[2], eig[3]};
}

double expectation(const ComplexMatrix& observable, const ComplexMatrix& state) {
    if (observable.dim() != state.dim()) {
        throw std::invalid_argument("dimension mismatch in expectation");
    }
    const std::size_t len = observable.dim() * observable.dim();
    return kernels::active().conj_dot(observable.data(), state.data(), len).real();
}

cd trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in trace_of_product");
    }
    cd t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            t += a(i, j) * b(j, i);
        }
    }
    return t;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix diff = a;
    diff -= b;
    double s = 0.0;
    for (cd lambda : eigenvalues_4x4(diff)) {
        s += std::abs(lambda);
    }
    return 0.5 * s;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<cd> a(m.data(), m.data() + n * n);
    ComplexMatrix out = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(a[r * n + col]);
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best == 0.0) {
            throw std::invalid_argument("matrix is singular");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a[pivot * n + j], a[col * n + j]);
                std::swap(out(pivot, j), out(col, j));
            }
        }
        const cd inv_p = 1.0 / a[col * n + col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col * n + j] *= inv_p;
            out(col, j) *= inv_p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const cd f = a[r * n + col];
            if (f == cd{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] -= f * a[col * n + j];
                out(r, j) -= f * out(col, j);
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in max_abs_diff");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

} // namespace qwit
