#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "qwit/kernels.hpp"

// Minimal dense complex linear algebra for 2-, 4- and 16-dimensional operators.
// Values are immutable in practice (operations return fresh matrices), so
// everything here is safe to use from multiple threads.

namespace qwit {

using cd = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

class ComplexMatrix {
  public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

    ComplexMatrix(std::size_t dim, std::vector<cd> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_) {
            throw std::invalid_argument("entry count does not match dimension");
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cd>> rows);

    std::size_t dim() const { return dim_; }
    const cd* data() const { return entries_.data(); }
    cd* data() { return entries_.data(); }

    cd operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    cd& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

    cd trace() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix adjoint() const;

    bool is_hermitian(double tol = kDefaultTol) const;
    double frobenius_norm() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cd scalar);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        return lhs += rhs;
    }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
        return lhs -= rhs;
    }
    friend ComplexMatrix operator*(cd scalar, ComplexMatrix m) { return m *= scalar; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  private:
    std::size_t dim_;
    std::vector<cd> entries_;
};

// Kronecker product with row-major block convention:
// out((i*dimB+k),(j*dimB+l)) = a(i,j) * b(k,l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { a, b };

// Reduced operator after tracing out the selected subsystem of an A (x) B space.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced_out,
                            std::size_t dim_a, std::size_t dim_b);

struct EigenvalueError : std::runtime_error {
    EigenvalueError(const std::string& what, double residual_norm)
        : std::runtime_error(what), residual(residual_norm) {}
    double residual;
};

// All four eigenvalues (with multiplicity) of a general complex 4x4 matrix,
// sorted by real part descending. Hessenberg reduction + shifted QR; throws
// EigenvalueError with the remaining subdiagonal norm if 10000 sweeps do not
// converge.
std::array<cd, 4> eigenvalues_4x4(const ComplexMatrix& m);

// Re Tr[observable * state]; both arguments Hermitian.
double expectation(const ComplexMatrix& observable, const ComplexMatrix& state);

// Tr[a * b] without forming the product.
cd trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

// (1/2) sum |eig(a - b)| for Hermitian a, b of dimension 4.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Gauss-Jordan inverse with partial pivoting; throws on singular input.
ComplexMatrix inverse(const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace qwit
