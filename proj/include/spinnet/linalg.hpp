#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spinnet {

using Complex = std::complex<double>;

// Dense row-major real matrix. Small sizes only; no view machinery.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static RealMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// Dense row-major complex matrix, used for density matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const RealMatrix& a);
double max_abs(const RealMatrix& a);

struct Eigensystem {
    std::vector<double> values;  // ascending
    RealMatrix vectors;          // column k pairs with values[k]
};

// Cyclic Jacobi diagonalization of a symmetric matrix.
//
// Stops when the off-diagonal Frobenius norm falls below rel_tol times the
// input Frobenius norm; throws NumericalError with the residual if the sweep
// budget is exhausted first. Eigenvalues come back ascending and each
// eigenvector column is signed so its largest-magnitude component (first such
// component on ties) is positive, which makes repeated runs bit-identical.
Eigensystem jacobi_eigensystem(RealMatrix a, int max_sweeps = 100, double rel_tol = 1e-14);

// Eigenvalues of a Hermitian matrix, ascending. Uses the real symmetric
// embedding [[A,-B],[B,A]] of A+iB, whose spectrum is the Hermitian spectrum
// doubled, and collapses the pairs.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-eps_negative, 0) are treated as zero; anything lower
// throws ValidationError.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& h, double eps_negative = 1e-12);

}  // namespace spinnet

