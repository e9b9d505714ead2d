#include "spinnet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spinnet/errors.hpp"

namespace spinnet {

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
    return m;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgumentError("multiply: dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = std::conj(a(i, j));
    return out;
}

Complex trace(const ComplexMatrix& a) {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgumentError("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double frobenius_norm(const RealMatrix& a) {
    double s = 0.0;
    for (double x : a.data()) s += x * x;
    return std::sqrt(s);
}

double max_abs(const RealMatrix& a) {
    double m = 0.0;
    for (double x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

namespace {

double off_diagonal_norm(const RealMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
}

void fix_column_signs(RealMatrix& v) {
    for (std::size_t k = 0; k < v.cols(); ++k) {
        std::size_t best = 0;
        double best_abs = 0.0;
        for (std::size_t i = 0; i < v.rows(); ++i) {
            const double m = std::abs(v(i, k));
            if (m > best_abs) {
                best_abs = m;
                best = i;
            }
        }
        if (v(best, k) < 0.0)
            for (std::size_t i = 0; i < v.rows(); ++i) v(i, k) = -v(i, k);
    }
}

}  // namespace

Eigensystem jacobi_eigensystem(RealMatrix a, int max_sweeps, double rel_tol) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) throw InvalidArgumentError("jacobi_eigensystem: matrix must be square");

    RealMatrix v = RealMatrix::identity(n);
    const double threshold = rel_tol * frobenius_norm(a);

    double off = off_diagonal_norm(a);
    for (int sweep = 0; sweep < max_sweeps && off > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double h = t * apq;

                a(p, p) -= h;
                a(q, q) += h;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = akp - s * (akq + tau * akp);
                    a(p, k) = a(k, p);
                    a(k, q) = akq + s * (akp - tau * akq);
                    a(q, k) = a(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = vkp - s * (vkq + tau * vkp);
                    v(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
        off = off_diagonal_norm(a);
    }
    if (off > threshold)
        throw NumericalError("jacobi_eigensystem: sweep budget exhausted before convergence", off);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    Eigensystem es;
    es.values.resize(n);
    es.vectors = RealMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    fix_column_signs(es.vectors);
    return es;
}

namespace {

// [[A,-B],[B,A]] for H = A + iB; symmetric when H is Hermitian.
RealMatrix embed_hermitian(const ComplexMatrix& h) {
    const std::size_t n = h.rows();
    RealMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = h(i, j).real();
            const double im = h(i, j).imag();
            m(i, j) = re;
            m(n + i, n + j) = re;
            m(i, n + j) = -im;
            m(n + i, j) = im;
        }
    return m;
}

ComplexMatrix unembed(const RealMatrix& m) {
    const std::size_t n = m.rows() / 2;
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = 0.5 * (m(i, j) + m(n + i, n + j));
            const double im = 0.5 * (m(n + i, j) - m(i, n + j));
            h(i, j) = Complex{re, im};
        }
    return h;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw InvalidArgumentError("hermitian_eigenvalues: matrix must be square");
    const Eigensystem es = jacobi_eigensystem(embed_hermitian(h));
    std::vector<double> out(h.rows());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = 0.5 * (es.values[2 * k] + es.values[2 * k + 1]);
    return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& h, double eps_negative) {
    if (h.rows() != h.cols()) throw InvalidArgumentError("hermitian_sqrt: matrix must be square");
    const std::size_t m = 2 * h.rows();
    Eigensystem es = jacobi_eigensystem(embed_hermitian(h));
    for (double& lambda : es.values) {
        if (lambda < -eps_negative)
            throw ValidationError("hermitian_sqrt: matrix is not positive semidefinite");
        lambda = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    RealMatrix s(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                acc += es.vectors(i, k) * es.values[k] * es.vectors(j, k);
            s(i, j) = acc;
            s(j, i) = acc;
        }
    return unembed(s);
}

}  // namespace spinnet
