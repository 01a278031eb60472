#include "lindforest/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "lindforest/errors.hpp"
#include "lindforest/linalg.hpp"

namespace lindforest {

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries)
    : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(dim) * dim)
        throw DimensionMismatch("entry count does not match dim*dim");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double ComplexMatrix::hermiticity_defect() const {
    double m = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double ComplexMatrix::offdiag_max() const {
    double m = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& v : a_) v *= s;
    return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    const int n = a.dim();
    // [[Re, -Im], [Im, Re]] is symmetric when a is Hermitian; its spectrum is
    // the spectrum of a with doubled multiplicities.
    RealMatrix m(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m(i, j) = a(i, j).real();
            m(i, j + n) = -a(i, j).imag();
            m(i + n, j) = a(i, j).imag();
            m(i + n, j + n) = a(i, j).real();
        }
    SymmetricEigen eig = jacobi_eigen(m);
    std::vector<double> out(n);
    // Average the duplicated pair to smooth rounding.
    for (int k = 0; k < n; ++k) out[k] = 0.5 * (eig.eigenvalues[2 * k] + eig.eigenvalues[2 * k + 1]);
    return out;
}

}  // namespace lindforest
