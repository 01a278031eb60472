#ifndef LINDFOREST_COMPLEX_MATRIX_HPP
#define LINDFOREST_COMPLEX_MATRIX_HPP

#include <complex>
#include <vector>

namespace lindforest {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}
    ComplexMatrix(int dim, std::vector<cplx> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix diagonal(const std::vector<cplx>& d);

    int dim() const { return dim_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const std::vector<cplx>& entries() const { return a_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    // max_ij |A_ij - conj(A_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }
    // max off-diagonal modulus
    double offdiag_max() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi on the real
// 2n x 2n embedding; each eigenvalue of the embedding appears twice.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

}  // namespace lindforest

#endif
