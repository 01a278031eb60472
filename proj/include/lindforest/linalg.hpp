#ifndef LINDFOREST_LINALG_HPP
#define LINDFOREST_LINALG_HPP

#include <vector>

namespace lindforest {

// Dense square real matrix, row-major.
class RealMatrix {
public:
    RealMatrix() = default;
    explicit RealMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    int dim() const { return dim_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const double& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    double frobenius_norm() const;
    double max_abs() const;

private:
    int dim_ = 0;
    std::vector<double> a_;
};

// Determinant by LU with partial pivoting.
double lu_determinant(RealMatrix a);

// Eigen-decomposition of a symmetric matrix by cyclic Jacobi.
// Eigenvalues ascending; eigenvectors[k] is the (orthonormal) eigenvector
// belonging to eigenvalues[k].
struct SymmetricEigen {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};
SymmetricEigen jacobi_eigen(const RealMatrix& a);

// Rank-revealing factorization via the singular values of A (computed from
// A^T A). Singular values below `threshold` count as zero. The kernel basis
// vectors are orthonormal.
struct KernelResult {
    int rank = 0;
    std::vector<double> singular_values;          // ascending
    std::vector<std::vector<double>> kernel_basis;
};
KernelResult numerical_kernel(const RealMatrix& a, double threshold);

// Default zero threshold: dim * eps * ||A||_F.
double default_kernel_threshold(const RealMatrix& a);

}  // namespace lindforest

#endif
