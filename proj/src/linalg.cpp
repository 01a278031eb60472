#include "lindforest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lindforest {

double RealMatrix::frobenius_norm() const {
    double s = 0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double RealMatrix::max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

double lu_determinant(RealMatrix a) {
    const int n = a.dim();
    if (n == 0) return 1.0;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::fabs(a(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

SymmetricEigen jacobi_eigen(const RealMatrix& a_in) {
    const int n = a_in.dim();
    RealMatrix a = a_in;
    RealMatrix v(n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    auto offdiag = [&]() {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 200 && offdiag() > 1e-15 * scale; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) <= 1e-18 * scale) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

    SymmetricEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) out.eigenvectors[k][i] = v(i, order[k]);
    }
    return out;
}

double default_kernel_threshold(const RealMatrix& a) {
    return a.dim() * std::numeric_limits<double>::epsilon() * a.frobenius_norm();
}

KernelResult numerical_kernel(const RealMatrix& a_in, double threshold) {
    // One-sided Hestenes-Jacobi: orthogonalize the columns of A while
    // accumulating the rotations into V. Unlike the normal-matrix route this
    // resolves small singular values down to eps * ||A||.
    const int n = a_in.dim();
    RealMatrix a = a_in;
    RealMatrix v(n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0, beta = 0, gamma = 0;
                for (int i = 0; i < n; ++i) {
                    alpha += a(i, p) * a(i, p);
                    beta += a(i, q) * a(i, q);
                    gamma += a(i, p) * a(i, q);
                }
                if (alpha * beta == 0.0) continue;
                if (std::fabs(gamma) <= 1e-16 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                    double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += a(i, c) * a(i, c);
        sigma[c] = std::sqrt(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return sigma[x] < sigma[y]; });

    KernelResult out;
    for (int k = 0; k < n; ++k) {
        int c = order[k];
        out.singular_values.push_back(sigma[c]);
        if (sigma[c] <= threshold) {
            std::vector<double> col(n);
            for (int i = 0; i < n; ++i) col[i] = v(i, c);
            out.kernel_basis.push_back(std::move(col));
        } else {
            ++out.rank;
        }
    }
    return out;
}

}  // namespace lindforest
