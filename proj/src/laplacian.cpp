#include "lindforest/laplacian.hpp"

#include <algorithm>
#include <cmath>

#include "lindforest/errors.hpp"
#include "lindforest/parallel.hpp"

namespace lindforest {

double ProjectorFamily::unitarity_defect() const {
    const int n = basis.dim();
    ComplexMatrix g = matmul(basis.adjoint(), basis);
    double m = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m = std::max(m, std::abs(g(i, j) - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))));
    return m;
}

ComplexMatrix ProjectorFamily::projector(int j) const {
    const int n = basis.dim();
    ComplexMatrix p(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) p(a, b) = basis(a, j) * std::conj(basis(b, j));
    return p;
}

double RateMatrix::max_diagonal_magnitude() const {
    double m = 0;
    for (int k = 0; k < dim(); ++k) m = std::max(m, std::fabs(omega(k, k)));
    return m;
}

RateMatrix build_omega(const LindbladSystem& sys, const ProjectorFamily& proj) {
    const int n = sys.dim;
    if (proj.basis.dim() != n) throw DimensionMismatch("projector basis dimension mismatch");
    for (const ComplexMatrix& op : sys.lindblad_ops)
        if (op.dim() != n) throw DimensionMismatch("Lindblad operator dimension mismatch");

    // Work in the projector basis: m_alpha = U^dagger L_alpha U, then
    // w_jk = sum_alpha |(m_alpha)_jk|^2.
    std::vector<ComplexMatrix> m;
    m.reserve(sys.lindblad_ops.size());
    ComplexMatrix udag = proj.basis.adjoint();
    for (const ComplexMatrix& op : sys.lindblad_ops)
        m.push_back(matmul(udag, matmul(op, proj.basis)));

    RateMatrix out{RealMatrix(n)};
#pragma omp parallel for collapse(2) schedule(static) if (threads() > 1 && n >= 16)
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            double w = 0;
            for (const ComplexMatrix& op : m) w += std::norm(op(j, k));
            out.omega(j, k) = w;
        }
    }
    for (int k = 0; k < n; ++k) {
        double colsum = 0;
        for (int l = 0; l < n; ++l)
            if (l != k) colsum += out.omega(l, k);
        out.omega(k, k) = -colsum;
    }
    return out;
}

RateMatrix build_omega(const LindbladSystem& sys) {
    return build_omega(sys, ProjectorFamily::standard(sys.dim));
}

RateGraph build_rate_graph(const RateMatrix& omega, double edge_tol) {
    const int n = omega.dim();
    RateGraph g;
    g.n = n;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            double w = omega.omega(j, k);
            if (w > edge_tol) g.edges.push_back({k, j, EdgeWeight(w)});
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const RateEdge& a, const RateEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    g.out_edges.assign(n, {});
    for (size_t i = 0; i < g.edges.size(); ++i) g.out_edges[g.edges[i].from].push_back(static_cast<int>(i));
    return g;
}

RateMatrix graph_to_omega(const RateGraph& g) {
    RateMatrix out{RealMatrix(g.n)};
    for (const RateEdge& e : g.edges) out.omega(e.to, e.from) += e.weight.value;
    for (int k = 0; k < g.n; ++k) {
        double colsum = 0;
        for (int l = 0; l < g.n; ++l)
            if (l != k) colsum += out.omega(l, k);
        out.omega(k, k) = -colsum;
    }
    return out;
}

RateGraph make_graph(int n, const std::vector<RateEdge>& edges) {
    RateGraph g;
    g.n = n;
    g.edges = edges;
    std::sort(g.edges.begin(), g.edges.end(), [](const RateEdge& a, const RateEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    g.out_edges.assign(n, {});
    for (size_t i = 0; i < g.edges.size(); ++i) g.out_edges[g.edges[i].from].push_back(static_cast<int>(i));
    return g;
}

}  // namespace lindforest
