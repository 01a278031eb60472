#ifndef LINDFOREST_LAPLACIAN_HPP
#define LINDFOREST_LAPLACIAN_HPP

#include <vector>

#include "lindforest/complex_matrix.hpp"
#include "lindforest/linalg.hpp"
#include "lindforest/model.hpp"
#include "lindforest/weight.hpp"

namespace lindforest {

inline constexpr double kEdgeTol = 1e-12;

// Rank-one projector family pi_j = u_j u_j^dagger, u_j the columns of a
// unitary basis matrix. Defaults to the identity (projectors |j><j|).
struct ProjectorFamily {
    ComplexMatrix basis;

    static ProjectorFamily standard(int dim) { return {ComplexMatrix::identity(dim)}; }
    double unitarity_defect() const;  // max |U^dagger U - I|
    ComplexMatrix projector(int j) const;
};

// Column-Laplacian generator of the eigenvalue flow: off-diagonal entries
// are the transition rates w_jk >= 0 (k -> j), each diagonal entry is minus
// its column's off-diagonal sum, so every column sums to zero.
struct RateMatrix {
    RealMatrix omega;

    int dim() const { return omega.dim(); }
    double rate(int j, int k) const { return j == k ? 0.0 : omega(j, k); }
    double max_diagonal_magnitude() const;
};

// w_jk = sum_alpha |u_j^dagger L_alpha u_k|^2 for j != k. The Hamiltonian
// does not enter.
RateMatrix build_omega(const LindbladSystem& sys, const ProjectorFamily& proj);
RateMatrix build_omega(const LindbladSystem& sys);  // standard projectors

struct RateEdge {
    int from = 0;  // k
    int to = 0;    // j
    EdgeWeight weight;
};

// Weighted digraph of the nonzero rates. Edges sorted by (from, to).
struct RateGraph {
    int n = 0;
    std::vector<RateEdge> edges;
    std::vector<std::vector<int>> out_edges;  // vertex -> indices into edges

    const RateEdge& edge(int idx) const { return edges[idx]; }
};

RateGraph build_rate_graph(const RateMatrix& omega, double edge_tol = kEdgeTol);

// Rate matrix rebuilt from a graph's edge list (used when a graph is
// constructed directly in tests).
RateMatrix graph_to_omega(const RateGraph& g);

// Convenience for assembling graphs without a Lindblad system.
RateGraph make_graph(int n, const std::vector<RateEdge>& edges);

}  // namespace lindforest

#endif
