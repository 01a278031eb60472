#ifndef LINDFOREST_TEST_FIXTURES_HPP
#define LINDFOREST_TEST_FIXTURES_HPP

#include <array>
#include <random>
#include <tuple>
#include <vector>

#include "lindforest/gpm.hpp"
#include "lindforest/laplacian.hpp"
#include "lindforest/model.hpp"

namespace lftest {

using lindforest::ComplexMatrix;
using lindforest::cplx;
using lindforest::LindbladSystem;

inline ComplexMatrix sparse(int n, const std::vector<std::tuple<int, int, cplx>>& entries) {
    ComplexMatrix m(n);
    for (const auto& [r, c, v] : entries) m(r - 1, c - 1) = v;  // 1-based
    return m;
}

// Four levels, two jump operators, one strongly connected basin.
inline LindbladSystem single_basin_system() {
    LindbladSystem sys;
    sys.dim = 4;
    sys.hamiltonian = ComplexMatrix(4);
    sys.lindblad_ops.push_back(sparse(4, {{1, 2, 1.0}, {2, 3, 2.0}, {3, 4, 3.0}, {4, 1, 4.0}}));
    sys.lindblad_ops.push_back(sparse(4, {{1, 3, 5.0}, {3, 2, 10.0}, {2, 4, 2.0}, {4, 1, 6.0}}));
    return sys;
}

// Eight levels: basins {1,2} and {3,4}, decay cycle {5,6,7,8}.
inline LindbladSystem two_basin_system() {
    LindbladSystem sys;
    sys.dim = 8;
    sys.hamiltonian = ComplexMatrix(8);
    sys.lindblad_ops.push_back(sparse(8, {{1, 2, 3.0},
                                          {2, 1, 2.0},
                                          {3, 4, 4.0},
                                          {4, 3, 5.0},
                                          {5, 6, 6.0},
                                          {6, 7, 7.0},
                                          {7, 8, 8.0},
                                          {8, 5, 9.0}}));
    sys.lindblad_ops.push_back(sparse(8, {{1, 5, 10.0}, {2, 6, 11.0}, {3, 7, 12.0}, {4, 8, 13.0}}));
    return sys;
}

// Nine levels, one basin, the three-class symmetry; operator phases are free.
inline LindbladSystem enclosure_system(const std::array<double, 9>& theta5 = {},
                                       const std::array<double, 9>& theta6 = {}) {
    LindbladSystem sys;
    sys.dim = 9;
    sys.hamiltonian = ComplexMatrix::diagonal({1, 0, -1, 1, 0, -1, 1, 0, -1});
    auto phase = [](double t) { return std::polar(1.0, t); };
    // amplitude profile (4,5,6) cycled by one operator, (1,2,3) by the other
    sys.lindblad_ops.push_back(sparse(9, {{7, 1, 4.0 * phase(theta5[0])},
                                          {1, 4, 4.0 * phase(theta5[3])},
                                          {4, 7, 4.0 * phase(theta5[6])},
                                          {8, 2, 5.0 * phase(theta5[1])},
                                          {2, 5, 5.0 * phase(theta5[4])},
                                          {5, 8, 5.0 * phase(theta5[7])},
                                          {9, 3, 6.0 * phase(theta5[2])},
                                          {3, 6, 6.0 * phase(theta5[5])},
                                          {6, 9, 6.0 * phase(theta5[8])}}));
    sys.lindblad_ops.push_back(sparse(9, {{3, 1, 1.0 * phase(theta6[0])},
                                          {1, 2, 2.0 * phase(theta6[1])},
                                          {2, 3, 3.0 * phase(theta6[2])},
                                          {6, 4, 1.0 * phase(theta6[3])},
                                          {4, 5, 2.0 * phase(theta6[4])},
                                          {5, 6, 3.0 * phase(theta6[5])},
                                          {9, 7, 1.0 * phase(theta6[6])},
                                          {7, 8, 2.0 * phase(theta6[7])},
                                          {8, 9, 3.0 * phase(theta6[8])}}));
    return sys;
}

// The enclosure system rewritten in its rotated basis: three basins of three
// levels, one diagonal operator carrying cube-root-of-unity phases.
inline LindbladSystem transformed_enclosure_system() {
    LindbladSystem sys;
    sys.dim = 9;
    sys.hamiltonian = ComplexMatrix::diagonal({1, 1, 1, 0, 0, 0, -1, -1, -1});
    const cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
    std::vector<cplx> d5;
    for (double amp : {4.0, 5.0, 6.0})
        for (int k = 0; k < 3; ++k) d5.push_back(amp * std::pow(w, k));
    sys.lindblad_ops.push_back(ComplexMatrix::diagonal(d5));
    sys.lindblad_ops.push_back(sparse(9, {{1, 5, 2.0},
                                          {2, 6, 2.0},
                                          {3, 4, 2.0},
                                          {4, 8, 3.0},
                                          {5, 9, 3.0},
                                          {6, 7, 3.0},
                                          {7, 2, 1.0},
                                          {8, 3, 1.0},
                                          {9, 1, 1.0}}));
    return sys;
}

// Two identical two-level basins whose upper block sits `delta` higher.
inline LindbladSystem twin_basin_system(double delta) {
    LindbladSystem sys;
    sys.dim = 4;
    sys.hamiltonian = ComplexMatrix::diagonal({0.3, 0.7, 0.3 + delta, 0.7 + delta});
    sys.lindblad_ops.push_back(sparse(4, {{1, 2, 1.5}, {2, 1, 0.5}, {3, 4, 1.5}, {4, 3, 0.5}}));
    return sys;
}

// Random integer-weighted digraph containing a Hamiltonian cycle, so the
// whole vertex set is one strongly connected basin.
inline lindforest::RateGraph random_strongly_connected_graph(std::mt19937& rng, int n,
                                                             double extra_density = 0.4) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> wdist(1, 9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<lindforest::RateEdge> edges;
    std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        int a = order[i], b = order[(i + 1) % n];
        edges.push_back({a, b, lindforest::EdgeWeight(static_cast<double>(wdist(rng)))});
        present[a][b] = true;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || present[a][b]) continue;
            if (u(rng) < extra_density) {
                edges.push_back({a, b, lindforest::EdgeWeight(static_cast<double>(wdist(rng)))});
                present[a][b] = true;
            }
        }
    return lindforest::make_graph(n, edges);
}

// Random digraph with roughly the given edge density; no connectivity claim.
inline lindforest::RateGraph random_digraph(std::mt19937& rng, int n, double density) {
    std::uniform_int_distribution<int> wdist(1, 9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<lindforest::RateEdge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && u(rng) < density)
                edges.push_back({a, b, lindforest::EdgeWeight(static_cast<double>(wdist(rng)))});
    return lindforest::make_graph(n, edges);
}

// Random GPM system: a few operators, each a random permutation times a
// random diagonal with occasional zeros.
inline LindbladSystem random_gpm_system(std::mt19937& rng, int n, int n_ops = 2,
                                        double zero_prob = 0.2) {
    LindbladSystem sys;
    sys.dim = n;
    std::vector<cplx> h(n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < n; ++i) h[i] = u(rng);
    sys.hamiltonian = ComplexMatrix::diagonal(h);
    std::uniform_real_distribution<double> amp(0.2, 2.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> zp(0.0, 1.0);
    for (int a = 0; a < n_ops; ++a) {
        std::vector<int> sigma(n);
        for (int i = 0; i < n; ++i) sigma[i] = i;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        ComplexMatrix l(n);
        for (int j = 0; j < n; ++j)
            if (zp(rng) >= zero_prob) l(sigma[j], j) = std::polar(amp(rng), ph(rng));
        sys.lindblad_ops.push_back(l);
    }
    return sys;
}

// Complete digraph with unit weights.
inline lindforest::RateGraph complete_graph(int n) {
    std::vector<lindforest::RateEdge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) edges.push_back({a, b, lindforest::EdgeWeight(1.0)});
    return lindforest::make_graph(n, edges);
}

}  // namespace lftest

#endif
