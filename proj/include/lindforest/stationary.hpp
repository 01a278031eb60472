#ifndef LINDFOREST_STATIONARY_HPP
#define LINDFOREST_STATIONARY_HPP

#include <vector>

#include "lindforest/graph.hpp"
#include "lindforest/laplacian.hpp"
#include "lindforest/model.hpp"

namespace lindforest {

inline constexpr double kMethodAgreementRelTol = 1e-9;
inline constexpr double kKernelResidualRelTol = 1e-9;

// Rank of the rate matrix, derived from the basin count and verified against
// a rank-revealing factorization. Throws RankMismatch on disagreement.
struct RankReport {
    int rank = 0;
    int kernel_dim = 0;
};
RankReport kernel_rank(const RateMatrix& omega, const BasinDecomposition& basins);

enum class Method { enumerate, determinant, both };

// Unique stationary occupation vector of one basin. Entry j is the total
// in-tree weight rooted at j inside the basin, normalized by the basin total.
struct StationaryOrbit {
    int basin = 0;
    std::vector<double> lambda;       // length n, supported on the basin
    std::vector<WeightSum> numerators;  // per basin vertex, basin order
    WeightSum denominator;
    bool exact = false;               // numerators/denominator integral
};

std::vector<StationaryOrbit> stationary_orbits(const RateGraph& g,
                                               const BasinDecomposition& basins,
                                               Method method = Method::both);

enum class ConstraintVariant { full, pruned };

// Left-kernel vector attached to basin eta: a common factor on the basin's
// vertices, zero on the other basins, and a forest-weight sum on every decay
// vertex. Checked against omega before being returned.
struct ConstraintVector {
    int basin = 0;
    ConstraintVariant variant = ConstraintVariant::pruned;
    std::vector<double> kappa;          // length n
    std::vector<WeightSum> exact_entries;  // length n, exact mirrors
    bool exact = false;
};

std::vector<ConstraintVector> constraint_vectors(const RateGraph& g,
                                                 const BasinDecomposition& basins,
                                                 ConstraintVariant variant);

// Weights c_eta of the asymptotic mixture reached from lambda0, and the
// asymptotic density matrix assembled from the per-basin orbits.
struct AsymptoticState {
    std::vector<double> coefficients;  // one per basin, sums to one
    DensityMatrix rho_infinity;
};

AsymptoticState asymptotic_state(const RateGraph& g, const BasinDecomposition& basins,
                                 const SimplexVector& lambda0, const ProjectorFamily& proj);

}  // namespace lindforest

#endif
