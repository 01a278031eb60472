#ifndef LINDFOREST_REFERENCE_HPP
#define LINDFOREST_REFERENCE_HPP

#include "lindforest/graph.hpp"
#include "lindforest/laplacian.hpp"
#include "lindforest/model.hpp"

// Plain serial implementations kept for testing and benchmarking. They take
// the most literal route available (full Cartesian products with post-hoc
// cycle rejection, projector matrices materialized, no precomputation) and
// exist to cross-check the optimized kernels, not to be fast.
namespace lindforest::reference {

RateMatrix build_omega(const LindbladSystem& sys, const ProjectorFamily& proj);

std::vector<InTree> enumerate_in_trees(const RateGraph& g, const std::vector<int>& vertices,
                                       int root);

std::vector<RootedForest> enumerate_forests(const RateGraph& g, const std::vector<int>& roots);

// One fixed-step RK4 pass on the full master equation, no shortcuts.
ComplexMatrix integrate_master_equation(const LindbladSystem& sys, const ComplexMatrix& rho0,
                                        double t_end, double dt);

}  // namespace lindforest::reference

#endif
