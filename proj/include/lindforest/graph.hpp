#ifndef LINDFOREST_GRAPH_HPP
#define LINDFOREST_GRAPH_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lindforest/laplacian.hpp"
#include "lindforest/weight.hpp"

namespace lindforest {

// Strongly connected components plus the basins: the components with no
// edge leaving them. Components (and hence basins) are ordered by their
// smallest vertex.
struct BasinDecomposition {
    int n = 0;
    std::vector<int> scc_id;                            // vertex -> component
    std::vector<std::vector<int>> components;           // component -> sorted vertices
    std::vector<int> basin_of_component;                // component -> basin index or -1
    std::vector<std::vector<int>> basins;               // basin -> sorted vertices
    std::vector<int> non_basin;                         // sorted
    std::vector<std::pair<int, int>> condensation;      // deduped component DAG edges

    int n_basins() const { return static_cast<int>(basins.size()); }
    int basin_of_vertex(int v) const { return basin_of_component[scc_id[v]]; }
};

BasinDecomposition decompose_basins(const RateGraph& g);

// Spanning in-tree of an induced subgraph: every vertex except the root
// carries exactly one outgoing edge, all chains end at the root.
struct InTree {
    int root = 0;
    std::vector<std::pair<int, int>> edges;  // (vertex, parent), vertex ascending
    Weight weight;                           // product of edge weights; 1 for a bare root
};

// All spanning in-trees of the subgraph induced by `vertices`, rooted at
// `root`, in a deterministic order (per-vertex edge choices, lexicographic).
std::vector<InTree> enumerate_in_trees(const RateGraph& g, const std::vector<int>& vertices,
                                       int root);

// Tree-weight total without materializing the trees.
WeightSum sum_in_tree_weights(const RateGraph& g, const std::vector<int>& vertices, int root);

// Forest whose trees are rooted in a designated root set: every non-root
// vertex has exactly one outgoing edge and no cycles form.
struct RootedForest {
    std::vector<std::pair<int, int>> edges;  // (vertex, target), vertex ascending
    std::vector<int> root_of;                // vertex -> root of its tree
    Weight weight;
};

// Forests whose root set is exactly `roots`; every other vertex picks one of
// its outgoing edges. Empty when some non-root vertex has no outgoing edge.
std::vector<RootedForest> enumerate_forests(const RateGraph& g, const std::vector<int>& roots);

enum class ForestMode { pruned, full };

// Basin-rooted forests. Pruned: all basin vertices are roots and only the
// decay vertices choose edges. Full: basin vertices may instead attach
// inside their own basin, so the forests also span basin-internal trees.
std::vector<RootedForest> enumerate_basin_forests(const RateGraph& g,
                                                  const BasinDecomposition& basins,
                                                  ForestMode mode);

// Root-basin classification of a forest's vertices.
std::vector<int> classify_forest(const RootedForest& f, const BasinDecomposition& basins);

std::string export_dot(const RateGraph& g,
                       const std::optional<BasinDecomposition>& basins = std::nullopt,
                       const std::vector<std::string>& labels = {});

}  // namespace lindforest

#endif
