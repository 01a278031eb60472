#ifndef LINDFOREST_SYMMETRY_HPP
#define LINDFOREST_SYMMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "lindforest/gpm.hpp"
#include "lindforest/graph.hpp"
#include "lindforest/model.hpp"

namespace lindforest {

inline constexpr double kPhaseTol = 1e-9;       // radians
inline constexpr double kSymmetryAmpTol = 1e-10;

// Uniform equivalence relation on a subset of the levels. Classes are kept
// sorted and ordered by smallest member.
struct EquivalenceRelation {
    std::vector<std::vector<int>> classes;

    static EquivalenceRelation trivial(const std::vector<int>& vertices);

    void canonicalize();
    std::vector<int> domain() const;           // sorted union of classes
    int class_of(int v) const;                 // -1 when outside the domain
    bool uniform() const;
    int mu() const { return static_cast<int>(classes.size()); }
    int nu() const { return classes.empty() ? 0 : static_cast<int>(classes.front().size()); }

    bool operator==(const EquivalenceRelation& rhs) const { return classes == rhs.classes; }
};

struct SymmetryReport {
    bool hamiltonian_ok = false;
    bool dissipation_ok = false;
    std::vector<std::string> violations;
};

// Level degeneracy of H over each class, amplitude equality of every D_alpha
// over each class, and preservation of classes by every permutation (for
// images inside the basins). Requires diagonal H and GPM operators.
SymmetryReport verify_symmetry(const LindbladSystem& sys, const EquivalenceRelation& rel,
                               const BasinDecomposition& basins);

struct CoherenceNode {
    int j = 0, k = 0;  // ordered pair of equivalent levels, j != k
    bool operator==(const CoherenceNode& o) const { return j == o.j && k == o.k; }
};

struct CoherenceEdge {
    int from = 0, to = 0;  // node indices
    int op = 0;            // which Lindblad operator induced the edge
    cplx weight;           // unit modulus
};

// Graph of coherences between equivalent levels. Edges are directed; self-
// and multi-edges occur. Weights are the phase mismatch picked up along the
// corresponding Lindblad permutation step.
struct CoherenceGraph {
    std::vector<CoherenceNode> nodes;              // lexicographic
    std::vector<CoherenceEdge> edges;              // sorted by (from, to, op)
    std::vector<std::vector<int>> components;      // weakly connected, by smallest node

    int node_index(int j, int k) const;
};

CoherenceGraph build_coherence_graph(const LindbladSystem& sys, const EquivalenceRelation& rel);

// Resonance check for one component: build a transitive phase function along
// a spanning traversal anchored at the smallest node, then test every edge
// against it. Self-loops with weight away from one always fail.
struct ResonanceCertificate {
    std::vector<int> component;      // node indices, ascending
    std::vector<cplx> f_values;      // parallel to `component`, f(anchor) = 1
    bool resonant = false;
    std::optional<CoherenceEdge> witness;  // a violated edge when non-resonant
};

ResonanceCertificate check_resonance(const CoherenceGraph& cg, const std::vector<int>& component);

// Kernel dimension of the coherence flow matrix. Nonzero exactly when some
// component of the coherence graph is resonant.
int coherence_kernel_dim(const LindbladSystem& sys, const EquivalenceRelation& rel);

struct EnclosureCandidate {
    EquivalenceRelation relation;
    bool resonant = false;
};

// Search for relations satisfying the enclosure conditions: seed same-
// signature level pairs inside the basins, close them under the Lindblad
// permutations, then keep the closures that pass the symmetry and resonance
// checks. Returns candidates in canonical order with their resonance verdict.
std::vector<EnclosureCandidate> detect_hidden_enclosures(const LindbladSystem& sys,
                                                         const BasinDecomposition& basins,
                                                         int max_n = 12);

// Looks for an equivalence between two basins that restricts to the given
// per-block relations, obeys dissipation symmetry and resonance, and carries
// a constant level offset Delta = H_k - H_j over cross pairs (j in block a).
// Empty result means no stable oscillation between the blocks was found.
std::optional<double> check_oscillations(const LindbladSystem& sys,
                                         const BasinDecomposition& basins, int block_a,
                                         int block_b, const EquivalenceRelation& rel_a,
                                         const EquivalenceRelation& rel_b);

}  // namespace lindforest

#endif
