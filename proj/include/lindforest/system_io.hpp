#ifndef LINDFOREST_SYSTEM_IO_HPP
#define LINDFOREST_SYSTEM_IO_HPP

#include <optional>
#include <string>

#include "lindforest/laplacian.hpp"
#include "lindforest/model.hpp"
#include "lindforest/symmetry.hpp"

namespace lindforest {

// On-disk system description: JSON with "dim", "hamiltonian" (either
// "diagonal" or "matrix"), "lindblad_ops", optional "basis" and "labels".
// Complex entries are [re, im] pairs. Unknown keys are rejected.
struct ParsedSystem {
    LindbladSystem system;
    std::optional<ProjectorFamily> basis;
};

ParsedSystem parse_system_text(const std::string& text);
ParsedSystem load_system_file(const std::string& path);

// Serialization that re-parses to bit-equal floats.
std::string system_to_json_text(const ParsedSystem& ps);

// Relation file: {"classes": [[1,4,7], ...]} with 1-based level indices.
EquivalenceRelation parse_relation_text(const std::string& text, int dim);
EquivalenceRelation load_relation_file(const std::string& path, int dim);

// Initial state: {"lambda": [...]} or {"matrix": [[[re,im],...],...]}.
struct ParsedInitial {
    std::optional<SimplexVector> lambda;
    std::optional<DensityMatrix> rho;
};
ParsedInitial parse_initial_text(const std::string& text, int dim);
ParsedInitial load_initial_file(const std::string& path, int dim);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace lindforest

#endif
