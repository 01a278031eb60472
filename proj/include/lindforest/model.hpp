#ifndef LINDFOREST_MODEL_HPP
#define LINDFOREST_MODEL_HPP

#include <string>
#include <vector>

#include "lindforest/complex_matrix.hpp"

namespace lindforest {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueTol = 1e-10;
inline constexpr double kSimplexEntryTol = 1e-12;

// Hamiltonian plus a non-empty list of jump operators on an n-dimensional
// Hilbert space. Immutable after construction.
struct LindbladSystem {
    int dim = 0;
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> lindblad_ops;
    std::vector<std::string> labels;  // optional, one per level

    bool hamiltonian_is_diagonal(double tol = kHermitianTol) const;
    std::vector<double> hamiltonian_diagonal() const;
};

struct Violation {
    std::string field;
    std::string message;
    double defect = 0.0;
};

// Empty report iff all structural invariants hold: Hermitian Hamiltonian,
// matching operator dimensions, finite entries, at least one operator.
std::vector<Violation> validate_system(const LindbladSystem& sys);

struct DensityMatrix {
    ComplexMatrix matrix;

    // Hermitian to 1e-10, unit trace, eigenvalues >= -1e-10.
    std::vector<Violation> validate() const;
    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix from_diagonal(const std::vector<double>& populations);
};

// Eigenvalue vector on the probability simplex.
struct SimplexVector {
    std::vector<double> entries;

    std::vector<Violation> validate() const;
};

}  // namespace lindforest

#endif
