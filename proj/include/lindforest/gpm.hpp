#ifndef LINDFOREST_GPM_HPP
#define LINDFOREST_GPM_HPP

#include <vector>

#include "lindforest/complex_matrix.hpp"

namespace lindforest {

inline constexpr double kGpmZeroTol = 1e-12;

// True iff every row and every column of L has at most one entry with
// modulus above tol.
bool is_gpm(const ComplexMatrix& l, double tol = kGpmZeroTol);

// L = A D with A a permutation matrix and D diagonal.
//   sigma[j] = row of the nonzero entry in column j of A (0-based),
//   diag[j]  = the nonzero entry of column j of L, or 0 for empty columns.
// Empty columns are closed into cycles so that no cycle holds more than one
// zero diagonal element, which makes the decomposition unique.
struct GPMDecomposition {
    std::vector<int> sigma;
    std::vector<cplx> diag;
    std::vector<std::vector<int>> cycles;  // cycle domains, each sorted; ordered by smallest member
    int rank_deficiency = 0;               // number of empty columns

    int apply(int j) const { return sigma[j]; }
    // A_{sigma(j), j} = 1 rebuilt from sigma, times diag.
    ComplexMatrix reconstruct() const;
};

GPMDecomposition gpm_decompose(const ComplexMatrix& l, double tol = kGpmZeroTol);

// Permutation matrix from cycle notation. `forward` reads (a b c) as
// a->b->c->a; otherwise as the reverse. Cycle notation in the wild is
// ambiguous, hence the explicit flag; matrix input is always authoritative.
ComplexMatrix permutation_matrix_from_cycles(int dim,
                                             const std::vector<std::vector<int>>& cycles,
                                             bool forward);

}  // namespace lindforest

#endif
