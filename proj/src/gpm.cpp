#include "lindforest/gpm.hpp"

#include <algorithm>
#include <cmath>

#include "lindforest/errors.hpp"

namespace lindforest {

bool is_gpm(const ComplexMatrix& l, double tol) {
    const int n = l.dim();
    for (int i = 0; i < n; ++i) {
        int row_hits = 0, col_hits = 0;
        for (int j = 0; j < n; ++j) {
            if (std::abs(l(i, j)) > tol) ++row_hits;
            if (std::abs(l(j, i)) > tol) ++col_hits;
        }
        if (row_hits > 1 || col_hits > 1) return false;
    }
    return true;
}

GPMDecomposition gpm_decompose(const ComplexMatrix& l, double tol) {
    const int n = l.dim();
    if (!is_gpm(l, tol)) throw NotGPM("operator has more than one entry in some row or column");

    GPMDecomposition out;
    out.sigma.assign(n, -1);
    out.diag.assign(n, cplx(0.0, 0.0));

    // row_entry[j] = column whose entry sits in row j, or -1 for empty rows.
    std::vector<int> row_entry(n, -1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (std::abs(l(i, j)) > tol) {
                out.sigma[j] = i;
                out.diag[j] = l(i, j);
                row_entry[i] = j;
                break;
            }
        }
    }

    // An empty column j has no outgoing edge in the auxiliary digraph, so its
    // component is a path ending at j. Walk the path upstream to its head
    // (the node with an empty row) and close the cycle there. This placement
    // puts the single zero of D inside that cycle and nowhere else.
    for (int j = 0; j < n; ++j) {
        if (out.sigma[j] != -1) continue;
        ++out.rank_deficiency;
        int cur = j;
        while (row_entry[cur] != -1) cur = row_entry[cur];
        out.sigma[j] = cur;
    }

    // Cycle domains of sigma, ordered by smallest member.
    std::vector<bool> seen(n, false);
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<int> cyc;
        int cur = start;
        while (!seen[cur]) {
            seen[cur] = true;
            cyc.push_back(cur);
            cur = out.sigma[cur];
        }
        std::sort(cyc.begin(), cyc.end());
        out.cycles.push_back(std::move(cyc));
    }

    // One zero per cycle at most, guaranteed by the closing rule above.
    for (const auto& cyc : out.cycles) {
        int zeros = 0;
        for (int v : cyc)
            if (std::abs(out.diag[v]) <= tol) ++zeros;
        if (zeros > 1) throw InternalError("cycle with more than one zero diagonal element");
    }
    return out;
}

ComplexMatrix GPMDecomposition::reconstruct() const {
    const int n = static_cast<int>(sigma.size());
    ComplexMatrix l(n);
    for (int j = 0; j < n; ++j) l(sigma[j], j) = diag[j];
    return l;
}

ComplexMatrix permutation_matrix_from_cycles(int dim,
                                             const std::vector<std::vector<int>>& cycles,
                                             bool forward) {
    std::vector<int> sigma(dim);
    for (int i = 0; i < dim; ++i) sigma[i] = i;
    for (const auto& cyc : cycles) {
        const int m = static_cast<int>(cyc.size());
        for (int k = 0; k < m; ++k) {
            int from = cyc[k];
            int to = forward ? cyc[(k + 1) % m] : cyc[(k + m - 1) % m];
            sigma[from] = to;
        }
    }
    ComplexMatrix a(dim);
    for (int j = 0; j < dim; ++j) a(sigma[j], j) = 1.0;
    return a;
}

}  // namespace lindforest
