#include "lindforest/stationary.hpp"

#include <cmath>
#include <sstream>

#include "lindforest/errors.hpp"
#include "lindforest/parallel.hpp"

namespace lindforest {

RankReport kernel_rank(const RateMatrix& omega, const BasinDecomposition& basins) {
    const int n = omega.dim();
    RankReport report{n - basins.n_basins(), basins.n_basins()};

    KernelResult numeric = numerical_kernel(omega.omega, default_kernel_threshold(omega.omega));
    if (numeric.rank != report.rank) {
        std::ostringstream msg;
        msg << "structural rank " << report.rank << " but numerical rank " << numeric.rank;
        throw RankMismatch(msg.str());
    }
    return report;
}

namespace {

// Tree-weight sum for one root via the principal minor of the basin block:
// |det| of omega with the root's row and column removed, restricted to the
// basin. The basin block is a Laplacian of its own because basins have no
// outgoing edges.
double tree_sum_by_minor(const RateMatrix& omega, const std::vector<int>& basin, int root) {
    const int m = static_cast<int>(basin.size());
    std::vector<int> keep;
    for (int v : basin)
        if (v != root) keep.push_back(v);
    RealMatrix block(m - 1);
    for (int i = 0; i < m - 1; ++i)
        for (int j = 0; j < m - 1; ++j) block(i, j) = omega.omega(keep[i], keep[j]);
    return std::fabs(lu_determinant(block));
}

}  // namespace

std::vector<StationaryOrbit> stationary_orbits(const RateGraph& g,
                                               const BasinDecomposition& basins,
                                               Method method) {
    const int n = g.n;
    RateMatrix omega = graph_to_omega(g);
    std::vector<StationaryOrbit> out(basins.n_basins());

    for (int b = 0; b < basins.n_basins(); ++b) {
        const std::vector<int>& verts = basins.basins[b];
        StationaryOrbit orbit;
        orbit.basin = b;
        orbit.lambda.assign(n, 0.0);
        orbit.numerators.resize(verts.size());

        std::vector<double> minor_sums(verts.size(), 0.0);
        if (method != Method::enumerate) {
            for (size_t i = 0; i < verts.size(); ++i)
                minor_sums[i] = verts.size() == 1 ? 1.0 : tree_sum_by_minor(omega, verts, verts[i]);
        }
        if (method != Method::determinant) {
#pragma omp parallel for schedule(dynamic) if (threads() > 1 && verts.size() > 1)
            for (size_t i = 0; i < verts.size(); ++i)
                orbit.numerators[i] = sum_in_tree_weights(g, verts, verts[i]);
        } else {
            for (size_t i = 0; i < verts.size(); ++i) {
                orbit.numerators[i].value = minor_sums[i];
                orbit.numerators[i].is_exact = false;
            }
        }

        if (method == Method::both) {
            for (size_t i = 0; i < verts.size(); ++i) {
                double enum_val = orbit.numerators[i].best();
                double det_val = minor_sums[i];
                double scale = std::max({std::fabs(enum_val), std::fabs(det_val), 1.0});
                if (std::fabs(enum_val - det_val) > kMethodAgreementRelTol * scale) {
                    std::ostringstream msg;
                    msg << "tree sum for vertex " << verts[i] + 1 << ": enumeration gives "
                        << enum_val << ", determinant gives " << det_val;
                    throw MethodDisagreement(msg.str());
                }
            }
        }

        orbit.exact = true;
        for (const WeightSum& s : orbit.numerators) {
            orbit.denominator.add(s);
            orbit.exact = orbit.exact && s.is_exact;
        }
        orbit.exact = orbit.exact && orbit.denominator.is_exact;
        // Strong connectivity guarantees at least one tree per basin root.
        if (orbit.denominator.best() <= 0.0)
            throw InternalError("basin with empty in-tree set");
        for (size_t i = 0; i < verts.size(); ++i)
            orbit.lambda[verts[i]] = orbit.numerators[i].best() / orbit.denominator.best();

        out[b] = std::move(orbit);
    }
    return out;
}

std::vector<ConstraintVector> constraint_vectors(const RateGraph& g,
                                                 const BasinDecomposition& basins,
                                                 ConstraintVariant variant) {
    const int n = g.n;
    const int nb = basins.n_basins();

    std::vector<RootedForest> forests = enumerate_basin_forests(
        g, basins, variant == ConstraintVariant::pruned ? ForestMode::pruned : ForestMode::full);

    WeightSum total;
    // per-basin, per-vertex forest-weight sums for decay vertices
    std::vector<std::vector<WeightSum>> decay_sums(nb, std::vector<WeightSum>(n));
    for (const RootedForest& f : forests) {
        total.add(f.weight);
        for (int l : basins.non_basin) {
            int eta = basins.basin_of_vertex(f.root_of[l]);
            decay_sums[eta][l].add(f.weight);
        }
    }
    if (forests.empty()) throw InternalError("no basin-rooted forest exists");

    RateMatrix omega = graph_to_omega(g);
    std::vector<ConstraintVector> out;
    for (int b = 0; b < nb; ++b) {
        ConstraintVector cv;
        cv.basin = b;
        cv.variant = variant;
        cv.kappa.assign(n, 0.0);
        cv.exact_entries.assign(n, WeightSum{});
        cv.exact = total.is_exact;
        for (int v : basins.basins[b]) {
            cv.kappa[v] = total.best();
            cv.exact_entries[v] = total;
        }
        for (int l : basins.non_basin) {
            cv.kappa[l] = decay_sums[b][l].best();
            cv.exact_entries[l] = decay_sums[b][l];
            cv.exact = cv.exact && decay_sums[b][l].is_exact;
        }

        // kappa^T omega must vanish.
        double kappa_norm = 0, residual = 0;
        for (int v = 0; v < n; ++v) kappa_norm = std::max(kappa_norm, std::fabs(cv.kappa[v]));
        for (int k = 0; k < n; ++k) {
            double dot = 0;
            for (int j = 0; j < n; ++j) dot += cv.kappa[j] * omega.omega(j, k);
            residual = std::max(residual, std::fabs(dot));
        }
        double scale = kappa_norm * std::max(omega.omega.max_abs(), 1.0);
        if (residual > kKernelResidualRelTol * std::max(scale, 1.0)) {
            std::ostringstream msg;
            msg << "constraint vector for basin " << b + 1 << " has left-kernel residual "
                << residual;
            throw NotInLeftKernel(msg.str());
        }
        out.push_back(std::move(cv));
    }
    return out;
}

AsymptoticState asymptotic_state(const RateGraph& g, const BasinDecomposition& basins,
                                 const SimplexVector& lambda0, const ProjectorFamily& proj) {
    const int n = g.n;
    if (static_cast<int>(lambda0.entries.size()) != n)
        throw DimensionMismatch("initial simplex vector has wrong length");

    std::vector<ConstraintVector> kappas =
        constraint_vectors(g, basins, ConstraintVariant::pruned);
    std::vector<StationaryOrbit> orbits = stationary_orbits(g, basins, Method::both);

    // c_eta = kappa'_eta . lambda0 / common factor; the common factor is the
    // entry shared by basin eta's own vertices.
    AsymptoticState out;
    out.coefficients.resize(basins.n_basins());
    double csum = 0;
    for (int b = 0; b < basins.n_basins(); ++b) {
        double factor = kappas[b].kappa[basins.basins[b].front()];
        double dot = 0;
        for (int v = 0; v < n; ++v) dot += kappas[b].kappa[v] * lambda0.entries[v];
        out.coefficients[b] = dot / factor;
        csum += out.coefficients[b];
    }
    if (std::fabs(csum - 1.0) > kTraceTol)
        throw InternalError("asymptotic coefficients do not sum to one");

    ComplexMatrix rho(n);
    for (int b = 0; b < basins.n_basins(); ++b) {
        for (int v : basins.basins[b]) {
            double pop = out.coefficients[b] * orbits[b].lambda[v];
            if (pop == 0.0) continue;
            ComplexMatrix pi = proj.projector(v);
            pi *= cplx(pop, 0.0);
            rho += pi;
        }
    }
    out.rho_infinity = DensityMatrix{std::move(rho)};
    return out;
}

}  // namespace lindforest
