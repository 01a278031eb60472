#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "lindforest/errors.hpp"
#include "lindforest/oracle.hpp"
#include "lindforest/stationary.hpp"

using namespace lindforest;

namespace {

RateGraph four_level_graph() { return build_rate_graph(build_omega(lftest::single_basin_system())); }
RateGraph eight_level_graph() { return build_rate_graph(build_omega(lftest::two_basin_system())); }

long long as_int(const WeightSum& s) {
    REQUIRE(s.is_exact);
    return static_cast<long long>(s.exact);
}

}  // namespace

TEST_CASE("kernel rank of the worked examples") {
    {
        RateGraph g = four_level_graph();
        RankReport r = kernel_rank(graph_to_omega(g), decompose_basins(g));
        CHECK(r.rank == 3);
        CHECK(r.kernel_dim == 1);
    }
    {
        RateGraph g = eight_level_graph();
        RankReport r = kernel_rank(graph_to_omega(g), decompose_basins(g));
        CHECK(r.rank == 6);
        CHECK(r.kernel_dim == 2);
    }
    {
        RateGraph g = make_graph(4, {});
        RankReport r = kernel_rank(graph_to_omega(g), decompose_basins(g));
        CHECK(r.rank == 0);
        CHECK(r.kernel_dim == 4);
    }
}

TEST_CASE("stationary orbit of the four-level system, both methods") {
    RateGraph g = four_level_graph();
    BasinDecomposition b = decompose_basins(g);
    for (Method m : {Method::enumerate, Method::determinant, Method::both}) {
        std::vector<StationaryOrbit> orbits = stationary_orbits(g, b, m);
        REQUIRE(orbits.size() == 1);
        const StationaryOrbit& o = orbits[0];
        // Tree sums per root: 32877, 7904, 68068, 131508; total 240357.
        // (The root-2 sum is 1872 + 5200 + 832; the kernel equation and the
        // principal-minor route both confirm it.)
        const double denom = 240357.0;
        CHECK(o.lambda[0] == doctest::Approx(32877.0 / denom).epsilon(1e-12));
        CHECK(o.lambda[1] == doctest::Approx(7904.0 / denom).epsilon(1e-12));
        CHECK(o.lambda[2] == doctest::Approx(68068.0 / denom).epsilon(1e-12));
        CHECK(o.lambda[3] == doctest::Approx(131508.0 / denom).epsilon(1e-12));
        if (m != Method::determinant) {
            CHECK(o.exact);
            CHECK(as_int(o.numerators[0]) == 32877);
            CHECK(as_int(o.numerators[1]) == 7904);
            CHECK(as_int(o.numerators[2]) == 68068);
            CHECK(as_int(o.numerators[3]) == 131508);
            CHECK(as_int(o.denominator) == 240357);
        }
    }
}

TEST_CASE("stationary orbits of the eight-level system") {
    RateGraph g = eight_level_graph();
    BasinDecomposition b = decompose_basins(g);
    std::vector<StationaryOrbit> orbits = stationary_orbits(g, b, Method::both);
    REQUIRE(orbits.size() == 2);
    CHECK(as_int(orbits[0].numerators[0]) == 9);
    CHECK(as_int(orbits[0].numerators[1]) == 4);
    CHECK(as_int(orbits[0].denominator) == 13);
    CHECK(as_int(orbits[1].numerators[0]) == 16);
    CHECK(as_int(orbits[1].numerators[1]) == 25);
    CHECK(as_int(orbits[1].denominator) == 41);
    for (int v = 4; v < 8; ++v) {
        CHECK(orbits[0].lambda[v] == 0.0);
        CHECK(orbits[1].lambda[v] == 0.0);
    }
}

TEST_CASE("a singleton basin pins its unit vector") {
    // 1 <- 2: vertex 0 is the single basin
    RateGraph g = make_graph(2, {{1, 0, EdgeWeight(3.0)}});
    BasinDecomposition b = decompose_basins(g);
    std::vector<StationaryOrbit> orbits = stationary_orbits(g, b, Method::both);
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0].lambda[0] == 1.0);
    CHECK(orbits[0].lambda[1] == 0.0);
}

TEST_CASE("orbit lies in the kernel and matches the numerical kernel") {
    std::mt19937 rng(1111);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        RateGraph g = lftest::random_strongly_connected_graph(rng, n);
        BasinDecomposition b = decompose_basins(g);
        REQUIRE(b.n_basins() == 1);
        std::vector<StationaryOrbit> orbits = stationary_orbits(g, b, Method::both);
        RateMatrix om = graph_to_omega(g);

        // omega . lambda = 0
        double resid = 0;
        for (int j = 0; j < n; ++j) {
            double dot = 0;
            for (int k = 0; k < n; ++k) dot += om.omega(j, k) * orbits[0].lambda[k];
            resid = std::max(resid, std::fabs(dot));
        }
        CHECK(resid <= 1e-9 * std::max(1.0, om.omega.max_abs()));

        // the one-dimensional numerical kernel is parallel to the orbit
        KernelResult kr = numerical_kernel(om.omega, default_kernel_threshold(om.omega));
        REQUIRE(kr.kernel_basis.size() == 1);
        double dot = 0, nl = 0, nk = 0;
        for (int i = 0; i < n; ++i) {
            dot += kr.kernel_basis[0][i] * orbits[0].lambda[i];
            nl += orbits[0].lambda[i] * orbits[0].lambda[i];
            nk += kr.kernel_basis[0][i] * kr.kernel_basis[0][i];
        }
        CHECK(std::fabs(std::fabs(dot) - std::sqrt(nl * nk)) <= 1e-9);
    }
}

TEST_CASE("enumeration and determinant backends agree on random basins") {
    std::mt19937 rng(2222);
    int checked = 0;
    while (checked < 200) {
        int n = 2 + static_cast<int>(rng() % 5);
        RateGraph g = lftest::random_strongly_connected_graph(rng, n);
        BasinDecomposition b = decompose_basins(g);
        std::vector<StationaryOrbit> via_enum = stationary_orbits(g, b, Method::enumerate);
        std::vector<StationaryOrbit> via_det = stationary_orbits(g, b, Method::determinant);
        for (size_t i = 0; i < via_enum.size(); ++i)
            for (size_t j = 0; j < via_enum[i].numerators.size(); ++j) {
                double a = via_enum[i].numerators[j].best();
                double d = via_det[i].numerators[j].best();
                CHECK(std::fabs(a - d) <= 1e-9 * std::max({a, d, 1.0}));
                ++checked;
            }
        // Method::both must not throw
        stationary_orbits(g, b, Method::both);
    }
}

TEST_CASE("principal minors equal signed forest sums on random digraphs") {
    std::mt19937 rng(3333);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        RateGraph g = lftest::random_digraph(rng, n, 0.5);
        RateMatrix om = graph_to_omega(g);

        std::vector<int> removed;
        for (int v = 0; v < n; ++v)
            if (rng() % 3 == 0) removed.push_back(v);
        if (removed.empty() || static_cast<int>(removed.size()) == n) continue;

        double det = minor_determinant(om, removed);
        WeightSum forest_sum;
        for (const RootedForest& f : enumerate_forests(g, removed)) forest_sum.add(f.weight);
        double expect = ((n - static_cast<int>(removed.size())) % 2 ? -1.0 : 1.0) *
                        forest_sum.best();
        CHECK(std::fabs(det - expect) <= 1e-9 * std::max(1.0, std::fabs(expect)));
    }
}

TEST_CASE("constraint vectors of the eight-level system, pruned") {
    RateGraph g = eight_level_graph();
    BasinDecomposition b = decompose_basins(g);
    std::vector<ConstraintVector> ks = constraint_vectors(g, b, ConstraintVariant::pruned);
    REQUIRE(ks.size() == 2);

    const long long F = 1268739497LL;
    CHECK(as_int(ks[0].exact_entries[0]) == F);
    CHECK(as_int(ks[0].exact_entries[1]) == F);
    CHECK(ks[0].kappa[2] == 0.0);
    CHECK(ks[0].kappa[3] == 0.0);
    CHECK(as_int(ks[0].exact_entries[4]) == 736749236LL);
    CHECK(as_int(ks[0].exact_entries[5]) == 1146754469LL);
    CHECK(as_int(ks[0].exact_entries[6]) == 291144917LL);
    CHECK(as_int(ks[0].exact_entries[7]) == 79971136LL);

    CHECK(ks[1].kappa[0] == 0.0);
    CHECK(ks[1].kappa[1] == 0.0);
    CHECK(as_int(ks[1].exact_entries[2]) == F);
    CHECK(as_int(ks[1].exact_entries[3]) == F);
    CHECK(as_int(ks[1].exact_entries[4]) == 531990261LL);
    CHECK(as_int(ks[1].exact_entries[5]) == 121985028LL);
    CHECK(as_int(ks[1].exact_entries[6]) == 977594580LL);
    CHECK(as_int(ks[1].exact_entries[7]) == 1188768361LL);

    // decay entries of the two vectors tile the common factor
    for (int l = 4; l < 8; ++l)
        CHECK(as_int(ks[0].exact_entries[l]) + as_int(ks[1].exact_entries[l]) == F);
}

TEST_CASE("full-variant constraints are the pruned ones scaled by the basin trees") {
    RateGraph g = eight_level_graph();
    BasinDecomposition b = decompose_basins(g);
    std::vector<ConstraintVector> pruned = constraint_vectors(g, b, ConstraintVariant::pruned);
    std::vector<ConstraintVector> full = constraint_vectors(g, b, ConstraintVariant::full);
    // basin {1,2} spans 1 + 4 + 9 = 14 internal arrangements, basin {3,4}
    // spans 1 + 16 + 25 = 42
    const long long scale = 14 * 42;
    for (int eta = 0; eta < 2; ++eta)
        for (int v = 0; v < 8; ++v)
            CHECK(as_int(full[eta].exact_entries[v]) ==
                  scale * as_int(pruned[eta].exact_entries[v]));
}

TEST_CASE("single-basin graphs have the constant constraint vector") {
    RateGraph g = four_level_graph();
    BasinDecomposition b = decompose_basins(g);
    std::vector<ConstraintVector> ks = constraint_vectors(g, b, ConstraintVariant::pruned);
    REQUIRE(ks.size() == 1);
    for (int v = 0; v < 4; ++v) CHECK(ks[0].kappa[v] == 1.0);
}

TEST_CASE("left kernel property on random graphs, both variants") {
    std::mt19937 rng(4444);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        RateGraph g = lftest::random_digraph(rng, n, 0.4);
        BasinDecomposition b = decompose_basins(g);
        // constraint_vectors itself throws NotInLeftKernel on failure
        std::vector<ConstraintVector> p = constraint_vectors(g, b, ConstraintVariant::pruned);
        std::vector<ConstraintVector> f = constraint_vectors(g, b, ConstraintVariant::full);
        CHECK(p.size() == static_cast<size_t>(b.n_basins()));
        CHECK(f.size() == static_cast<size_t>(b.n_basins()));
    }
}

TEST_CASE("scaling all rates leaves orbits unchanged and constraint ratios intact") {
    std::mt19937 rng(5555);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + static_cast<int>(rng() % 3);
        RateGraph g = lftest::random_digraph(rng, n, 0.5);
        BasinDecomposition b = decompose_basins(g);

        std::vector<RateEdge> scaled_edges = g.edges;
        const double s = 3.0;
        for (RateEdge& e : scaled_edges) e.weight = EdgeWeight(e.weight.value * s);
        RateGraph gs = make_graph(n, scaled_edges);

        std::vector<StationaryOrbit> o1 = stationary_orbits(g, b, Method::enumerate);
        std::vector<StationaryOrbit> o2 = stationary_orbits(gs, b, Method::enumerate);
        for (size_t i = 0; i < o1.size(); ++i)
            for (int v = 0; v < n; ++v) CHECK(o1[i].lambda[v] == o2[i].lambda[v]);

        std::vector<ConstraintVector> k1 = constraint_vectors(g, b, ConstraintVariant::pruned);
        std::vector<ConstraintVector> k2 = constraint_vectors(gs, b, ConstraintVariant::pruned);
        for (size_t i = 0; i < k1.size(); ++i)
            for (int v = 0; v < n; ++v)
                for (int w = 0; w < n; ++w)
                    // cross-multiplied ratio equality, exact in the integer mirror
                    CHECK(k1[i].kappa[v] * k2[i].kappa[w] ==
                          doctest::Approx(k1[i].kappa[w] * k2[i].kappa[v])
                              .epsilon(1e-12)
                              .scale(std::max(1.0, k1[i].kappa[v] * k2[i].kappa[w])));
    }
}

TEST_CASE("asymptotic state of the eight-level system from a decay vertex") {
    RateGraph g = eight_level_graph();
    BasinDecomposition b = decompose_basins(g);
    SimplexVector e5{{0, 0, 0, 0, 1, 0, 0, 0}};
    AsymptoticState as = asymptotic_state(g, b, e5, ProjectorFamily::standard(8));
    REQUIRE(as.coefficients.size() == 2);
    CHECK(as.coefficients[0] == doctest::Approx(736749236.0 / 1268739497.0).epsilon(1e-12));
    CHECK(as.coefficients[1] == doctest::Approx(531990261.0 / 1268739497.0).epsilon(1e-12));
    CHECK(as.coefficients[0] + as.coefficients[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(as.rho_infinity.validate().empty());

    // populations: c_eta times the basin orbit
    CHECK(as.rho_infinity.matrix(0, 0).real() ==
          doctest::Approx(as.coefficients[0] * 9.0 / 13.0).epsilon(1e-12));
    CHECK(as.rho_infinity.matrix(3, 3).real() ==
          doctest::Approx(as.coefficients[1] * 25.0 / 41.0).epsilon(1e-12));
    CHECK(as.rho_infinity.matrix(5, 5).real() == 0.0);
}

TEST_CASE("initial support on one basin keeps everything there") {
    RateGraph g = eight_level_graph();
    BasinDecomposition b = decompose_basins(g);
    SimplexVector on_first{{0.5, 0.5, 0, 0, 0, 0, 0, 0}};
    AsymptoticState as = asymptotic_state(g, b, on_first, ProjectorFamily::standard(8));
    CHECK(as.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(as.coefficients[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("one basin swallows every initial condition") {
    RateGraph g = four_level_graph();
    BasinDecomposition b = decompose_basins(g);
    SimplexVector v{{0.1, 0.2, 0.3, 0.4}};
    AsymptoticState as = asymptotic_state(g, b, v, ProjectorFamily::standard(4));
    REQUIRE(as.coefficients.size() == 1);
    CHECK(as.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
}
