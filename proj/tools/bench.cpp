// Timing comparison between the parallel kernels and the serial reference
// implementations, with equality checks on the results.

#include <chrono>
#include <cstdio>
#include <random>

#include "lindforest/graph.hpp"
#include "lindforest/oracle.hpp"
#include "lindforest/parallel.hpp"
#include "lindforest/reference.hpp"

using namespace lindforest;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

RateGraph complete_graph(int n) {
    std::vector<RateEdge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) edges.push_back({a, b, EdgeWeight(1.0 + ((a * 7 + b) % 5))});
    return make_graph(n, edges);
}

LindbladSystem random_dense_system(int n, int ops, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LindbladSystem sys;
    sys.dim = n;
    sys.hamiltonian = ComplexMatrix(n);
    for (int i = 0; i < n; ++i) sys.hamiltonian(i, i) = u(rng);
    for (int a = 0; a < ops; ++a) {
        ComplexMatrix l(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) l(i, j) = cplx(u(rng), u(rng)) * 0.1;
        sys.lindblad_ops.push_back(l);
    }
    return sys;
}

}  // namespace

int main() {
    const int hw = []() {
#ifdef _OPENMP
        return 2;
#else
        return 1;
#endif
    }();

    std::printf("%-34s %12s %12s %9s %7s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "equal");

    {
        RateGraph g = complete_graph(8);
        std::vector<int> all(8);
        for (int i = 0; i < 8; ++i) all[i] = i;

        set_threads(1);
        auto t0 = clock_type::now();
        WeightSum serial_total;
        for (int root = 0; root < 8; ++root) serial_total.add(sum_in_tree_weights(g, all, root));
        double serial_ms = ms_since(t0);

        set_threads(hw);
        t0 = clock_type::now();
        WeightSum parallel_total;
        for (int root = 0; root < 8; ++root)
            parallel_total.add(sum_in_tree_weights(g, all, root));
        double parallel_ms = ms_since(t0);

        bool equal = serial_total.is_exact == parallel_total.is_exact &&
                     serial_total.exact == parallel_total.exact;
        std::printf("%-34s %12.1f %12.1f %8.2fx %7s\n", "in-tree sums, complete graph n=8",
                    serial_ms, parallel_ms, serial_ms / parallel_ms, equal ? "yes" : "NO");
    }

    {
        RateGraph g = complete_graph(7);
        std::vector<int> all(7);
        for (int i = 0; i < 7; ++i) all[i] = i;

        set_threads(1);
        auto t0 = clock_type::now();
        std::vector<InTree> serial_trees = enumerate_in_trees(g, all, 0);
        double serial_ms = ms_since(t0);

        t0 = clock_type::now();
        std::vector<InTree> naive_trees = reference::enumerate_in_trees(g, all, 0);
        double naive_ms = ms_since(t0);

        set_threads(hw);
        t0 = clock_type::now();
        std::vector<InTree> parallel_trees = enumerate_in_trees(g, all, 0);
        double parallel_ms = ms_since(t0);

        bool equal = serial_trees.size() == parallel_trees.size() &&
                     serial_trees.size() == naive_trees.size();
        for (size_t i = 0; equal && i < serial_trees.size(); ++i)
            equal = serial_trees[i].edges == parallel_trees[i].edges;
        std::printf("%-34s %12.1f %12.1f %8.2fx %7s\n", "tree listing, complete graph n=7",
                    serial_ms, parallel_ms, serial_ms / parallel_ms, equal ? "yes" : "NO");
        std::printf("%-34s %12.1f %12s\n", "  (cartesian-product reference)", naive_ms, "-");
    }

    {
        LindbladSystem sys = random_dense_system(64, 8, 1);
        ProjectorFamily proj = ProjectorFamily::standard(64);

        set_threads(1);
        auto t0 = clock_type::now();
        RateMatrix serial_om = build_omega(sys, proj);
        double serial_ms = ms_since(t0);

        t0 = clock_type::now();
        RateMatrix literal_om = reference::build_omega(sys, proj);
        double literal_ms = ms_since(t0);

        set_threads(hw);
        t0 = clock_type::now();
        RateMatrix parallel_om = build_omega(sys, proj);
        double parallel_ms = ms_since(t0);

        double diff = 0, ldiff = 0;
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j) {
                diff = std::max(diff,
                                std::fabs(serial_om.omega(i, j) - parallel_om.omega(i, j)));
                ldiff = std::max(ldiff,
                                 std::fabs(serial_om.omega(i, j) - literal_om.omega(i, j)));
            }
        std::printf("%-34s %12.1f %12.1f %8.2fx %7s\n", "rate matrix, dense n=64", serial_ms,
                    parallel_ms, serial_ms / parallel_ms, diff == 0.0 ? "yes" : "NO");
        std::printf("%-34s %12.1f %12s %9s %7s\n", "  (projector-trace reference)", literal_ms,
                    "-", "-", ldiff <= 1e-9 ? "yes" : "NO");
    }

    {
        LindbladSystem sys = random_dense_system(24, 4, 2);
        DensityMatrix rho0 = DensityMatrix::maximally_mixed(24);

        set_threads(1);
        auto t0 = clock_type::now();
        Trajectory traj = integrate_master_equation(sys, rho0, 1.0, 1e-3, 11);
        double fast_ms = ms_since(t0);

        t0 = clock_type::now();
        ComplexMatrix ref = reference::integrate_master_equation(sys, rho0.matrix, 1.0, 1e-3);
        double ref_ms = ms_since(t0);

        double diff = (traj.final_state().matrix - ref).max_abs();
        std::printf("%-34s %12.1f %12.1f %9s %7s\n", "master RK4, n=24 (vs reference)", ref_ms,
                    fast_ms, "-", diff <= 1e-12 ? "yes" : "NO");
    }

    set_threads(1);
    return 0;
}
