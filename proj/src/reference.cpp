#include "lindforest/reference.hpp"

#include <algorithm>

namespace lindforest::reference {

RateMatrix build_omega(const LindbladSystem& sys, const ProjectorFamily& proj) {
    const int n = sys.dim;
    RateMatrix out{RealMatrix(n)};
    std::vector<ComplexMatrix> projectors;
    for (int j = 0; j < n; ++j) projectors.push_back(proj.projector(j));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            double w = 0;
            for (const ComplexMatrix& op : sys.lindblad_ops) {
                ComplexMatrix prod =
                    matmul(projectors[j], matmul(op, matmul(projectors[k], op.adjoint())));
                w += prod.trace().real();
            }
            out.omega(j, k) = w;
        }
    for (int k = 0; k < n; ++k) {
        double colsum = 0;
        for (int l = 0; l < n; ++l)
            if (l != k) colsum += out.omega(l, k);
        out.omega(k, k) = -colsum;
    }
    return out;
}

namespace {

// Cartesian product over out-edge selections; cycles rejected after the fact.
template <typename Emit>
void product_over_choices(const std::vector<int>& active,
                          const std::vector<std::vector<std::pair<int, EdgeWeight>>>& options,
                          int n, const Emit& emit) {
    std::vector<size_t> pick(active.size(), 0);
    if (active.empty()) {
        emit(pick);
        return;
    }
    while (true) {
        std::vector<int> parent(n, -1);
        for (size_t i = 0; i < active.size(); ++i) parent[active[i]] = options[i][pick[i]].first;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            int steps = 0, cur = v;
            while (cur != -1 && steps <= n) {
                cur = parent[cur];
                ++steps;
            }
            if (steps > n) ok = false;
        }
        if (ok) emit(pick);
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
}

}  // namespace

std::vector<InTree> enumerate_in_trees(const RateGraph& g, const std::vector<int>& vertices,
                                       int root) {
    std::vector<bool> inside(g.n, false);
    for (int v : vertices) inside[v] = true;
    std::vector<int> active;
    for (int v : vertices)
        if (v != root) active.push_back(v);
    std::sort(active.begin(), active.end());

    std::vector<std::vector<std::pair<int, EdgeWeight>>> options(active.size());
    for (size_t i = 0; i < active.size(); ++i) {
        for (int ei : g.out_edges[active[i]]) {
            const RateEdge& e = g.edges[ei];
            if (inside[e.to]) options[i].emplace_back(e.to, e.weight);
        }
        if (options[i].empty()) return {};
    }

    std::vector<InTree> out;
    product_over_choices(active, options, g.n, [&](const std::vector<size_t>& pick) {
        InTree t;
        t.root = root;
        for (size_t i = 0; i < active.size(); ++i) {
            t.edges.emplace_back(active[i], options[i][pick[i]].first);
            t.weight.multiply(options[i][pick[i]].second);
        }
        out.push_back(std::move(t));
    });
    return out;
}

std::vector<RootedForest> enumerate_forests(const RateGraph& g, const std::vector<int>& roots) {
    std::vector<bool> is_root(g.n, false);
    for (int r : roots) is_root[r] = true;
    std::vector<int> active;
    for (int v = 0; v < g.n; ++v)
        if (!is_root[v]) active.push_back(v);

    std::vector<std::vector<std::pair<int, EdgeWeight>>> options(active.size());
    for (size_t i = 0; i < active.size(); ++i) {
        for (int ei : g.out_edges[active[i]]) {
            const RateEdge& e = g.edges[ei];
            options[i].emplace_back(e.to, e.weight);
        }
        if (options[i].empty()) return {};
    }

    std::vector<RootedForest> out;
    product_over_choices(active, options, g.n, [&](const std::vector<size_t>& pick) {
        RootedForest f;
        std::vector<int> parent(g.n, -1);
        for (size_t i = 0; i < active.size(); ++i) {
            int t = options[i][pick[i]].first;
            f.edges.emplace_back(active[i], t);
            parent[active[i]] = t;
            f.weight.multiply(options[i][pick[i]].second);
        }
        f.root_of.resize(g.n);
        for (int v = 0; v < g.n; ++v) {
            int cur = v;
            while (parent[cur] != -1) cur = parent[cur];
            f.root_of[v] = cur;
        }
        out.push_back(std::move(f));
    });
    return out;
}

ComplexMatrix integrate_master_equation(const LindbladSystem& sys, const ComplexMatrix& rho0,
                                        double t_end, double dt) {
    auto rhs = [&](const ComplexMatrix& rho) {
        ComplexMatrix d = matmul(sys.hamiltonian, rho) - matmul(rho, sys.hamiltonian);
        d *= cplx(0.0, -1.0);
        for (const ComplexMatrix& l : sys.lindblad_ops) {
            ComplexMatrix ldag = l.adjoint();
            ComplexMatrix ldl = matmul(ldag, l);
            d += matmul(l, matmul(rho, ldag));
            d -= 0.5 * (matmul(ldl, rho) + matmul(rho, ldl));
        }
        return d;
    };
    ComplexMatrix rho = rho0;
    long long steps = static_cast<long long>(t_end / dt + 0.5);
    for (long long s = 0; s < steps; ++s) {
        ComplexMatrix k1 = rhs(rho);
        ComplexMatrix k2 = rhs(rho + 0.5 * dt * k1);
        ComplexMatrix k3 = rhs(rho + 0.5 * dt * k2);
        ComplexMatrix k4 = rhs(rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

}  // namespace lindforest::reference
