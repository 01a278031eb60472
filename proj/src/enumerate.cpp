#include <algorithm>
#include <functional>

#include "lindforest/errors.hpp"
#include "lindforest/graph.hpp"
#include "lindforest/parallel.hpp"

namespace lindforest {

namespace {

// One admissible move for a vertex: follow an edge, or (target == -1) be a
// root and carry no edge.
struct Choice {
    int target = -1;
    EdgeWeight weight;
};

// Backtracking enumeration over per-vertex choices with incremental cycle
// rejection: a partial assignment that already closes a cycle is abandoned
// before any deeper vertex is touched. Keeps complete-digraph instances
// (n^(n-2) trees) tractable where the plain Cartesian product is not.
struct Enumerator {
    const std::vector<int>& active;
    const std::vector<std::vector<Choice>>& choices;
    int n;
    std::vector<int> parent;
    std::vector<int> pick;
    const std::function<void(const std::vector<int>&)>& emit;

    Enumerator(int nvert, const std::vector<int>& act,
               const std::vector<std::vector<Choice>>& ch,
               const std::function<void(const std::vector<int>&)>& cb)
        : active(act), choices(ch), n(nvert), parent(nvert, -1),
          pick(act.size(), -1), emit(cb) {}

    bool closes_cycle(int v, int target) const {
        int cur = target;
        while (cur != -1) {
            if (cur == v) return true;
            cur = parent[cur];
        }
        return false;
    }

    void run(size_t depth) {
        if (depth == active.size()) {
            emit(pick);
            return;
        }
        int v = active[depth];
        const auto& opts = choices[depth];
        for (size_t c = 0; c < opts.size(); ++c) {
            int t = opts[c].target;
            if (t != -1 && closes_cycle(v, t)) continue;
            pick[depth] = static_cast<int>(c);
            parent[v] = t;
            run(depth + 1);
            parent[v] = -1;
        }
        pick[depth] = -1;
    }
};

// Runs the enumeration with the first vertex's choices split across threads.
// Each branch fills its own bucket; buckets are merged in choice order, so
// the output is identical for any thread count.
template <typename Result>
std::vector<Result> enumerate_buckets(
    int n, const std::vector<int>& active, const std::vector<std::vector<Choice>>& choices,
    const std::function<Result(const std::vector<int>&)>& make) {
    std::vector<Result> out;
    if (active.empty()) {
        // Single empty assignment.
        std::vector<int> none;
        out.push_back(make(none));
        return out;
    }

    const size_t top = choices[0].size();
    std::vector<std::vector<Result>> buckets(top);

#pragma omp parallel for schedule(dynamic) if (threads() > 1 && top > 1)
    for (size_t c = 0; c < top; ++c) {
        std::function<void(const std::vector<int>&)> cb = [&, c](const std::vector<int>& pick) {
            buckets[c].push_back(make(pick));
        };
        Enumerator e(n, active, choices, cb);
        int v = active[0];
        int t = choices[0][c].target;
        if (t != -1 && e.closes_cycle(v, t)) continue;
        e.pick[0] = static_cast<int>(c);
        e.parent[v] = t;
        e.run(1);
    }

    size_t total = 0;
    for (const auto& b : buckets) total += b.size();
    out.reserve(total);
    for (auto& b : buckets)
        for (auto& r : b) out.push_back(std::move(r));
    return out;
}

Weight assignment_weight(const std::vector<std::vector<Choice>>& choices,
                         const std::vector<int>& pick) {
    Weight w;
    for (size_t i = 0; i < pick.size(); ++i) {
        const Choice& c = choices[i][pick[i]];
        if (c.target != -1) w.multiply(c.weight);
    }
    return w;
}

std::vector<int> roots_of_assignment(int n, const std::vector<int>& active,
                                     const std::vector<std::vector<Choice>>& choices,
                                     const std::vector<int>& pick) {
    std::vector<int> parent(n, -1);
    for (size_t i = 0; i < active.size(); ++i) {
        int t = choices[i][pick[i]].target;
        if (t != -1) parent[active[i]] = t;
    }
    std::vector<int> root(n, -1);
    for (int v = 0; v < n; ++v) {
        int cur = v;
        while (parent[cur] != -1) cur = parent[cur];
        root[v] = cur;
    }
    return root;
}

}  // namespace

std::vector<InTree> enumerate_in_trees(const RateGraph& g, const std::vector<int>& vertices,
                                       int root) {
    std::vector<bool> inside(g.n, false);
    for (int v : vertices) inside[v] = true;
    if (root < 0 || root >= g.n || !inside[root])
        throw Error("enumerate_in_trees: root not contained in vertex set");

    std::vector<int> active;
    for (int v : vertices)
        if (v != root) active.push_back(v);
    std::sort(active.begin(), active.end());

    std::vector<std::vector<Choice>> choices(active.size());
    for (size_t i = 0; i < active.size(); ++i) {
        for (int ei : g.out_edges[active[i]]) {
            const RateEdge& e = g.edges[ei];
            if (inside[e.to]) choices[i].push_back({e.to, e.weight});
        }
        if (choices[i].empty()) return {};  // no spanning tree can exist
    }

    std::function<InTree(const std::vector<int>&)> make = [&](const std::vector<int>& pick) {
        InTree t;
        t.root = root;
        for (size_t i = 0; i < active.size(); ++i)
            t.edges.emplace_back(active[i], choices[i][pick[i]].target);
        t.weight = assignment_weight(choices, pick);
        return t;
    };
    return enumerate_buckets<InTree>(g.n, active, choices, make);
}

WeightSum sum_in_tree_weights(const RateGraph& g, const std::vector<int>& vertices, int root) {
    std::vector<bool> inside(g.n, false);
    for (int v : vertices) inside[v] = true;
    if (root < 0 || root >= g.n || !inside[root])
        throw Error("sum_in_tree_weights: root not contained in vertex set");

    std::vector<int> active;
    for (int v : vertices)
        if (v != root) active.push_back(v);
    std::sort(active.begin(), active.end());

    std::vector<std::vector<Choice>> choices(active.size());
    for (size_t i = 0; i < active.size(); ++i) {
        for (int ei : g.out_edges[active[i]]) {
            const RateEdge& e = g.edges[ei];
            if (inside[e.to]) choices[i].push_back({e.to, e.weight});
        }
        if (choices[i].empty()) return {};
    }

    if (active.empty()) {
        WeightSum s;
        s.add(Weight{});
        return s;
    }

    const size_t top = choices[0].size();
    std::vector<WeightSum> partial(top);

#pragma omp parallel for schedule(dynamic) if (threads() > 1 && top > 1)
    for (size_t c = 0; c < top; ++c) {
        WeightSum local;  // keeps the hot accumulator off the shared array
        std::function<void(const std::vector<int>&)> cb = [&](const std::vector<int>& pick) {
            local.add(assignment_weight(choices, pick));
        };
        Enumerator e(g.n, active, choices, cb);
        int v = active[0];
        int t = choices[0][c].target;
        if (t != -1 && e.closes_cycle(v, t)) continue;
        e.pick[0] = static_cast<int>(c);
        e.parent[v] = t;
        e.run(1);
        partial[c] = local;
    }

    WeightSum total;
    for (const WeightSum& p : partial) total.add(p);
    return total;
}

namespace {

std::vector<RootedForest> enumerate_from_choices(
    const RateGraph& g, const std::vector<int>& active,
    const std::vector<std::vector<Choice>>& choices) {
    for (const auto& c : choices)
        if (c.empty()) return {};
    std::function<RootedForest(const std::vector<int>&)> make =
        [&](const std::vector<int>& pick) {
            RootedForest f;
            for (size_t i = 0; i < active.size(); ++i) {
                int t = choices[i][pick[i]].target;
                if (t != -1) f.edges.emplace_back(active[i], t);
            }
            f.root_of = roots_of_assignment(g.n, active, choices, pick);
            f.weight = assignment_weight(choices, pick);
            return f;
        };
    return enumerate_buckets<RootedForest>(g.n, active, choices, make);
}

}  // namespace

std::vector<RootedForest> enumerate_forests(const RateGraph& g, const std::vector<int>& roots) {
    std::vector<bool> is_root(g.n, false);
    for (int r : roots) is_root[r] = true;

    std::vector<int> active;
    for (int v = 0; v < g.n; ++v)
        if (!is_root[v]) active.push_back(v);

    std::vector<std::vector<Choice>> choices(active.size());
    for (size_t i = 0; i < active.size(); ++i)
        for (int ei : g.out_edges[active[i]]) {
            const RateEdge& e = g.edges[ei];
            choices[i].push_back({e.to, e.weight});
        }
    return enumerate_from_choices(g, active, choices);
}

std::vector<RootedForest> enumerate_basin_forests(const RateGraph& g,
                                                  const BasinDecomposition& basins,
                                                  ForestMode mode) {
    if (mode == ForestMode::pruned) {
        std::vector<int> roots;
        for (const auto& b : basins.basins) roots.insert(roots.end(), b.begin(), b.end());
        return enumerate_forests(g, roots);
    }

    // Full mode: basin vertices either serve as roots or attach inside their
    // own basin; decay vertices always follow an edge.
    std::vector<int> active(g.n);
    for (int v = 0; v < g.n; ++v) active[v] = v;
    std::vector<std::vector<Choice>> choices(g.n);
    for (int v = 0; v < g.n; ++v) {
        int b = basins.basin_of_vertex(v);
        if (b >= 0) choices[v].push_back({-1, EdgeWeight(1.0)});
        for (int ei : g.out_edges[v]) {
            const RateEdge& e = g.edges[ei];
            if (b >= 0 && basins.basin_of_vertex(e.to) != b) continue;
            choices[v].push_back({e.to, e.weight});
        }
    }
    return enumerate_from_choices(g, active, choices);
}

}  // namespace lindforest
