#include "lindforest/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "lindforest/errors.hpp"

namespace lindforest {

namespace {

// Iterative Tarjan.
struct TarjanState {
    const RateGraph& g;
    std::vector<int> index, lowlink, on_stack, comp;
    std::vector<int> stack;
    int next_index = 0, next_comp = 0;

    explicit TarjanState(const RateGraph& graph)
        : g(graph),
          index(graph.n, -1),
          lowlink(graph.n, 0),
          on_stack(graph.n, 0),
          comp(graph.n, -1) {}

    void run(int start) {
        struct Frame {
            int v;
            size_t edge_pos;
        };
        std::vector<Frame> frames{{start, 0}};
        index[start] = lowlink[start] = next_index++;
        stack.push_back(start);
        on_stack[start] = 1;

        while (!frames.empty()) {
            Frame& f = frames.back();
            int v = f.v;
            if (f.edge_pos < g.out_edges[v].size()) {
                int w = g.edges[g.out_edges[v][f.edge_pos++]].to;
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    int u;
                    do {
                        u = stack.back();
                        stack.pop_back();
                        on_stack[u] = 0;
                        comp[u] = next_comp;
                    } while (u != v);
                    ++next_comp;
                }
                frames.pop_back();
                if (!frames.empty())
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
            }
        }
    }
};

}  // namespace

BasinDecomposition decompose_basins(const RateGraph& g) {
    TarjanState t(g);
    for (int v = 0; v < g.n; ++v)
        if (t.index[v] == -1) t.run(v);

    // Renumber components by smallest contained vertex for stable output.
    const int ncomp = t.next_comp;
    std::vector<int> smallest(ncomp, g.n);
    for (int v = 0; v < g.n; ++v) smallest[t.comp[v]] = std::min(smallest[t.comp[v]], v);
    std::vector<int> order(ncomp);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return smallest[a] < smallest[b]; });
    std::vector<int> renum(ncomp);
    for (int i = 0; i < ncomp; ++i) renum[order[i]] = i;

    BasinDecomposition out;
    out.n = g.n;
    out.scc_id.resize(g.n);
    out.components.assign(ncomp, {});
    for (int v = 0; v < g.n; ++v) {
        out.scc_id[v] = renum[t.comp[v]];
        out.components[out.scc_id[v]].push_back(v);
    }

    std::vector<bool> has_outgoing(ncomp, false);
    std::set<std::pair<int, int>> cond;
    for (const RateEdge& e : g.edges) {
        int a = out.scc_id[e.from], b = out.scc_id[e.to];
        if (a != b) {
            has_outgoing[a] = true;
            cond.insert({a, b});
        }
    }
    out.condensation.assign(cond.begin(), cond.end());

    out.basin_of_component.assign(ncomp, -1);
    for (int c = 0; c < ncomp; ++c) {
        if (!has_outgoing[c]) {
            out.basin_of_component[c] = static_cast<int>(out.basins.size());
            out.basins.push_back(out.components[c]);
        } else {
            for (int v : out.components[c]) out.non_basin.push_back(v);
        }
    }
    std::sort(out.non_basin.begin(), out.non_basin.end());
    return out;
}

std::vector<int> classify_forest(const RootedForest& f, const BasinDecomposition& basins) {
    std::vector<int> cls(f.root_of.size());
    for (size_t v = 0; v < f.root_of.size(); ++v) cls[v] = basins.basin_of_vertex(f.root_of[v]);
    return cls;
}

std::string export_dot(const RateGraph& g, const std::optional<BasinDecomposition>& basins,
                       const std::vector<std::string>& labels) {
    std::ostringstream os;
    auto node_name = [&](int v) { return std::to_string(v + 1); };
    auto node_stmt = [&](int v) {
        std::ostringstream s;
        s << "  " << node_name(v);
        if (!labels.empty()) s << " [label=\"" << labels[v] << "\"]";
        s << ";\n";
        return s.str();
    };

    os << "digraph rates {\n";
    std::vector<bool> clustered(g.n, false);
    if (basins) {
        for (int b = 0; b < basins->n_basins(); ++b) {
            os << "  subgraph cluster_" << b << " {\n";
            os << "    label=\"basin " << b + 1 << "\";\n";
            for (int v : basins->basins[b]) {
                os << "  " << node_stmt(v);
                clustered[v] = true;
            }
            os << "  }\n";
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (!clustered[v]) os << node_stmt(v);
    for (const RateEdge& e : g.edges) {
        os << "  " << node_name(e.from) << " -> " << node_name(e.to) << " [label=\"";
        if (e.weight.integral)
            os << int128_to_string(e.weight.exact);
        else {
            std::ostringstream w;
            w.precision(12);
            w << e.weight.value;
            os << w.str();
        }
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace lindforest
