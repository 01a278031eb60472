#include "lindforest/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lindforest/errors.hpp"
#include "lindforest/linalg.hpp"

namespace lindforest {

EquivalenceRelation EquivalenceRelation::trivial(const std::vector<int>& vertices) {
    EquivalenceRelation rel;
    for (int v : vertices) rel.classes.push_back({v});
    rel.canonicalize();
    return rel;
}

void EquivalenceRelation::canonicalize() {
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
}

std::vector<int> EquivalenceRelation::domain() const {
    std::vector<int> d;
    for (const auto& c : classes) d.insert(d.end(), c.begin(), c.end());
    std::sort(d.begin(), d.end());
    return d;
}

int EquivalenceRelation::class_of(int v) const {
    for (size_t c = 0; c < classes.size(); ++c)
        if (std::binary_search(classes[c].begin(), classes[c].end(), v))
            return static_cast<int>(c);
    return -1;
}

bool EquivalenceRelation::uniform() const {
    for (const auto& c : classes)
        if (c.size() != classes.front().size()) return false;
    return true;
}

namespace {

struct GpmSystem {
    std::vector<GPMDecomposition> decomps;
    std::vector<double> h_diag;
};

GpmSystem decompose_gpm_system(const LindbladSystem& sys) {
    if (!sys.hamiltonian_is_diagonal())
        throw NotGPM("hamiltonian is not diagonal in the working basis");
    GpmSystem out;
    out.h_diag = sys.hamiltonian_diagonal();
    for (const ComplexMatrix& l : sys.lindblad_ops) out.decomps.push_back(gpm_decompose(l));
    return out;
}

void require_valid_relation(const EquivalenceRelation& rel, int n) {
    std::set<int> seen;
    for (const auto& c : rel.classes) {
        if (c.empty()) throw NonUniformRelation("empty equivalence class");
        for (int v : c) {
            if (v < 0 || v >= n) throw NonUniformRelation("class member out of range");
            if (!seen.insert(v).second) throw NonUniformRelation("classes are not disjoint");
        }
    }
    if (!rel.uniform()) throw NonUniformRelation("equivalence classes differ in size");
}

double phase_deviation(cplx a) {
    // |arg| of a unit-modulus number, robust near +1.
    return std::fabs(std::atan2(a.imag(), a.real()));
}

}  // namespace

SymmetryReport verify_symmetry(const LindbladSystem& sys, const EquivalenceRelation& rel,
                               const BasinDecomposition& basins) {
    GpmSystem gpm = decompose_gpm_system(sys);
    require_valid_relation(rel, sys.dim);

    SymmetryReport report;
    report.hamiltonian_ok = true;
    report.dissipation_ok = true;

    for (size_t c = 0; c < rel.classes.size(); ++c) {
        const auto& cls = rel.classes[c];
        for (size_t i = 1; i < cls.size(); ++i) {
            double diff = std::fabs(gpm.h_diag[cls[i]] - gpm.h_diag[cls[0]]);
            if (diff > kSymmetryAmpTol) {
                report.hamiltonian_ok = false;
                std::ostringstream msg;
                msg << "H[" << cls[0] + 1 << "] != H[" << cls[i] + 1 << "] (diff " << diff << ")";
                report.violations.push_back(msg.str());
            }
        }
    }

    for (size_t a = 0; a < gpm.decomps.size(); ++a) {
        const GPMDecomposition& d = gpm.decomps[a];
        for (const auto& cls : rel.classes) {
            for (size_t i = 1; i < cls.size(); ++i) {
                double diff =
                    std::fabs(std::abs(d.diag[cls[i]]) - std::abs(d.diag[cls[0]]));
                if (diff > kSymmetryAmpTol) {
                    report.dissipation_ok = false;
                    std::ostringstream msg;
                    msg << "|D_" << a + 1 << "[" << cls[0] + 1 << "]| != |D_" << a + 1 << "["
                        << cls[i] + 1 << "]|";
                    report.violations.push_back(msg.str());
                }
            }
            // Images inside the basins must stay within one class.
            int target_class = -2;
            for (int v : cls) {
                int img = d.sigma[v];
                if (basins.basin_of_vertex(img) < 0) continue;
                int tc = rel.class_of(img);
                if (target_class == -2) target_class = tc;
                if (tc != target_class || tc == -1) {
                    report.dissipation_ok = false;
                    std::ostringstream msg;
                    msg << "operator " << a + 1 << " does not preserve the class of "
                        << cls[0] + 1;
                    report.violations.push_back(msg.str());
                    break;
                }
            }
        }
    }
    return report;
}

int CoherenceGraph::node_index(int j, int k) const {
    CoherenceNode key{j, k};
    auto it = std::lower_bound(nodes.begin(), nodes.end(), key,
                               [](const CoherenceNode& a, const CoherenceNode& b) {
                                   return a.j != b.j ? a.j < b.j : a.k < b.k;
                               });
    if (it == nodes.end() || !(*it == key)) return -1;
    return static_cast<int>(it - nodes.begin());
}

CoherenceGraph build_coherence_graph(const LindbladSystem& sys, const EquivalenceRelation& rel) {
    GpmSystem gpm = decompose_gpm_system(sys);
    require_valid_relation(rel, sys.dim);

    CoherenceGraph cg;
    for (const auto& cls : rel.classes)
        for (int j : cls)
            for (int k : cls)
                if (j != k) cg.nodes.push_back({j, k});
    std::sort(cg.nodes.begin(), cg.nodes.end(), [](const CoherenceNode& a, const CoherenceNode& b) {
        return a.j != b.j ? a.j < b.j : a.k < b.k;
    });

    for (size_t a = 0; a < gpm.decomps.size(); ++a) {
        const GPMDecomposition& d = gpm.decomps[a];
        for (size_t q = 0; q < cg.nodes.size(); ++q) {
            int j = cg.nodes[q].j, k = cg.nodes[q].k;
            if (std::abs(d.diag[j]) <= kGpmZeroTol || std::abs(d.diag[k]) <= kGpmZeroTol)
                continue;
            int p = cg.node_index(d.sigma[j], d.sigma[k]);
            if (p < 0) continue;  // image pair escapes the relation
            cplx w = d.diag[j] * std::conj(d.diag[k]);
            w /= std::abs(w);
            cg.edges.push_back({static_cast<int>(q), p, static_cast<int>(a), w});
        }
    }
    std::sort(cg.edges.begin(), cg.edges.end(), [](const CoherenceEdge& a, const CoherenceEdge& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
        return a.op < b.op;
    });

    // Weakly connected components.
    std::vector<int> comp(cg.nodes.size(), -1);
    std::vector<std::vector<int>> adj(cg.nodes.size());
    for (const CoherenceEdge& e : cg.edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    for (size_t start = 0; start < cg.nodes.size(); ++start) {
        if (comp[start] != -1) continue;
        int id = static_cast<int>(cg.components.size());
        std::vector<int> members, queue{static_cast<int>(start)};
        comp[start] = id;
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            members.push_back(u);
            for (int v : adj[u])
                if (comp[v] == -1) {
                    comp[v] = id;
                    queue.push_back(v);
                }
        }
        std::sort(members.begin(), members.end());
        cg.components.push_back(std::move(members));
    }
    return cg;
}

ResonanceCertificate check_resonance(const CoherenceGraph& cg, const std::vector<int>& component) {
    ResonanceCertificate cert;
    cert.component = component;
    std::sort(cert.component.begin(), cert.component.end());
    if (cert.component.empty()) throw Error("check_resonance: empty component");

    std::map<int, int> pos;
    for (size_t i = 0; i < cert.component.size(); ++i) pos[cert.component[i]] = static_cast<int>(i);
    cert.f_values.assign(cert.component.size(), cplx(0.0, 0.0));

    // Spanning traversal from the anchor; edges usable in both directions
    // (the reverse constraint is the conjugate).
    struct Arc {
        int to;
        cplx w;
    };
    std::vector<std::vector<Arc>> adj(cert.component.size());
    for (const CoherenceEdge& e : cg.edges) {
        auto f = pos.find(e.from), t = pos.find(e.to);
        if (f == pos.end() || t == pos.end()) continue;
        adj[f->second].push_back({t->second, e.weight});
        adj[t->second].push_back({f->second, std::conj(e.weight)});
    }

    cert.f_values[0] = cplx(1.0, 0.0);
    std::vector<bool> assigned(cert.component.size(), false);
    assigned[0] = true;
    std::vector<int> queue{0};
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (const Arc& arc : adj[u]) {
            if (assigned[arc.to]) continue;
            cert.f_values[arc.to] = cert.f_values[u] * arc.w;
            assigned[arc.to] = true;
            queue.push_back(arc.to);
        }
    }
    for (bool got : assigned)
        if (!got) throw InternalError("component is not connected");

    cert.resonant = true;
    for (const CoherenceEdge& e : cg.edges) {
        auto f = pos.find(e.from), t = pos.find(e.to);
        if (f == pos.end() || t == pos.end()) continue;
        cplx mismatch = cert.f_values[f->second] * e.weight * std::conj(cert.f_values[t->second]);
        if (phase_deviation(mismatch) > kPhaseTol) {
            cert.resonant = false;
            cert.witness = e;
            break;
        }
    }
    return cert;
}

int coherence_kernel_dim(const LindbladSystem& sys, const EquivalenceRelation& rel) {
    GpmSystem gpm = decompose_gpm_system(sys);
    CoherenceGraph cg = build_coherence_graph(sys, rel);
    const int m = static_cast<int>(cg.nodes.size());
    if (m == 0) return 0;

    // Flow matrix of the coherence ODE: gain along each edge, amplitude-
    // squared loss on the diagonal.
    std::vector<std::vector<cplx>> a(m, std::vector<cplx>(m, cplx(0.0, 0.0)));
    for (int q = 0; q < m; ++q) {
        for (size_t alpha = 0; alpha < gpm.decomps.size(); ++alpha) {
            const GPMDecomposition& d = gpm.decomps[alpha];
            double amp = std::abs(d.diag[cg.nodes[q].j]);
            if (amp <= kGpmZeroTol) continue;
            a[q][q] -= amp * amp;
        }
    }
    for (const CoherenceEdge& e : cg.edges) {
        double amp = std::abs(gpm.decomps[e.op].diag[cg.nodes[e.from].j]);
        a[e.to][e.from] += amp * amp * e.weight;
    }

    // Real 2m x 2m embedding shares the singular values of the complex
    // matrix, each doubled.
    RealMatrix embed(2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            embed(i, j) = a[i][j].real();
            embed(i, j + m) = -a[i][j].imag();
            embed(i + m, j) = a[i][j].imag();
            embed(i + m, j + m) = a[i][j].real();
        }
    double norm = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) norm += std::norm(a[i][j]);
    norm = std::sqrt(norm);
    double threshold = m * std::numeric_limits<double>::epsilon() * std::max(norm, 1e-300);
    KernelResult kr = numerical_kernel(embed, threshold);
    return static_cast<int>(kr.kernel_basis.size()) / 2;
}

namespace {

std::vector<std::vector<double>> vertex_signatures(const GpmSystem& gpm, int n) {
    std::vector<std::vector<double>> sig(n);
    for (int v = 0; v < n; ++v) {
        sig[v].push_back(gpm.h_diag[v]);
        for (const GPMDecomposition& d : gpm.decomps) sig[v].push_back(std::abs(d.diag[v]));
    }
    return sig;
}

bool signatures_match(const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > kSymmetryAmpTol) return false;
    return true;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// Smallest relation containing the seed pair and closed under the rule that
// permutation images (inside the basins) of related levels stay related.
std::optional<EquivalenceRelation> close_seed(const GpmSystem& gpm,
                                              const BasinDecomposition& basins,
                                              const std::vector<std::vector<double>>& sig, int n,
                                              int seed_a, int seed_b) {
    UnionFind uf(n);
    uf.merge(seed_a, seed_b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const GPMDecomposition& d : gpm.decomps) {
            // Group members by representative, then merge basin images.
            std::map<int, std::vector<int>> groups;
            for (int v = 0; v < n; ++v) groups[uf.find(v)].push_back(v);
            for (const auto& [rep, members] : groups) {
                if (members.size() < 2) continue;
                int first_img = -1;
                for (int v : members) {
                    int img = d.sigma[v];
                    if (basins.basin_of_vertex(img) < 0) continue;
                    if (first_img == -1) {
                        first_img = img;
                        continue;
                    }
                    if (uf.merge(first_img, img)) changed = true;
                }
            }
        }
    }

    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[uf.find(v)].push_back(v);
    EquivalenceRelation rel;
    for (const auto& [rep, members] : groups) {
        if (members.size() < 2) continue;
        for (int v : members) {
            // Candidate classes must stay inside the basins and inside one
            // signature group.
            if (basins.basin_of_vertex(v) < 0) return std::nullopt;
            if (!signatures_match(sig[members.front()], sig[v])) return std::nullopt;
        }
        rel.classes.push_back(members);
    }
    if (rel.classes.empty()) return std::nullopt;
    rel.canonicalize();
    if (!rel.uniform()) return std::nullopt;
    return rel;
}

}  // namespace

std::vector<EnclosureCandidate> detect_hidden_enclosures(const LindbladSystem& sys,
                                                         const BasinDecomposition& basins,
                                                         int max_n) {
    if (sys.dim > max_n) {
        std::ostringstream msg;
        msg << "dimension " << sys.dim << " exceeds the search limit " << max_n;
        throw SearchSpaceExceeded(msg.str());
    }
    GpmSystem gpm = decompose_gpm_system(sys);
    std::vector<std::vector<double>> sig = vertex_signatures(gpm, sys.dim);

    std::vector<int> basin_vertices;
    for (const auto& b : basins.basins)
        basin_vertices.insert(basin_vertices.end(), b.begin(), b.end());
    std::sort(basin_vertices.begin(), basin_vertices.end());

    std::vector<EnclosureCandidate> out;
    std::vector<EquivalenceRelation> seen;
    for (size_t i = 0; i < basin_vertices.size(); ++i) {
        for (size_t j = i + 1; j < basin_vertices.size(); ++j) {
            int a = basin_vertices[i], b = basin_vertices[j];
            if (!signatures_match(sig[a], sig[b])) continue;
            std::optional<EquivalenceRelation> rel =
                close_seed(gpm, basins, sig, sys.dim, a, b);
            if (!rel) continue;
            if (std::find(seen.begin(), seen.end(), *rel) != seen.end()) continue;
            seen.push_back(*rel);

            SymmetryReport rep = verify_symmetry(sys, *rel, basins);
            if (!rep.hamiltonian_ok || !rep.dissipation_ok) continue;
            CoherenceGraph cg = build_coherence_graph(sys, *rel);
            bool resonant = false;
            for (const auto& comp : cg.components)
                if (check_resonance(cg, comp).resonant) {
                    resonant = true;
                    break;
                }
            out.push_back({*rel, resonant});
        }
    }
    std::sort(out.begin(), out.end(), [](const EnclosureCandidate& a, const EnclosureCandidate& b) {
        return a.relation.classes < b.relation.classes;
    });
    return out;
}

std::optional<double> check_oscillations(const LindbladSystem& sys,
                                         const BasinDecomposition& basins, int block_a,
                                         int block_b, const EquivalenceRelation& rel_a,
                                         const EquivalenceRelation& rel_b) {
    GpmSystem gpm = decompose_gpm_system(sys);
    if (block_a < 0 || block_a >= basins.n_basins() || block_b < 0 ||
        block_b >= basins.n_basins() || block_a == block_b)
        return std::nullopt;
    if (rel_a.classes.size() != rel_b.classes.size()) return std::nullopt;
    if (!rel_a.uniform() || !rel_b.uniform()) return std::nullopt;
    if (!rel_a.classes.empty() && !rel_b.classes.empty() && rel_a.nu() != rel_b.nu())
        return std::nullopt;

    const int mu = static_cast<int>(rel_a.classes.size());
    std::vector<int> perm(mu);
    std::iota(perm.begin(), perm.end(), 0);

    // Try every matching of a-classes to b-classes, lexicographically.
    do {
        EquivalenceRelation merged;
        for (int c = 0; c < mu; ++c) {
            std::vector<int> cls = rel_a.classes[c];
            const auto& other = rel_b.classes[perm[c]];
            cls.insert(cls.end(), other.begin(), other.end());
            merged.classes.push_back(std::move(cls));
        }
        merged.canonicalize();
        if (!merged.uniform()) continue;

        SymmetryReport rep = verify_symmetry(sys, merged, basins);
        if (!rep.dissipation_ok) continue;

        // Constant level offset over cross pairs.
        bool offset_ok = true;
        bool have_delta = false;
        double delta = 0.0;
        for (int c = 0; c < mu && offset_ok; ++c) {
            for (int j : rel_a.classes[c]) {
                for (int k : rel_b.classes[perm[c]]) {
                    double d = gpm.h_diag[k] - gpm.h_diag[j];
                    if (!have_delta) {
                        delta = d;
                        have_delta = true;
                    } else if (std::fabs(d - delta) > kSymmetryAmpTol) {
                        offset_ok = false;
                        break;
                    }
                }
                if (!offset_ok) break;
            }
        }
        if (!offset_ok || !have_delta) continue;

        // Some resonant component must couple the two blocks.
        CoherenceGraph cg = build_coherence_graph(sys, merged);
        std::vector<bool> in_a(sys.dim, false);
        for (int v : basins.basins[block_a]) in_a[v] = true;
        std::vector<bool> in_b(sys.dim, false);
        for (int v : basins.basins[block_b]) in_b[v] = true;
        for (const auto& comp : cg.components) {
            bool has_cross = false;
            for (int ni : comp) {
                const CoherenceNode& node = cg.nodes[ni];
                if ((in_a[node.j] && in_b[node.k]) || (in_b[node.j] && in_a[node.k])) {
                    has_cross = true;
                    break;
                }
            }
            if (!has_cross) continue;
            if (check_resonance(cg, comp).resonant) return delta;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    return std::nullopt;
}

}  // namespace lindforest
