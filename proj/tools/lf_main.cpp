// Command-line front end: inspect | analyze | symmetry | simulate.
//
// Exit codes: 0 success, 2 input problem, 3 internal cross-check failure,
// 4 system not GPM where GPM is required, 5 integration stability guard.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindforest/errors.hpp"
#include "lindforest/gpm.hpp"
#include "lindforest/graph.hpp"
#include "lindforest/oracle.hpp"
#include "lindforest/parallel.hpp"
#include "lindforest/stationary.hpp"
#include "lindforest/symmetry.hpp"
#include "lindforest/system_io.hpp"

using namespace lindforest;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitNotGpm = 4;
constexpr int kExitGuard = 5;

struct Common {
    std::string file;
    int threads = 0;
    double gpm_tol = kGpmZeroTol;
    double edge_tol = kEdgeTol;
};

void apply_threads(int flag_value) {
    int n = flag_value;
    if (n <= 0) {
        if (const char* env = std::getenv("LF_THREADS")) n = std::atoi(env);
    }
    set_threads(n > 0 ? n : 1);
}

ParsedSystem load_and_validate(const std::string& path) {
    ParsedSystem ps = load_system_file(path);
    std::vector<Violation> report = validate_system(ps.system);
    if (ps.basis) {
        double defect = ps.basis->unitarity_defect();
        if (defect > kHermitianTol)
            report.push_back({"basis", "basis is not unitary", defect});
    }
    if (!report.empty()) {
        std::ostringstream msg;
        for (const Violation& v : report)
            msg << v.field << ": " << v.message << " (defect " << v.defect << ")\n";
        throw ParseError(msg.str());
    }
    return ps;
}

std::string format_vertex_set(const std::vector<int>& vs) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < vs.size(); ++i) {
        os << vs[i] + 1;
        if (i + 1 < vs.size()) os << ", ";
    }
    os << "}";
    return os.str();
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

int run_inspect(const Common& common) {
    ParsedSystem ps = load_and_validate(common.file);
    const LindbladSystem& sys = ps.system;
    std::cout << "levels: " << sys.dim << "\n";
    std::cout << "hamiltonian: "
              << (sys.hamiltonian_is_diagonal() ? "diagonal" : "non-diagonal") << "\n";

    int gpm_count = 0;
    std::vector<bool> gpm_flags;
    for (const ComplexMatrix& l : sys.lindblad_ops) {
        bool ok = is_gpm(l, common.gpm_tol);
        gpm_flags.push_back(ok);
        if (ok) ++gpm_count;
    }
    const int n_ops = static_cast<int>(sys.lindblad_ops.size());
    std::cout << n_ops << " Lindblad operator" << (n_ops == 1 ? "" : "s") << ", ";
    if (gpm_count == n_ops)
        std::cout << (n_ops == 2 ? "both GPM" : (n_ops == 1 ? "GPM" : "all GPM")) << "\n";
    else
        std::cout << gpm_count << " of " << n_ops << " GPM\n";

    for (int a = 0; a < n_ops; ++a) {
        std::cout << "  operator " << a + 1 << ": ";
        if (!gpm_flags[a]) {
            std::cout << "not GPM\n";
            continue;
        }
        GPMDecomposition d = gpm_decompose(sys.lindblad_ops[a], common.gpm_tol);
        std::cout << "GPM, " << d.cycles.size() << " cycle"
                  << (d.cycles.size() == 1 ? "" : "s") << ", " << d.rank_deficiency
                  << " empty column" << (d.rank_deficiency == 1 ? "" : "s") << "\n";
    }
    std::cout << "validation: ok\n";
    return kExitOk;
}

json orbit_to_json(const StationaryOrbit& o, const BasinDecomposition& basins) {
    json j;
    j["basin"] = o.basin + 1;
    j["support"] = json::array();
    for (int v : basins.basins[o.basin]) j["support"].push_back(v + 1);
    j["lambda"] = o.lambda;
    if (o.exact) {
        json nums = json::array();
        for (const WeightSum& w : o.numerators) nums.push_back(w.str());
        j["exact"] = {{"numerators", nums}, {"denominator", o.denominator.str()}};
    }
    return j;
}

int run_analyze(const Common& common, const std::string& method_name,
                const std::string& dot_path, const std::string& json_path,
                const std::string& initial_path) {
    ParsedSystem ps = load_and_validate(common.file);
    ProjectorFamily proj =
        ps.basis ? *ps.basis : ProjectorFamily::standard(ps.system.dim);

    Method method = Method::both;
    if (method_name == "enum") method = Method::enumerate;
    if (method_name == "det") method = Method::determinant;

    RateMatrix omega = build_omega(ps.system, proj);
    RateGraph graph = build_rate_graph(omega, common.edge_tol);
    BasinDecomposition basins = decompose_basins(graph);

    std::cout << "levels: " << graph.n << "\n";
    std::cout << "edges: " << graph.edges.size() << "\n";
    std::cout << "basins: " << basins.n_basins() << "\n";
    for (int b = 0; b < basins.n_basins(); ++b)
        std::cout << "  basin " << b + 1 << ": " << format_vertex_set(basins.basins[b]) << "\n";
    std::cout << "decay vertices: "
              << (basins.non_basin.empty() ? "none" : format_vertex_set(basins.non_basin))
              << "\n";

    RankReport rank = kernel_rank(omega, basins);
    std::cout << "rank: " << rank.rank << "  kernel dimension: " << rank.kernel_dim << "\n";

    std::vector<StationaryOrbit> orbits = stationary_orbits(graph, basins, method);
    for (const StationaryOrbit& o : orbits) {
        std::cout << "stationary orbit, basin " << o.basin + 1 << ":\n";
        const std::vector<int>& verts = basins.basins[o.basin];
        for (size_t i = 0; i < verts.size(); ++i) {
            std::cout << "  lambda[" << verts[i] + 1 << "] = ";
            if (o.exact)
                std::cout << o.numerators[i].str() << "/" << o.denominator.str() << " = ";
            std::cout << format_double(o.lambda[verts[i]]) << "\n";
        }
        std::cout << "  in-trees per root:";
        for (size_t i = 0; i < verts.size(); ++i)
            std::cout << " " << enumerate_in_trees(graph, verts, verts[i]).size();
        std::cout << "\n";
    }

    std::vector<ConstraintVector> kappas =
        constraint_vectors(graph, basins, ConstraintVariant::pruned);
    std::cout << "basin-rooted forests (pruned): "
              << enumerate_basin_forests(graph, basins, ForestMode::pruned).size() << "\n";
    for (const ConstraintVector& k : kappas) {
        std::cout << "kappa'_" << k.basin + 1 << " = [";
        for (int v = 0; v < graph.n; ++v) {
            std::cout << (k.exact ? k.exact_entries[v].str() : format_double(k.kappa[v]));
            if (v + 1 < graph.n) std::cout << ", ";
        }
        std::cout << "]\n";
    }

    json result;
    result["system"] = json::parse(system_to_json_text(ps));
    result["edges"] = json::array();
    for (const RateEdge& e : graph.edges)
        result["edges"].push_back(
            {{"from", e.from + 1}, {"to", e.to + 1}, {"weight", e.weight.value}});
    result["basins"] = json::array();
    for (const auto& b : basins.basins) {
        json jb = json::array();
        for (int v : b) jb.push_back(v + 1);
        result["basins"].push_back(jb);
    }
    result["non_basin"] = json::array();
    for (int v : basins.non_basin) result["non_basin"].push_back(v + 1);
    result["rank"] = rank.rank;
    result["kernel_dim"] = rank.kernel_dim;
    result["orbits"] = json::array();
    for (const StationaryOrbit& o : orbits) result["orbits"].push_back(orbit_to_json(o, basins));
    result["constraints"] = json::array();
    for (const ConstraintVector& k : kappas) {
        json jk;
        jk["basin"] = k.basin + 1;
        jk["variant"] = "pruned";
        jk["entries"] = k.kappa;
        if (k.exact) {
            json ex = json::array();
            for (int v = 0; v < graph.n; ++v) ex.push_back(k.exact_entries[v].str());
            jk["exact"] = ex;
        }
        result["constraints"].push_back(jk);
    }

    if (!initial_path.empty()) {
        ParsedInitial init = load_initial_file(initial_path, ps.system.dim);
        if (!init.lambda)
            throw ParseError("analyze --initial requires a {\"lambda\": [...]} file");
        std::vector<Violation> bad = init.lambda->validate();
        if (!bad.empty()) throw ParseError("initial: " + bad.front().message);
        AsymptoticState as = asymptotic_state(graph, basins, *init.lambda, proj);
        std::cout << "asymptotic coefficients:";
        for (size_t b = 0; b < as.coefficients.size(); ++b)
            std::cout << " c_" << b + 1 << " = " << format_double(as.coefficients[b]);
        std::cout << "\n";
        std::cout << "asymptotic state diagonal:";
        for (int v = 0; v < graph.n; ++v)
            std::cout << " " << format_double(as.rho_infinity.matrix(v, v).real());
        std::cout << "\n";
        result["asymptotic"] = {{"coefficients", as.coefficients}};
        json diag = json::array();
        for (int v = 0; v < graph.n; ++v)
            diag.push_back(as.rho_infinity.matrix(v, v).real());
        result["asymptotic"]["rho_diag"] = diag;
    }

    if (!dot_path.empty()) {
        write_text_file(dot_path,
                        export_dot(graph, std::optional<BasinDecomposition>(basins),
                                   ps.system.labels));
        std::cout << "wrote DOT to " << dot_path << "\n";
    }
    if (!json_path.empty()) {
        write_text_file(json_path, result.dump(2) + "\n");
        std::cout << "wrote JSON to " << json_path << "\n";
    }
    return kExitOk;
}

int run_symmetry(const Common& common, const std::string& relation_path, bool search,
                 const std::vector<int>& oscillation_blocks) {
    ParsedSystem ps = load_and_validate(common.file);
    const LindbladSystem& sys = ps.system;

    for (const ComplexMatrix& l : sys.lindblad_ops)
        if (!is_gpm(l, common.gpm_tol)) throw NotGPM("a Lindblad operator is not GPM");
    if (!sys.hamiltonian_is_diagonal()) throw NotGPM("hamiltonian is not diagonal");

    RateGraph graph = build_rate_graph(build_omega(sys), common.edge_tol);
    BasinDecomposition basins = decompose_basins(graph);

    auto report_relation = [&](const EquivalenceRelation& rel) {
        std::cout << "relation:";
        for (const auto& cls : rel.classes) std::cout << " " << format_vertex_set(cls);
        std::cout << "\n";
        SymmetryReport rep = verify_symmetry(sys, rel, basins);
        std::cout << "  hamiltonian symmetry: " << (rep.hamiltonian_ok ? "ok" : "violated")
                  << "\n";
        std::cout << "  dissipation symmetry: " << (rep.dissipation_ok ? "ok" : "violated")
                  << "\n";
        for (const std::string& v : rep.violations) std::cout << "    " << v << "\n";
        if (!rep.hamiltonian_ok || !rep.dissipation_ok) return;
        CoherenceGraph cg = build_coherence_graph(sys, rel);
        std::cout << "  coherence graph: " << cg.nodes.size() << " nodes, " << cg.edges.size()
                  << " edges, " << cg.components.size() << " components\n";
        bool any = false;
        for (size_t c = 0; c < cg.components.size(); ++c) {
            ResonanceCertificate cert = check_resonance(cg, cg.components[c]);
            std::cout << "  component " << c + 1 << " (" << cg.components[c].size()
                      << " nodes): " << (cert.resonant ? "resonant" : "non-resonant");
            if (!cert.resonant && cert.witness) {
                const CoherenceNode& nf = cg.nodes[cert.witness->from];
                const CoherenceNode& nt = cg.nodes[cert.witness->to];
                std::cout << "  witness edge (" << nf.j + 1 << "," << nf.k + 1 << ") -> ("
                          << nt.j + 1 << "," << nt.k + 1 << ") weight "
                          << format_double(cert.witness->weight.real()) <<
                    (cert.witness->weight.imag() >= 0 ? "+" : "") <<
                    format_double(cert.witness->weight.imag()) << "i";
            }
            std::cout << "\n";
            any = any || cert.resonant;
        }
        std::cout << "  hidden enclosure: " << (any ? "yes" : "no") << "\n";
    };

    if (!relation_path.empty()) {
        EquivalenceRelation rel = load_relation_file(relation_path, sys.dim);
        report_relation(rel);
    }

    if (search) {
        std::vector<EnclosureCandidate> found = detect_hidden_enclosures(sys, basins);
        if (found.empty()) {
            std::cout << "no candidate relations\n";
        } else {
            for (const EnclosureCandidate& c : found) {
                std::cout << "candidate:";
                for (const auto& cls : c.relation.classes)
                    std::cout << " " << format_vertex_set(cls);
                std::cout << " -> " << (c.resonant ? "resonant (hidden enclosure)"
                                                   : "non-resonant")
                          << "\n";
            }
        }
    }

    if (!oscillation_blocks.empty()) {
        int a = oscillation_blocks[0] - 1;
        int b = oscillation_blocks[1] - 1;
        if (a < 0 || b < 0 || a >= basins.n_basins() || b >= basins.n_basins())
            throw ParseError("oscillation block index out of range");
        EquivalenceRelation ra = EquivalenceRelation::trivial(basins.basins[a]);
        EquivalenceRelation rb = EquivalenceRelation::trivial(basins.basins[b]);
        std::optional<double> delta = check_oscillations(sys, basins, a, b, ra, rb);
        if (delta)
            std::cout << "oscillation between basins " << a + 1 << " and " << b + 1
                      << ": Delta = " << format_double(*delta) << "\n";
        else
            std::cout << "no oscillation between basins " << a + 1 << " and " << b + 1 << "\n";
    }
    return kExitOk;
}

int run_simulate(const Common& common, const std::string& initial_path, double t_end, double dt,
                 const std::string& out_path, int samples) {
    ParsedSystem ps = load_and_validate(common.file);
    const LindbladSystem& sys = ps.system;

    DensityMatrix rho0 = DensityMatrix::maximally_mixed(sys.dim);
    if (!initial_path.empty()) {
        ParsedInitial init = load_initial_file(initial_path, sys.dim);
        if (init.rho)
            rho0 = *init.rho;
        else
            rho0 = DensityMatrix::from_diagonal(init.lambda->entries);
    }
    std::vector<Violation> bad = rho0.validate();
    if (!bad.empty()) throw ParseError("initial state: " + bad.front().message);

    Trajectory traj = integrate_master_equation(sys, rho0, t_end, dt, samples);
    std::cout << "integrated to t = " << format_double(traj.times.back()) << " in "
              << traj.times.size() << " samples\n";
    std::cout << "final residual: " << format_double(traj.residual) << "\n";
    std::cout << "final diagonal:";
    for (int v = 0; v < sys.dim; ++v)
        std::cout << " " << format_double(traj.final_state().matrix(v, v).real());
    std::cout << "\n";

    bool gpm = sys.hamiltonian_is_diagonal();
    for (const ComplexMatrix& l : sys.lindblad_ops) gpm = gpm && is_gpm(l, common.gpm_tol);
    if (gpm && rho0.matrix.offdiag_max() <= 1e-12 && !ps.basis) {
        RateGraph graph = build_rate_graph(build_omega(sys), common.edge_tol);
        BasinDecomposition basins = decompose_basins(graph);
        SimplexVector lam0;
        for (int v = 0; v < sys.dim; ++v) lam0.entries.push_back(rho0.matrix(v, v).real());
        AsymptoticState as =
            asymptotic_state(graph, basins, lam0, ProjectorFamily::standard(sys.dim));
        double dist = trace_distance(traj.final_state().matrix, as.rho_infinity.matrix);
        std::cout << "trace distance to predicted asymptotic state: " << format_double(dist)
                  << "\n";
    } else {
        std::cout << "prediction comparison skipped (needs a GPM system and a diagonal "
                     "initial state)\n";
    }

    if (!out_path.empty()) {
        std::ostringstream csv;
        csv << "t";
        for (int i = 0; i < sys.dim; ++i)
            for (int j = 0; j < sys.dim; ++j)
                csv << ",re_" << i + 1 << "_" << j + 1 << ",im_" << i + 1 << "_" << j + 1;
        csv << "\n";
        csv.precision(17);
        for (size_t s = 0; s < traj.times.size(); ++s) {
            csv << traj.times[s];
            for (int i = 0; i < sys.dim; ++i)
                for (int j = 0; j < sys.dim; ++j) {
                    const cplx& v = traj.states[s].matrix(i, j);
                    csv << "," << v.real() << "," << v.imag();
                }
            csv << "\n";
        }
        write_text_file(out_path, csv.str());
        std::cout << "wrote CSV to " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stationary orbits, conserved quantities, and end-states of Lindblad systems "
                 "via weighted-digraph tree and forest sums"};
    app.require_subcommand(1);

    Common common;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", common.file, "system JSON file")->required();
        cmd->add_option("--threads", common.threads, "worker threads (or env LF_THREADS)");
        cmd->add_option("--gpm-tol", common.gpm_tol, "zero threshold for GPM classification");
        cmd->add_option("--edge-tol", common.edge_tol, "smallest rate kept as a graph edge");
    };

    CLI::App* inspect = app.add_subcommand("inspect", "validate and classify a system file");
    add_common(inspect);

    CLI::App* analyze =
        app.add_subcommand("analyze", "basins, stationary orbits, constraints, end-states");
    add_common(analyze);
    std::string method = "both", dot_path, json_path, initial_path;
    analyze->add_option("--method", method, "enum | det | both")
        ->check(CLI::IsMember({"enum", "det", "both"}));
    analyze->add_option("--dot", dot_path, "write the rate graph as DOT");
    analyze->add_option("--json", json_path, "write the full report as JSON");
    analyze->add_option("--initial", initial_path, "initial occupations file");

    CLI::App* symmetry = app.add_subcommand("symmetry", "hidden enclosures and oscillations");
    add_common(symmetry);
    std::string relation_path;
    bool search = false;
    std::vector<int> osc_blocks;
    symmetry->add_option("--relation", relation_path, "relation JSON file to verify");
    symmetry->add_flag("--search", search, "search for candidate relations");
    symmetry->add_option("--oscillations", osc_blocks, "pair of 1-based basin indices")
        ->expected(2);

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the master equation");
    add_common(simulate);
    std::string sim_initial, out_path;
    double t_end = 10.0, dt = 1e-3;
    int samples = 101;
    simulate->add_option("--initial", sim_initial, "initial state file");
    simulate->add_option("--t", t_end, "integration time");
    simulate->add_option("--dt", dt, "RK4 step");
    simulate->add_option("--out", out_path, "trajectory CSV path");
    simulate->add_option("--samples", samples, "recorded sample count");

    CLI11_PARSE(app, argc, argv);
    apply_threads(common.threads);

    try {
        if (inspect->parsed()) return run_inspect(common);
        if (analyze->parsed())
            return run_analyze(common, method, dot_path, json_path, initial_path);
        if (symmetry->parsed()) return run_symmetry(common, relation_path, search, osc_blocks);
        if (simulate->parsed())
            return run_simulate(common, sim_initial, t_end, dt, out_path, samples);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NotGPM& e) {
        std::cerr << "not a GPM system: " << e.what() << "\n";
        return kExitNotGpm;
    } catch (const StabilityGuard& e) {
        std::cerr << "stability guard: " << e.what() << "\n";
        return kExitGuard;
    } catch (const MethodDisagreement& e) {
        std::cerr << "method disagreement: " << e.what() << "\n";
        return kExitDisagreement;
    } catch (const RankMismatch& e) {
        std::cerr << "rank mismatch: " << e.what() << "\n";
        return kExitDisagreement;
    } catch (const NotInLeftKernel& e) {
        std::cerr << "left-kernel check failed: " << e.what() << "\n";
        return kExitDisagreement;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitDisagreement;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
