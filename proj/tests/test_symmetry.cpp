#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "lindforest/errors.hpp"
#include "lindforest/oracle.hpp"
#include "lindforest/symmetry.hpp"

using namespace lindforest;

namespace {

EquivalenceRelation three_class_relation() {
    EquivalenceRelation rel;
    rel.classes = {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
    return rel;
}

EquivalenceRelation transformed_relation() {
    EquivalenceRelation rel;
    rel.classes = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
    return rel;
}

BasinDecomposition basins_of(const LindbladSystem& sys) {
    return decompose_basins(build_rate_graph(build_omega(sys)));
}

// gauge transform L -> V L V^dagger with V = diag(e^{i phi}); preserves the
// resonance verdict because it is a change of basis by a diagonal unitary
std::pair<std::array<double, 9>, std::array<double, 9>> gauged_phases(std::mt19937& rng) {
    static const int sigma5[9] = {6, 7, 8, 0, 1, 2, 3, 4, 5};
    static const int sigma6[9] = {2, 0, 1, 5, 3, 4, 8, 6, 7};
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    std::array<double, 9> phi{};
    for (double& p : phi) p = u(rng);
    std::array<double, 9> t5{}, t6{};
    for (int j = 0; j < 9; ++j) {
        t5[j] = phi[sigma5[j]] - phi[j];
        t6[j] = phi[sigma6[j]] - phi[j];
    }
    return {t5, t6};
}

}  // namespace

TEST_CASE("the three-class relation satisfies both symmetry conditions") {
    LindbladSystem sys = lftest::enclosure_system();
    SymmetryReport rep = verify_symmetry(sys, three_class_relation(), basins_of(sys));
    CHECK(rep.hamiltonian_ok);
    CHECK(rep.dissipation_ok);
    CHECK(rep.violations.empty());
}

TEST_CASE("a wrong pairing breaks dissipation symmetry") {
    LindbladSystem sys = lftest::enclosure_system();
    EquivalenceRelation rel;
    rel.classes = {{0, 1}};  // |D| = 4 vs 5 under the first operator
    SymmetryReport rep = verify_symmetry(sys, rel, basins_of(sys));
    CHECK_FALSE(rep.dissipation_ok);
}

TEST_CASE("a detuned level breaks hamiltonian symmetry") {
    LindbladSystem sys = lftest::enclosure_system();
    sys.hamiltonian(0, 0) = 2.0;
    SymmetryReport rep = verify_symmetry(sys, three_class_relation(), basins_of(sys));
    CHECK_FALSE(rep.hamiltonian_ok);
    CHECK(rep.dissipation_ok);
}

TEST_CASE("non-uniform or overlapping relations are rejected") {
    LindbladSystem sys = lftest::enclosure_system();
    EquivalenceRelation lopsided;
    lopsided.classes = {{0, 3, 6}, {1, 4}};
    CHECK_THROWS_AS(verify_symmetry(sys, lopsided, basins_of(sys)), NonUniformRelation);
    EquivalenceRelation overlapping;
    overlapping.classes = {{0, 3}, {3, 6}};
    CHECK_THROWS_AS(verify_symmetry(sys, overlapping, basins_of(sys)), NonUniformRelation);
}

TEST_CASE("verify_symmetry requires a GPM system") {
    LindbladSystem sys = lftest::enclosure_system();
    sys.hamiltonian(0, 1) = 0.5;
    sys.hamiltonian(1, 0) = 0.5;
    CHECK_THROWS_AS(verify_symmetry(sys, three_class_relation(), basins_of(sys)), NotGPM);
}

TEST_CASE("coherence graph of the original system: two mirrored components") {
    LindbladSystem sys = lftest::enclosure_system();
    CoherenceGraph cg = build_coherence_graph(sys, three_class_relation());
    CHECK(cg.nodes.size() == 18);
    REQUIRE(cg.components.size() == 2);
    CHECK(cg.components[0].size() == 9);
    CHECK(cg.components[1].size() == 9);

    // swapping the pair indices maps one component onto the other
    std::set<std::pair<int, int>> first, second_swapped;
    for (int ni : cg.components[0]) first.insert({cg.nodes[ni].j, cg.nodes[ni].k});
    for (int ni : cg.components[1]) second_swapped.insert({cg.nodes[ni].k, cg.nodes[ni].j});
    CHECK(first == second_swapped);

    for (const CoherenceEdge& e : cg.edges) CHECK(std::abs(std::abs(e.weight) - 1.0) <= 1e-12);
}

TEST_CASE("coherence graph of the transformed system: six small components with loops") {
    LindbladSystem sys = lftest::transformed_enclosure_system();
    CoherenceGraph cg = build_coherence_graph(sys, transformed_relation());
    CHECK(cg.nodes.size() == 18);
    REQUIRE(cg.components.size() == 6);
    int self_loops = 0;
    for (const CoherenceEdge& e : cg.edges)
        if (e.from == e.to) {
            ++self_loops;
            // e^{+-2pi i/3}
            CHECK(std::fabs(e.weight.real() + 0.5) <= 1e-12);
            CHECK(std::fabs(std::fabs(e.weight.imag()) - std::sqrt(3.0) / 2.0) <= 1e-12);
        }
    CHECK(self_loops == 18);  // every node carries one, from the diagonal operator
    for (const auto& comp : cg.components) CHECK(comp.size() == 3);
}

TEST_CASE("a pair never connected by any operator yields nodes but no edges") {
    LindbladSystem sys;
    sys.dim = 2;
    sys.hamiltonian = ComplexMatrix(2);
    sys.lindblad_ops.push_back(ComplexMatrix::diagonal({1.0, 0.0}));
    sys.lindblad_ops.push_back(ComplexMatrix::diagonal({0.0, 1.0}));
    EquivalenceRelation rel;
    rel.classes = {{0, 1}};
    CoherenceGraph cg = build_coherence_graph(sys, rel);
    CHECK(cg.nodes.size() == 2);
    CHECK(cg.edges.empty());
    CHECK(coherence_kernel_dim(sys, rel) == 0);
}

TEST_CASE("zero phases are resonant") {
    LindbladSystem sys = lftest::enclosure_system();
    CoherenceGraph cg = build_coherence_graph(sys, three_class_relation());
    for (const auto& comp : cg.components) {
        ResonanceCertificate cert = check_resonance(cg, comp);
        CHECK(cert.resonant);
        CHECK_FALSE(cert.witness.has_value());
        for (const cplx& f : cert.f_values) CHECK(std::abs(std::abs(f) - 1.0) <= 1e-12);
    }
    CHECK(coherence_kernel_dim(sys, three_class_relation()) >= 1);
}

TEST_CASE("the transformed system is non-resonant with a self-loop witness") {
    LindbladSystem sys = lftest::transformed_enclosure_system();
    CoherenceGraph cg = build_coherence_graph(sys, transformed_relation());
    const cplx bad = std::polar(1.0, -2.0 * M_PI / 3.0);
    bool saw_negative_loop_witness = false;
    for (const auto& comp : cg.components) {
        ResonanceCertificate cert = check_resonance(cg, comp);
        CHECK_FALSE(cert.resonant);
        REQUIRE(cert.witness.has_value());
        CHECK(cert.witness->from == cert.witness->to);
        if (std::abs(cert.witness->weight - bad) <= 1e-9) saw_negative_loop_witness = true;
    }
    CHECK(saw_negative_loop_witness);
    CHECK(coherence_kernel_dim(sys, transformed_relation()) == 0);
}

TEST_CASE("one flipped phase destroys resonance") {
    std::array<double, 9> t5{}, t6{};
    t6[0] = M_PI;
    LindbladSystem sys = lftest::enclosure_system(t5, t6);
    CoherenceGraph cg = build_coherence_graph(sys, three_class_relation());
    bool any_resonant = false;
    for (const auto& comp : cg.components)
        if (check_resonance(cg, comp).resonant) any_resonant = true;
    CHECK_FALSE(any_resonant);
    CHECK(coherence_kernel_dim(sys, three_class_relation()) == 0);
}

TEST_CASE("components of the coherence graph are strongly connected") {
    auto strongly_connected = [](const CoherenceGraph& cg, const std::vector<int>& comp) {
        // view the component as a digraph and ask for a single sink SCC
        std::vector<RateEdge> edges;
        std::map<int, int> pos;
        for (size_t i = 0; i < comp.size(); ++i) pos[comp[i]] = static_cast<int>(i);
        for (const CoherenceEdge& e : cg.edges) {
            auto f = pos.find(e.from), t = pos.find(e.to);
            if (f == pos.end() || t == pos.end() || e.from == e.to) continue;
            edges.push_back({f->second, t->second, EdgeWeight(1.0)});
        }
        BasinDecomposition b = decompose_basins(make_graph(static_cast<int>(comp.size()), edges));
        return b.n_basins() == 1 && b.non_basin.empty();
    };

    LindbladSystem original = lftest::enclosure_system();
    CoherenceGraph cg1 = build_coherence_graph(original, three_class_relation());
    for (const auto& comp : cg1.components) CHECK(strongly_connected(cg1, comp));

    LindbladSystem transformed = lftest::transformed_enclosure_system();
    CoherenceGraph cg2 = build_coherence_graph(transformed, transformed_relation());
    for (const auto& comp : cg2.components) CHECK(strongly_connected(cg2, comp));
}

TEST_CASE("resonance verdict and kernel dimension agree over random phases") {
    std::mt19937 rng(60601);
    EquivalenceRelation rel = three_class_relation();
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    int resonant_seen = 0, nonresonant_seen = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::array<double, 9> t5{}, t6{};
        if (trial % 2 == 0) {
            auto [g5, g6] = gauged_phases(rng);
            t5 = g5;
            t6 = g6;
        } else {
            for (double& x : t5) x = u(rng);
            for (double& x : t6) x = u(rng);
        }
        LindbladSystem sys = lftest::enclosure_system(t5, t6);
        CoherenceGraph cg = build_coherence_graph(sys, rel);
        bool resonant = false;
        for (const auto& comp : cg.components)
            if (check_resonance(cg, comp).resonant) resonant = true;
        bool kernel = coherence_kernel_dim(sys, rel) >= 1;
        CHECK(resonant == kernel);
        (resonant ? resonant_seen : nonresonant_seen) += 1;
    }
    // both branches must actually be exercised
    CHECK(resonant_seen >= 40);
    CHECK(nonresonant_seen >= 40);
}

TEST_CASE("global operator phases change no verdict") {
    for (bool resonant_case : {true, false}) {
        std::array<double, 9> t5{}, t6{};
        if (!resonant_case) t6[0] = 1.0;
        LindbladSystem sys = lftest::enclosure_system(t5, t6);
        sys.lindblad_ops[0] *= std::polar(1.0, 0.777);
        sys.lindblad_ops[1] *= std::polar(1.0, -2.1);
        CoherenceGraph cg = build_coherence_graph(sys, three_class_relation());
        bool resonant = false;
        for (const auto& comp : cg.components)
            if (check_resonance(cg, comp).resonant) resonant = true;
        CHECK(resonant == resonant_case);
    }
}

TEST_CASE("transitive function reproduces every edge weight") {
    std::mt19937 rng(50);
    auto [t5, t6] = gauged_phases(rng);
    LindbladSystem sys = lftest::enclosure_system(t5, t6);
    CoherenceGraph cg = build_coherence_graph(sys, three_class_relation());
    for (const auto& comp : cg.components) {
        ResonanceCertificate cert = check_resonance(cg, comp);
        REQUIRE(cert.resonant);
        std::map<int, cplx> f;
        for (size_t i = 0; i < cert.component.size(); ++i) f[cert.component[i]] = cert.f_values[i];
        for (const CoherenceEdge& e : cg.edges) {
            if (!f.count(e.from)) continue;
            CHECK(std::abs(f[e.from] * e.weight - f[e.to]) <= 1e-9);
        }
    }
}

TEST_CASE("search finds the three-class relation and nothing else") {
    LindbladSystem sys = lftest::enclosure_system();
    std::vector<EnclosureCandidate> found = detect_hidden_enclosures(sys, basins_of(sys));
    REQUIRE(found.size() == 1);
    CHECK(found[0].relation == three_class_relation());
    CHECK(found[0].resonant);
}

TEST_CASE("search comes back empty for the asymmetric examples") {
    LindbladSystem a = lftest::single_basin_system();
    CHECK(detect_hidden_enclosures(a, basins_of(a)).empty());
    LindbladSystem b = lftest::two_basin_system();
    CHECK(detect_hidden_enclosures(b, basins_of(b)).empty());
}

TEST_CASE("search on the transformed system: symmetric pairings, none resonant") {
    LindbladSystem sys = lftest::transformed_enclosure_system();
    std::vector<EnclosureCandidate> found = detect_hidden_enclosures(sys, basins_of(sys));
    CHECK_FALSE(found.empty());
    for (const EnclosureCandidate& c : found) CHECK_FALSE(c.resonant);
}

TEST_CASE("search respects the dimension guard") {
    LindbladSystem sys = lftest::enclosure_system();
    CHECK_THROWS_AS(detect_hidden_enclosures(sys, basins_of(sys), 8), SearchSpaceExceeded);
}

// Exhaustive oracle for the search: every uniform partition whose classes sit
// inside one signature group, checked directly.
TEST_CASE("seeded search agrees with brute force over uniform partitions") {
    LindbladSystem sys = lftest::enclosure_system();
    BasinDecomposition basins = basins_of(sys);

    // signature groups of this system
    std::vector<std::vector<int>> groups = {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
    // per-group choices: nothing, one pair (3 ways), or the whole triple
    std::vector<std::vector<std::vector<std::vector<int>>>> per_group;
    for (const auto& g : groups) {
        std::vector<std::vector<std::vector<int>>> options;
        options.push_back({});
        options.push_back({{g[0], g[1]}});
        options.push_back({{g[0], g[2]}});
        options.push_back({{g[1], g[2]}});
        options.push_back({{g[0], g[1], g[2]}});
        per_group.push_back(options);
    }

    std::vector<EquivalenceRelation> valid;
    for (size_t i = 0; i < per_group[0].size(); ++i)
        for (size_t j = 0; j < per_group[1].size(); ++j)
            for (size_t k = 0; k < per_group[2].size(); ++k) {
                EquivalenceRelation rel;
                for (const auto& cls : per_group[0][i]) rel.classes.push_back(cls);
                for (const auto& cls : per_group[1][j]) rel.classes.push_back(cls);
                for (const auto& cls : per_group[2][k]) rel.classes.push_back(cls);
                if (rel.classes.empty()) continue;
                rel.canonicalize();
                if (!rel.uniform()) continue;
                SymmetryReport rep = verify_symmetry(sys, rel, basins);
                if (!rep.hamiltonian_ok || !rep.dissipation_ok) continue;
                CoherenceGraph cg = build_coherence_graph(sys, rel);
                bool resonant = false;
                for (const auto& comp : cg.components)
                    if (check_resonance(cg, comp).resonant) resonant = true;
                if (resonant) valid.push_back(rel);
            }

    std::vector<EnclosureCandidate> found = detect_hidden_enclosures(sys, basins);
    std::vector<EquivalenceRelation> found_resonant;
    for (const auto& c : found)
        if (c.resonant) found_resonant.push_back(c.relation);
    REQUIRE(valid.size() == found_resonant.size());
    for (size_t i = 0; i < valid.size(); ++i) CHECK(valid[i] == found_resonant[i]);
}

TEST_CASE("twin basins oscillate exactly at their level offset") {
    for (double delta : {0.0, 0.5}) {
        LindbladSystem sys = lftest::twin_basin_system(delta);
        BasinDecomposition b = basins_of(sys);
        REQUIRE(b.n_basins() == 2);
        EquivalenceRelation ra = EquivalenceRelation::trivial(b.basins[0]);
        EquivalenceRelation rb = EquivalenceRelation::trivial(b.basins[1]);
        std::optional<double> d = check_oscillations(sys, b, 0, 1, ra, rb);
        REQUIRE(d.has_value());
        CHECK(*d == doctest::Approx(delta).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("mismatched basin rates admit no oscillation") {
    LindbladSystem sys = lftest::two_basin_system();
    BasinDecomposition b = basins_of(sys);
    EquivalenceRelation ra = EquivalenceRelation::trivial(b.basins[0]);
    EquivalenceRelation rb = EquivalenceRelation::trivial(b.basins[1]);
    CHECK_FALSE(check_oscillations(sys, b, 0, 1, ra, rb).has_value());
}

TEST_CASE("an inter-block coherence rotates at the computed frequency") {
    const double delta = 0.5;
    LindbladSystem sys = lftest::twin_basin_system(delta);
    BasinDecomposition b = basins_of(sys);
    EquivalenceRelation ra = EquivalenceRelation::trivial(b.basins[0]);
    EquivalenceRelation rb = EquivalenceRelation::trivial(b.basins[1]);
    std::optional<double> d = check_oscillations(sys, b, 0, 1, ra, rb);
    REQUIRE(d.has_value());

    // pure superposition of the paired levels 1 and 3
    ComplexMatrix rho0(4);
    rho0(0, 0) = rho0(2, 2) = 0.5;
    rho0(0, 2) = rho0(2, 0) = 0.5;
    Trajectory t = integrate_master_equation(sys, DensityMatrix{rho0}, 40.0, 2e-3, 401);

    // discard the transient, then fit the rotation rate of rho_13
    size_t start = t.states.size() / 2;
    for (size_t i = start; i + 1 < t.states.size(); ++i) {
        cplx c1 = t.states[i].matrix(0, 2);
        cplx c2 = t.states[i + 1].matrix(0, 2);
        REQUIRE(std::abs(c1) > 1e-3);  // the coherence survives
        double dt = t.times[i + 1] - t.times[i];
        double dphase = std::arg(c2 / c1);
        CHECK(std::fabs(dphase - *d * dt) <= 1e-6 * std::max(1.0, std::fabs(*d * dt)));
    }
}
