#include "lindforest/system_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lindforest/errors.hpp"

namespace lindforest {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ParseError(where + ": unknown key \"" + it.key() + "\"");
    }
}

cplx parse_complex(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(where + ": complex entries must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix parse_matrix(const json& j, int dim, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError(where + ": expected " + std::to_string(dim) + " rows");
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim)
            throw ParseError(where + ": row " + std::to_string(r + 1) + " must hold " +
                             std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c)
            m(r, c) = parse_complex(j[r][c], where + "[" + std::to_string(r + 1) + "][" +
                                                 std::to_string(c + 1) + "]");
    }
    return m;
}

// Shortest representation that re-parses to the same double.
std::string dump_double(double v) { return json(v).dump(); }

std::string matrix_to_text(const ComplexMatrix& m, const std::string& indent) {
    std::ostringstream os;
    os << "[\n";
    for (int r = 0; r < m.dim(); ++r) {
        os << indent << "  [";
        for (int c = 0; c < m.dim(); ++c) {
            os << "[" << dump_double(m(r, c).real()) << ", " << dump_double(m(r, c).imag())
               << "]";
            if (c + 1 < m.dim()) os << ", ";
        }
        os << "]" << (r + 1 < m.dim() ? "," : "") << "\n";
    }
    os << indent << "]";
    return os.str();
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

ParsedSystem parse_system_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("system file must be a JSON object");
    reject_unknown_keys(j, {"dim", "hamiltonian", "lindblad_ops", "basis", "labels"}, "system");

    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ParseError("system: \"dim\" must be an integer");
    int dim = j["dim"].get<int>();
    if (dim <= 0) throw ParseError("system: \"dim\" must be positive");

    ParsedSystem ps;
    ps.system.dim = dim;

    if (!j.contains("hamiltonian")) throw ParseError("system: missing \"hamiltonian\"");
    const json& h = j["hamiltonian"];
    if (!h.is_object()) throw ParseError("hamiltonian: must be an object");
    reject_unknown_keys(h, {"diagonal", "matrix"}, "hamiltonian");
    if (h.contains("diagonal") == h.contains("matrix"))
        throw ParseError("hamiltonian: exactly one of \"diagonal\" or \"matrix\" required");
    if (h.contains("diagonal")) {
        const json& d = h["diagonal"];
        if (!d.is_array() || static_cast<int>(d.size()) != dim)
            throw ParseError("hamiltonian.diagonal: expected " + std::to_string(dim) + " reals");
        std::vector<cplx> diag(dim);
        for (int i = 0; i < dim; ++i) {
            if (!d[i].is_number()) throw ParseError("hamiltonian.diagonal: entries must be real");
            diag[i] = d[i].get<double>();
        }
        ps.system.hamiltonian = ComplexMatrix::diagonal(diag);
    } else {
        ps.system.hamiltonian = parse_matrix(h["matrix"], dim, "hamiltonian.matrix");
    }

    if (!j.contains("lindblad_ops") || !j["lindblad_ops"].is_array() || j["lindblad_ops"].empty())
        throw ParseError("system: \"lindblad_ops\" must be a non-empty list");
    for (size_t a = 0; a < j["lindblad_ops"].size(); ++a)
        ps.system.lindblad_ops.push_back(
            parse_matrix(j["lindblad_ops"][a], dim, "lindblad_ops[" + std::to_string(a + 1) + "]"));

    if (j.contains("basis")) ps.basis = ProjectorFamily{parse_matrix(j["basis"], dim, "basis")};
    if (j.contains("labels")) {
        const json& lab = j["labels"];
        if (!lab.is_array() || static_cast<int>(lab.size()) != dim)
            throw ParseError("labels: expected " + std::to_string(dim) + " strings");
        for (const auto& s : lab) {
            if (!s.is_string()) throw ParseError("labels: entries must be strings");
            ps.system.labels.push_back(s.get<std::string>());
        }
    }
    return ps;
}

ParsedSystem load_system_file(const std::string& path) {
    return parse_system_text(read_text_file(path));
}

std::string system_to_json_text(const ParsedSystem& ps) {
    std::ostringstream os;
    os << "{\n  \"dim\": " << ps.system.dim << ",\n";

    bool diag_h = ps.system.hamiltonian.offdiag_max() == 0.0;
    bool real_diag = true;
    for (int i = 0; i < ps.system.dim; ++i)
        if (ps.system.hamiltonian(i, i).imag() != 0.0) real_diag = false;
    if (diag_h && real_diag) {
        os << "  \"hamiltonian\": {\"diagonal\": [";
        for (int i = 0; i < ps.system.dim; ++i) {
            os << dump_double(ps.system.hamiltonian(i, i).real());
            if (i + 1 < ps.system.dim) os << ", ";
        }
        os << "]},\n";
    } else {
        os << "  \"hamiltonian\": {\"matrix\": " << matrix_to_text(ps.system.hamiltonian, "  ")
           << "},\n";
    }

    os << "  \"lindblad_ops\": [\n";
    for (size_t a = 0; a < ps.system.lindblad_ops.size(); ++a) {
        os << "    " << matrix_to_text(ps.system.lindblad_ops[a], "    ");
        os << (a + 1 < ps.system.lindblad_ops.size() ? "," : "") << "\n";
    }
    os << "  ]";

    if (ps.basis) os << ",\n  \"basis\": " << matrix_to_text(ps.basis->basis, "  ");
    if (!ps.system.labels.empty()) {
        os << ",\n  \"labels\": [";
        for (size_t i = 0; i < ps.system.labels.size(); ++i) {
            os << json(ps.system.labels[i]).dump();
            if (i + 1 < ps.system.labels.size()) os << ", ";
        }
        os << "]";
    }
    os << "\n}\n";
    return os.str();
}

EquivalenceRelation parse_relation_text(const std::string& text, int dim) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("relation file must be a JSON object");
    reject_unknown_keys(j, {"classes"}, "relation");
    if (!j.contains("classes") || !j["classes"].is_array())
        throw ParseError("relation: \"classes\" must be a list of lists");
    EquivalenceRelation rel;
    for (const auto& cls : j["classes"]) {
        if (!cls.is_array() || cls.empty())
            throw ParseError("relation: each class must be a non-empty list");
        std::vector<int> members;
        for (const auto& v : cls) {
            if (!v.is_number_integer()) throw ParseError("relation: indices must be integers");
            int idx = v.get<int>();
            if (idx < 1 || idx > dim)
                throw ParseError("relation: index " + std::to_string(idx) + " outside 1.." +
                                 std::to_string(dim));
            members.push_back(idx - 1);
        }
        rel.classes.push_back(std::move(members));
    }
    rel.canonicalize();
    return rel;
}

EquivalenceRelation load_relation_file(const std::string& path, int dim) {
    return parse_relation_text(read_text_file(path), dim);
}

ParsedInitial parse_initial_text(const std::string& text, int dim) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("initial file must be a JSON object");
    reject_unknown_keys(j, {"lambda", "matrix"}, "initial");
    if (j.contains("lambda") == j.contains("matrix"))
        throw ParseError("initial: exactly one of \"lambda\" or \"matrix\" required");
    ParsedInitial out;
    if (j.contains("lambda")) {
        const json& lam = j["lambda"];
        if (!lam.is_array() || static_cast<int>(lam.size()) != dim)
            throw ParseError("initial.lambda: expected " + std::to_string(dim) + " reals");
        SimplexVector v;
        for (const auto& x : lam) {
            if (!x.is_number()) throw ParseError("initial.lambda: entries must be real");
            v.entries.push_back(x.get<double>());
        }
        out.lambda = std::move(v);
    } else {
        out.rho = DensityMatrix{parse_matrix(j["matrix"], dim, "initial.matrix")};
    }
    return out;
}

ParsedInitial load_initial_file(const std::string& path, int dim) {
    return parse_initial_text(read_text_file(path), dim);
}

}  // namespace lindforest
