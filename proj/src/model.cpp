#include "lindforest/model.hpp"

#include <cmath>
#include <sstream>

namespace lindforest {

bool LindbladSystem::hamiltonian_is_diagonal(double tol) const {
    return hamiltonian.offdiag_max() <= tol;
}

std::vector<double> LindbladSystem::hamiltonian_diagonal() const {
    std::vector<double> d(dim);
    for (int i = 0; i < dim; ++i) d[i] = hamiltonian(i, i).real();
    return d;
}

std::vector<Violation> validate_system(const LindbladSystem& sys) {
    std::vector<Violation> report;
    auto flag = [&](const std::string& field, const std::string& msg, double defect) {
        report.push_back({field, msg, defect});
    };

    if (sys.dim <= 0) {
        flag("dim", "dimension must be positive", static_cast<double>(sys.dim));
        return report;
    }
    if (sys.hamiltonian.dim() != sys.dim) {
        flag("hamiltonian", "dimension mismatch", std::fabs(sys.hamiltonian.dim() - sys.dim));
    } else {
        if (!sys.hamiltonian.all_finite()) flag("hamiltonian", "non-finite entry", 0.0);
        double defect = sys.hamiltonian.hermiticity_defect();
        if (defect > kHermitianTol) flag("hamiltonian", "hamiltonian not Hermitian", defect);
    }
    if (sys.lindblad_ops.empty()) flag("lindblad_ops", "at least one Lindblad operator required", 0.0);
    for (size_t a = 0; a < sys.lindblad_ops.size(); ++a) {
        const ComplexMatrix& op = sys.lindblad_ops[a];
        std::ostringstream field;
        field << "lindblad_ops[" << a << "]";
        if (op.dim() != sys.dim) {
            flag(field.str(), "dimension mismatch", std::fabs(op.dim() - sys.dim));
            continue;
        }
        if (!op.all_finite()) flag(field.str(), "non-finite entry", 0.0);
    }
    if (!sys.labels.empty() && static_cast<int>(sys.labels.size()) != sys.dim)
        flag("labels", "label count must equal dim", 0.0);
    return report;
}

std::vector<Violation> DensityMatrix::validate() const {
    std::vector<Violation> report;
    if (!matrix.all_finite()) {
        report.push_back({"matrix", "non-finite entry", 0.0});
        return report;
    }
    double herm = matrix.hermiticity_defect();
    if (herm > kHermitianTol) report.push_back({"matrix", "not Hermitian", herm});
    double tr = std::fabs(matrix.trace().real() - 1.0) + std::fabs(matrix.trace().imag());
    if (tr > kTraceTol) report.push_back({"matrix", "trace differs from one", tr});
    if (herm <= 1e-8) {
        std::vector<double> eigs = hermitian_eigenvalues(matrix);
        if (!eigs.empty() && eigs.front() < -kEigenvalueTol)
            report.push_back({"matrix", "negative eigenvalue", -eigs.front()});
    }
    return report;
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    DensityMatrix rho{ComplexMatrix(dim)};
    for (int i = 0; i < dim; ++i) rho.matrix(i, i) = 1.0 / dim;
    return rho;
}

DensityMatrix DensityMatrix::from_diagonal(const std::vector<double>& populations) {
    DensityMatrix rho{ComplexMatrix(static_cast<int>(populations.size()))};
    for (size_t i = 0; i < populations.size(); ++i)
        rho.matrix(static_cast<int>(i), static_cast<int>(i)) = populations[i];
    return rho;
}

std::vector<Violation> SimplexVector::validate() const {
    std::vector<Violation> report;
    double sum = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        double v = entries[i];
        if (!std::isfinite(v)) {
            report.push_back({"entries", "non-finite entry", 0.0});
            return report;
        }
        if (v < -kSimplexEntryTol || v > 1.0 + kSimplexEntryTol) {
            std::ostringstream msg;
            msg << "entry " << i + 1 << " outside [0,1]";
            report.push_back({"entries", msg.str(), v});
        }
        sum += v;
    }
    if (std::fabs(sum - 1.0) > kTraceTol)
        report.push_back({"entries", "entries do not sum to one", std::fabs(sum - 1.0)});
    return report;
}

}  // namespace lindforest
