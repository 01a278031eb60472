#include "lindforest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lindforest/errors.hpp"

namespace lindforest {

namespace {

// Right-hand side of the master equation with L^dagger and L^dagger L
// precomputed once per integration.
struct MasterRhs {
    const ComplexMatrix& h;
    std::vector<ComplexMatrix> ops;
    std::vector<ComplexMatrix> ops_adj;
    std::vector<ComplexMatrix> ops_sq;  // L^dagger L

    explicit MasterRhs(const LindbladSystem& sys) : h(sys.hamiltonian) {
        for (const ComplexMatrix& l : sys.lindblad_ops) {
            ops.push_back(l);
            ops_adj.push_back(l.adjoint());
            ops_sq.push_back(matmul(ops_adj.back(), l));
        }
    }

    ComplexMatrix operator()(const ComplexMatrix& rho) const {
        ComplexMatrix d = matmul(h, rho) - matmul(rho, h);
        d *= cplx(0.0, -1.0);
        for (size_t a = 0; a < ops.size(); ++a) {
            d += matmul(ops[a], matmul(rho, ops_adj[a]));
            ComplexMatrix anti = matmul(ops_sq[a], rho) + matmul(rho, ops_sq[a]);
            anti *= cplx(0.5, 0.0);
            d -= anti;
        }
        return d;
    }
};

void check_guard(double dt, double max_diag) {
    if (dt <= 0.0) throw StabilityGuard("dt must be positive");
    if (dt * max_diag >= kStabilityLimit) {
        std::ostringstream msg;
        msg << "dt * max|omega_kk| = " << dt * max_diag << " exceeds the stability limit "
            << kStabilityLimit;
        throw StabilityGuard(msg.str());
    }
}

}  // namespace

Trajectory integrate_master_equation(const LindbladSystem& sys, const DensityMatrix& rho0,
                                     double t_end, double dt, int max_samples) {
    RateMatrix omega = build_omega(sys);
    check_guard(dt, omega.max_diagonal_magnitude());

    MasterRhs rhs(sys);
    long long steps = std::max<long long>(1, std::llround(t_end / dt));
    long long stride = std::max<long long>(1, steps / std::max(1, max_samples - 1));

    Trajectory traj;
    ComplexMatrix rho = rho0.matrix;
    auto sample = [&](double t) {
        std::vector<double> eigs = hermitian_eigenvalues(rho);
        if (!eigs.empty() && eigs.front() < -1e-6) {
            std::ostringstream msg;
            msg << "state eigenvalue " << eigs.front() << " at t = " << t;
            throw NonPhysicalState(msg.str());
        }
        traj.times.push_back(t);
        traj.states.push_back(DensityMatrix{rho});
    };

    sample(0.0);
    for (long long s = 1; s <= steps; ++s) {
        ComplexMatrix k1 = rhs(rho);
        ComplexMatrix k2 = rhs(rho + 0.5 * dt * k1);
        ComplexMatrix k3 = rhs(rho + 0.5 * dt * k2);
        ComplexMatrix k4 = rhs(rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (s % stride == 0 || s == steps) sample(s * dt);
    }
    traj.residual = rhs(rho).frobenius_norm();
    return traj;
}

LambdaTrajectory integrate_lambda(const RateMatrix& omega, const std::vector<double>& lambda0,
                                  double t_end, double dt, int max_samples) {
    const int n = omega.dim();
    if (static_cast<int>(lambda0.size()) != n)
        throw DimensionMismatch("lambda0 length does not match omega");
    check_guard(dt, omega.max_diagonal_magnitude());

    auto rhs = [&](const std::vector<double>& x) {
        std::vector<double> d(n, 0.0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) d[j] += omega.omega(j, k) * x[k];
        return d;
    };
    auto axpy = [&](const std::vector<double>& x, double a, const std::vector<double>& y) {
        std::vector<double> r(n);
        for (int i = 0; i < n; ++i) r[i] = x[i] + a * y[i];
        return r;
    };

    long long steps = std::max<long long>(1, std::llround(t_end / dt));
    long long stride = std::max<long long>(1, steps / std::max(1, max_samples - 1));

    LambdaTrajectory traj;
    std::vector<double> x = lambda0;
    traj.times.push_back(0.0);
    traj.states.push_back(x);
    for (long long s = 1; s <= steps; ++s) {
        std::vector<double> k1 = rhs(x);
        std::vector<double> k2 = rhs(axpy(x, 0.5 * dt, k1));
        std::vector<double> k3 = rhs(axpy(x, 0.5 * dt, k2));
        std::vector<double> k4 = rhs(axpy(x, dt, k3));
        for (int i = 0; i < n; ++i)
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (s % stride == 0 || s == steps) {
            traj.times.push_back(s * dt);
            traj.states.push_back(x);
        }
    }
    std::vector<double> final_rhs = rhs(x);
    double r = 0;
    for (double v : final_rhs) r += v * v;
    traj.residual = std::sqrt(r);
    return traj;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix d = a;
    d -= b;
    double s = 0;
    for (double e : hermitian_eigenvalues(d)) s += std::fabs(e);
    return 0.5 * s;
}

double minor_determinant(const RateMatrix& omega, const std::vector<int>& removed) {
    const int n = omega.dim();
    std::vector<bool> drop(n, false);
    for (int v : removed) {
        if (v < 0 || v >= n) throw DimensionMismatch("removed vertex out of range");
        drop[v] = true;
    }
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (!drop[v]) keep.push_back(v);
    if (keep.empty() || keep.size() == static_cast<size_t>(n))
        throw Error("removed set must be a nonempty proper subset");

    RealMatrix block(static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j)
            block(static_cast<int>(i), static_cast<int>(j)) = omega.omega(keep[i], keep[j]);
    return lu_determinant(block);
}

}  // namespace lindforest
