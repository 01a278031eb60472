#ifndef LINDFOREST_ORACLE_HPP
#define LINDFOREST_ORACLE_HPP

#include <vector>

#include "lindforest/laplacian.hpp"
#include "lindforest/model.hpp"

namespace lindforest {

inline constexpr double kStabilityLimit = 0.1;       // dt * max|omega diagonal|
inline constexpr double kResidualConverged = 1e-10;  // Frobenius norm of d(rho)/dt

// Sampled master-equation trajectory.
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    double residual = 0.0;  // ||d(rho)/dt||_F at the final state

    const DensityMatrix& final_state() const { return states.back(); }
};

// Fixed-step classical RK4 on the full matrix master equation. Throws
// StabilityGuard when dt * max|omega_kk| >= 0.1 and NonPhysicalState when a
// sampled state acquires an eigenvalue below -1e-6.
Trajectory integrate_master_equation(const LindbladSystem& sys, const DensityMatrix& rho0,
                                     double t_end, double dt, int max_samples = 101);

struct LambdaTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    double residual = 0.0;

    const std::vector<double>& final_state() const { return states.back(); }
};

// RK4 on the linear occupation flow d(lambda)/dt = omega lambda.
LambdaTrajectory integrate_lambda(const RateMatrix& omega, const std::vector<double>& lambda0,
                                  double t_end, double dt, int max_samples = 101);

// Determinant of omega with the rows and columns `removed` deleted.
double minor_determinant(const RateMatrix& omega, const std::vector<int>& removed);

// Half the trace norm of a - b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// numerical_kernel / default_kernel_threshold live in linalg.hpp and are
// re-exported through this header for the oracle surface.

}  // namespace lindforest

#endif
