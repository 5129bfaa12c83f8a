#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <string>
#include <optional>
#include <vector>

#include "tzeig/eigenmap.hpp"
#include "tzeig/tensor.hpp"

namespace tzeig {

enum class Renorm {
    None,         ///< raw forward Euler
    UnitSphere2,  ///< divide by the 2-norm after each step
    Simplex1,     ///< divide by the 1-norm; iterate must stay nonnegative
};

Renorm parse_renorm(const std::string& text);
const char* to_string(Renorm r);

struct IntegratorConfig {
    double step_h = 0.5;
    Renorm renorm = Renorm::UnitSphere2;
    double tol = 1e-6;
    int max_iters = 1000;
    bool record_trace = false;

    /// Throws InvalidArgument unless 0 < h <= 1, tol > 0, max_iters >= 1.
    void validate() const;
};

struct TracePoint {
    double rayleigh = 0.0;
    double update_norm = 0.0;  ///< ||x_k - x_{k-1}|| / h; 0 for the start
    double residual = 0.0;
};

/**
 * Eigenpair estimate from an iterative solver.
 *
 * `x` is the final iterate rescaled to unit 2-norm, and `lambda`/`residual`
 * are evaluated there, so (x, lambda) is always a Z-eigenpair candidate.
 * `iterate` keeps the final iterate in the solver's own normalization
 * (e.g. stochastic under Simplex1).
 */
struct SolveResult {
    Vector x;
    Vector iterate;
    double lambda = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    int tie_events = 0;
    std::vector<TracePoint> trace;
};

/// ||T x^{m-1} - lambda x||_2.
double eigen_residual(const CubicTensor& t, const Vector& x, double lambda);

/// Residual bound that a converged result must meet.
inline double residual_bound(double tol, double lambda) { return 10.0 * tol * std::max(1.0, std::abs(lambda)); }

/// One forward Euler step of dx/dt = map(T[x]^{m-2}) - x.
Vector euler_step(const CubicTensor& t, const Vector& x, const EigenMapSpec& spec, double h, bool* tie = nullptr);

/// Integrate from x0 until the discrete derivative drops below tol.
SolveResult solve(const CubicTensor& t, const EigenMapSpec& spec, const IntegratorConfig& cfg, const Vector& x0);

/// Every iterate of a fixed-length run (row 0 is x0 after renormalization).
std::vector<Vector> integrate_trajectory(const CubicTensor& t, const EigenMapSpec& spec, const IntegratorConfig& cfg,
                                         const Vector& x0, int steps);

/// x(t) = e^{-t}(x0 - e_i) + e_i, the exact flow toward basis vector i
/// (0-based) for a diagonal tensor under the closest-to-e_i map.
Vector closed_form_diag_trajectory(const Vector& x0, int i, double t);

/// Header `iter,rayleigh,update_norm,residual`.
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace tzeig
