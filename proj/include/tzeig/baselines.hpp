#pragma once

#include <cstdint>
#include <vector>

#include "tzeig/integrator.hpp"
#include "tzeig/tensor.hpp"

namespace tzeig {

/// Shifted symmetric higher-order power method settings. gamma = 0 is S-HOPM.
struct SSHopmConfig {
    double gamma = 1.0;
    double tol = 1e-6;
    int max_iters = 10000;
    bool record_trace = false;

    void validate() const;
};

/// x <- (T x^{m-1} + gamma x) / (1 + gamma), then projected to the unit sphere.
/// Only the reported eigenvector is sign-canonicalized.
SolveResult sshopm(const CubicTensor& t, const SSHopmConfig& cfg, const Vector& x0);

/// Max 2-norm gap between SS-HOPM iterates and projected forward Euler on
/// dx/dt = T x^{m-1} - ||x|| x with h = 1/(1 + gamma), over `steps` steps.
double sshopm_euler_equivalence(const CubicTensor& t, double gamma, const Vector& x0, int steps);

struct StochasticEquivalence {
    double max_deviation = 0.0;   ///< Euler on dx/dt = P x^{m-1} - x vs 1-norm SS-HOPM
    double max_norm_defect = 0.0; ///< | ||P x^{m-1} + gamma x||_1 - (1 + gamma) |
};

/// Same comparison for a transition tensor and a stochastic start vector.
StochasticEquivalence stochastic_sshopm_equivalence(const TransitionTensor& p, double gamma, const Vector& x0,
                                                    int steps);

// Quadratic vector equation x = a + B x^2 ---------------------------------

struct QveProblem {
    Vector a;
    CubicTensor b;
};

/// Validates that a, B are nonnegative, B is 3-mode, and e solves the equation.
void validate_qve(const Vector& a, const CubicTensor& b);

/// F = sum_j B(:, j, :).
Matrix qve_f_matrix(const CubicTensor& b);

/// T = W + Z - B with W(i,j,l) = F(i,j) and Z(i,j,l) = (B[e])(i,j), so that
/// T[x] = F + B[e] - B[x] for every stochastic x.
CubicTensor qve_perron_tensor(const CubicTensor& b, const Vector& a);

/// Perron iterates x_{k+1} = Pi(F + B[e] - B[x_k]) with unit 1-norm,
/// computed from the matrices directly. Row 0 is x0.
std::vector<Vector> qve_perron_iterates(const CubicTensor& b, const Vector& x0, int steps);

struct QveSolution {
    Vector x;          ///< minimal nonnegative solution
    Vector direction;  ///< unit 1-norm direction of e - x
    int iterations = 0;
    bool converged = false;
};

/// Scaled Perron iteration on y = e - x: u = Pi(F + B[e] - B[y]), then
/// y = alpha u with alpha from e^T((F + B[e]) u - u) = alpha e^T B[u] u.
/// A nonpositive alpha means e itself is minimal.
QveSolution qve_minimal_solution(const Vector& a, const CubicTensor& b, double tol = 1e-13, int max_iters = 10000);

/// Random positive B with row sums in (0.6, 0.95) and a = e - B e^2.
QveProblem make_random_qve(int dim, std::uint64_t seed);

}  // namespace tzeig
