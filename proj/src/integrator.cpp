#include "tzeig/integrator.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "tzeig/error.hpp"

namespace tzeig {

namespace {

constexpr double kBlowupNorm = 1e6;
constexpr double kSimplexNegTol = 1e-10;

Vector renormalize(const Vector& x, Renorm mode) {
    switch (mode) {
        case Renorm::None: return x;
        case Renorm::UnitSphere2: {
            const double norm = x.norm();
            if (!(norm > 0.0)) throw DivergenceError("iterate collapsed to zero");
            return x / norm;
        }
        case Renorm::Simplex1: {
            if (x.minCoeff() < -kSimplexNegTol) {
                throw NormalizationError("simplex renormalization of an iterate with entry " +
                                         std::to_string(x.minCoeff()));
            }
            const Vector clipped = x.cwiseMax(0.0);
            const double total = clipped.sum();
            if (!(total > 0.0)) throw NormalizationError("iterate has zero 1-norm");
            return clipped / total;
        }
    }
    return x;
}

TracePoint trace_point(const CubicTensor& t, const Vector& x, double update) {
    const Vector unit = x / x.norm();
    const double lambda = rayleigh(t, unit);
    return {lambda, update, eigen_residual(t, unit, lambda)};
}

}  // namespace

Renorm parse_renorm(const std::string& text) {
    if (text == "none") return Renorm::None;
    if (text == "sphere2") return Renorm::UnitSphere2;
    if (text == "simplex1") return Renorm::Simplex1;
    throw InvalidArgument("unknown renormalization '" + text + "' (none, sphere2, simplex1)");
}

const char* to_string(Renorm r) {
    switch (r) {
        case Renorm::None: return "none";
        case Renorm::UnitSphere2: return "sphere2";
        case Renorm::Simplex1: return "simplex1";
    }
    return "?";
}

void IntegratorConfig::validate() const {
    if (!(step_h > 0.0 && step_h <= 1.0)) throw InvalidArgument("step size must lie in (0, 1]");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
}

double eigen_residual(const CubicTensor& t, const Vector& x, double lambda) {
    return (apply(t, x) - lambda * x).norm();
}

Vector euler_step(const CubicTensor& t, const Vector& x, const EigenMapSpec& spec, double h, bool* tie) {
    const Selection sel = select_eigenvector(spec, eig_all(collapse(t, x)), x);
    if (tie) *tie = sel.tie;
    // (1 - h) x + h v rather than x + h (v - x), so h = 1 lands exactly on v.
    return (1.0 - h) * x + h * sel.vector;
}

SolveResult solve(const CubicTensor& t, const EigenMapSpec& spec, const IntegratorConfig& cfg, const Vector& x0) {
    cfg.validate();
    if (x0.size() != t.dim()) throw InvalidArgument("start vector length does not match tensor dimension");
    if (x0.isZero(0.0)) throw InvalidArgument("start vector must be nonzero");

    SolveResult res;
    Vector x = renormalize(x0, cfg.renorm);
    if (cfg.record_trace) res.trace.push_back(trace_point(t, x, 0.0));

    bool stopped = false;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        bool tie = false;
        Vector next = euler_step(t, x, spec, cfg.step_h, &tie);
        if (tie) ++res.tie_events;
        if (!next.allFinite() || next.norm() > kBlowupNorm) {
            throw DivergenceError("iterate diverged at step " + std::to_string(k));
        }
        next = renormalize(next, cfg.renorm);
        const double update = (next - x).norm() / cfg.step_h;
        x = std::move(next);
        res.iterations = k;
        if (cfg.record_trace) res.trace.push_back(trace_point(t, x, update));
        if (update <= cfg.tol) {
            stopped = true;
            break;
        }
    }

    res.iterate = x;
    res.x = x / x.norm();
    res.lambda = rayleigh(t, res.x);
    res.residual = eigen_residual(t, res.x, res.lambda);
    res.converged = stopped && res.residual <= residual_bound(cfg.tol, res.lambda);
    return res;
}

std::vector<Vector> integrate_trajectory(const CubicTensor& t, const EigenMapSpec& spec, const IntegratorConfig& cfg,
                                         const Vector& x0, int steps) {
    cfg.validate();
    if (x0.size() != t.dim()) throw InvalidArgument("start vector length does not match tensor dimension");
    std::vector<Vector> path;
    path.reserve(static_cast<std::size_t>(steps) + 1);
    path.push_back(renormalize(x0, cfg.renorm));
    for (int k = 0; k < steps; ++k) {
        Vector next = euler_step(t, path.back(), spec, cfg.step_h);
        if (!next.allFinite() || next.norm() > kBlowupNorm) {
            throw DivergenceError("trajectory diverged at step " + std::to_string(k + 1));
        }
        path.push_back(renormalize(next, cfg.renorm));
    }
    return path;
}

Vector closed_form_diag_trajectory(const Vector& x0, int i, double t) {
    if (i < 0 || i >= x0.size()) throw InvalidArgument("basis index out of range");
    const Vector e = Vector::Unit(x0.size(), i);
    return std::exp(-t) * (x0 - e) + e;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    const auto old = out.precision(17);
    out << "iter,rayleigh,update_norm,residual\n";
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out << k << ',' << trace[k].rayleigh << ',' << trace[k].update_norm << ',' << trace[k].residual << '\n';
    }
    out.precision(old);
}

}  // namespace tzeig
