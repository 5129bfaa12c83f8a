#include "tzeig/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tzeig/eigenmap.hpp"
#include "tzeig/error.hpp"
#include "tzeig/rng.hpp"

namespace tzeig {

void SSHopmConfig::validate() const {
    if (!(gamma >= 0.0)) throw InvalidArgument("shift gamma must be nonnegative");
    if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
}

namespace {

Vector sshopm_update(const CubicTensor& t, const Vector& x, double gamma) {
    // (T x^{m-1} + gamma x) / (1 + gamma) written as a step of size h.
    const double h = 1.0 / (1.0 + gamma);
    const Vector y = (1.0 - h) * x + h * apply(t, x);
    const double norm = y.norm();
    if (!(norm > 0.0)) throw DegenerateIterateError("SS-HOPM update vanished");
    return y / norm;
}

void require_unit(const Vector& x, const char* what) {
    if (std::abs(x.norm() - 1.0) > 1e-10) throw InvalidArgument(std::string(what) + " must have unit 2-norm");
}

}  // namespace

SolveResult sshopm(const CubicTensor& t, const SSHopmConfig& cfg, const Vector& x0) {
    cfg.validate();
    if (x0.size() != t.dim()) throw InvalidArgument("start vector length does not match tensor dimension");
    require_unit(x0, "SS-HOPM start vector");

    SolveResult res;
    Vector x = x0;
    auto record = [&](double update) {
        const double lambda = rayleigh(t, x);
        res.trace.push_back({lambda, update, eigen_residual(t, x, lambda)});
    };
    if (cfg.record_trace) record(0.0);

    bool stopped = false;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        Vector next = sshopm_update(t, x, cfg.gamma);
        const double update = (next - x).norm();
        x = std::move(next);
        res.iterations = k;
        if (cfg.record_trace) record(update);
        if (update <= cfg.tol) {
            stopped = true;
            break;
        }
    }
    res.iterate = x;
    res.x = sign_canonicalize(x);
    res.lambda = rayleigh(t, res.x);
    res.residual = eigen_residual(t, res.x, res.lambda);
    res.converged = stopped && res.residual <= residual_bound(cfg.tol, res.lambda);
    return res;
}

double sshopm_euler_equivalence(const CubicTensor& t, double gamma, const Vector& x0, int steps) {
    if (steps < 1) throw InvalidArgument("steps must be at least 1");
    if (!(gamma >= 0.0)) throw InvalidArgument("shift gamma must be nonnegative");
    const double h = 1.0 / (1.0 + gamma);
    Vector power = x0 / x0.norm();
    Vector euler = power;
    double worst = 0.0;
    for (int k = 0; k < steps; ++k) {
        power = sshopm_update(t, power, gamma);
        // ||x|| = 1 on the sphere; using the constraint value instead of the
        // computed norm keeps roundoff out of the chaotic gamma = 0 case.
        const Vector stepped = (1.0 - h) * euler + h * apply(t, euler);
        euler = stepped / stepped.norm();
        worst = std::max(worst, (power - euler).norm());
    }
    return worst;
}

StochasticEquivalence stochastic_sshopm_equivalence(const TransitionTensor& p, double gamma, const Vector& x0,
                                                    int steps) {
    if (steps < 1) throw InvalidArgument("steps must be at least 1");
    if (!(gamma >= 0.0)) throw InvalidArgument("shift gamma must be nonnegative");
    if (x0.size() != p.dim() || x0.minCoeff() < 0.0 || std::abs(x0.sum() - 1.0) > 1e-12) {
        throw InvalidArgument("start vector must be stochastic");
    }
    const CubicTensor& t = p.base();
    const double h = 1.0 / (1.0 + gamma);
    Vector euler = x0;
    Vector power = x0;
    StochasticEquivalence out;
    for (int k = 0; k < steps; ++k) {
        // The unprojected sum drift grows like (1 + h)^k, so project to the simplex.
        euler = (1.0 - h) * euler + h * apply(t, euler);
        euler /= euler.sum();

        const Vector shifted = apply(t, power) + gamma * power;
        out.max_norm_defect = std::max(out.max_norm_defect, std::abs(shifted.lpNorm<1>() - (1.0 + gamma)));
        const Vector scaled = h * shifted;
        power = scaled / scaled.lpNorm<1>();

        out.max_deviation = std::max(out.max_deviation, (euler - power).norm());
    }
    return out;
}

void validate_qve(const Vector& a, const CubicTensor& b) {
    if (b.order() != 3) throw InvalidArgument("quadratic vector equation needs a 3-mode tensor");
    if (a.size() != b.dim()) throw InvalidArgument("a and B have different dimensions");
    if (a.minCoeff() < 0.0) throw InvalidArgument("a must be nonnegative");
    for (double v : b.entries()) {
        if (v < 0.0) throw InvalidArgument("B must be nonnegative");
    }
    const Vector e = Vector::Ones(b.dim());
    const double gap = (a + apply(b, e) - e).cwiseAbs().maxCoeff();
    if (gap > 1e-10) {
        throw InvalidArgument("the all-ones vector does not solve x = a + B x^2 (gap " + std::to_string(gap) + ")");
    }
}

Matrix qve_f_matrix(const CubicTensor& b) {
    const int n = b.dim();
    Matrix f = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) f(i, l) += b({i, j, l});
    return f;
}

CubicTensor qve_perron_tensor(const CubicTensor& b, const Vector& a) {
    validate_qve(a, b);
    const int n = b.dim();
    const Matrix f = qve_f_matrix(b);
    const Matrix be = collapse(b, Vector::Ones(n));
    std::vector<double> entries(b.size());
    std::size_t off = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l, ++off) entries[off] = f(i, j) + be(i, j) - b({i, j, l});
    return CubicTensor(3, n, std::move(entries));
}

std::vector<Vector> qve_perron_iterates(const CubicTensor& b, const Vector& x0, int steps) {
    if (b.order() != 3) throw InvalidArgument("quadratic vector equation needs a 3-mode tensor");
    const Matrix base = qve_f_matrix(b) + collapse(b, Vector::Ones(b.dim()));
    const EigenMapSpec perron = EigenMapSpec::perron();
    std::vector<Vector> path{x0};
    for (int k = 0; k < steps; ++k) {
        const Vector& x = path.back();
        path.push_back(select(perron, eig_all(base - collapse(b, x)), x));
    }
    return path;
}

QveSolution qve_minimal_solution(const Vector& a, const CubicTensor& b, double tol, int max_iters) {
    validate_qve(a, b);
    const int n = b.dim();
    const Vector e = Vector::Ones(n);
    const Matrix base = qve_f_matrix(b) + collapse(b, e);
    const EigenMapSpec perron = EigenMapSpec::perron();

    // y = e - x solves y = (F + B[e] - B[y]) y. Iterate on y = alpha u with u
    // a Perron vector of unit 1-norm and alpha fixing e^T of that identity.
    auto scale = [&](const Vector& u) {
        const double denom = e.dot(apply(b, u));
        return denom > 0.0 ? std::max(0.0, e.dot(base * u - u) / denom) : 0.0;
    };
    QveSolution sol;
    Vector u = e / n;
    Vector y = scale(u) * u;
    for (int k = 1; k <= max_iters; ++k) {
        u = select(perron, eig_all(base - collapse(b, y)), u);
        Vector next = scale(u) * u;
        const double change = (next - y).lpNorm<1>();
        y = std::move(next);
        sol.iterations = k;
        if (change <= tol) {
            sol.converged = true;
            break;
        }
    }
    sol.direction = u;
    sol.x = e - y;
    return sol;
}

QveProblem make_random_qve(int dim, std::uint64_t seed) {
    auto rng = make_rng(seed, 0x717665);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto n = static_cast<std::size_t>(dim);
    std::vector<double> entries(n * n * n);
    for (auto& v : entries) v = 1.0 - unif(rng);
    Vector a(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const double target = 0.6 + 0.35 * unif(rng);
        double sum = 0.0;
        for (std::size_t jk = 0; jk < n * n; ++jk) sum += entries[i * n * n + jk];
        for (std::size_t jk = 0; jk < n * n; ++jk) entries[i * n * n + jk] *= target / sum;
        sum = 0.0;
        for (std::size_t jk = 0; jk < n * n; ++jk) sum += entries[i * n * n + jk];
        a[static_cast<Eigen::Index>(i)] = 1.0 - sum;
    }
    return {a, CubicTensor(3, dim, std::move(entries))};
}

}  // namespace tzeig
