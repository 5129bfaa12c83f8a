#include "tzeig/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "tzeig/error.hpp"
#include "tzeig/rng.hpp"

namespace tzeig {

namespace {

using Clock = std::chrono::steady_clock;

// Runs fn(0..count-1) on a pool; results must be written by index.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string format_double(double v, int digits = 10) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

int median(std::vector<int> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

}  // namespace

std::string Method::name() const {
    if (kind == Kind::DynSys) return map.to_string();
    if (gamma == 0.0) return "shopm";
    return "sshopm:" + format_double(gamma);
}

Method parse_method(const std::string& text, int dim) {
    Method m;
    if (text == "shopm") {
        m.kind = Method::Kind::SSHopm;
        m.gamma = 0.0;
        return m;
    }
    if (text.rfind("sshopm", 0) == 0) {
        m.kind = Method::Kind::SSHopm;
        m.gamma = 1.0;
        if (text.size() > 6) {
            if (text[6] != ':') throw InvalidArgument("bad method '" + text + "'");
            try {
                std::size_t used = 0;
                m.gamma = std::stod(text.substr(7), &used);
                if (used != text.size() - 7) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw InvalidArgument("bad shift in '" + text + "'");
            }
            if (!(m.gamma >= 0.0)) throw InvalidArgument("shift must be nonnegative in '" + text + "'");
        }
        return m;
    }
    m.map = parse_map_spec(text, dim);
    return m;
}

Vector trial_start(int dim, std::uint64_t seed, int trial) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(trial));
    return random_unit_vector(dim, rng);
}

TrialOutcome run_trial(const CubicTensor& t, const Method& method, const ExperimentConfig& cfg, const Vector& x0) {
    TrialOutcome out;
    try {
        const SolveResult r = method.kind == Method::Kind::DynSys ? solve(t, method.map, cfg.integrator, x0)
                                                                   : sshopm(t, [&] {
                                                                         SSHopmConfig c = cfg.sshopm;
                                                                         c.gamma = method.gamma;
                                                                         return c;
                                                                     }(), x0);
        out.converged = r.converged;
        out.lambda = r.lambda;
        out.residual = r.residual;
        out.iterations = r.iterations;
        out.x = r.x;
        // Odd order: (x, lambda) and (-x, -lambda) are the same eigenpair.
        if (t.order() % 2 == 1 && out.lambda < 0.0) {
            out.lambda = -out.lambda;
            out.x = -out.x;
        }
    } catch (const Error&) {
        out.converged = false;
    }
    return out;
}

std::vector<std::vector<std::size_t>> cluster_values(const std::vector<double>& values, double tol) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t idx : order) {
        if (groups.empty() || values[idx] - values[groups.back().front()] > tol) groups.emplace_back();
        groups.back().push_back(idx);
    }
    return groups;
}

ExperimentReport run_experiment(const CubicTensor& t, const std::string& tensor_id, const std::vector<Method>& methods,
                                const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw InvalidArgument("trials must be at least 1");
    cfg.integrator.validate();
    const auto trials = static_cast<std::size_t>(cfg.trials);

    std::vector<Vector> starts(trials);
    for (std::size_t k = 0; k < trials; ++k) starts[k] = trial_start(t.dim(), cfg.seed, static_cast<int>(k));

    std::vector<TrialOutcome> outcomes(methods.size() * trials);
    std::vector<double> elapsed(outcomes.size(), 0.0);
    parallel_for(outcomes.size(), cfg.threads, [&](std::size_t task) {
        const auto begin = Clock::now();
        outcomes[task] = run_trial(t, methods[task / trials], cfg, starts[task % trials]);
        elapsed[task] = std::chrono::duration<double>(Clock::now() - begin).count();
    });

    // Cluster every converged eigenvalue across all variants.
    std::vector<double> lambdas;
    std::vector<std::size_t> owner;
    for (std::size_t task = 0; task < outcomes.size(); ++task) {
        if (!outcomes[task].converged) continue;
        lambdas.push_back(outcomes[task].lambda);
        owner.push_back(task);
    }
    const auto groups = cluster_values(lambdas, cfg.cluster_tol);
    std::vector<std::size_t> cluster_of(outcomes.size(), 0);

    ExperimentReport report;
    report.tensor_id = tensor_id;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        EigenCluster c;
        c.members = static_cast<int>(groups[g].size());
        double lo = lambdas[groups[g].front()];
        double hi = lo;
        std::size_t best = owner[groups[g].front()];
        for (std::size_t idx : groups[g]) {
            const std::size_t task = owner[idx];
            cluster_of[task] = g;
            lo = std::min(lo, lambdas[idx]);
            hi = std::max(hi, lambdas[idx]);
            if (outcomes[task].residual < outcomes[best].residual) best = task;
        }
        c.lambda = outcomes[best].lambda;
        c.residual = outcomes[best].residual;
        c.spread = hi - lo;
        report.clusters.push_back(c);
    }

    for (std::size_t v = 0; v < methods.size(); ++v) {
        VariantReport vr;
        vr.name = methods[v].name();
        vr.trials = cfg.trials;
        vr.hits.assign(report.clusters.size(), 0);
        for (std::size_t k = 0; k < trials; ++k) {
            const std::size_t task = v * trials + k;
            vr.seconds += elapsed[task];
            if (!outcomes[task].converged) {
                ++vr.failures;
                continue;
            }
            ++vr.hits[cluster_of[task]];
            vr.converged_iterations.push_back(outcomes[task].iterations);
        }
        report.variants.push_back(std::move(vr));
    }
    return report;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
    out << "tensor,variant,trials,failures,lambda,hits,cluster_members,cluster_spread\n";
    for (const auto& v : report.variants) {
        for (std::size_t c = 0; c < report.clusters.size(); ++c) {
            const auto& cl = report.clusters[c];
            out << report.tensor_id << ',' << v.name << ',' << v.trials << ',' << v.failures << ','
                << format_double(cl.lambda) << ',' << v.hits[c] << ',' << cl.members << ','
                << format_double(cl.spread, 3) << '\n';
        }
        if (report.clusters.empty()) {
            out << report.tensor_id << ',' << v.name << ',' << v.trials << ',' << v.failures << ",,0,0,0\n";
        }
    }
}

void write_timing_csv(std::ostream& out, const ExperimentReport& report) {
    out << "tensor,variant,trials,converged,median_iterations,seconds\n";
    for (const auto& v : report.variants) {
        out << report.tensor_id << ',' << v.name << ',' << v.trials << ',' << v.trials - v.failures << ','
            << median(v.converged_iterations) << ',' << format_double(v.seconds, 6) << '\n';
    }
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    for (const auto& m : cfg.methods) {
        if (m != "dynsys" && m != "sshopm") throw InvalidArgument("unknown bench method '" + m + "'");
    }
    std::vector<BenchRow> rows;
    for (int order : cfg.orders) {
        for (int dim : cfg.dims) {
            const CubicTensor t = make_alternating(order, dim);
            for (const auto& name : cfg.methods) {
                std::vector<Method> methods;
                int trials = 0;
                if (name == "dynsys") {
                    for (int k = 1; k <= dim; ++k) {
                        methods.push_back({Method::Kind::DynSys, EigenMapSpec::largest_algebraic(k), 0.0});
                        methods.push_back({Method::Kind::DynSys, EigenMapSpec::largest_magnitude(k), 0.0});
                    }
                    trials = cfg.dynsys_trials_per_map;
                } else {
                    methods.push_back({Method::Kind::SSHopm, EigenMapSpec::largest_magnitude(1), 1.0});
                    trials = cfg.sshopm_trials_per_dim * dim;
                }
                ExperimentConfig ecfg;
                ecfg.integrator = cfg.integrator;
                ecfg.sshopm = cfg.sshopm;
                ecfg.trials = trials;
                ecfg.seed = cfg.seed;

                const auto total = methods.size() * static_cast<std::size_t>(trials);
                std::vector<TrialOutcome> outcomes(total);
                const auto begin = Clock::now();
                parallel_for(total, cfg.threads, [&](std::size_t task) {
                    const auto k = static_cast<int>(task % static_cast<std::size_t>(trials));
                    outcomes[task] = run_trial(t, methods[task / static_cast<std::size_t>(trials)], ecfg,
                                               trial_start(dim, cfg.seed, k));
                });
                BenchRow row{name, order, dim, static_cast<int>(total), 0, 0,
                             std::chrono::duration<double>(Clock::now() - begin).count()};
                for (const auto& o : outcomes) {
                    row.converged += o.converged ? 1 : 0;
                    row.iterations += o.iterations;
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "method,order,dim,trials,converged,iterations,seconds\n";
    for (const auto& r : rows) {
        out << r.method << ',' << r.order << ',' << r.dim << ',' << r.trials << ',' << r.converged << ','
            << r.iterations << ',' << format_double(r.seconds, 6) << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const CubicTensor& t, const std::vector<Vector>& path) {
    out << "step";
    for (int i = 1; i <= t.dim(); ++i) out << ",x" << i;
    out << ",rayleigh\n";
    const auto old = out.precision(17);
    for (std::size_t k = 0; k < path.size(); ++k) {
        out << k;
        for (Eigen::Index i = 0; i < path[k].size(); ++i) out << ',' << path[k][i];
        const double norm = path[k].norm();
        out << ',' << (norm > 0.0 ? rayleigh(t, path[k] / norm) : 0.0) << '\n';
    }
    out.precision(old);
}

}  // namespace tzeig
