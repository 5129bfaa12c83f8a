#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tzeig/baselines.hpp"
#include "tzeig/eigenmap.hpp"
#include "tzeig/integrator.hpp"
#include "tzeig/tensor.hpp"

namespace tzeig {

/// A solver variant in an experiment: a dynamical-system map or SS-HOPM.
struct Method {
    enum class Kind { DynSys, SSHopm };

    Kind kind = Kind::DynSys;
    EigenMapSpec map = EigenMapSpec::largest_magnitude(1);
    double gamma = 0.0;

    std::string name() const;
};

/// Map spec strings plus `sshopm:<gamma>` and `shopm` (gamma = 0).
Method parse_method(const std::string& text, int dim = 0);

struct ExperimentConfig {
    IntegratorConfig integrator{};
    SSHopmConfig sshopm{};
    int trials = 100;
    std::uint64_t seed = 0;
    double cluster_tol = 1e-4;
    int threads = 0;  ///< 0: hardware concurrency
};

struct TrialOutcome {
    bool converged = false;
    double lambda = 0.0;  ///< after sign canonicalization for odd order
    double residual = 0.0;
    int iterations = 0;
    Vector x;
};

struct EigenCluster {
    double lambda = 0.0;  ///< member with the smallest residual
    int members = 0;
    double spread = 0.0;
    double residual = 0.0;
};

struct VariantReport {
    std::string name;
    int trials = 0;
    int failures = 0;
    std::vector<int> hits;  ///< per cluster, same order as ExperimentReport::clusters
    std::vector<int> converged_iterations;
    double seconds = 0.0;
};

struct ExperimentReport {
    std::string tensor_id;
    std::vector<EigenCluster> clusters;
    std::vector<VariantReport> variants;
};

/// Start vector for trial `trial`; identical across variants.
Vector trial_start(int dim, std::uint64_t seed, int trial);

/// Run one method from x0. Solver errors become a non-converged outcome.
TrialOutcome run_trial(const CubicTensor& t, const Method& method, const ExperimentConfig& cfg, const Vector& x0);

/// Sort and group values so each group spans at most `tol`.
std::vector<std::vector<std::size_t>> cluster_values(const std::vector<double>& values, double tol);

ExperimentReport run_experiment(const CubicTensor& t, const std::string& tensor_id, const std::vector<Method>& methods,
                                const ExperimentConfig& cfg);

/// Header `tensor,variant,trials,failures,lambda,hits,cluster_members,cluster_spread`.
/// One row per (variant, cluster). Deterministic for a fixed seed.
void write_report_csv(std::ostream& out, const ExperimentReport& report);

/// Header `tensor,variant,trials,converged,median_iterations,seconds`.
void write_timing_csv(std::ostream& out, const ExperimentReport& report);

// Benchmarks ---------------------------------------------------------------

struct BenchConfig {
    std::vector<int> orders{3};
    std::vector<int> dims{5};
    std::vector<std::string> methods{"dynsys", "sshopm"};
    std::uint64_t seed = 0;
    int dynsys_trials_per_map = 50;
    int sshopm_trials_per_dim = 100;
    IntegratorConfig integrator{};
    SSHopmConfig sshopm{};
    int threads = 0;
};

struct BenchRow {
    std::string method;
    int order = 0;
    int dim = 0;
    int trials = 0;
    int converged = 0;
    long long iterations = 0;
    double seconds = 0.0;
};

/// Times each method on the alternating test tensor for every (order, dim).
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

/// Header `method,order,dim,trials,converged,iterations,seconds`.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Header `step,x1,...,xn,rayleigh`.
void write_trajectory_csv(std::ostream& out, const CubicTensor& t, const std::vector<Vector>& path);

}  // namespace tzeig
