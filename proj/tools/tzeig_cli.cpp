// Command-line front end: tensor generation, single solves, randomized
// experiments, benchmarks, spacey random walks and trajectory dumps.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tzeig/baselines.hpp"
#include "tzeig/eigenmap.hpp"
#include "tzeig/error.hpp"
#include "tzeig/experiment.hpp"
#include "tzeig/integrator.hpp"
#include "tzeig/rng.hpp"
#include "tzeig/srw.hpp"
#include "tzeig/tensor.hpp"
#include "tzeig/tensor_io.hpp"

namespace {

using namespace tzeig;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

int to_int(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("bad ") + what + " '" + s + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(part, "integer"));
            continue;
        }
        const int lo = to_int(part.substr(0, dots), "range start");
        const int hi = to_int(part.substr(dots + 2), "range end");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
}

/// kolda-mayo | alternating:m:n[:constant] | diag:<csv>[:m] | transition:n:m:seed | random:m:n:seed
CubicTensor generate(const std::string& name) {
    const auto parts = split(name, ':');
    if (parts.empty()) throw InvalidArgument("empty generator name");
    if (parts[0] == "kolda-mayo" && parts.size() == 1) return make_kolda_mayo();
    if (parts[0] == "alternating" && (parts.size() == 3 || parts.size() == 4)) {
        AlternatingForm form = AlternatingForm::PerIndex;
        if (parts.size() == 4) {
            if (parts[3] != "constant") throw InvalidArgument("alternating form must be 'constant'");
            form = AlternatingForm::Constant;
        }
        return make_alternating(to_int(parts[1], "order"), to_int(parts[2], "dim"), form);
    }
    if (parts[0] == "diag" && (parts.size() == 2 || parts.size() == 3)) {
        const auto items = split(parts[1], ',');
        Vector d(static_cast<Eigen::Index>(items.size()));
        for (std::size_t i = 0; i < items.size(); ++i) {
            try {
                d[static_cast<Eigen::Index>(i)] = std::stod(items[i]);
            } catch (const std::exception&) {
                throw InvalidArgument("bad diagonal entry '" + items[i] + "'");
            }
        }
        return make_diagonal(d, parts.size() == 3 ? to_int(parts[2], "order") : 3);
    }
    if (parts[0] == "transition" && parts.size() == 4) {
        return make_random_transition(to_int(parts[1], "dim"), to_int(parts[2], "order"),
                                      static_cast<std::uint64_t>(to_int(parts[3], "seed")))
            .base();
    }
    if (parts[0] == "random" && parts.size() == 4) {
        return make_random_symmetric(to_int(parts[1], "order"), to_int(parts[2], "dim"),
                                     static_cast<std::uint64_t>(to_int(parts[3], "seed")));
    }
    throw InvalidArgument("unknown generator '" + name + "'");
}

/// A tenz file path, or `gen:<generator>` for a built-in tensor.
CubicTensor load_tensor(const std::string& arg) {
    if (arg.rfind("gen:", 0) == 0) return generate(arg.substr(4));
    return read_tenz(std::filesystem::path(arg));
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    return out;
}

struct IntegratorFlags {
    double h = 0.5;
    double tol = 1e-6;
    int max_iters = 1000;
    std::string renorm = "sphere2";

    void add(CLI::App* app) {
        app->add_option("--h", h, "Forward Euler step size in (0, 1]")->capture_default_str();
        app->add_option("--tol", tol, "Stopping tolerance on ||dx/dt||")->capture_default_str();
        app->add_option("--max-iters", max_iters, "Iteration cap")->capture_default_str();
        app->add_option("--renorm", renorm, "Per-step renormalization")
            ->check(CLI::IsMember({"none", "sphere2", "simplex1"}))
            ->capture_default_str();
    }

    IntegratorConfig config() const {
        IntegratorConfig cfg;
        cfg.step_h = h;
        cfg.tol = tol;
        cfg.max_iters = max_iters;
        cfg.renorm = parse_renorm(renorm);
        cfg.validate();
        return cfg;
    }
};

Vector start_vector(const std::string& x0_path, int dim, std::uint64_t seed) {
    if (!x0_path.empty()) {
        Vector x0 = read_vector(std::filesystem::path(x0_path));
        if (x0.size() != dim) throw InvalidArgument("start vector length does not match tensor dimension");
        return x0;
    }
    return trial_start(dim, seed, 0);
}

void print_vector(std::ostream& out, const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor Z-eigenpairs by integrating dx/dt = map(T[x]^{m-2}) - x"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Write a built-in test tensor as tenz v1");
    std::string gen_name;
    std::string gen_out;
    gen->add_option("name", gen_name,
                    "kolda-mayo | alternating:m:n[:constant] | diag:<csv>[:m] | transition:n:m:seed | random:m:n:seed")
        ->required();
    gen->add_option("-o,--out", gen_out, "Output path (default stdout)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Integrate from one start vector");
    std::string tensor_arg;
    std::string map_arg = "lm:1";
    std::uint64_t seed = 0;
    std::string trace_path;
    std::string x0_path;
    std::string vector_out;
    IntegratorFlags solve_flags;
    solve_cmd->add_option("--tensor", tensor_arg, "tenz v1 file or gen:<generator>")->required();
    solve_cmd->add_option("--map", map_arg, "lm:k | sm:k | la:k | sa:k | perron | closest:<vector file>")
        ->capture_default_str();
    solve_cmd->add_option("--seed", seed, "Seed for the random start")->capture_default_str();
    solve_cmd->add_option("--x0", x0_path, "Start vector file (overrides --seed)");
    solve_cmd->add_option("--trace", trace_path, "Write the per-iterate trace CSV here");
    solve_cmd->add_option("--vector-out", vector_out, "Write the eigenvector here");
    solve_flags.add(solve_cmd);

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Randomized trials per map, eigenvalue hit table");
    std::string maps_arg = "lm:1,sm:1,la:1,sa:1,sa:2";
    int trials = 100;
    std::string report_path;
    std::string timing_path;
    std::string tensor_id;
    int threads = 0;
    IntegratorFlags exp_flags;
    exp_cmd->add_option("--tensor", tensor_arg, "tenz v1 file or gen:<generator>")->required();
    exp_cmd->add_option("--maps", maps_arg, "Comma list of map specs, sshopm:<gamma> or shopm")
        ->capture_default_str();
    exp_cmd->add_option("--trials", trials, "Random starts per variant")->capture_default_str();
    exp_cmd->add_option("--seed", seed, "Experiment seed")->capture_default_str();
    exp_cmd->add_option("--report", report_path, "Report CSV path (default stdout)");
    exp_cmd->add_option("--timing", timing_path, "Timing CSV path");
    exp_cmd->add_option("--id", tensor_id, "Tensor label in the report (default: --tensor)");
    exp_cmd->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
    exp_flags.add(exp_cmd);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time dynsys and SS-HOPM on the alternating tensor");
    std::string orders_arg = "3,4,5";
    std::string dims_arg = "5..10";
    std::string methods_arg = "dynsys,sshopm";
    std::string bench_out;
    IntegratorFlags bench_flags;
    bench_cmd->add_option("--orders", orders_arg, "Orders, e.g. 3,4,5")->capture_default_str();
    bench_cmd->add_option("--dims", dims_arg, "Dimensions, e.g. 5..10")->capture_default_str();
    bench_cmd->add_option("--methods", methods_arg, "Subset of dynsys,sshopm")->capture_default_str();
    bench_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
    bench_cmd->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
    bench_cmd->add_option("-o,--out", bench_out, "CSV path (default stdout)");
    bench_flags.add(bench_cmd);

    // srw
    auto* srw_cmd = app.add_subcommand("srw", "Simulate a spacey random walk");
    std::int64_t steps = 1000000;
    std::string compare_path;
    srw_cmd->add_option("--tensor", tensor_arg, "3-mode transition tensor (file or gen:)")->required();
    srw_cmd->add_option("--steps", steps, "Number of transitions")->capture_default_str();
    srw_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
    srw_cmd->add_option("--compare", compare_path, "Vector file; report total variation against it");

    // trajectory
    auto* traj_cmd = app.add_subcommand("trajectory", "Dump every iterate of a fixed-length run");
    int traj_steps = 1000;
    std::string traj_out;
    IntegratorFlags traj_flags;
    traj_flags.h = 0.01;
    traj_cmd->add_option("--tensor", tensor_arg, "tenz v1 file or gen:<generator>")->required();
    traj_cmd->add_option("--map", map_arg, "Map spec")->capture_default_str();
    traj_cmd->add_option("--steps", traj_steps, "Number of Euler steps")->capture_default_str();
    traj_cmd->add_option("--seed", seed, "Seed for the random start")->capture_default_str();
    traj_cmd->add_option("--x0", x0_path, "Start vector file (overrides --seed)");
    traj_cmd->add_option("-o,--out", traj_out, "CSV path (default stdout)");
    traj_flags.add(traj_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        std::cout << std::setprecision(10);
        if (*gen) {
            const CubicTensor t = generate(gen_name);
            if (gen_out.empty()) {
                write_tenz(std::cout, t);
            } else {
                write_tenz(std::filesystem::path(gen_out), t);
            }
        } else if (*solve_cmd) {
            const CubicTensor t = load_tensor(tensor_arg);
            const EigenMapSpec spec = parse_map_spec(map_arg, t.dim());
            IntegratorConfig cfg = solve_flags.config();
            cfg.record_trace = !trace_path.empty();
            const SolveResult r = solve(t, spec, cfg, start_vector(x0_path, t.dim(), seed));
            std::cout << "lambda," << r.lambda << "\nresidual," << r.residual << "\niterations," << r.iterations
                      << "\nconverged," << (r.converged ? "true" : "false") << "\ntie_events," << r.tie_events
                      << "\nx,";
            print_vector(std::cout, r.x);
            std::cout << '\n';
            if (!trace_path.empty()) {
                auto out = open_output(trace_path);
                write_trace_csv(out, r.trace);
            }
            if (!vector_out.empty()) {
                auto out = open_output(vector_out);
                write_vector(out, r.x);
            }
        } else if (*exp_cmd) {
            const CubicTensor t = load_tensor(tensor_arg);
            std::vector<Method> methods;
            for (const auto& m : split(maps_arg, ',')) methods.push_back(parse_method(m, t.dim()));
            ExperimentConfig cfg;
            cfg.integrator = exp_flags.config();
            cfg.sshopm.tol = exp_flags.tol;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.threads = threads;
            const auto report = run_experiment(t, tensor_id.empty() ? tensor_arg : tensor_id, methods, cfg);
            if (report_path.empty()) {
                write_report_csv(std::cout, report);
            } else {
                auto out = open_output(report_path);
                write_report_csv(out, report);
            }
            if (!timing_path.empty()) {
                auto out = open_output(timing_path);
                write_timing_csv(out, report);
            }
        } else if (*bench_cmd) {
            BenchConfig cfg;
            cfg.orders = parse_int_list(orders_arg);
            cfg.dims = parse_int_list(dims_arg);
            cfg.methods = split(methods_arg, ',');
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.integrator = bench_flags.config();
            cfg.sshopm.tol = bench_flags.tol;
            const auto rows = run_bench(cfg);
            if (bench_out.empty()) {
                write_bench_csv(std::cout, rows);
            } else {
                auto out = open_output(bench_out);
                write_bench_csv(out, rows);
            }
        } else if (*srw_cmd) {
            const TransitionTensor p(load_tensor(tensor_arg), 1e-10);
            const Vector occ = srw_run(p, steps, seed);
            std::cout << "occupation,";
            print_vector(std::cout, occ);
            std::cout << '\n';
            if (!compare_path.empty()) {
                Vector ref = read_vector(std::filesystem::path(compare_path));
                if (ref.size() != occ.size()) throw InvalidArgument("comparison vector has the wrong length");
                ref /= ref.sum();
                std::cout << "tv," << total_variation(occ, ref) << '\n';
            }
        } else if (*traj_cmd) {
            const CubicTensor t = load_tensor(tensor_arg);
            const EigenMapSpec spec = parse_map_spec(map_arg, t.dim());
            const auto path = integrate_trajectory(t, spec, traj_flags.config(), start_vector(x0_path, t.dim(), seed),
                                                   traj_steps);
            if (traj_out.empty()) {
                write_trajectory_csv(std::cout, t, path);
            } else {
                auto out = open_output(traj_out);
                write_trajectory_csv(out, t, path);
            }
        }
    } catch (const tzeig::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
