#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lrlssvm/basis.hpp"
#include "lrlssvm/dataset.hpp"
#include "lrlssvm/init.hpp"
#include "lrlssvm/kernel_opt.hpp"
#include "lrlssvm/solver.hpp"

namespace lrlssvm {

struct TrainConfig {
    Eigen::Index num_units = 3; // M
    Family family = Family::RobustRbf;
    double mu0 = 0.2;    // initial shape, every entry
    double gamma = 150.0;
    double eta = 0.0008; // learning rate
    int iterations = 100; // T
    Objective objective = Objective::Abs;
    std::uint64_t seed = 1;
    bool normalize = false;
    /// Recompute y after every unit update inside a sweep. When false, y is
    /// held at its value from the start of the sweep.
    bool refresh_within_sweep = true;
    int kmedoids_max_sweeps = kDefaultMaxSweeps;

    /// Throws ConfigError when a knob is out of range.
    void validate() const;
};

struct HistoryRecord {
    int iteration = 0; // 0 is the initialized kernel
    double objective = 0.0;
    double train_error = 0.0; // misclassification fraction on training data
    double b = 0.0;
};

/// T + 1 records: the closed-form solve on the initial kernel, then one per
/// completed gradient sweep.
using TrainHistory = std::vector<HistoryRecord>;

struct FitResult {
    SparseModel model;
    DualSolution solution; // dual solution matching model.kernel
    TrainHistory history;
};

/// Alternates the closed-form dual solve with per-unit normalized gradient
/// steps for cfg.iterations sweeps, starting from a k-medoids initialized
/// kernel, then re-solves once so the returned model matches the final kernel.
/// Deterministic given cfg.seed. Throws NumericalError if the objective stops
/// being finite.
FitResult fit(const Dataset& train, const TrainConfig& cfg);

/// The alternating loop alone, from a caller-supplied kernel. `train` must
/// already be in the kernel's input space; cfg.normalize is ignored.
FitResult fit_from_kernel(const Dataset& train, LowRankKernel kernel, const TrainConfig& cfg);

struct Metrics {
    double misclassification_rate = 0.0;
    Eigen::Index n_errors = 0;
    Eigen::Index n_total = 0;
};

Metrics count_errors(const Eigen::Ref<const Eigen::VectorXd>& predicted,
                     const Eigen::Ref<const Eigen::VectorXd>& truth);
Metrics evaluate(const SparseModel& model, const Dataset& test);

struct RealizationResult {
    int index = 0; // 1-based
    Metrics metrics;
};

struct RealizationFailure {
    int index = 0;
    std::string message;
};

struct BenchmarkReport {
    std::string suite;
    TrainConfig config;
    std::vector<RealizationResult> results; // ascending index
    double mean_pct = 0.0;
    double std_pct = 0.0;   // sample standard deviation (divide by R - 1)
    bool std_defined = false; // false when fewer than two realizations succeeded
    std::vector<RealizationFailure> incomplete;
};

struct RateSummary {
    double mean_pct = 0.0;
    double std_pct = 0.0;
    bool std_defined = false;
};

/// Mean and sample standard deviation of fractional rates, in percent.
RateSummary summarize_rates(const std::vector<double>& rates);

struct RealizationRange {
    int first = 1; // inclusive, 1-based
    int last = 1;  // inclusive
};

/// Trains and evaluates one model per realization, seeding realization k with
/// cfg.seed + k. Up to `jobs` realizations run concurrently; the report does
/// not depend on `jobs`. Failed realizations are listed, not fatal.
BenchmarkReport run_benchmark(const BenchmarkSuite& suite, const TrainConfig& cfg,
                              std::optional<RealizationRange> range = std::nullopt,
                              int jobs = 1);

std::string config_to_json(const TrainConfig& cfg);
std::string report_to_json(const BenchmarkReport& report);
std::string history_to_csv(const TrainHistory& history);

} // namespace lrlssvm
