#include "lrlssvm/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <variant>

#include <json.hpp>

#include "lrlssvm/error.hpp"
#include "lrlssvm/format.hpp"

namespace lrlssvm {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

HistoryRecord make_record(int iteration, const Eigen::VectorXd& outputs,
                          const Eigen::VectorXd& labels, double b, Objective objective) {
    HistoryRecord record;
    record.iteration = iteration;
    record.objective = objective_from_outputs(outputs, labels, objective);
    record.b = b;
    Eigen::Index errors = 0;
    for (Eigen::Index n = 0; n < outputs.size(); ++n) {
        errors += label_of(outputs[n]) != labels[n] ? 1 : 0;
    }
    record.train_error = static_cast<double>(errors) / static_cast<double>(outputs.size());
    if (!std::isfinite(record.objective)) {
        throw NumericalError("training diverged at iteration " + std::to_string(iteration) +
                             ": objective is not finite");
    }
    return record;
}

DualSolution solve_at(int iteration, const FeatureMatrix& phi, const Eigen::VectorXd& labels,
                      double gamma) {
    try {
        return solve_fast(phi, labels, gamma);
    } catch (const NumericalError& e) {
        throw NumericalError("iteration " + std::to_string(iteration) + ": " + e.what());
    }
}

} // namespace

void TrainConfig::validate() const {
    if (num_units < 1) {
        throw ConfigError("M must be at least 1");
    }
    if (!(mu0 >= 0.0) || !std::isfinite(mu0)) {
        throw ConfigError("mu0 must be a finite non-negative number");
    }
    if (!positive_finite(gamma)) {
        throw ConfigError("gamma must be a positive finite number");
    }
    if (!positive_finite(eta)) {
        throw ConfigError("eta must be a positive finite number");
    }
    if (iterations < 0) {
        throw ConfigError("iteration count must be non-negative");
    }
    if (kmedoids_max_sweeps < 1) {
        throw ConfigError("k-medoids sweep limit must be at least 1");
    }
}

FitResult fit_from_kernel(const Dataset& train, LowRankKernel kernel, const TrainConfig& cfg) {
    cfg.validate();
    train.validate();
    kernel.validate();
    if (kernel.dim() != train.dim()) {
        throw DataError("kernel dimension does not match training data");
    }
    const Eigen::MatrixXd& points = train.features;
    const Eigen::VectorXd& labels = train.labels;

    FitResult result;
    result.history.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
    FeatureMatrix phi = feature_matrix(points, kernel);

    for (int iteration = 0; iteration < cfg.iterations; ++iteration) {
        const DualSolution solution = solve_at(iteration, phi, labels, cfg.gamma);
        Eigen::VectorXd outputs = dual_outputs(phi, solution, labels);
        result.history.push_back(
            make_record(iteration, outputs, labels, solution.b, cfg.objective));

        // Coordinate ascent over units with (a, b) held fixed.
        for (Eigen::Index j = 0; j < kernel.size(); ++j) {
            auto& unit = kernel.units[static_cast<std::size_t>(j)];
            const UnitGradient gradient = unit_gradient(j, points, unit, kernel.family, phi,
                                                        solution, labels, outputs, cfg.objective);
            unit = gd_step(unit, gradient, cfg.eta);
            if (!unit.center.allFinite() || !unit.shape.allFinite()) {
                throw NumericalError("training diverged at iteration " +
                                     std::to_string(iteration) + ": unit " + std::to_string(j) +
                                     " parameters are not finite");
            }
            phi.col(j) = feature_column(points, unit, kernel.family);
            if (cfg.refresh_within_sweep) {
                outputs = dual_outputs(phi, solution, labels);
            }
        }
    }

    result.solution = solve_at(cfg.iterations, phi, labels, cfg.gamma);
    const Eigen::VectorXd outputs = dual_outputs(phi, result.solution, labels);
    result.history.push_back(
        make_record(cfg.iterations, outputs, labels, result.solution.b, cfg.objective));
    result.model = sparse_coefficients(phi, result.solution, labels, kernel);
    return result;
}

FitResult fit(const Dataset& train, const TrainConfig& cfg) {
    cfg.validate();
    train.validate();
    if (cfg.num_units > train.size()) {
        throw ConfigError("M (" + std::to_string(cfg.num_units) +
                          ") exceeds the number of training samples (" +
                          std::to_string(train.size()) + ")");
    }
    std::optional<NormStats> stats;
    const Dataset* work = &train;
    Dataset normalized;
    if (cfg.normalize) {
        stats = fit_normalizer(train);
        normalized = apply_normalizer(train, *stats);
        work = &normalized;
    }
    LowRankKernel kernel = init_kernel(work->features, cfg.family, cfg.num_units, cfg.mu0,
                                       cfg.seed, cfg.kmedoids_max_sweeps);
    FitResult result = fit_from_kernel(*work, std::move(kernel), cfg);
    result.model.norm = std::move(stats);
    return result;
}

Metrics count_errors(const Eigen::Ref<const Eigen::VectorXd>& predicted,
                     const Eigen::Ref<const Eigen::VectorXd>& truth) {
    if (predicted.size() != truth.size()) {
        throw DataError("prediction and label counts differ");
    }
    Metrics m;
    m.n_total = truth.size();
    for (Eigen::Index n = 0; n < truth.size(); ++n) {
        m.n_errors += predicted[n] != truth[n] ? 1 : 0;
    }
    m.misclassification_rate =
        m.n_total == 0 ? 0.0 : static_cast<double>(m.n_errors) / static_cast<double>(m.n_total);
    return m;
}

Metrics evaluate(const SparseModel& model, const Dataset& test) {
    test.validate();
    return count_errors(classify(model, test.features), test.labels);
}

RateSummary summarize_rates(const std::vector<double>& rates) {
    RateSummary summary;
    if (rates.empty()) {
        return summary;
    }
    const auto count = static_cast<double>(rates.size());
    double mean = 0.0;
    for (double r : rates) {
        mean += r;
    }
    mean /= count;
    summary.mean_pct = 100.0 * mean;
    if (rates.size() >= 2) {
        double ss = 0.0;
        for (double r : rates) {
            ss += (r - mean) * (r - mean);
        }
        summary.std_pct = 100.0 * std::sqrt(ss / (count - 1.0));
        summary.std_defined = true;
    }
    return summary;
}

BenchmarkReport run_benchmark(const BenchmarkSuite& suite, const TrainConfig& cfg,
                              std::optional<RealizationRange> range, int jobs) {
    cfg.validate();
    const int available = static_cast<int>(suite.realizations.size());
    if (available == 0) {
        throw DataError("benchmark suite has no realizations");
    }
    const RealizationRange span = range.value_or(RealizationRange{1, available});
    if (span.first < 1 || span.last < span.first || span.last > available) {
        throw ConfigError("realization range " + std::to_string(span.first) + ".." +
                          std::to_string(span.last) + " is outside 1.." +
                          std::to_string(available));
    }
    if (jobs < 1) {
        throw ConfigError("jobs must be at least 1");
    }

    const int count = span.last - span.first + 1;
    std::vector<std::variant<Metrics, std::string>> outcomes(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int slot = next++; slot < count; slot = next++) {
            const int index = span.first + slot;
            const Realization& r = suite.realizations[static_cast<std::size_t>(index - 1)];
            TrainConfig local = cfg;
            local.seed = cfg.seed + static_cast<std::uint64_t>(index);
            try {
                const FitResult fitted = fit(r.train, local);
                outcomes[static_cast<std::size_t>(slot)] = evaluate(fitted.model, r.test);
            } catch (const std::exception& e) {
                outcomes[static_cast<std::size_t>(slot)] = std::string(e.what());
            }
        }
    };
    const int threads = std::min(jobs, count);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int k = 0; k < threads; ++k) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    BenchmarkReport report;
    report.suite = suite.name;
    report.config = cfg;
    std::vector<double> rates;
    for (int slot = 0; slot < count; ++slot) {
        const int index = span.first + slot;
        const auto& outcome = outcomes[static_cast<std::size_t>(slot)];
        if (const auto* metrics = std::get_if<Metrics>(&outcome)) {
            report.results.push_back({index, *metrics});
            rates.push_back(metrics->misclassification_rate);
        } else {
            report.incomplete.push_back({index, std::get<std::string>(outcome)});
        }
    }
    const RateSummary summary = summarize_rates(rates);
    report.mean_pct = summary.mean_pct;
    report.std_pct = summary.std_pct;
    report.std_defined = summary.std_defined;
    return report;
}

namespace {

nlohmann::json config_json(const TrainConfig& cfg) {
    return {{"M", cfg.num_units},
            {"family", std::string(to_string(cfg.family))},
            {"mu0", cfg.mu0},
            {"gamma", cfg.gamma},
            {"eta", cfg.eta},
            {"iterations", cfg.iterations},
            {"objective", std::string(to_string(cfg.objective))},
            {"seed", cfg.seed},
            {"normalize", cfg.normalize},
            {"refresh_within_sweep", cfg.refresh_within_sweep}};
}

} // namespace

std::string config_to_json(const TrainConfig& cfg) { return config_json(cfg).dump(2); }

std::string report_to_json(const BenchmarkReport& report) {
    using nlohmann::json;
    json doc;
    doc["suite"] = report.suite;
    doc["config"] = config_json(report.config);
    json per = json::array();
    for (const auto& r : report.results) {
        per.push_back({{"index", r.index},
                       {"rate", r.metrics.misclassification_rate},
                       {"n_errors", r.metrics.n_errors},
                       {"n_total", r.metrics.n_total}});
    }
    doc["per_realization"] = std::move(per);
    doc["mean_pct"] = round_significant(report.mean_pct, 4);
    doc["std_pct"] = round_significant(report.std_pct, 4);
    doc["std_defined"] = report.std_defined;
    json incomplete = json::array();
    json failures = json::array();
    for (const auto& f : report.incomplete) {
        incomplete.push_back(f.index);
        failures.push_back({{"index", f.index}, {"error", f.message}});
    }
    doc["incomplete"] = std::move(incomplete);
    doc["failures"] = std::move(failures);
    return doc.dump(2) + "\n";
}

std::string history_to_csv(const TrainHistory& history) {
    std::string out = "iter,objective,train_error,b\n";
    for (const auto& r : history) {
        out += std::to_string(r.iteration);
        out += ',';
        out += format_roundtrip(r.objective);
        out += ',';
        out += format_roundtrip(r.train_error);
        out += ',';
        out += format_roundtrip(r.b);
        out += '\n';
    }
    return out;
}

} // namespace lrlssvm
