#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lrlssvm {

/// Feature matrix (one row per sample) plus labels in {-1, +1}.
struct Dataset {
    Eigen::MatrixXd features; // N x D
    Eigen::VectorXd labels;   // N, every entry exactly -1.0 or +1.0

    [[nodiscard]] Eigen::Index size() const noexcept { return features.rows(); }
    [[nodiscard]] Eigen::Index dim() const noexcept { return features.cols(); }

    /// Throws DataError if N or D is zero, a label is not +-1, a feature is
    /// not finite, or the row counts disagree.
    void validate() const;
};

struct Realization {
    Dataset train;
    Dataset test;
};

/// Ordered train/test realizations sharing one input dimension.
struct BenchmarkSuite {
    std::string name;
    std::vector<Realization> realizations; // realization k lives at index k-1
};

/// Per-dimension standardization statistics.
struct NormStats {
    Eigen::VectorXd shift;
    Eigen::VectorXd scale; // strictly positive
};

enum class LabelConvention { Signed, ZeroOne };

struct CsvOptions {
    LabelConvention labels = LabelConvention::Signed;
    bool header = false; // skip the first line
};

/// Reads "f1,...,fD,label" rows. Row order is preserved.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Parses CSV text; `source` only labels error messages.
Dataset parse_csv(const std::string& text, const CsvOptions& options = {},
                  const std::string& source = "<memory>");

/// Writes with the signed label convention and round-trip exact numbers.
void write_csv(const Dataset& data, const std::filesystem::path& path);
std::string format_csv(const Dataset& data);

/// Loads train_<k>.csv / test_<k>.csv for k = 1..R from `dir`.
BenchmarkSuite load_benchmark_suite(const std::filesystem::path& dir,
                                    const CsvOptions& options = {});

inline constexpr double kMinScale = 1e-12;

/// Mean and population standard deviation per column; scale floored at kMinScale.
NormStats fit_normalizer(const Dataset& data);
Dataset apply_normalizer(const Dataset& data, const NormStats& stats);
Eigen::VectorXd apply_normalizer(const Eigen::VectorXd& x, const NormStats& stats);

/// One class of a Gaussian mixture: components share an isotropic variance.
struct MixtureClass {
    std::vector<double> weights;              // per component, global mixing weight
    std::vector<std::vector<double>> centers; // per component, 2-D center
    double variance = 0.0;
};

/// Two-class mixture in the plane. The first class is labelled -1, the second
/// +1. Mixing weights across all components of both classes sum to one.
struct MixtureSpec {
    std::vector<MixtureClass> classes;

    /// Throws ConfigError on malformed specs.
    void validate() const;
};

/// Ripley's synthetic two-class problem: each class an equal-weight mixture of
/// two Gaussians with covariance 0.03 I.
MixtureSpec ripley_mixture();

MixtureSpec parse_mixture_json(const std::string& json_text);
std::string mixture_to_json(const MixtureSpec& spec);

/// Samples train and test sets from `spec`. Pure function of its arguments.
std::pair<Dataset, Dataset> generate_two_class_mixture(std::uint64_t seed, Eigen::Index n_train,
                                                       Eigen::Index n_test,
                                                       const MixtureSpec& spec);

} // namespace lrlssvm
