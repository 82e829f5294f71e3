#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lrlssvm/basis.hpp"
#include "lrlssvm/dataset.hpp"

namespace lrlssvm {

/// Bias and Lagrange multipliers of the LSSVM saddle-point system
///
///   [ 0   t^T                     ] [b]   [0]
///   [ t   diag(t) K diag(t) + I/g ] [a] = [1]
struct DualSolution {
    double b = 0.0;
    Eigen::VectorXd a;
};

/// Compressed model y(x) = sum_j theta_j phi_j(x) + b, O(MD) per point.
struct SparseModel {
    Eigen::VectorXd theta;
    double b = 0.0;
    LowRankKernel kernel;
    std::optional<NormStats> norm; // applied to inputs before evaluation

    [[nodiscard]] Eigen::Index size() const noexcept { return theta.size(); }
    [[nodiscard]] Eigen::Index dim() const noexcept { return kernel.dim(); }
};

inline constexpr Eigen::Index kDirectSolveMaxN = 5000;

/// Dense LU solve of the full (N+1) x (N+1) system. Reference path kept for
/// testing; throws ConfigError when N > kDirectSolveMaxN.
DualSolution solve_direct(const Eigen::Ref<const FeatureMatrix>& phi,
                          const Eigen::Ref<const Eigen::VectorXd>& labels, double gamma);

/// Low-rank solve through the matrix inversion lemma:
///
///   [b; a] = q - P F (I_M + F^T P F)^{-1} F^T q,   q = P [0; 1]
///
/// where F is diag(t) phi with a zero row on top and P is the closed-form
/// inverse of [[0, t^T], [t, I/gamma]]. P is only ever applied through its
/// rank-structured form, so memory is O(NM) and time O(M^2 N + M^3).
DualSolution solve_fast(const Eigen::Ref<const FeatureMatrix>& phi,
                        const Eigen::Ref<const Eigen::VectorXd>& labels, double gamma);

/// theta = phi^T (a o t).
SparseModel sparse_coefficients(const Eigen::Ref<const FeatureMatrix>& phi,
                                const DualSolution& solution,
                                const Eigen::Ref<const Eigen::VectorXd>& labels,
                                const LowRankKernel& kernel);

/// Model outputs y = phi phi^T (a o t) + b on the training set, without
/// forming the N x N kernel matrix.
Eigen::VectorXd dual_outputs(const Eigen::Ref<const FeatureMatrix>& phi,
                             const DualSolution& solution,
                             const Eigen::Ref<const Eigen::VectorXd>& labels);

double predict_score(const SparseModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::VectorXd predict_scores(const SparseModel& model,
                               const Eigen::Ref<const Eigen::MatrixXd>& points);

/// sign(score) with sign(0) := +1.
inline double label_of(double score) noexcept { return score >= 0.0 ? 1.0 : -1.0; }

Eigen::VectorXd classify(const SparseModel& model, const Eigen::Ref<const Eigen::MatrixXd>& points);

// -- Gaussian RBF baseline ---------------------------------------------------

enum class GaussianWidth {
    TwoSigmaSquared, // exp(-|x-x'|^2 / (2 sigma^2))
    SigmaSquared,    // exp(-|x-x'|^2 / sigma^2)
};

struct GaussianModel {
    Eigen::VectorXd a;
    double b = 0.0;
    double sigma = 1.0;
    GaussianWidth width = GaussianWidth::TwoSigmaSquared;
    Eigen::MatrixXd support; // training features
    Eigen::VectorXd labels;  // training labels

    [[nodiscard]] double kernel(const Eigen::Ref<const Eigen::VectorXd>& x1,
                                const Eigen::Ref<const Eigen::VectorXd>& x2) const;
    [[nodiscard]] double score(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

/// Full-rank LSSVM with a Gaussian kernel.
GaussianModel solve_gaussian_lssvm(const Dataset& train, double gamma, double sigma,
                                   GaussianWidth width = GaussianWidth::TwoSigmaSquared);

} // namespace lrlssvm
