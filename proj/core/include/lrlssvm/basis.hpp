#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lrlssvm {

/// Learnable basis-function families.
///   Sbf:       phi(x) = max{0, 1 - sum_i mu_i |x_i - c_i|}
///   RobustRbf: phi(x) = exp{-sum_i mu_i |x_i - c_i|}
enum class Family { Sbf, RobustRbf };

std::string_view to_string(Family family) noexcept;
/// Accepts "sbf" and "robust-rbf"; throws ConfigError otherwise.
Family parse_family(std::string_view name);

/// One basis unit: a center and a non-negative per-dimension shape.
struct BasisUnit {
    Eigen::VectorXd center;
    Eigen::VectorXd shape;

    [[nodiscard]] Eigen::Index dim() const noexcept { return center.size(); }
};

/// k(x', x'') = sum_j phi_j(x') phi_j(x'') over M units of one family.
struct LowRankKernel {
    Family family = Family::RobustRbf;
    std::vector<BasisUnit> units;

    [[nodiscard]] Eigen::Index size() const noexcept {
        return static_cast<Eigen::Index>(units.size());
    }
    [[nodiscard]] Eigen::Index dim() const noexcept {
        return units.empty() ? 0 : units.front().dim();
    }

    /// Throws if empty, dimensions disagree, any entry is non-finite, or a
    /// shape entry is negative.
    void validate() const;
};

/// N x M matrix with entry (n, j) = phi_j(x_n).
using FeatureMatrix = Eigen::MatrixXd;

/// Weighted L1 distance sum_i mu_i |x_i - c_i|.
double weighted_distance(const Eigen::Ref<const Eigen::VectorXd>& x, const BasisUnit& unit);

double eval_basis(const Eigen::Ref<const Eigen::VectorXd>& x, const BasisUnit& unit,
                  Family family);

/// Rows of `points` are samples.
FeatureMatrix feature_matrix(const Eigen::Ref<const Eigen::MatrixXd>& points,
                             const LowRankKernel& kernel);

/// Column j of the feature matrix, i.e. phi_j evaluated at every row.
Eigen::VectorXd feature_column(const Eigen::Ref<const Eigen::MatrixXd>& points,
                               const BasisUnit& unit, Family family);

/// phi(x) for all M units.
Eigen::VectorXd feature_vector(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const LowRankKernel& kernel);

double kernel_value(const Eigen::Ref<const Eigen::VectorXd>& x1,
                    const Eigen::Ref<const Eigen::VectorXd>& x2, const LowRankKernel& kernel);

struct BasisPartials {
    double d_shape;  // d phi / d mu_i
    double d_center; // d phi / d c_i
};

/// Partial derivatives of phi with respect to mu_i and c_i. sign(0) is taken
/// as 0. For SBF, points outside the support or on the hinge boundary give 0.
BasisPartials basis_grad(const Eigen::Ref<const Eigen::VectorXd>& x, const BasisUnit& unit,
                         Eigen::Index i, Family family);

/// Local affine form y(x) = alpha^T x + beta of an SBF model.
struct LocalLinearForm {
    Eigen::VectorXd alpha;
    double beta = 0.0;
    std::vector<Eigen::Index> active; // units with weighted distance < 1
};

/// SBF family only; throws ConfigError otherwise.
LocalLinearForm piecewise_decompose(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& theta, double bias,
                                    const LowRankKernel& kernel);

} // namespace lrlssvm
