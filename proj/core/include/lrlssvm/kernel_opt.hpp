#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "lrlssvm/basis.hpp"
#include "lrlssvm/solver.hpp"

namespace lrlssvm {

/// Kernel-adaptation criteria, all maximized over the basis parameters with
/// the dual solution held fixed.
///   Abs:    sum_n |y_n|
///   Target: sum_n t_n y_n
///   Square: sum_n y_n^2
enum class Objective { Abs, Target, Square };

std::string_view to_string(Objective objective) noexcept;
/// Accepts "abs", "target", "square"; throws ConfigError otherwise.
Objective parse_objective(std::string_view name);

double objective_from_outputs(const Eigen::Ref<const Eigen::VectorXd>& outputs,
                              const Eigen::Ref<const Eigen::VectorXd>& labels,
                              Objective objective);

double objective_value(const Eigen::Ref<const FeatureMatrix>& phi, const DualSolution& solution,
                       const Eigen::Ref<const Eigen::VectorXd>& labels, Objective objective);

/// Derivatives of one unit's feature column: column i of `d_shape` holds
/// d phi_j(x_n) / d mu_i over all n, likewise `d_center` for c_i.
struct UnitDerivatives {
    Eigen::MatrixXd d_shape;  // N x D
    Eigen::MatrixXd d_center; // N x D
};

UnitDerivatives basis_derivatives(const Eigen::Ref<const Eigen::MatrixXd>& points,
                                  const BasisUnit& unit, Family family);

struct UnitGradient {
    Eigen::VectorXd d_center;
    Eigen::VectorXd d_shape;
};

/// Gradient of the objective with respect to unit `j`'s parameters.
///
/// With v = a o t and d = d phi_j / d nu, dK/d nu = d phi_j^T + phi_j d^T is
/// never formed; every term reduces to dot products of N-vectors:
///   Abs/Target: (s.d)(phi_j.v) + (s.phi_j)(d.v), s = sign(y) or t
///   Square:     2 (y.d)(phi_j.v) + 2 (y.phi_j)(d.v), y = K v + b
/// `outputs` is the current y; sign(0) is 0.
UnitGradient unit_gradient(Eigen::Index j, const Eigen::Ref<const FeatureMatrix>& phi,
                           const UnitDerivatives& derivatives, const DualSolution& solution,
                           const Eigen::Ref<const Eigen::VectorXd>& labels,
                           const Eigen::Ref<const Eigen::VectorXd>& outputs, Objective objective);

/// Same, computing y from (phi, solution).
UnitGradient unit_gradient(Eigen::Index j, const Eigen::Ref<const FeatureMatrix>& phi,
                           const UnitDerivatives& derivatives, const DualSolution& solution,
                           const Eigen::Ref<const Eigen::VectorXd>& labels, Objective objective);

/// Same gradient in one pass over `points`, without materializing the N x D
/// derivative matrices. `phi.col(j)` must be the feature column of `unit`.
UnitGradient unit_gradient(Eigen::Index j, const Eigen::Ref<const Eigen::MatrixXd>& points,
                           const BasisUnit& unit, Family family,
                           const Eigen::Ref<const FeatureMatrix>& phi, const DualSolution& solution,
                           const Eigen::Ref<const Eigen::VectorXd>& labels,
                           const Eigen::Ref<const Eigen::VectorXd>& outputs, Objective objective);

inline constexpr double kGradientNormFloor = 1e-12;

/// Normalized ascent step on centers and shapes, shapes clamped at zero.
/// A block whose gradient norm is below kGradientNormFloor is left unchanged.
BasisUnit gd_step(const BasisUnit& unit, const UnitGradient& gradient, double eta);

} // namespace lrlssvm
