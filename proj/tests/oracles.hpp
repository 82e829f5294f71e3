#pragma once

// Independent reference computations used only by the test suites. Nothing
// here calls into the library's solver, gradient, or clustering code paths.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lrlssvm/basis.hpp"
#include "lrlssvm/dataset.hpp"
#include "lrlssvm/kernel_opt.hpp"
#include "lrlssvm/solver.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

/// Gaussian elimination with partial pivoting on plain vectors.
std::vector<double> gauss_solve(Matrix a, std::vector<double> rhs);

/// Builds and solves [[0, t^T], [t, diag(t) phi phi^T diag(t) + I/gamma]] x = [0; 1]
/// entry by entry. Returns [b, a_1, ..., a_N].
std::vector<double> saddle_solve(const Eigen::MatrixXd& phi, const Eigen::VectorXd& labels,
                                 double gamma);

/// phi_j(x) from the textbook formula, one scalar loop.
double basis_value(const double* x, const double* center, const double* shape, int dim,
                   lrlssvm::Family family);

/// Feature matrix from basis_value.
Eigen::MatrixXd features(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel);

/// Objective with (a, b) fixed, from an explicitly materialized N x N kernel.
double objective_dense(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel,
                       const Eigen::VectorXd& a, double b, const Eigen::VectorXd& labels,
                       lrlssvm::Objective objective);

/// Which parameter block of a unit to perturb.
enum class Block { Center, Shape };

/// Central finite difference of objective_dense in one coordinate.
double finite_difference(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel,
                         std::size_t unit, Block block, int coordinate, const Eigen::VectorXd& a,
                         double b, const Eigen::VectorXd& labels, lrlssvm::Objective objective,
                         double h);

/// Dense-matrix gradient in long double: dK = d phi_j^T + phi_j d^T and
///   Abs/Target: s^T dK v
///   Square:     v^T (K dK + dK K) v + 2 b v^T dK 1
double dense_gradient(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel,
                      std::size_t unit, Block block, int coordinate, const Eigen::VectorXd& a,
                      double b, const Eigen::VectorXd& labels, lrlssvm::Objective objective);

/// Sum of Euclidean distances from each point to its nearest medoid.
double medoid_cost(const Eigen::MatrixXd& points, const std::vector<Eigen::Index>& medoids);

/// Exhaustive search over every size-M subset of rows. Returns the cheapest.
std::vector<Eigen::Index> best_medoids(const Eigen::MatrixXd& points, int m);

/// Scans 7200 directions for a line strictly separating the two label classes.
bool linearly_separable_2d(const lrlssvm::Dataset& data);

struct RandomInstance {
    Eigen::MatrixXd points;
    Eigen::VectorXd labels;
    lrlssvm::LowRankKernel kernel;
    double gamma = 1.0;
};

/// Random points in [-1, 1]^D, random labels (both classes present when
/// N >= 2), centers uniform in [-1, 1]^D, shapes uniform in [lo, hi].
RandomInstance random_instance(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m,
                               Eigen::Index d, lrlssvm::Family family, double gamma,
                               double shape_lo = 0.1, double shape_hi = 1.5);

} // namespace oracle
