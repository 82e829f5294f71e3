#include "lrlssvm/solver.hpp"

#include <cmath>
#include <string>

#include "lrlssvm/error.hpp"

namespace lrlssvm {

namespace {

constexpr double kMinReciprocalCondition = 1e-15;

void check_inputs(const Eigen::Ref<const FeatureMatrix>& phi,
                  const Eigen::Ref<const Eigen::VectorXd>& labels, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ConfigError("gamma must be a positive finite number");
    }
    if (phi.rows() < 1) {
        throw DataError("feature matrix has no rows");
    }
    if (phi.rows() != labels.size()) {
        throw DataError("feature matrix has " + std::to_string(phi.rows()) + " rows but " +
                        std::to_string(labels.size()) + " labels were given");
    }
    if (!phi.allFinite()) {
        throw NumericalError("feature matrix contains non-finite values");
    }
}

DualSolution solve_saddle(Eigen::MatrixXd system, const char* what) {
    const Eigen::Index n = system.rows() - 1;
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n + 1);
    rhs[0] = 0.0;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond > kMinReciprocalCondition)) {
        throw NumericalError(std::string(what) + ": saddle-point system is singular (rcond " +
                             std::to_string(rcond) + ")");
    }
    const Eigen::VectorXd x = lu.solve(rhs);
    if (!x.allFinite()) {
        throw NumericalError(std::string(what) + ": solution is not finite");
    }
    return {x[0], x.tail(n)};
}

} // namespace

DualSolution solve_direct(const Eigen::Ref<const FeatureMatrix>& phi,
                          const Eigen::Ref<const Eigen::VectorXd>& labels, double gamma) {
    check_inputs(phi, labels, gamma);
    const Eigen::Index n = phi.rows();
    if (n > kDirectSolveMaxN) {
        throw ConfigError("direct solve is limited to N <= " + std::to_string(kDirectSolveMaxN));
    }
    const Eigen::MatrixXd signed_phi = labels.asDiagonal() * phi;
    Eigen::MatrixXd system(n + 1, n + 1);
    system(0, 0) = 0.0;
    system.block(0, 1, 1, n) = labels.transpose();
    system.block(1, 0, n, 1) = labels;
    system.bottomRightCorner(n, n) = signed_phi * signed_phi.transpose();
    system.bottomRightCorner(n, n).diagonal().array() += 1.0 / gamma;
    return solve_saddle(std::move(system), "direct solve");
}

DualSolution solve_fast(const Eigen::Ref<const FeatureMatrix>& phi,
                        const Eigen::Ref<const Eigen::VectorXd>& labels, double gamma) {
    check_inputs(phi, labels, gamma);
    const Eigen::Index n = phi.rows();
    const Eigen::Index m = phi.cols();
    const double nd = static_cast<double>(n);

    // P = (1/N) [[-1/g, t^T], [t, g (N I - t t^T)]] applied blockwise. For a
    // column [0; z] this gives [t.z / N; g (z - t (t.z) / N)].
    //
    // F = [0; diag(t) phi], so t^T diag(t) phi = 1^T phi (t_n^2 = 1) and
    //   P F = [mean^T; g (diag(t) phi - t mean^T)],  mean = column means of phi.
    const Eigen::RowVectorXd mean = phi.colwise().sum() / nd;
    Eigen::MatrixXd pf_lower = labels.asDiagonal() * phi; // becomes g (diag(t) phi - t mean^T)
    pf_lower.noalias() -= labels * mean;
    pf_lower *= gamma;

    // q = P [0; 1].
    const double label_sum = labels.sum();
    const double q_top = label_sum / nd;
    Eigen::VectorXd q_lower = gamma * (Eigen::VectorXd::Ones(n) - labels * (label_sum / nd));

    // F^T P F = g (phi^T phi - N mean^T mean) and F^T q = phi^T diag(t) q_lower.
    Eigen::MatrixXd capacitance = Eigen::MatrixXd::Identity(m, m);
    capacitance.noalias() += gamma * (phi.transpose() * phi);
    capacitance.noalias() -= (gamma * nd) * (mean.transpose() * mean);
    const Eigen::VectorXd rhs = phi.transpose() * labels.cwiseProduct(q_lower);

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(capacitance);
    const double rcond = lu.rcond();
    if (!(rcond > kMinReciprocalCondition)) {
        throw NumericalError("fast solve: capacitance matrix I + F^T P F is numerically "
                             "singular (rcond " + std::to_string(rcond) + ")");
    }
    const Eigen::VectorXd s = lu.solve(rhs);

    DualSolution solution;
    solution.b = q_top - mean.dot(s);
    solution.a = std::move(q_lower);
    solution.a.noalias() -= pf_lower * s;
    if (!std::isfinite(solution.b) || !solution.a.allFinite()) {
        throw NumericalError("fast solve: solution is not finite");
    }
    return solution;
}

namespace {

using ExtendedVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

// phi^T (a o t), accumulated in long double.
ExtendedVector weighted_column_sums(const Eigen::Ref<const FeatureMatrix>& phi,
                                    const Eigen::VectorXd& a,
                                    const Eigen::Ref<const Eigen::VectorXd>& labels) {
    ExtendedVector theta = ExtendedVector::Zero(phi.cols());
    for (Eigen::Index j = 0; j < phi.cols(); ++j) {
        long double acc = 0.0L;
        for (Eigen::Index n = 0; n < phi.rows(); ++n) {
            acc += static_cast<long double>(phi(n, j)) * (a[n] * labels[n]);
        }
        theta[j] = acc;
    }
    return theta;
}

} // namespace

SparseModel sparse_coefficients(const Eigen::Ref<const FeatureMatrix>& phi,
                                const DualSolution& solution,
                                const Eigen::Ref<const Eigen::VectorXd>& labels,
                                const LowRankKernel& kernel) {
    if (phi.rows() != labels.size() || solution.a.size() != labels.size()) {
        throw DataError("dual solution, labels, and feature matrix disagree on N");
    }
    if (phi.cols() != kernel.size()) {
        throw DataError("feature matrix width does not match kernel size");
    }
    SparseModel model;
    model.theta = weighted_column_sums(phi, solution.a, labels).cast<double>();
    model.b = solution.b;
    model.kernel = kernel;
    return model;
}

Eigen::VectorXd dual_outputs(const Eigen::Ref<const FeatureMatrix>& phi,
                             const DualSolution& solution,
                             const Eigen::Ref<const Eigen::VectorXd>& labels) {
    if (phi.rows() != labels.size() || solution.a.size() != labels.size()) {
        throw DataError("dual solution, labels, and feature matrix disagree on N");
    }
    const ExtendedVector theta = weighted_column_sums(phi, solution.a, labels);
    Eigen::VectorXd y(phi.rows());
    for (Eigen::Index n = 0; n < phi.rows(); ++n) {
        long double acc = solution.b;
        for (Eigen::Index j = 0; j < phi.cols(); ++j) {
            acc += static_cast<long double>(phi(n, j)) * theta[j];
        }
        y[n] = static_cast<double>(acc);
    }
    return y;
}

double predict_score(const SparseModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != model.dim()) {
        throw DataError("input has " + std::to_string(x.size()) + " features, model expects " +
                        std::to_string(model.dim()));
    }
    const Eigen::VectorXd phi = model.norm ? feature_vector(apply_normalizer(x, *model.norm),
                                                            model.kernel)
                                           : feature_vector(x, model.kernel);
    return phi.dot(model.theta) + model.b;
}

Eigen::VectorXd predict_scores(const SparseModel& model,
                               const Eigen::Ref<const Eigen::MatrixXd>& points) {
    if (points.cols() != model.dim()) {
        throw DataError("input has " + std::to_string(points.cols()) +
                        " features, model expects " + std::to_string(model.dim()));
    }
    FeatureMatrix phi;
    if (model.norm) {
        const Eigen::MatrixXd scaled =
            (points.rowwise() - model.norm->shift.transpose()).array().rowwise() /
            model.norm->scale.transpose().array();
        phi = feature_matrix(scaled, model.kernel);
    } else {
        phi = feature_matrix(points, model.kernel);
    }
    Eigen::VectorXd scores = phi * model.theta;
    scores.array() += model.b;
    return scores;
}

Eigen::VectorXd classify(const SparseModel& model,
                         const Eigen::Ref<const Eigen::MatrixXd>& points) {
    return predict_scores(model, points).unaryExpr([](double s) { return label_of(s); });
}

// -- Gaussian baseline -----------------------------------------------------------

double GaussianModel::kernel(const Eigen::Ref<const Eigen::VectorXd>& x1,
                             const Eigen::Ref<const Eigen::VectorXd>& x2) const {
    const double sq = (x1 - x2).squaredNorm();
    const double denom = width == GaussianWidth::TwoSigmaSquared ? 2.0 * sigma * sigma
                                                                 : sigma * sigma;
    return std::exp(-sq / denom);
}

double GaussianModel::score(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != support.cols()) {
        throw DataError("input dimension does not match Gaussian model");
    }
    double y = b;
    for (Eigen::Index n = 0; n < support.rows(); ++n) {
        y += a[n] * labels[n] * kernel(x, support.row(n).transpose());
    }
    return y;
}

GaussianModel solve_gaussian_lssvm(const Dataset& train, double gamma, double sigma,
                                   GaussianWidth width) {
    train.validate();
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ConfigError("gamma must be a positive finite number");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("sigma must be a positive finite number");
    }
    GaussianModel model;
    model.sigma = sigma;
    model.width = width;
    model.support = train.features;
    model.labels = train.labels;

    const Eigen::Index n = train.size();
    Eigen::MatrixXd system(n + 1, n + 1);
    system(0, 0) = 0.0;
    system.block(0, 1, 1, n) = train.labels.transpose();
    system.block(1, 0, n, 1) = train.labels;
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = r; c < n; ++c) {
            const double k = train.labels[r] * train.labels[c] *
                             model.kernel(train.features.row(r).transpose(),
                                          train.features.row(c).transpose());
            system(1 + r, 1 + c) = k;
            system(1 + c, 1 + r) = k;
        }
        system(1 + r, 1 + r) += 1.0 / gamma;
    }
    const DualSolution sol = solve_saddle(std::move(system), "Gaussian LSSVM");
    model.a = sol.a;
    model.b = sol.b;
    return model;
}

} // namespace lrlssvm
