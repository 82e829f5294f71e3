#include "lrlssvm/basis.hpp"

#include <cmath>
#include <string>

#include "lrlssvm/error.hpp"

namespace lrlssvm {

namespace {

double sign_of(double v) noexcept { return static_cast<double>((v > 0.0) - (v < 0.0)); }

void check_dim(Eigen::Index got, Eigen::Index want) {
    if (got != want) {
        throw DataError("dimension mismatch: input has " + std::to_string(got) +
                        " features, kernel expects " + std::to_string(want));
    }
}

double activate(double distance, Family family) noexcept {
    return family == Family::Sbf ? std::max(0.0, 1.0 - distance) : std::exp(-distance);
}

} // namespace

std::string_view to_string(Family family) noexcept {
    return family == Family::Sbf ? "sbf" : "robust-rbf";
}

Family parse_family(std::string_view name) {
    if (name == "sbf") {
        return Family::Sbf;
    }
    if (name == "robust-rbf") {
        return Family::RobustRbf;
    }
    throw ConfigError("unknown basis family '" + std::string(name) + "' (sbf | robust-rbf)");
}

void LowRankKernel::validate() const {
    if (units.empty()) {
        throw ConfigError("kernel needs at least one unit");
    }
    const Eigen::Index d = dim();
    if (d < 1) {
        throw ConfigError("kernel units must have at least one dimension");
    }
    for (const auto& u : units) {
        if (u.center.size() != d || u.shape.size() != d) {
            throw ConfigError("kernel units disagree on dimension");
        }
        if (!u.center.allFinite() || !u.shape.allFinite()) {
            throw NumericalError("kernel parameters are not finite");
        }
        if ((u.shape.array() < 0.0).any()) {
            throw ConfigError("shape parameters must be non-negative");
        }
    }
}

double weighted_distance(const Eigen::Ref<const Eigen::VectorXd>& x, const BasisUnit& unit) {
    check_dim(x.size(), unit.dim());
    return (unit.shape.array() * (x - unit.center).array().abs()).sum();
}

double eval_basis(const Eigen::Ref<const Eigen::VectorXd>& x, const BasisUnit& unit,
                  Family family) {
    if (!x.allFinite()) {
        throw DataError("non-finite input to basis function");
    }
    return activate(weighted_distance(x, unit), family);
}

Eigen::VectorXd feature_column(const Eigen::Ref<const Eigen::MatrixXd>& points,
                               const BasisUnit& unit, Family family) {
    check_dim(points.cols(), unit.dim());
    const Eigen::Index n = points.rows();
    Eigen::VectorXd distance = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < points.cols(); ++i) {
        distance.array() += unit.shape[i] * (points.col(i).array() - unit.center[i]).abs();
    }
    Eigen::VectorXd column(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        column[r] = activate(distance[r], family);
    }
    return column;
}

FeatureMatrix feature_matrix(const Eigen::Ref<const Eigen::MatrixXd>& points,
                             const LowRankKernel& kernel) {
    check_dim(points.cols(), kernel.dim());
    FeatureMatrix phi(points.rows(), kernel.size());
    for (Eigen::Index j = 0; j < kernel.size(); ++j) {
        phi.col(j) = feature_column(points, kernel.units[static_cast<std::size_t>(j)],
                                    kernel.family);
    }
    return phi;
}

Eigen::VectorXd feature_vector(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const LowRankKernel& kernel) {
    Eigen::VectorXd out(kernel.size());
    for (Eigen::Index j = 0; j < kernel.size(); ++j) {
        out[j] = eval_basis(x, kernel.units[static_cast<std::size_t>(j)], kernel.family);
    }
    return out;
}

double kernel_value(const Eigen::Ref<const Eigen::VectorXd>& x1,
                    const Eigen::Ref<const Eigen::VectorXd>& x2, const LowRankKernel& kernel) {
    double sum = 0.0;
    for (const auto& unit : kernel.units) {
        sum += eval_basis(x1, unit, kernel.family) * eval_basis(x2, unit, kernel.family);
    }
    return sum;
}

BasisPartials basis_grad(const Eigen::Ref<const Eigen::VectorXd>& x, const BasisUnit& unit,
                         Eigen::Index i, Family family) {
    check_dim(x.size(), unit.dim());
    if (i < 0 || i >= unit.dim()) {
        throw ConfigError("dimension index out of range");
    }
    const double diff = x[i] - unit.center[i];
    if (family == Family::RobustRbf) {
        const double phi = eval_basis(x, unit, family);
        return {-std::abs(diff) * phi, unit.shape[i] * sign_of(diff) * phi};
    }
    // SBF: derivative of 1 - s inside the support, zero outside and on the hinge.
    if (weighted_distance(x, unit) >= 1.0) {
        return {0.0, 0.0};
    }
    return {-std::abs(diff), unit.shape[i] * sign_of(diff)};
}

LocalLinearForm piecewise_decompose(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& theta, double bias,
                                    const LowRankKernel& kernel) {
    if (kernel.family != Family::Sbf) {
        throw ConfigError("piecewise linear decomposition requires the SBF family");
    }
    check_dim(x.size(), kernel.dim());
    if (theta.size() != kernel.size()) {
        throw DataError("theta length does not match kernel size");
    }
    LocalLinearForm form;
    form.alpha = Eigen::VectorXd::Zero(x.size());
    form.beta = bias;
    for (Eigen::Index j = 0; j < kernel.size(); ++j) {
        const auto& unit = kernel.units[static_cast<std::size_t>(j)];
        if (weighted_distance(x, unit) >= 1.0) {
            continue;
        }
        form.active.push_back(j);
        double offset = 1.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double s = sign_of(unit.center[i] - x[i]);
            form.alpha[i] += theta[j] * unit.shape[i] * s;
            offset -= unit.shape[i] * unit.center[i] * s;
        }
        form.beta += theta[j] * offset;
    }
    return form;
}

} // namespace lrlssvm
