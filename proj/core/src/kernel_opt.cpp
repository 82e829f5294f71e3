#include "lrlssvm/kernel_opt.hpp"

#include <cmath>
#include <string>

#include "lrlssvm/error.hpp"

namespace lrlssvm {

namespace {

double sign_of(double v) noexcept { return static_cast<double>((v > 0.0) - (v < 0.0)); }

} // namespace

std::string_view to_string(Objective objective) noexcept {
    switch (objective) {
    case Objective::Abs:
        return "abs";
    case Objective::Target:
        return "target";
    case Objective::Square:
        return "square";
    }
    return "abs";
}

Objective parse_objective(std::string_view name) {
    if (name == "abs") {
        return Objective::Abs;
    }
    if (name == "target") {
        return Objective::Target;
    }
    if (name == "square") {
        return Objective::Square;
    }
    throw ConfigError("unknown objective '" + std::string(name) + "' (abs | square | target)");
}

double objective_from_outputs(const Eigen::Ref<const Eigen::VectorXd>& outputs,
                              const Eigen::Ref<const Eigen::VectorXd>& labels,
                              Objective objective) {
    switch (objective) {
    case Objective::Abs:
        return outputs.cwiseAbs().sum();
    case Objective::Target:
        return outputs.dot(labels);
    case Objective::Square:
        return outputs.squaredNorm();
    }
    return 0.0;
}

double objective_value(const Eigen::Ref<const FeatureMatrix>& phi, const DualSolution& solution,
                       const Eigen::Ref<const Eigen::VectorXd>& labels, Objective objective) {
    return objective_from_outputs(dual_outputs(phi, solution, labels), labels, objective);
}

UnitDerivatives basis_derivatives(const Eigen::Ref<const Eigen::MatrixXd>& points,
                                  const BasisUnit& unit, Family family) {
    const Eigen::Index n = points.rows();
    const Eigen::Index d = points.cols();
    if (d != unit.dim()) {
        throw DataError("dimension mismatch between points and basis unit");
    }
    const Eigen::VectorXd phi = feature_column(points, unit, family);

    UnitDerivatives out;
    out.d_shape.resize(n, d);
    out.d_center.resize(n, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const double diff = points(r, i) - unit.center[i];
            double factor = 0.0;
            if (family == Family::RobustRbf) {
                factor = phi[r];
            } else if (phi[r] > 0.0) {
                factor = 1.0; // inside the SBF support the unit is 1 - s
            }
            out.d_shape(r, i) = -std::abs(diff) * factor;
            out.d_center(r, i) = unit.shape[i] * sign_of(diff) * factor;
        }
    }
    return out;
}

UnitGradient unit_gradient(Eigen::Index j, const Eigen::Ref<const FeatureMatrix>& phi,
                           const UnitDerivatives& derivatives, const DualSolution& solution,
                           const Eigen::Ref<const Eigen::VectorXd>& labels,
                           const Eigen::Ref<const Eigen::VectorXd>& outputs, Objective objective) {
    const Eigen::Index n = phi.rows();
    if (j < 0 || j >= phi.cols()) {
        throw ConfigError("unit index out of range");
    }
    if (labels.size() != n || solution.a.size() != n || outputs.size() != n ||
        derivatives.d_shape.rows() != n || derivatives.d_center.rows() != n) {
        throw DataError("unit_gradient inputs disagree on N");
    }

    // Weight vector s in ds/dnu = (s.d)(phi_j.v) + (s.phi_j)(d.v).
    Eigen::VectorXd weights;
    switch (objective) {
    case Objective::Abs:
        weights = outputs.unaryExpr([](double y) { return sign_of(y); });
        break;
    case Objective::Target:
        weights = labels;
        break;
    case Objective::Square:
        weights = 2.0 * outputs;
        break;
    }

    const Eigen::VectorXd v = solution.a.cwiseProduct(labels);
    const auto phi_j = phi.col(j);
    const double phi_v = phi_j.dot(v);
    const double weights_phi = weights.dot(phi_j);

    UnitGradient g;
    g.d_shape = derivatives.d_shape.transpose() * weights * phi_v +
                derivatives.d_shape.transpose() * v * weights_phi;
    g.d_center = derivatives.d_center.transpose() * weights * phi_v +
                 derivatives.d_center.transpose() * v * weights_phi;
    return g;
}

UnitGradient unit_gradient(Eigen::Index j, const Eigen::Ref<const FeatureMatrix>& phi,
                           const UnitDerivatives& derivatives, const DualSolution& solution,
                           const Eigen::Ref<const Eigen::VectorXd>& labels, Objective objective) {
    return unit_gradient(j, phi, derivatives, solution, labels,
                         dual_outputs(phi, solution, labels), objective);
}

UnitGradient unit_gradient(Eigen::Index j, const Eigen::Ref<const Eigen::MatrixXd>& points,
                           const BasisUnit& unit, Family family,
                           const Eigen::Ref<const FeatureMatrix>& phi, const DualSolution& solution,
                           const Eigen::Ref<const Eigen::VectorXd>& labels,
                           const Eigen::Ref<const Eigen::VectorXd>& outputs, Objective objective) {
    const Eigen::Index n = phi.rows();
    const Eigen::Index d = points.cols();
    if (j < 0 || j >= phi.cols()) {
        throw ConfigError("unit index out of range");
    }
    if (d != unit.dim()) {
        throw DataError("dimension mismatch between points and basis unit");
    }
    if (points.rows() != n || labels.size() != n || solution.a.size() != n ||
        outputs.size() != n) {
        throw DataError("unit_gradient inputs disagree on N");
    }

    auto weight = [&](Eigen::Index r) {
        switch (objective) {
        case Objective::Abs:
            return sign_of(outputs[r]);
        case Objective::Target:
            return labels[r];
        case Objective::Square:
            break;
        }
        return 2.0 * outputs[r];
    };

    const auto phi_j = phi.col(j);
    double phi_v = 0.0;
    double weights_phi = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
        phi_v += phi_j[r] * solution.a[r] * labels[r];
        weights_phi += weight(r) * phi_j[r];
    }

    UnitGradient g;
    g.d_shape.resize(d);
    g.d_center.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double c = unit.center[i];
        double shape_w = 0.0;
        double shape_v = 0.0;
        double center_w = 0.0;
        double center_v = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
            double factor = phi_j[r];
            if (family == Family::Sbf) {
                factor = phi_j[r] > 0.0 ? 1.0 : 0.0;
            }
            if (factor == 0.0) {
                continue;
            }
            const double diff = points(r, i) - c;
            const double w = weight(r) * factor;
            const double v = solution.a[r] * labels[r] * factor;
            shape_w -= std::abs(diff) * w;
            shape_v -= std::abs(diff) * v;
            center_w += sign_of(diff) * w;
            center_v += sign_of(diff) * v;
        }
        g.d_shape[i] = shape_w * phi_v + shape_v * weights_phi;
        g.d_center[i] = unit.shape[i] * (center_w * phi_v + center_v * weights_phi);
    }
    return g;
}

BasisUnit gd_step(const BasisUnit& unit, const UnitGradient& gradient, double eta) {
    if (!(eta > 0.0)) {
        throw ConfigError("learning rate must be positive");
    }
    BasisUnit next = unit;
    const double center_norm = gradient.d_center.norm();
    if (center_norm >= kGradientNormFloor) {
        next.center += (eta / center_norm) * gradient.d_center;
    }
    const double shape_norm = gradient.d_shape.norm();
    if (shape_norm >= kGradientNormFloor) {
        next.shape += (eta / shape_norm) * gradient.d_shape;
        next.shape = next.shape.cwiseMax(0.0);
    }
    return next;
}

} // namespace lrlssvm
