#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracle {

std::vector<double> gauss_solve(Matrix a, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (a[pivot][col] == 0.0) {
            throw std::runtime_error("oracle: singular system");
        }
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double sum = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) {
            sum -= a[k][c] * x[c];
        }
        x[k] = sum / a[k][k];
    }
    return x;
}

std::vector<double> saddle_solve(const Eigen::MatrixXd& phi, const Eigen::VectorXd& labels,
                                 double gamma) {
    const auto n = static_cast<std::size_t>(phi.rows());
    Matrix a(n + 1, std::vector<double>(n + 1, 0.0));
    std::vector<double> rhs(n + 1, 1.0);
    rhs[0] = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        a[0][r + 1] = labels[static_cast<Eigen::Index>(r)];
        a[r + 1][0] = labels[static_cast<Eigen::Index>(r)];
        for (std::size_t c = 0; c < n; ++c) {
            double k = 0.0;
            for (Eigen::Index j = 0; j < phi.cols(); ++j) {
                k += phi(static_cast<Eigen::Index>(r), j) * phi(static_cast<Eigen::Index>(c), j);
            }
            a[r + 1][c + 1] = labels[static_cast<Eigen::Index>(r)] *
                              labels[static_cast<Eigen::Index>(c)] * k;
        }
        a[r + 1][r + 1] += 1.0 / gamma;
    }
    return gauss_solve(std::move(a), std::move(rhs));
}

double basis_value(const double* x, const double* center, const double* shape, int dim,
                   lrlssvm::Family family) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
        s += shape[i] * std::fabs(x[i] - center[i]);
    }
    if (family == lrlssvm::Family::Sbf) {
        return s < 1.0 ? 1.0 - s : 0.0;
    }
    return std::exp(-s);
}

Eigen::MatrixXd features(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel) {
    const Eigen::Index n = points.rows();
    const int d = static_cast<int>(points.cols());
    Eigen::MatrixXd phi(n, kernel.size());
    std::vector<double> row(static_cast<std::size_t>(d));
    for (Eigen::Index r = 0; r < n; ++r) {
        for (int i = 0; i < d; ++i) {
            row[static_cast<std::size_t>(i)] = points(r, i);
        }
        for (Eigen::Index j = 0; j < kernel.size(); ++j) {
            const auto& u = kernel.units[static_cast<std::size_t>(j)];
            phi(r, j) = basis_value(row.data(), u.center.data(), u.shape.data(), d,
                                    kernel.family);
        }
    }
    return phi;
}

namespace {

double sgn(double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); }

Eigen::VectorXd outputs_dense(const Eigen::MatrixXd& phi, const Eigen::VectorXd& a, double b,
                              const Eigen::VectorXd& labels) {
    const Eigen::MatrixXd k = phi * phi.transpose();
    Eigen::VectorXd y = k * a.cwiseProduct(labels);
    y.array() += b;
    return y;
}

} // namespace

double objective_dense(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel,
                       const Eigen::VectorXd& a, double b, const Eigen::VectorXd& labels,
                       lrlssvm::Objective objective) {
    const Eigen::VectorXd y = outputs_dense(features(points, kernel), a, b, labels);
    double sum = 0.0;
    for (Eigen::Index n = 0; n < y.size(); ++n) {
        switch (objective) {
        case lrlssvm::Objective::Abs:
            sum += std::fabs(y[n]);
            break;
        case lrlssvm::Objective::Target:
            sum += labels[n] * y[n];
            break;
        case lrlssvm::Objective::Square:
            sum += y[n] * y[n];
            break;
        }
    }
    return sum;
}

double finite_difference(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel,
                         std::size_t unit, Block block, int coordinate, const Eigen::VectorXd& a,
                         double b, const Eigen::VectorXd& labels, lrlssvm::Objective objective,
                         double h) {
    auto shifted = [&](double delta) {
        lrlssvm::LowRankKernel k = kernel;
        auto& u = k.units[unit];
        (block == Block::Center ? u.center : u.shape)[coordinate] += delta;
        return objective_dense(points, k, a, b, labels, objective);
    };
    return (shifted(h) - shifted(-h)) / (2.0 * h);
}

double dense_gradient(const Eigen::MatrixXd& points, const lrlssvm::LowRankKernel& kernel,
                      std::size_t unit, Block block, int coordinate, const Eigen::VectorXd& a,
                      double b, const Eigen::VectorXd& labels, lrlssvm::Objective objective) {
    // Extended precision so the reference is not limited by the cancellation
    // in K v when a is large.
    using Real = long double;
    using MatrixL = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorL = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    const Eigen::Index n = points.rows();
    const MatrixL phi = features(points, kernel).cast<Real>();
    const auto& u = kernel.units[unit];
    const auto col = static_cast<Eigen::Index>(unit);

    // d phi_j(x_n) / d nu from the closed-form partials.
    VectorL d(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Real diff = static_cast<Real>(points(r, coordinate)) - u.center[coordinate];
        Real factor = phi(r, col);
        if (kernel.family == lrlssvm::Family::Sbf) {
            factor = phi(r, col) > 0 ? 1 : 0;
        }
        d[r] = block == Block::Shape ? -std::fabs(diff) * factor
                                     : static_cast<Real>(u.shape[coordinate]) * sgn(static_cast<double>(diff)) * factor;
    }
    const MatrixL k = phi * phi.transpose();
    const MatrixL dk = d * phi.col(col).transpose() + phi.col(col) * d.transpose();
    const VectorL v = a.cast<Real>().cwiseProduct(labels.cast<Real>());
    const Real bl = b;
    switch (objective) {
    case lrlssvm::Objective::Abs: {
        VectorL y = k * v;
        y.array() += bl;
        const VectorL s = y.unaryExpr([](Real t) { return static_cast<Real>(sgn(static_cast<double>(t))); });
        return static_cast<double>(s.dot(dk * v));
    }
    case lrlssvm::Objective::Target:
        return static_cast<double>(labels.cast<Real>().dot(dk * v));
    case lrlssvm::Objective::Square: {
        const MatrixL sym = k * dk + dk * k;
        return static_cast<double>(v.dot(sym * v) + 2 * bl * v.dot(dk * VectorL::Ones(n)));
    }
    }
    return 0.0;
}

double medoid_cost(const Eigen::MatrixXd& points, const std::vector<Eigen::Index>& medoids) {
    double cost = 0.0;
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto m : medoids) {
            best = std::min(best, (points.row(r) - points.row(m)).norm());
        }
        cost += best;
    }
    return cost;
}

std::vector<Eigen::Index> best_medoids(const Eigen::MatrixXd& points, int m) {
    const auto n = static_cast<int>(points.rows());
    std::vector<int> mask(static_cast<std::size_t>(n), 0);
    std::fill(mask.begin(), mask.begin() + m, 1);
    std::vector<Eigen::Index> best;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        std::vector<Eigen::Index> pick;
        for (int r = 0; r < n; ++r) {
            if (mask[static_cast<std::size_t>(r)] != 0) {
                pick.push_back(r);
            }
        }
        const double c = medoid_cost(points, pick);
        if (c < best_cost) {
            best_cost = c;
            best = pick;
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return best;
}

bool linearly_separable_2d(const lrlssvm::Dataset& data) {
    constexpr int kDirections = 7200;
    for (int k = 0; k < kDirections; ++k) {
        const double angle = std::numbers::pi * 2.0 * k / kDirections;
        const double wx = std::cos(angle);
        const double wy = std::sin(angle);
        double neg_max = -std::numeric_limits<double>::infinity();
        double pos_min = std::numeric_limits<double>::infinity();
        for (Eigen::Index r = 0; r < data.size(); ++r) {
            const double p = wx * data.features(r, 0) + wy * data.features(r, 1);
            if (data.labels[r] > 0) {
                pos_min = std::min(pos_min, p);
            } else {
                neg_max = std::max(neg_max, p);
            }
        }
        if (neg_max < pos_min) {
            return true;
        }
    }
    return false;
}

RandomInstance random_instance(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m,
                               Eigen::Index d, lrlssvm::Family family, double gamma,
                               double shape_lo, double shape_hi) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> shape(shape_lo, shape_hi);
    RandomInstance inst;
    inst.gamma = gamma;
    inst.points.resize(n, d);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index i = 0; i < d; ++i) {
            inst.points(r, i) = unit(rng);
        }
    }
    inst.labels.resize(n);
    std::bernoulli_distribution coin(0.5);
    for (Eigen::Index r = 0; r < n; ++r) {
        inst.labels[r] = coin(rng) ? 1.0 : -1.0;
    }
    if (n >= 2) {
        inst.labels[0] = 1.0;
        inst.labels[1] = -1.0;
    }
    inst.kernel.family = family;
    for (Eigen::Index j = 0; j < m; ++j) {
        lrlssvm::BasisUnit u;
        u.center.resize(d);
        u.shape.resize(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            u.center[i] = unit(rng);
            u.shape[i] = shape(rng);
        }
        inst.kernel.units.push_back(std::move(u));
    }
    return inst;
}

} // namespace oracle
