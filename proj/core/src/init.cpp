#include "lrlssvm/init.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "lrlssvm/error.hpp"

namespace lrlssvm {

namespace {

/// Row-major copy of the points with on-the-fly Euclidean distances; the
/// N x N distance matrix is never stored.
class PointSet {
public:
    explicit PointSet(const Eigen::Ref<const Eigen::MatrixXd>& points)
        : n_(points.rows()), d_(points.cols()), rows_(points) {}

    [[nodiscard]] Eigen::Index size() const noexcept { return n_; }

    [[nodiscard]] double distance(Eigen::Index a, Eigen::Index b) const {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < d_; ++i) {
            const double diff = rows_(a, i) - rows_(b, i);
            sum += diff * diff;
        }
        return std::sqrt(sum);
    }

private:
    Eigen::Index n_;
    Eigen::Index d_;
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows_;
};

class MedoidState {
public:
    MedoidState(const PointSet& points, std::vector<Eigen::Index> medoids)
        : points_(points), medoids_(std::move(medoids)),
          assignment_(static_cast<std::size_t>(points.size())),
          nearest_(static_cast<std::size_t>(points.size())),
          second_(static_cast<std::size_t>(points.size())) {
        assign();
    }

    /// Nearest-medoid assignment. A medoid always keeps itself; other ties go
    /// to the medoid with the lowest row index.
    void assign() {
        const Eigen::Index n = points_.size();
        const auto m = medoids_.size();
        std::vector<Eigen::Index> slot_of(static_cast<std::size_t>(n), -1);
        for (std::size_t s = 0; s < m; ++s) {
            slot_of[static_cast<std::size_t>(medoids_[s])] = static_cast<Eigen::Index>(s);
        }
        cost_ = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            const auto pi = static_cast<std::size_t>(p);
            double best = std::numeric_limits<double>::infinity();
            double runner_up = std::numeric_limits<double>::infinity();
            std::size_t best_slot = 0;
            for (std::size_t s = 0; s < m; ++s) {
                const double dist = points_.distance(p, medoids_[s]);
                const bool better =
                    dist < best || (dist == best && medoids_[s] < medoids_[best_slot]);
                if (better) {
                    runner_up = best;
                    best = dist;
                    best_slot = s;
                } else if (dist < runner_up) {
                    runner_up = dist;
                }
            }
            if (slot_of[pi] >= 0 && static_cast<std::size_t>(slot_of[pi]) != best_slot) {
                // Duplicate of another medoid: it stays in its own cluster.
                runner_up = best;
                best = 0.0;
                best_slot = static_cast<std::size_t>(slot_of[pi]);
            }
            assignment_[pi] = static_cast<Eigen::Index>(best_slot);
            nearest_[pi] = best;
            second_[pi] = runner_up;
            cost_ += best;
        }
    }

    /// Within each cluster, move the medoid to the member with the smallest
    /// summed distance if that is a strict improvement. Returns true on change.
    bool update_medoids(double tolerance) {
        bool changed = false;
        const Eigen::Index n = points_.size();
        for (std::size_t s = 0; s < medoids_.size(); ++s) {
            std::vector<Eigen::Index> members;
            for (Eigen::Index p = 0; p < n; ++p) {
                if (assignment_[static_cast<std::size_t>(p)] == static_cast<Eigen::Index>(s)) {
                    members.push_back(p);
                }
            }
            const Eigen::Index current = medoids_[s];
            const double current_sum = summed_distance(current, members,
                                                       std::numeric_limits<double>::infinity());
            double best_sum = current_sum - tolerance;
            Eigen::Index best = current;
            for (const Eigen::Index candidate : members) {
                if (candidate == current) {
                    continue;
                }
                const double sum = summed_distance(candidate, members, best_sum);
                if (sum < best_sum) {
                    best_sum = sum;
                    best = candidate;
                }
            }
            if (best != current) {
                medoids_[s] = best;
                changed = true;
            }
        }
        return changed;
    }

    /// Applies the single best strictly improving medoid/non-medoid swap.
    /// Each candidate is scored for every slot at once from the cached nearest
    /// and second-nearest distances. Returns false when no swap improves.
    bool best_swap(double tolerance) {
        const Eigen::Index n = points_.size();
        const auto m = medoids_.size();
        std::vector<char> is_medoid(static_cast<std::size_t>(n), 0);
        for (const auto med : medoids_) {
            is_medoid[static_cast<std::size_t>(med)] = 1;
        }
        double best_delta = -tolerance;
        std::size_t best_slot = 0;
        Eigen::Index best_candidate = -1;
        std::vector<double> loss(m);
        for (Eigen::Index c = 0; c < n; ++c) {
            if (is_medoid[static_cast<std::size_t>(c)] != 0) {
                continue;
            }
            double shared = 0.0;
            std::fill(loss.begin(), loss.end(), 0.0);
            for (Eigen::Index o = 0; o < n; ++o) {
                const auto oi = static_cast<std::size_t>(o);
                const double dc = points_.distance(c, o);
                if (dc < nearest_[oi]) {
                    shared += dc - nearest_[oi];
                } else {
                    loss[static_cast<std::size_t>(assignment_[oi])] +=
                        std::min(dc, second_[oi]) - nearest_[oi];
                }
            }
            for (std::size_t s = 0; s < m; ++s) {
                const double delta = shared + loss[s];
                if (delta < best_delta) {
                    best_delta = delta;
                    best_slot = s;
                    best_candidate = c;
                }
            }
        }
        if (best_candidate < 0) {
            return false;
        }
        medoids_[best_slot] = best_candidate;
        return true;
    }

    [[nodiscard]] double cost() const noexcept { return cost_; }
    [[nodiscard]] const std::vector<Eigen::Index>& medoids() const noexcept { return medoids_; }
    [[nodiscard]] const std::vector<Eigen::Index>& assignment() const noexcept {
        return assignment_;
    }

private:
    double summed_distance(Eigen::Index center, const std::vector<Eigen::Index>& members,
                           double give_up_above) const {
        double sum = 0.0;
        for (const Eigen::Index p : members) {
            sum += points_.distance(center, p);
            if (sum > give_up_above) {
                break;
            }
        }
        return sum;
    }

    const PointSet& points_;
    std::vector<Eigen::Index> medoids_;
    std::vector<Eigen::Index> assignment_;
    std::vector<double> nearest_;
    std::vector<double> second_;
    double cost_ = 0.0;
};

} // namespace

MedoidResult kmedoids(const Eigen::Ref<const Eigen::MatrixXd>& points, Eigen::Index num_medoids,
                      std::uint64_t seed, int max_sweeps) {
    const Eigen::Index n = points.rows();
    if (num_medoids < 1) {
        throw ConfigError("number of medoids must be at least 1");
    }
    if (num_medoids > n) {
        throw ConfigError("number of medoids (" + std::to_string(num_medoids) +
                          ") exceeds number of points (" + std::to_string(n) + ")");
    }
    if (max_sweeps < 1) {
        throw ConfigError("max_sweeps must be at least 1");
    }
    if (!points.allFinite()) {
        throw DataError("k-medoids input contains non-finite values");
    }

    // Partial Fisher-Yates: M distinct indices, uniform.
    std::mt19937_64 rng(seed);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    for (Eigen::Index k = 0; k < num_medoids; ++k) {
        std::uniform_int_distribution<Eigen::Index> pick(k, n - 1);
        std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick(rng))]);
    }
    order.resize(static_cast<std::size_t>(num_medoids));

    const PointSet set(points);
    MedoidState state(set, std::move(order));

    MedoidResult result;
    result.initial_cost = state.cost();
    int sweeps = 0;
    while (sweeps < max_sweeps) {
        ++sweeps;
        const double tolerance = 1e-12 * std::max(1.0, state.cost());
        if (state.update_medoids(tolerance)) {
            state.assign();
            continue;
        }
        if (!state.best_swap(tolerance)) {
            break;
        }
        state.assign();
    }
    result.medoids = state.medoids();
    result.assignment = state.assignment();
    result.cost = state.cost();
    result.sweeps = sweeps;
    return result;
}

LowRankKernel init_kernel(const Eigen::Ref<const Eigen::MatrixXd>& points, Family family,
                          Eigen::Index num_units, double mu0, std::uint64_t seed,
                          int max_sweeps) {
    if (!(mu0 >= 0.0) || !std::isfinite(mu0)) {
        throw ConfigError("initial shape mu0 must be a finite non-negative number");
    }
    const MedoidResult medoids = kmedoids(points, num_units, seed, max_sweeps);
    LowRankKernel kernel;
    kernel.family = family;
    for (const Eigen::Index row : medoids.medoids) {
        BasisUnit unit;
        unit.center = points.row(row).transpose();
        unit.shape = Eigen::VectorXd::Constant(points.cols(), mu0);
        kernel.units.push_back(std::move(unit));
    }
    return kernel;
}

} // namespace lrlssvm
