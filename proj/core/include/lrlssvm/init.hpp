#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lrlssvm/basis.hpp"

namespace lrlssvm {

struct MedoidResult {
    std::vector<Eigen::Index> medoids; // distinct 0-based row indices
    std::vector<Eigen::Index> assignment; // slot of the medoid each row belongs to
    double cost = 0.0;         // sum of Euclidean distances to assigned medoids
    double initial_cost = 0.0; // cost of the seeded medoid set
    int sweeps = 0;
};

inline constexpr int kDefaultMaxSweeps = 100;

/// k-medoids under unsquared Euclidean distance.
///
/// Seeds M distinct rows uniformly, then alternates nearest-medoid assignment
/// with a per-cluster medoid update. When alternation stalls, a single best
/// improving medoid/non-medoid swap is applied (PAM swap phase, evaluated in
/// O(N^2) per pass) and alternation resumes. Medoid changes are accepted only
/// on strict improvement, so the cost is non-increasing and the loop cannot
/// cycle. Ties resolve to the lowest row index.
MedoidResult kmedoids(const Eigen::Ref<const Eigen::MatrixXd>& points, Eigen::Index num_medoids,
                      std::uint64_t seed, int max_sweeps = kDefaultMaxSweeps);

/// Centers at the k-medoids of `points`, every shape entry set to `mu0`.
LowRankKernel init_kernel(const Eigen::Ref<const Eigen::MatrixXd>& points, Family family,
                          Eigen::Index num_units, double mu0, std::uint64_t seed,
                          int max_sweeps = kDefaultMaxSweeps);

} // namespace lrlssvm
