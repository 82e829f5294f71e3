#pragma once

#include <random>

#include "lrlssvm/basis.hpp"
#include "lrlssvm/dataset.hpp"

namespace bench {

inline lrlssvm::Dataset random_dataset(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    lrlssvm::Dataset data;
    data.features = Eigen::MatrixXd::NullaryExpr(n, d, [&] { return uni(rng); });
    data.labels.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        data.labels[r] = data.features(r, 0) + 0.3 * uni(rng) > 0.0 ? 1.0 : -1.0;
    }
    return data;
}

inline lrlssvm::LowRankKernel random_kernel(Eigen::Index m, Eigen::Index d, lrlssvm::Family family,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    lrlssvm::LowRankKernel k{family, {}};
    for (Eigen::Index j = 0; j < m; ++j) {
        k.units.push_back({Eigen::VectorXd::NullaryExpr(d, [&] { return uni(rng); }),
                           Eigen::VectorXd::Constant(d, 0.5)});
    }
    return k;
}

} // namespace bench
