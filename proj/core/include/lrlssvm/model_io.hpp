#pragma once

#include <filesystem>
#include <string>

#include "lrlssvm/solver.hpp"

namespace lrlssvm {

/// Units with |theta_j| below this are listed as inactive in model JSON.
inline constexpr double kInactiveTheta = 1e-8;

/// {family, M, D, centers[M][D], shapes[M][D], theta[M], b, inactive[], norm?}
/// Numbers are written in shortest round-trip form, so parsing the output
/// reproduces the model bit for bit.
std::string model_to_json(const SparseModel& model);

/// Throws DataError (with the parse position) on malformed documents.
SparseModel model_from_json(const std::string& text);

void save_model(const SparseModel& model, const std::filesystem::path& path);
SparseModel load_model(const std::filesystem::path& path);

} // namespace lrlssvm
