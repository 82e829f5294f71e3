#include "lrlssvm/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lrlssvm/error.hpp"

namespace lrlssvm {

namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from(const json& j, Eigen::Index expected, const char* field) {
    const auto values = j.get<std::vector<double>>();
    if (static_cast<Eigen::Index>(values.size()) != expected) {
        throw DataError(std::string("model field '") + field + "' has " +
                        std::to_string(values.size()) + " entries, expected " +
                        std::to_string(expected));
    }
    return Eigen::Map<const Eigen::VectorXd>(values.data(), expected);
}

} // namespace

std::string model_to_json(const SparseModel& model) {
    json doc;
    doc["family"] = std::string(to_string(model.kernel.family));
    doc["M"] = model.kernel.size();
    doc["D"] = model.kernel.dim();
    json centers = json::array();
    json shapes = json::array();
    for (const auto& unit : model.kernel.units) {
        centers.push_back(vector_json(unit.center));
        shapes.push_back(vector_json(unit.shape));
    }
    doc["centers"] = std::move(centers);
    doc["shapes"] = std::move(shapes);
    doc["theta"] = vector_json(model.theta);
    doc["b"] = model.b;
    json inactive = json::array();
    for (Eigen::Index j = 0; j < model.theta.size(); ++j) {
        if (std::abs(model.theta[j]) < kInactiveTheta) {
            inactive.push_back(j);
        }
    }
    doc["inactive"] = std::move(inactive);
    if (model.norm) {
        doc["norm"] = {{"shift", vector_json(model.norm->shift)},
                       {"scale", vector_json(model.norm->scale)}};
    }
    return doc.dump(2) + "\n";
}

SparseModel model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError("malformed model JSON at byte " + std::to_string(e.byte) + ": " +
                        e.what());
    }
    SparseModel model;
    try {
        model.kernel.family = parse_family(doc.at("family").get<std::string>());
        const auto m = doc.at("M").get<Eigen::Index>();
        const auto d = doc.at("D").get<Eigen::Index>();
        if (m < 1 || d < 1) {
            throw DataError("model M and D must be positive");
        }
        const auto& centers = doc.at("centers");
        const auto& shapes = doc.at("shapes");
        if (!centers.is_array() || !shapes.is_array() ||
            static_cast<Eigen::Index>(centers.size()) != m ||
            static_cast<Eigen::Index>(shapes.size()) != m) {
            throw DataError("model centers/shapes must be arrays of M rows");
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            BasisUnit unit;
            unit.center = vector_from(centers[static_cast<std::size_t>(j)], d, "centers");
            unit.shape = vector_from(shapes[static_cast<std::size_t>(j)], d, "shapes");
            model.kernel.units.push_back(std::move(unit));
        }
        model.theta = vector_from(doc.at("theta"), m, "theta");
        model.b = doc.at("b").get<double>();
        if (doc.contains("norm")) {
            NormStats stats;
            stats.shift = vector_from(doc["norm"].at("shift"), d, "norm.shift");
            stats.scale = vector_from(doc["norm"].at("scale"), d, "norm.scale");
            if ((stats.scale.array() <= 0.0).any()) {
                throw DataError("model norm.scale entries must be positive");
            }
            model.norm = std::move(stats);
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid model JSON: ") + e.what());
    } catch (const ConfigError& e) {
        throw DataError(std::string("invalid model JSON: ") + e.what());
    }
    try {
        model.kernel.validate();
    } catch (const Error& e) {
        throw DataError(std::string("invalid model JSON: ") + e.what());
    }
    return model;
}

void save_model(const SparseModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << model_to_json(model);
}

SparseModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open model " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

} // namespace lrlssvm
