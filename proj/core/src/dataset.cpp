#include "lrlssvm/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "lrlssvm/error.hpp"
#include "lrlssvm/format.hpp"

namespace lrlssvm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_number(std::string_view cell, double& out) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    if (cell.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    return ec == std::errc{} && ptr == cell.data() + cell.size();
}

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

void Dataset::validate() const {
    if (features.rows() < 1 || features.cols() < 1) {
        throw DataError("dataset must have at least one row and one feature");
    }
    if (labels.size() != features.rows()) {
        throw DataError("label count does not match row count");
    }
    for (Eigen::Index n = 0; n < labels.size(); ++n) {
        if (labels[n] != 1.0 && labels[n] != -1.0) {
            throw DataError("label at row " + std::to_string(n + 1) + " is not -1 or +1");
        }
    }
    if (!features.allFinite()) {
        throw DataError("dataset contains non-finite feature values");
    }
}

Dataset parse_csv(const std::string& text, const CsvOptions& options, const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::vector<double> labels;
    std::size_t columns = 0;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && options.header) {
            continue;
        }
        if (trim(line).empty()) {
            continue;
        }
        std::vector<double> values;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            const auto cell = rest.substr(0, comma);
            double value = 0.0;
            if (!parse_number(cell, value)) {
                throw DataError(where(source, line_no) + "non-numeric cell '" +
                                std::string(trim(cell)) + "'");
            }
            values.push_back(value);
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (values.size() < 2) {
            throw DataError(where(source, line_no) + "need at least one feature and a label");
        }
        if (columns == 0) {
            columns = values.size();
        } else if (values.size() != columns) {
            throw DataError(where(source, line_no) + "expected " + std::to_string(columns) +
                            " columns, found " + std::to_string(values.size()));
        }
        double label = values.back();
        values.pop_back();
        if (options.labels == LabelConvention::ZeroOne) {
            if (label != 0.0 && label != 1.0) {
                throw DataError(where(source, line_no) + "label must be 0 or 1");
            }
            label = label == 1.0 ? 1.0 : -1.0;
        } else if (label != 1.0 && label != -1.0) {
            throw DataError(where(source, line_no) + "label must be -1 or +1");
        }
        for (double v : values) {
            if (!std::isfinite(v)) {
                throw DataError(where(source, line_no) + "non-finite feature value");
            }
        }
        rows.push_back(std::move(values));
        labels.push_back(label);
    }
    if (rows.empty()) {
        throw DataError(source + ": no data rows");
    }

    Dataset data;
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = static_cast<Eigen::Index>(columns - 1);
    data.features.resize(n, d);
    data.labels.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            data.features(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        data.labels[r] = labels[static_cast<std::size_t>(r)];
    }
    return data;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    return parse_csv(read_file(path), options, path.string());
}

std::string format_csv(const Dataset& data) {
    std::string out;
    for (Eigen::Index n = 0; n < data.size(); ++n) {
        for (Eigen::Index i = 0; i < data.dim(); ++i) {
            out += format_roundtrip(data.features(n, i));
            out += ',';
        }
        out += data.labels[n] > 0.0 ? "1" : "-1";
        out += '\n';
    }
    return out;
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    out << format_csv(data);
    if (!out) {
        throw DataError("write failed for " + path.string());
    }
}

BenchmarkSuite load_benchmark_suite(const std::filesystem::path& dir, const CsvOptions& options) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw DataError("benchmark suite directory not found: " + dir.string());
    }
    static const std::regex pattern(R"((train|test)_([0-9]+)\.csv)");
    std::map<int, int> seen; // index -> bitmask (1 = train, 2 = test)
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        const std::string name = entry.path().filename().string();
        std::smatch match;
        if (std::regex_match(name, match, pattern)) {
            const int index = std::stoi(match[2].str());
            seen[index] |= match[1].str() == "train" ? 1 : 2;
        }
    }
    if (seen.empty()) {
        throw DataError("no train_<k>.csv / test_<k>.csv files in " + dir.string());
    }

    BenchmarkSuite suite;
    suite.name = fs::absolute(dir).lexically_normal().filename().string();
    if (suite.name.empty()) {
        suite.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    }
    const int count = seen.rbegin()->first;
    for (int k = 1; k <= count; ++k) {
        const auto it = seen.find(k);
        const int mask = it == seen.end() ? 0 : it->second;
        if ((mask & 1) == 0) {
            throw DataError("missing pair member train_" + std::to_string(k) + ".csv in " +
                            dir.string());
        }
        if ((mask & 2) == 0) {
            throw DataError("missing pair member test_" + std::to_string(k) + ".csv in " +
                            dir.string());
        }
        Realization r;
        r.train = load_csv(dir / ("train_" + std::to_string(k) + ".csv"), options);
        r.test = load_csv(dir / ("test_" + std::to_string(k) + ".csv"), options);
        const Eigen::Index d = suite.realizations.empty() ? r.train.dim()
                                                          : suite.realizations.front().train.dim();
        if (r.train.dim() != d || r.test.dim() != d) {
            throw DataError("realization " + std::to_string(k) +
                            " has a different input dimension than realization 1");
        }
        suite.realizations.push_back(std::move(r));
    }
    return suite;
}

NormStats fit_normalizer(const Dataset& data) {
    const auto n = static_cast<double>(data.size());
    NormStats stats;
    stats.shift = data.features.colwise().mean().transpose();
    stats.scale.resize(data.dim());
    for (Eigen::Index i = 0; i < data.dim(); ++i) {
        const double var =
            (data.features.col(i).array() - stats.shift[i]).square().sum() / n;
        stats.scale[i] = std::max(std::sqrt(var), kMinScale);
    }
    return stats;
}

Dataset apply_normalizer(const Dataset& data, const NormStats& stats) {
    if (stats.shift.size() != data.dim() || stats.scale.size() != data.dim()) {
        throw DataError("normalizer dimension " + std::to_string(stats.shift.size()) +
                        " does not match dataset dimension " + std::to_string(data.dim()));
    }
    Dataset out;
    out.labels = data.labels;
    out.features = (data.features.rowwise() - stats.shift.transpose()).array().rowwise() /
                   stats.scale.transpose().array();
    return out;
}

Eigen::VectorXd apply_normalizer(const Eigen::VectorXd& x, const NormStats& stats) {
    if (stats.shift.size() != x.size() || stats.scale.size() != x.size()) {
        throw DataError("normalizer dimension does not match input dimension");
    }
    return (x - stats.shift).cwiseQuotient(stats.scale);
}

// -- mixture generator ---------------------------------------------------------

void MixtureSpec::validate() const {
    if (classes.size() != 2) {
        throw ConfigError("mixture spec needs exactly two classes");
    }
    double total = 0.0;
    for (const auto& c : classes) {
        if (c.weights.empty() || c.weights.size() != c.centers.size()) {
            throw ConfigError("each class needs one weight per component center");
        }
        if (!(c.variance > 0.0) || !std::isfinite(c.variance)) {
            throw ConfigError("mixture variance must be positive");
        }
        for (std::size_t k = 0; k < c.weights.size(); ++k) {
            if (!(c.weights[k] >= 0.0)) {
                throw ConfigError("mixture weights must be non-negative");
            }
            if (c.centers[k].size() != 2) {
                throw ConfigError("mixture centers must be two-dimensional");
            }
            total += c.weights[k];
        }
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ConfigError("mixture weights sum to " + format_roundtrip(total) + ", expected 1");
    }
}

MixtureSpec ripley_mixture() {
    MixtureSpec spec;
    spec.classes.push_back({{0.25, 0.25}, {{-0.3, 0.7}, {0.4, 0.7}}, 0.03});
    spec.classes.push_back({{0.25, 0.25}, {{-0.7, 0.3}, {0.3, 0.3}}, 0.03});
    return spec;
}

MixtureSpec parse_mixture_json(const std::string& json_text) {
    using nlohmann::json;
    MixtureSpec spec;
    try {
        const json doc = json::parse(json_text);
        for (const auto& c : doc.at("classes")) {
            MixtureClass mc;
            mc.weights = c.at("weight_per_component").get<std::vector<double>>();
            mc.centers = c.at("centers").get<std::vector<std::vector<double>>>();
            mc.variance = c.at("variance").get<double>();
            spec.classes.push_back(std::move(mc));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid mixture spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string mixture_to_json(const MixtureSpec& spec) {
    nlohmann::json doc;
    doc["classes"] = nlohmann::json::array();
    for (const auto& c : spec.classes) {
        doc["classes"].push_back({{"weight_per_component", c.weights},
                                  {"centers", c.centers},
                                  {"variance", c.variance}});
    }
    return doc.dump(2);
}

namespace {

Dataset sample_mixture(std::mt19937_64& rng, Eigen::Index count, const MixtureSpec& spec) {
    struct Component {
        double label;
        double cx;
        double cy;
        double sd;
    };
    std::vector<Component> components;
    std::vector<double> weights;
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        const auto& mc = spec.classes[c];
        for (std::size_t k = 0; k < mc.weights.size(); ++k) {
            components.push_back({c == 0 ? -1.0 : 1.0, mc.centers[k][0], mc.centers[k][1],
                                  std::sqrt(mc.variance)});
            weights.push_back(mc.weights[k]);
        }
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::normal_distribution<double> normal(0.0, 1.0);

    Dataset data;
    data.features.resize(count, 2);
    data.labels.resize(count);
    for (Eigen::Index n = 0; n < count; ++n) {
        const auto& comp = components[pick(rng)];
        data.features(n, 0) = comp.cx + comp.sd * normal(rng);
        data.features(n, 1) = comp.cy + comp.sd * normal(rng);
        data.labels[n] = comp.label;
    }
    return data;
}

} // namespace

std::pair<Dataset, Dataset> generate_two_class_mixture(std::uint64_t seed, Eigen::Index n_train,
                                                       Eigen::Index n_test,
                                                       const MixtureSpec& spec) {
    spec.validate();
    if (n_train < 1 || n_test < 1) {
        throw ConfigError("sample counts must be positive");
    }
    std::mt19937_64 rng(seed);
    Dataset train = sample_mixture(rng, n_train, spec);
    Dataset test = sample_mixture(rng, n_test, spec);
    return {std::move(train), std::move(test)};
}

} // namespace lrlssvm
