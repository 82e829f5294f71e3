#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrlssvm/lrlssvm.hpp"

namespace lrlssvm::cli {

namespace {

namespace fs = std::filesystem;

struct CsvFlags {
    bool header = false;
    std::string labels = "signed";

    void add_to(CLI::App& cmd) {
        cmd.add_flag("--header", header, "Skip the first line of CSV inputs");
        cmd.add_option("--labels", labels, "Label convention of CSV inputs")
            ->check(CLI::IsMember({"signed", "zero_one"}));
    }

    [[nodiscard]] CsvOptions options() const {
        return {labels == "zero_one" ? LabelConvention::ZeroOne : LabelConvention::Signed,
                header};
    }
};

struct TrainFlags {
    long long units = 3;
    std::string family = "robust-rbf";
    double mu0 = 0.2;
    double gamma = 150.0;
    double eta = 0.0008;
    int iterations = 100;
    std::string objective = "abs";
    std::uint64_t seed = 1;
    bool normalize = false;
    bool no_refresh = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--family", family, "Basis family")
            ->check(CLI::IsMember({"sbf", "robust-rbf"}));
        cmd.add_option("--M", units, "Model size (number of basis units)");
        cmd.add_option("--mu0", mu0, "Initial shape parameter");
        cmd.add_option("--gamma", gamma, "Regularization parameter");
        cmd.add_option("--eta", eta, "Learning rate of the normalized gradient step");
        cmd.add_option("--iters", iterations, "Number of alternating iterations T");
        cmd.add_option("--objective", objective, "Kernel adaptation objective")
            ->check(CLI::IsMember({"abs", "square", "target"}));
        cmd.add_option("--seed", seed, "Seed of the k-medoids initialization");
        cmd.add_flag("--normalize", normalize, "Standardize inputs with training statistics");
        cmd.add_flag("--no-refresh", no_refresh,
                     "Hold model outputs fixed across the unit updates of one sweep");
    }

    [[nodiscard]] TrainConfig config() const {
        TrainConfig cfg;
        cfg.num_units = static_cast<Eigen::Index>(units);
        cfg.family = parse_family(family);
        cfg.mu0 = mu0;
        cfg.gamma = gamma;
        cfg.eta = eta;
        cfg.iterations = iterations;
        cfg.objective = parse_objective(objective);
        cfg.seed = seed;
        cfg.normalize = normalize;
        cfg.refresh_within_sweep = !no_refresh;
        cfg.validate();
        return cfg;
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw DataError("cannot write " + path.string());
    }
    file << text;
    if (!file) {
        throw DataError("write failed for " + path.string());
    }
}

std::string read_text(const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw DataError("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

RealizationRange parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int k = std::stoi(text);
            return {k, k};
        }
        std::size_t used = 0;
        const int first = std::stoi(text.substr(0, dots), &used);
        if (used != dots) {
            throw std::invalid_argument(text);
        }
        const std::string tail = text.substr(dots + 2);
        const int last = std::stoi(tail, &used);
        if (used != tail.size()) {
            throw std::invalid_argument(text);
        }
        return {first, last};
    } catch (const std::logic_error&) {
        throw ConfigError("--range expects a..b, got '" + text + "'");
    }
}

int cmd_train(const std::string& data_path, const std::string& out_path, const CsvFlags& csv,
              const TrainFlags& flags, std::ostream& out) {
    const TrainConfig cfg = flags.config();
    const Dataset train = load_csv(data_path, csv.options());
    const FitResult result = fit(train, cfg);
    save_model(result.model, out_path);
    write_text(out_path + ".history.csv", history_to_csv(result.history));
    const Metrics metrics = evaluate(result.model, train);
    out << "trained " << to_string(cfg.family) << " model, M=" << cfg.num_units
        << ", training error " << round_significant(100.0 * metrics.misclassification_rate, 4)
        << "%\n";
    return kOk;
}

int cmd_eval(const std::string& model_path, const std::string& data_path, const CsvFlags& csv,
             std::ostream& out) {
    const SparseModel model = load_model(model_path);
    const Dataset data = load_csv(data_path, csv.options());
    if (data.dim() != model.dim()) {
        throw DataError("data has " + std::to_string(data.dim()) + " features, model expects " +
                        std::to_string(model.dim()));
    }
    const Metrics m = evaluate(model, data);
    nlohmann::json doc = {
        {"misclassification_rate_pct", round_significant(100.0 * m.misclassification_rate, 4)},
        {"n_errors", m.n_errors},
        {"n_total", m.n_total}};
    out << doc.dump() << "\n";
    return kOk;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path, const CsvFlags& csv) {
    const SparseModel model = load_model(model_path);
    const Dataset data = load_csv(data_path, csv.options());
    if (data.dim() != model.dim()) {
        throw DataError("data has " + std::to_string(data.dim()) + " features, model expects " +
                        std::to_string(model.dim()));
    }
    const Eigen::VectorXd scores = predict_scores(model, data.features);
    std::string text = "score,label\n";
    for (Eigen::Index n = 0; n < scores.size(); ++n) {
        text += format_roundtrip(scores[n]);
        text += label_of(scores[n]) > 0.0 ? ",1\n" : ",-1\n";
    }
    write_text(out_path, text);
    return kOk;
}

int cmd_benchmark(const std::string& suite_dir, const std::optional<std::string>& range_text,
                  int jobs, const std::optional<std::string>& out_path, const CsvFlags& csv,
                  const TrainFlags& flags, std::ostream& out) {
    const TrainConfig cfg = flags.config();
    std::optional<RealizationRange> range;
    if (range_text) {
        range = parse_range(*range_text);
    }
    if (jobs < 1) {
        throw ConfigError("--jobs must be at least 1");
    }
    const BenchmarkSuite suite = load_benchmark_suite(suite_dir, csv.options());
    const BenchmarkReport report = run_benchmark(suite, cfg, range, jobs);
    const std::string json = report_to_json(report);
    if (out_path) {
        write_text(*out_path, json);
    } else {
        out << json;
    }
    return report.results.empty() ? kNumericalError : kOk;
}

int cmd_grid(const std::string& model_path, double xmin, double xmax, double ymin, double ymax,
             int steps, const std::optional<std::string>& out_path, std::ostream& out) {
    if (steps < 1) {
        throw ConfigError("--steps must be at least 1");
    }
    const SparseModel model = load_model(model_path);
    if (model.dim() != 2) {
        throw ConfigError("grid export needs a two-dimensional model, got D=" +
                          std::to_string(model.dim()));
    }
    std::string text = "x1,x2,score\n";
    Eigen::VectorXd x(2);
    for (int iy = 0; iy <= steps; ++iy) {
        x[1] = ymin + (ymax - ymin) * static_cast<double>(iy) / static_cast<double>(steps);
        for (int ix = 0; ix <= steps; ++ix) {
            x[0] = xmin + (xmax - xmin) * static_cast<double>(ix) / static_cast<double>(steps);
            text += format_roundtrip(x[0]) + "," + format_roundtrip(x[1]) + "," +
                    format_roundtrip(predict_score(model, x)) + "\n";
        }
    }
    if (out_path) {
        write_text(*out_path, text);
    } else {
        out << text;
    }
    return kOk;
}

int cmd_synth(std::uint64_t seed, long long n_train, long long n_test,
              const std::optional<std::string>& params_path, const std::string& out_dir,
              std::ostream& out) {
    MixtureSpec spec;
    if (params_path) {
        std::string text;
        try {
            text = read_text(*params_path);
        } catch (const DataError& e) {
            throw ConfigError(e.what());
        }
        spec = parse_mixture_json(text);
    } else {
        spec = ripley_mixture();
    }
    const auto [train, test] = generate_two_class_mixture(seed, n_train, n_test, spec);
    fs::create_directories(out_dir);
    write_csv(train, fs::path(out_dir) / "train.csv");
    write_csv(test, fs::path(out_dir) / "test.csv");
    out << "wrote " << n_train << " training and " << n_test << " test rows to " << out_dir
        << "\n";
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse least-squares SVM with learnable low-rank kernels"};
    app.require_subcommand(1);

    CsvFlags csv;
    TrainFlags train_flags;

    std::string data_path;
    std::string model_path;
    std::string out_path;
    std::optional<std::string> opt_out;

    auto* train = app.add_subcommand("train", "Fit a model and write model JSON + history CSV");
    train->add_option("--data", data_path, "Training CSV")->required();
    train->add_option("--out", out_path, "Model JSON path")->required();
    csv.add_to(*train);
    train_flags.add_to(*train);

    auto* predict = app.add_subcommand("predict", "Write per-row score,label CSV");
    predict->add_option("--model", model_path, "Model JSON")->required();
    predict->add_option("--data", data_path, "Input CSV")->required();
    predict->add_option("--out", out_path, "Output CSV")->required();
    csv.add_to(*predict);

    auto* eval = app.add_subcommand("eval", "Print misclassification metrics as JSON");
    eval->add_option("--model", model_path, "Model JSON")->required();
    eval->add_option("--data", data_path, "Labelled CSV")->required();
    csv.add_to(*eval);

    std::string suite_dir;
    std::optional<std::string> range_text;
    int jobs = 1;
    auto* bench = app.add_subcommand("benchmark", "Train and test over suite realizations");
    bench->add_option("--suite", suite_dir, "Directory of train_k.csv/test_k.csv")->required();
    bench->add_option("--range", range_text, "Realizations a..b (1-based, inclusive)");
    bench->add_option("--jobs", jobs, "Realizations trained concurrently");
    bench->add_option("--out", opt_out, "Report path (stdout if omitted)");
    csv.add_to(*bench);
    train_flags.add_to(*bench);

    std::uint64_t synth_seed = 1;
    long long n_train = 250;
    long long n_test = 1000;
    std::optional<std::string> params_path;
    std::string out_dir;
    auto* synth = app.add_subcommand("synth", "Sample a two-class Gaussian mixture");
    synth->add_option("--seed", synth_seed, "Generator seed");
    synth->add_option("--n-train", n_train, "Training rows");
    synth->add_option("--n-test", n_test, "Test rows");
    synth->add_option("--params", params_path, "Mixture spec JSON (Ripley mixture if omitted)");
    synth->add_option("--out-dir", out_dir, "Output directory")->required();

    double xmin = 0.0;
    double xmax = 0.0;
    double ymin = 0.0;
    double ymax = 0.0;
    int steps = 0;
    auto* grid = app.add_subcommand("grid", "Export decision scores on a 2-D grid");
    grid->add_option("--model", model_path, "Model JSON")->required();
    grid->add_option("--xmin", xmin)->required();
    grid->add_option("--xmax", xmax)->required();
    grid->add_option("--ymin", ymin)->required();
    grid->add_option("--ymax", ymax)->required();
    grid->add_option("--steps", steps, "Cells per axis; writes (steps+1)^2 rows")->required();
    grid->add_option("--out", opt_out, "Output CSV (stdout if omitted)");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("lrlssvm");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& a : argv_storage) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInvalidFlags;
    }

    try {
        if (*train) {
            return cmd_train(data_path, out_path, csv, train_flags, out);
        }
        if (*predict) {
            return cmd_predict(model_path, data_path, out_path, csv);
        }
        if (*eval) {
            return cmd_eval(model_path, data_path, csv, out);
        }
        if (*bench) {
            return cmd_benchmark(suite_dir, range_text, jobs, opt_out, csv, train_flags, out);
        }
        if (*synth) {
            return cmd_synth(synth_seed, n_train, n_test, params_path, out_dir, out);
        }
        if (*grid) {
            return cmd_grid(model_path, xmin, xmax, ymin, ymax, steps, opt_out, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidFlags;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const fs::filesystem_error& e) {
        err << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInvalidFlags;
}

} // namespace lrlssvm::cli
