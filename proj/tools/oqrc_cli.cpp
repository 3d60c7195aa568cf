// Command-line front end for the oqrc shared library. Every subcommand goes
// through the public C API; failures print one machine-parseable JSON line
// on stderr and exit nonzero.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oqrc/oqrc.h"

namespace {

using nlohmann::ordered_json;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& status, const std::string& message) {
    throw CliError(ordered_json{{"error", {{"status", status}, {"message", message}}}}.dump());
}

void check(oqrc_status status) {
    if (status != OQRC_OK) fail(oqrc_status_name(status), oqrc_last_error());
}

std::string take_string(char* owned) {
    std::string out = owned != nullptr ? owned : "";
    oqrc_string_free(owned);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("io_error", "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (const auto dir = std::filesystem::path(path).parent_path(); !dir.empty()) {
        std::filesystem::create_directories(dir);
    }
    std::ofstream out(path);
    if (!out) fail("io_error", "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail("io_error", "failed writing '" + path + "'");
}

ordered_json parse_json_file(const std::string& path) {
    ordered_json j = ordered_json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) fail("parse_error", "invalid JSON in " + path);
    return j;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& token) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        fail("invalid_argument", "cannot parse number '" + token + "'");
    }
}

struct DatasetHandle {
    oqrc_dataset* ptr = nullptr;
    DatasetHandle() = default;
    DatasetHandle(const DatasetHandle&) = delete;
    ~DatasetHandle() { oqrc_dataset_free(ptr); }
};

struct ModelHandle {
    oqrc_model* ptr = nullptr;
    ModelHandle() = default;
    ModelHandle(const ModelHandle&) = delete;
    ~ModelHandle() { oqrc_model_free(ptr); }
};

// Shared dataset source flags: either a CSV path or a synthetic seed.
struct DataSource {
    std::string csv_path;
    std::uint64_t synth_seed = 1;
    std::string params_path;
    CLI::Option* seed_opt = nullptr;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--data", csv_path, "dataset CSV file");
        seed_opt = cmd->add_option("--synth-seed", synth_seed,
                                   "generate a synthetic corpus with this seed");
        cmd->add_option("--synth-params", params_path,
                        "zone parameter JSON for the synthetic corpus");
    }

    void open(DatasetHandle& handle) const {
        const bool synth_requested = seed_opt != nullptr && seed_opt->count() > 0;
        if (!csv_path.empty() && synth_requested) {
            fail("invalid_argument", "--data and --synth-seed are mutually exclusive");
        }
        if (!csv_path.empty()) {
            check(oqrc_dataset_load_csv(csv_path.c_str(), &handle.ptr));
        } else if (synth_requested) {
            const std::string params = params_path.empty() ? "" : read_file(params_path);
            check(oqrc_dataset_synth(synth_seed, params.empty() ? nullptr : params.c_str(),
                                     &handle.ptr));
        } else {
            fail("invalid_argument", "no dataset given: pass --data or --synth-seed");
        }
    }
};

// Experiment config: --config JSON (if any) overlaid with explicit flags.
struct ConfigFlags {
    std::string config_path;
    std::string model;
    int layers = 1;
    int qubits = 6;
    double a = -0.31, b = 0.1, ridge_alpha = 1e-6;
    int esn_size = 50;
    int warmup = 3;
    std::uint64_t seed = 1;
    CLI::App* cmd = nullptr;

    void add_flags(CLI::App* owner) {
        cmd = owner;
        cmd->add_option("--config", config_path, "experiment config JSON file (flags override)");
        cmd->add_option("--model", model, "model kind: simple|crc|oqrc|ocqrc");
        cmd->add_option("--layers", layers, "number of onion layers");
        cmd->add_option("--qubits", qubits, "qubits per quantum layer");
        cmd->add_option("--a", a, "pitting input prefactor");
        cmd->add_option("--b", b, "feedback prefactor (ladder centre)");
        cmd->add_option("--alpha", ridge_alpha, "ridge regularization");
        cmd->add_option("--esn-size", esn_size, "classical reservoir size");
        cmd->add_option("--warmup", warmup, "warm-up days");
        cmd->add_option("--seed", seed, "master seed");
    }

    ordered_json build() const {
        ordered_json j = ordered_json::object();
        if (!config_path.empty()) j = parse_json_file(config_path);
        if (cmd->count("--model")) j["model"] = model;
        if (!j.contains("model")) fail("invalid_argument", "no model kind: pass --model or --config");
        if (cmd->count("--layers")) j["qrc_layers"] = layers;
        if (cmd->count("--qubits")) j["n_qubits"] = qubits;
        if (cmd->count("--a")) j["a"] = a;
        if (cmd->count("--b")) j["b"] = b;
        if (cmd->count("--alpha")) j["ridge_alpha"] = ridge_alpha;
        if (cmd->count("--esn-size")) j["esn_size"] = esn_size;
        if (cmd->count("--warmup")) j["warmup_days"] = warmup;
        if (cmd->count("--seed")) j["seed"] = seed;
        return j;
    }
};

void write_result_pair(const std::string& outdir, const std::string& result_json,
                       const std::string& preds_csv) {
    const auto dir = std::filesystem::path(outdir);
    write_file((dir / "result.json").string(), result_json);
    write_file((dir / "predictions.csv").string(), preds_csv);
    const ordered_json parsed = ordered_json::parse(result_json);
    std::cout << "pooled_r2=" << parsed.at("pooled_r2").dump() << " -> "
              << (dir / "result.json").string() << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Onion quantum reservoir computing for corrosion forecasting"};
    app.require_subcommand(1);

    // synth ---------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a synthetic corrosion dataset CSV");
    std::uint64_t synth_seed = 1;
    std::string synth_params_path;
    std::string synth_out = "dataset.csv";
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--params", synth_params_path, "zone parameter JSON file");
    synth->add_option("--out", synth_out, "output CSV path");
    synth->callback([&] {
        DatasetHandle ds;
        const std::string params = synth_params_path.empty() ? "" : read_file(synth_params_path);
        check(oqrc_dataset_synth(synth_seed, params.empty() ? nullptr : params.c_str(), &ds.ptr));
        check(oqrc_dataset_save_csv(ds.ptr, synth_out.c_str()));
        std::cout << "wrote " << synth_out << " (" << oqrc_dataset_num_samples(ds.ptr)
                  << " samples x " << oqrc_dataset_num_days(ds.ptr) << " days)\n";
    });

    // spectrum --------------------------------------------------------------
    auto* spectrum = app.add_subcommand("spectrum", "channel eigenvalue sweeps");
    int sp_qubits = 4, sp_depth = 2, sp_measured = 1;
    std::uint64_t sp_seed = 0;
    double sp_prefactor = 1.0;
    std::string sp_prefactors, sp_counts, sp_config, sp_outdir = ".";
    spectrum->add_option("--qubits", sp_qubits, "number of qubits");
    spectrum->add_option("--depth", sp_depth, "ansatz depth");
    spectrum->add_option("--measured", sp_measured, "measured qubit count (from qubit 0)");
    spectrum->add_option("--seed", sp_seed, "base angle seed");
    spectrum->add_option("--prefactor", sp_prefactor, "rotation prefactor for measurement sweeps");
    spectrum->add_option("--prefactors", sp_prefactors, "comma-separated prefactor sweep values");
    spectrum->add_option("--measured-sweep", sp_counts,
                         "comma-separated measured-qubit counts to sweep");
    spectrum->add_option("--config", sp_config, "sweep config JSON file (flags override)");
    spectrum->add_option("--out-dir", sp_outdir, "output directory");
    spectrum->callback([&] {
        ordered_json j = ordered_json::object();
        if (!sp_config.empty()) j = parse_json_file(sp_config);
        if (spectrum->count("--qubits") || !j.contains("n_qubits")) j["n_qubits"] = sp_qubits;
        if (spectrum->count("--depth") || !j.contains("depth")) j["depth"] = sp_depth;
        if (spectrum->count("--measured") || !j.contains("measured")) j["measured"] = sp_measured;
        if (spectrum->count("--seed")) j["seed"] = sp_seed;
        if (spectrum->count("--prefactor") || !j.contains("prefactor")) j["prefactor"] = sp_prefactor;
        if (!sp_prefactors.empty()) {
            std::vector<double> values;
            for (const auto& tok : split_list(sp_prefactors)) values.push_back(parse_number(tok));
            j["prefactors"] = values;
        }
        if (!sp_counts.empty()) {
            std::vector<int> values;
            for (const auto& tok : split_list(sp_counts)) {
                values.push_back(static_cast<int>(parse_number(tok)));
            }
            j["measured_counts"] = values;
        }
        char* csv = nullptr;
        char* meta = nullptr;
        check(oqrc_spectrum_sweep(j.dump().c_str(), &csv, &meta));
        const auto dir = std::filesystem::path(sp_outdir);
        write_file((dir / "spectrum.csv").string(), take_string(csv));
        write_file((dir / "spectrum_meta.json").string(), take_string(meta));
        std::cout << "wrote " << (dir / "spectrum.csv").string() << " and "
                  << (dir / "spectrum_meta.json").string() << "\n";
    });

    // train -----------------------------------------------------------------
    auto* train = app.add_subcommand("train", "fit per-zone ridge readouts");
    DataSource train_data;
    ConfigFlags train_config;
    std::string train_out = "model.json";
    std::string train_features_dir;
    train_data.add_flags(train);
    train_config.add_flags(train);
    train->add_option("--out", train_out, "output model JSON path");
    train->add_option("--dump-features", train_features_dir,
                      "also write per-zone teacher-forced feature CSVs here");
    train->callback([&] {
        DatasetHandle ds;
        train_data.open(ds);
        const ordered_json cfg = train_config.build();
        ModelHandle model;
        check(oqrc_train(cfg.dump().c_str(), ds.ptr, &model.ptr));
        char* json = nullptr;
        check(oqrc_model_to_json(model.ptr, &json));
        write_file(train_out, take_string(json));
        std::cout << "wrote " << train_out << "\n";
        if (!train_features_dir.empty()) {
            if (cfg.at("model") == "simple") {
                fail("invalid_argument", "--dump-features: the simple baseline has no features");
            }
            // First training sample of each zone, enough for offline inspection.
            for (int zone = 1; zone <= 4; ++zone) {
                char* csv = nullptr;
                check(oqrc_feature_matrix(model.ptr, ds.ptr, zone, 0, &csv));
                const auto path = std::filesystem::path(train_features_dir) /
                                  ("features_zone" + std::to_string(zone) + ".csv");
                write_file(path.string(), take_string(csv));
            }
            std::cout << "wrote feature CSVs to " << train_features_dir << "\n";
        }
    });

    // evaluate ----------------------------------------------------------------
    auto* evaluate = app.add_subcommand("evaluate", "closed-loop evaluation on the test split");
    DataSource eval_data;
    std::string eval_model_path;
    std::string eval_outdir = ".";
    eval_data.add_flags(evaluate);
    evaluate->add_option("--model", eval_model_path, "model JSON path")->required();
    evaluate->add_option("--out-dir", eval_outdir, "output directory");
    evaluate->callback([&] {
        DatasetHandle ds;
        eval_data.open(ds);
        ModelHandle model;
        check(oqrc_model_from_json(read_file(eval_model_path).c_str(), &model.ptr));
        char* result = nullptr;
        char* preds = nullptr;
        check(oqrc_evaluate(model.ptr, ds.ptr, &result, &preds));
        const std::string result_text = take_string(result);
        write_result_pair(eval_outdir, result_text, take_string(preds));
    });

    // simple ------------------------------------------------------------------
    auto* simple = app.add_subcommand("simple", "training-mean baseline evaluation");
    DataSource simple_data;
    std::string simple_outdir = ".";
    int simple_warmup = 3;
    simple_data.add_flags(simple);
    simple->add_option("--warmup", simple_warmup, "warm-up days");
    simple->add_option("--out-dir", simple_outdir, "output directory");
    simple->callback([&] {
        DatasetHandle ds;
        simple_data.open(ds);
        char* result = nullptr;
        char* preds = nullptr;
        check(oqrc_simple_baseline(ds.ptr, simple_warmup, &result, &preds));
        const std::string result_text = take_string(result);
        write_result_pair(simple_outdir, result_text, take_string(preds));
    });

    // benchmark -----------------------------------------------------------------
    auto* bench = app.add_subcommand("benchmark", "model x size R^2 grid");
    DataSource bench_data;
    std::string bench_models = "oqrc1,oqrc3,crc";
    std::string bench_qubits = "4,6,8";
    std::string bench_mode = "linear";
    std::string bench_out = "benchmark.csv";
    std::string bench_base_config;
    std::uint64_t bench_seed = 1;
    double bench_a = -0.31, bench_b = 0.1, bench_alpha = 1e-6;
    int bench_warmup = 3;
    bench_data.add_flags(bench);
    bench->add_option("--models", bench_models, "comma-separated model tokens (e.g. oqrc3,crc)");
    bench->add_option("--qubits", bench_qubits, "comma-separated qubit counts to sweep");
    bench->add_option("--crc-size-mode", bench_mode, "classical size per qubit count: linear|exp2");
    bench->add_option("--config", bench_base_config, "base experiment config JSON file");
    bench->add_option("--seed", bench_seed, "master seed");
    bench->add_option("--a", bench_a, "pitting input prefactor");
    bench->add_option("--b", bench_b, "feedback prefactor (ladder centre)");
    bench->add_option("--alpha", bench_alpha, "ridge regularization");
    bench->add_option("--warmup", bench_warmup, "warm-up days");
    bench->add_option("--out", bench_out, "output CSV path");
    bench->callback([&] {
        DatasetHandle ds;
        bench_data.open(ds);
        ordered_json j;
        j["models"] = split_list(bench_models);
        std::vector<int> qubits;
        for (const auto& tok : split_list(bench_qubits)) {
            qubits.push_back(static_cast<int>(parse_number(tok)));
        }
        j["qubits"] = qubits;
        j["crc_size_mode"] = bench_mode;
        ordered_json base = ordered_json::object();
        if (!bench_base_config.empty()) base = parse_json_file(bench_base_config);
        if (!base.contains("model")) base["model"] = "oqrc";
        if (bench->count("--seed") || !base.contains("seed")) base["seed"] = bench_seed;
        if (bench->count("--a") || !base.contains("a")) base["a"] = bench_a;
        if (bench->count("--b") || !base.contains("b")) base["b"] = bench_b;
        if (bench->count("--alpha") || !base.contains("ridge_alpha")) {
            base["ridge_alpha"] = bench_alpha;
        }
        if (bench->count("--warmup") || !base.contains("warmup_days")) {
            base["warmup_days"] = bench_warmup;
        }
        j["base"] = base;
        char* csv = nullptr;
        check(oqrc_benchmark(j.dump().c_str(), ds.ptr, &csv));
        write_file(bench_out, take_string(csv));
        std::cout << "wrote " << bench_out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << ordered_json{{"error", {{"status", "usage"}, {"message", e.what()}}}}.dump()
                  << "\n"
                  << app.help() << std::flush;
        return 2;
    } catch (const CliError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << ordered_json{{"error", {{"status", "internal_error"}, {"message", e.what()}}}}
                         .dump()
                  << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
