#include "oqrc/oqrc.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "dataset.hpp"
#include "experiment.hpp"
#include "serialize.hpp"
#include "spectrum.hpp"

struct oqrc_dataset {
    oqrc::CorrosionDataset data;
};

struct oqrc_model {
    oqrc::TrainedModel model;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs the body and translates exceptions into status codes.
template <typename Fn>
oqrc_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return OQRC_OK;
    } catch (const oqrc::ParseError& e) {
        g_last_error = e.what();
        return OQRC_ERR_PARSE;
    } catch (const oqrc::IoError& e) {
        g_last_error = e.what();
        return OQRC_ERR_IO;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return OQRC_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return OQRC_ERR_INTERNAL;
    } catch (const std::runtime_error& e) {
        g_last_error = e.what();
        return OQRC_ERR_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return OQRC_ERR_INTERNAL;
    }
}

oqrc_status require(bool ok, const char* message) {
    if (ok) return OQRC_OK;
    g_last_error = message;
    return OQRC_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* oqrc_version(void) { return "1.0.0"; }

const char* oqrc_status_name(oqrc_status status) {
    switch (status) {
        case OQRC_OK: return "ok";
        case OQRC_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case OQRC_ERR_PARSE: return "parse_error";
        case OQRC_ERR_NUMERIC: return "numeric_error";
        case OQRC_ERR_IO: return "io_error";
        case OQRC_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* oqrc_last_error(void) { return g_last_error.c_str(); }

void oqrc_string_free(char* str) { delete[] str; }

oqrc_status oqrc_dataset_synth(uint64_t seed, const char* zone_params_json, oqrc_dataset** out) {
    if (auto s = require(out != nullptr, "oqrc_dataset_synth: out must not be NULL")) return s;
    *out = nullptr;
    return guarded([&] {
        const auto params = zone_params_json != nullptr
                                ? oqrc::zone_params_from_json(zone_params_json)
                                : oqrc::default_zone_params();
        *out = new oqrc_dataset{oqrc::synth_generate(seed, params)};
    });
}

oqrc_status oqrc_dataset_load_csv(const char* path, oqrc_dataset** out) {
    if (auto s = require(path != nullptr && out != nullptr,
                         "oqrc_dataset_load_csv: path and out must not be NULL")) {
        return s;
    }
    *out = nullptr;
    return guarded([&] { *out = new oqrc_dataset{oqrc::load_csv(path)}; });
}

oqrc_status oqrc_dataset_save_csv(const oqrc_dataset* dataset, const char* path) {
    if (auto s = require(dataset != nullptr && path != nullptr,
                         "oqrc_dataset_save_csv: dataset and path must not be NULL")) {
        return s;
    }
    return guarded([&] { oqrc::save_csv(dataset->data, path); });
}

void oqrc_dataset_free(oqrc_dataset* dataset) { delete dataset; }

int oqrc_dataset_num_samples(const oqrc_dataset* dataset) {
    return dataset == nullptr ? -1 : static_cast<int>(dataset->data.samples.size());
}

int oqrc_dataset_num_days(const oqrc_dataset* dataset) {
    return dataset == nullptr ? -1 : dataset->data.days_per_sample();
}

oqrc_status oqrc_spectrum_sweep(const char* config_json, char** csv_out, char** meta_json_out) {
    if (auto s = require(config_json != nullptr && csv_out != nullptr && meta_json_out != nullptr,
                         "oqrc_spectrum_sweep: all arguments must not be NULL")) {
        return s;
    }
    *csv_out = nullptr;
    *meta_json_out = nullptr;
    return guarded([&] {
        nlohmann::json j = nlohmann::json::parse(config_json, nullptr, false);
        if (j.is_discarded()) throw oqrc::ParseError("spectrum config: invalid JSON");
        oqrc::SpectrumConfig base;
        if (j.contains("n_qubits")) base.n_qubits = j.at("n_qubits").get<int>();
        if (j.contains("depth")) base.depth = j.at("depth").get<int>();
        if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("prefactor")) base.prefactor = j.at("prefactor").get<double>();
        if (j.contains("measured")) {
            base.measured = oqrc::first_qubits(j.at("measured").get<int>());
        }
        if (j.contains("angles")) base.angles = j.at("angles").get<std::vector<double>>();

        const bool has_prefactors = j.contains("prefactors");
        const bool has_counts = j.contains("measured_counts");
        if (has_prefactors == has_counts) {
            throw oqrc::ParseError(
                "spectrum config: exactly one of 'prefactors' or 'measured_counts' is required");
        }
        oqrc::SpectrumSweepResult result;
        if (has_prefactors) {
            result = oqrc::sweep_prefactor(base, j.at("prefactors").get<std::vector<double>>());
        } else {
            std::vector<std::vector<int>> sets;
            for (int count : j.at("measured_counts").get<std::vector<int>>()) {
                sets.push_back(oqrc::first_qubits(count));
            }
            result = oqrc::sweep_measurements(base, sets);
        }
        *csv_out = dup_string(oqrc::spectrum_csv(result));
        *meta_json_out = dup_string(oqrc::spectrum_meta_json(result));
    });
}

oqrc_status oqrc_train(const char* config_json, const oqrc_dataset* dataset, oqrc_model** out) {
    if (auto s = require(config_json != nullptr && dataset != nullptr && out != nullptr,
                         "oqrc_train: all arguments must not be NULL")) {
        return s;
    }
    *out = nullptr;
    return guarded([&] {
        const oqrc::ExperimentConfig config = oqrc::config_from_json(config_json);
        *out = new oqrc_model{oqrc::train_model(config, dataset->data)};
    });
}

oqrc_status oqrc_model_to_json(const oqrc_model* model, char** json_out) {
    if (auto s = require(model != nullptr && json_out != nullptr,
                         "oqrc_model_to_json: model and json_out must not be NULL")) {
        return s;
    }
    *json_out = nullptr;
    return guarded([&] { *json_out = dup_string(oqrc::model_to_json(model->model)); });
}

oqrc_status oqrc_model_from_json(const char* json, oqrc_model** out) {
    if (auto s = require(json != nullptr && out != nullptr,
                         "oqrc_model_from_json: json and out must not be NULL")) {
        return s;
    }
    *out = nullptr;
    return guarded([&] { *out = new oqrc_model{oqrc::model_from_json(json)}; });
}

void oqrc_model_free(oqrc_model* model) { delete model; }

oqrc_status oqrc_evaluate(const oqrc_model* model, const oqrc_dataset* dataset,
                          char** result_json_out, char** predictions_csv_out) {
    if (auto s = require(model != nullptr && dataset != nullptr,
                         "oqrc_evaluate: model and dataset must not be NULL")) {
        return s;
    }
    if (result_json_out) *result_json_out = nullptr;
    if (predictions_csv_out) *predictions_csv_out = nullptr;
    return guarded([&] {
        const oqrc::ExperimentResult result = oqrc::evaluate(model->model, dataset->data);
        if (result_json_out) *result_json_out = dup_string(oqrc::result_to_json(result));
        if (predictions_csv_out) *predictions_csv_out = dup_string(oqrc::predictions_csv(result));
    });
}

oqrc_status oqrc_simple_baseline(const oqrc_dataset* dataset, int warmup_days,
                                 char** result_json_out, char** predictions_csv_out) {
    if (auto s = require(dataset != nullptr, "oqrc_simple_baseline: dataset must not be NULL")) {
        return s;
    }
    if (result_json_out) *result_json_out = nullptr;
    if (predictions_csv_out) *predictions_csv_out = nullptr;
    return guarded([&] {
        const oqrc::ExperimentResult result = oqrc::simple_baseline(dataset->data, warmup_days);
        if (result_json_out) *result_json_out = dup_string(oqrc::result_to_json(result));
        if (predictions_csv_out) *predictions_csv_out = dup_string(oqrc::predictions_csv(result));
    });
}

oqrc_status oqrc_benchmark(const char* config_json, const oqrc_dataset* dataset, char** csv_out) {
    if (auto s = require(config_json != nullptr && dataset != nullptr && csv_out != nullptr,
                         "oqrc_benchmark: all arguments must not be NULL")) {
        return s;
    }
    *csv_out = nullptr;
    return guarded([&] {
        nlohmann::json j = nlohmann::json::parse(config_json, nullptr, false);
        if (j.is_discarded()) throw oqrc::ParseError("benchmark config: invalid JSON");
        if (!j.contains("models") || !j.contains("qubits")) {
            throw oqrc::ParseError("benchmark config: 'models' and 'qubits' are required");
        }
        const auto models = j.at("models").get<std::vector<std::string>>();
        const auto qubits = j.at("qubits").get<std::vector<int>>();
        const std::string mode =
            j.contains("crc_size_mode") ? j.at("crc_size_mode").get<std::string>() : "linear";
        oqrc::ExperimentConfig base;
        if (j.contains("base")) base = oqrc::config_from_json(j.at("base").dump());
        const auto rows = oqrc::benchmark(models, qubits, dataset->data, base, mode);
        *csv_out = dup_string(oqrc::benchmark_csv(rows));
    });
}

oqrc_status oqrc_feature_matrix(const oqrc_model* model, const oqrc_dataset* dataset, int zone,
                                int sample, char** csv_out) {
    if (auto s = require(model != nullptr && dataset != nullptr && csv_out != nullptr,
                         "oqrc_feature_matrix: all arguments must not be NULL")) {
        return s;
    }
    *csv_out = nullptr;
    return guarded([&] {
        const oqrc::TrainedModel& m = model->model;
        if (m.config.kind == oqrc::ModelKind::simple) {
            throw std::invalid_argument("feature matrices are undefined for the simple baseline");
        }
        const oqrc::CorrosionDataset ds =
            oqrc::apply_normalization(dataset->data, m.normalization);
        const auto& s = ds.sample_at(zone, sample);
        std::vector<double> pitting, humidity, temperature;
        for (const auto& d : s.days) {
            pitting.push_back(d.pitting);
            humidity.push_back(d.humidity);
            temperature.push_back(d.temperature);
        }
        const oqrc::QrcFeatureRows rows =
            oqrc::model_teacher_forced(m.config, m, pitting, humidity, temperature);
        *csv_out = dup_string(oqrc::feature_matrix_csv(rows.features));
    });
}

}  // extern "C"
