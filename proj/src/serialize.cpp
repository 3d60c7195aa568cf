#include "serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace oqrc {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json r2_to_json(const R2Score& r2) {
    if (!r2.defined) return nullptr;
    return r2.value;
}

R2Score r2_from_json(const ordered_json& j) {
    if (j.is_null()) return {-std::numeric_limits<double>::infinity(), false};
    return {j.get<double>(), true};
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
    // Real-valued reservoir matrices only; stored as nested rows.
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).real());
        rows.push_back(std::move(row));
    }
    return ordered_json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const ordered_json& j) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    ComplexMatrix m(rows, cols);
    const auto& entries = j.at("entries");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = entries.at(r).at(c).get<double>();
    return m;
}

ordered_json config_json(const ExperimentConfig& c) {
    ordered_json j;
    j["model"] = to_string(c.kind);
    j["qrc_layers"] = c.qrc_layers;
    j["n_qubits"] = c.qrc_base.n_qubits;
    j["a"] = c.qrc_base.a;
    j["b"] = c.qrc_base.b;
    j["c_h"] = c.qrc_base.c_h;
    j["c_t"] = c.qrc_base.c_t;
    j["n_blocks"] = c.qrc_base.n_blocks;
    j["b_ladder"] = c.b_ladder;
    j["esn_size"] = c.esn.size;
    j["esn_spectral_radius"] = c.esn.spectral_radius_target;
    j["esn_input_scale"] = c.esn.input_scale;
    ordered_json annuli = ordered_json::array();
    for (const auto& b : c.esn_annuli) {
        annuli.push_back(ordered_json{{"size", b.size}, {"eps0", b.eps0}, {"eps1", b.eps1}});
    }
    j["esn_annuli"] = std::move(annuli);
    j["warmup_days"] = c.warmup_days;
    j["ridge_alpha"] = c.ridge_alpha;
    j["seed"] = c.seed;
    return j;
}

ExperimentConfig config_from(const ordered_json& j) {
    ExperimentConfig c;
    c.kind = model_kind_from_string(j.at("model").get<std::string>());
    if (j.contains("qrc_layers")) c.qrc_layers = j.at("qrc_layers").get<int>();
    if (j.contains("n_qubits")) c.qrc_base.n_qubits = j.at("n_qubits").get<int>();
    if (j.contains("a")) c.qrc_base.a = j.at("a").get<double>();
    if (j.contains("b")) c.qrc_base.b = j.at("b").get<double>();
    if (j.contains("c_h")) c.qrc_base.c_h = j.at("c_h").get<double>();
    if (j.contains("c_t")) c.qrc_base.c_t = j.at("c_t").get<double>();
    if (j.contains("n_blocks")) c.qrc_base.n_blocks = j.at("n_blocks").get<int>();
    if (j.contains("b_ladder")) c.b_ladder = j.at("b_ladder").get<std::vector<double>>();
    if (j.contains("esn_size")) c.esn.size = j.at("esn_size").get<int>();
    if (j.contains("esn_spectral_radius")) {
        c.esn.spectral_radius_target = j.at("esn_spectral_radius").get<double>();
    }
    if (j.contains("esn_input_scale")) c.esn.input_scale = j.at("esn_input_scale").get<double>();
    if (j.contains("esn_annuli")) {
        for (const auto& b : j.at("esn_annuli")) {
            c.esn_annuli.push_back({b.at("size").get<int>(), b.at("eps0").get<double>(),
                                    b.at("eps1").get<double>()});
        }
    }
    if (j.contains("warmup_days")) c.warmup_days = j.at("warmup_days").get<int>();
    if (j.contains("ridge_alpha")) c.ridge_alpha = j.at("ridge_alpha").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

ordered_json parse(const std::string& text, const char* what) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(std::string(what) + ": invalid JSON");
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(2); }

ExperimentConfig config_from_json(const std::string& json) {
    return config_from(parse(json, "experiment config"));
}

std::string model_to_json(const TrainedModel& model) {
    ordered_json j;
    j["schema_version"] = 1;
    j["config"] = config_json(model.config);
    ordered_json norm = ordered_json::array();
    for (const auto& z : model.normalization) {
        norm.push_back(ordered_json{{"zone", z.zone},
                                    {"humidity_min", z.humidity_min},
                                    {"humidity_max", z.humidity_max},
                                    {"temperature_min", z.temperature_min},
                                    {"temperature_max", z.temperature_max}});
    }
    j["normalization"] = std::move(norm);
    ordered_json zones = ordered_json::array();
    for (const auto& z : model.zones) {
        ordered_json zj;
        zj["zone"] = z.zone;
        zj["readout_alpha"] = z.readout.alpha;
        zj["readout_weights"] = z.readout.weights;
        zj["mean_curve"] = z.mean_curve;
        zones.push_back(std::move(zj));
    }
    j["zones"] = std::move(zones);
    j["esn_w"] = model.esn_w.empty() ? ordered_json(nullptr) : matrix_to_json(model.esn_w);
    j["esn_w_in"] = model.esn_w_in.empty() ? ordered_json(nullptr) : matrix_to_json(model.esn_w_in);
    return j.dump(2);
}

TrainedModel model_from_json(const std::string& json) {
    const ordered_json j = parse(json, "model artifact");
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1) {
        throw ParseError("model artifact: unsupported schema version");
    }
    TrainedModel model;
    model.config = config_from(j.at("config"));
    for (const auto& z : j.at("normalization")) {
        model.normalization.push_back({z.at("zone").get<int>(),
                                       z.at("humidity_min").get<double>(),
                                       z.at("humidity_max").get<double>(),
                                       z.at("temperature_min").get<double>(),
                                       z.at("temperature_max").get<double>()});
    }
    for (const auto& z : j.at("zones")) {
        ZoneModel zm;
        zm.zone = z.at("zone").get<int>();
        zm.readout.alpha = z.at("readout_alpha").get<double>();
        zm.readout.weights = z.at("readout_weights").get<std::vector<std::vector<double>>>();
        zm.mean_curve = z.at("mean_curve").get<std::vector<double>>();
        model.zones.push_back(std::move(zm));
    }
    if (!j.at("esn_w").is_null()) model.esn_w = matrix_from_json(j.at("esn_w"));
    if (!j.at("esn_w_in").is_null()) model.esn_w_in = matrix_from_json(j.at("esn_w_in"));
    return model;
}

std::string result_to_json(const ExperimentResult& result) {
    ordered_json j;
    j["config"] = config_json(result.config);
    ordered_json zones = ordered_json::array();
    for (const auto& zr : result.per_zone) {
        ordered_json zj;
        zj["zone"] = zr.zone;
        zj["r2"] = r2_to_json(zr.r2);
        ordered_json samples = ordered_json::array();
        for (const auto& sp : zr.samples) {
            samples.push_back(ordered_json{{"sample", sp.sample},
                                           {"first_day", sp.first_day},
                                           {"predicted", sp.predicted},
                                           {"true", sp.truth}});
        }
        zj["samples"] = std::move(samples);
        zones.push_back(std::move(zj));
    }
    j["per_zone"] = std::move(zones);
    j["pooled_r2"] = r2_to_json(result.pooled_r2);
    j["runtime_seconds"] = result.runtime_seconds;
    return j.dump(2);
}

std::string predictions_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "zone,sample,day,true_pitting,predicted_pitting\n";
    for (const auto& zr : result.per_zone) {
        for (const auto& sp : zr.samples) {
            for (std::size_t i = 0; i < sp.predicted.size(); ++i) {
                out << zr.zone << ',' << sp.sample << ',' << sp.first_day + static_cast<int>(i)
                    << ',' << format_double(sp.truth[i]) << ',' << format_double(sp.predicted[i])
                    << '\n';
            }
        }
    }
    return out.str();
}

std::string spectrum_csv(const SpectrumSweepResult& result) {
    std::ostringstream out;
    out << "parameter_value,re_lambda,im_lambda\n";
    for (const auto& p : result.points) {
        for (const auto& e : p.eigenvalues) {
            out << format_double(p.parameter_value) << ',' << format_double(e.real()) << ','
                << format_double(e.imag()) << '\n';
        }
    }
    return out.str();
}

std::string spectrum_meta_json(const SpectrumSweepResult& result) {
    ordered_json j;
    j["parameter_name"] = result.parameter_name;
    j["n_qubits"] = result.n_qubits;
    j["depth"] = result.depth;
    j["seed"] = result.seed;
    j["angles"] = result.angles;
    ordered_json points = ordered_json::array();
    for (const auto& p : result.points) {
        points.push_back(ordered_json{{"parameter_value", p.parameter_value},
                                      {"mean_nontrivial_modulus", p.mean_nontrivial_modulus}});
    }
    j["points"] = std::move(points);
    return j.dump(2);
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
    std::ostringstream out;
    out << "model,size,pooled_r2";
    if (!rows.empty()) {
        for (const auto& [zone, r2] : rows.front().zone_r2) out << ",r2_zone_" << zone;
    }
    out << '\n';
    for (const auto& row : rows) {
        out << row.model << ',' << row.size << ','
            << (row.pooled_r2.defined ? format_double(row.pooled_r2.value) : "undefined");
        for (const auto& [zone, r2] : row.zone_r2) {
            out << ',' << (r2.defined ? format_double(r2.value) : "undefined");
        }
        out << '\n';
    }
    return out.str();
}

std::string feature_matrix_csv(const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::array<ZoneSynthParams, 4> zone_params_from_json(const std::string& json) {
    const ordered_json j = parse(json, "zone parameters");
    const auto& zones = j.contains("zones") ? j.at("zones") : j;
    if (!zones.is_array() || zones.size() != 4) {
        throw ParseError("zone parameters: expected an array of 4 zone objects");
    }
    std::array<ZoneSynthParams, 4> params{};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& z = zones.at(i);
        ZoneSynthParams p;
        p.growth_rate = z.at("growth_rate").get<double>();
        p.saturation = z.at("saturation").get<double>();
        p.humidity_mean = z.at("humidity_mean").get<double>();
        p.humidity_amplitude = z.at("humidity_amplitude").get<double>();
        p.humidity_period = z.at("humidity_period").get<double>();
        p.temperature_mean = z.at("temperature_mean").get<double>();
        p.temperature_amplitude = z.at("temperature_amplitude").get<double>();
        p.temperature_period = z.at("temperature_period").get<double>();
        p.noise_scale = z.at("noise_scale").get<double>();
        if (z.contains("initial_pitting")) p.initial_pitting = z.at("initial_pitting").get<double>();
        params[i] = p;
    }
    return params;
}

std::string zone_params_to_json(const std::array<ZoneSynthParams, 4>& params) {
    ordered_json zones = ordered_json::array();
    for (const auto& p : params) {
        zones.push_back(ordered_json{{"growth_rate", p.growth_rate},
                                     {"saturation", p.saturation},
                                     {"humidity_mean", p.humidity_mean},
                                     {"humidity_amplitude", p.humidity_amplitude},
                                     {"humidity_period", p.humidity_period},
                                     {"temperature_mean", p.temperature_mean},
                                     {"temperature_amplitude", p.temperature_amplitude},
                                     {"temperature_period", p.temperature_period},
                                     {"noise_scale", p.noise_scale},
                                     {"initial_pitting", p.initial_pitting}});
    }
    return ordered_json{{"zones", std::move(zones)}}.dump(2);
}

}  // namespace oqrc
