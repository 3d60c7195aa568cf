#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace oqrc {

namespace {

struct SampleSeries {
    std::vector<double> pitting;
    std::vector<double> humidity;
    std::vector<double> temperature;
};

SampleSeries series_of(const CorrosionSample& sample) {
    SampleSeries s;
    for (const auto& d : sample.days) {
        s.pitting.push_back(d.pitting);
        s.humidity.push_back(d.humidity);
        s.temperature.push_back(d.temperature);
    }
    return s;
}

// Hybrid step: quantum layer blocks, then the classical state, then one
// shared constant.
std::vector<double> hybrid_features(std::vector<double> qrc_features, const EsnState& state) {
    qrc_features.pop_back();  // the onion constant moves to the end
    qrc_features.insert(qrc_features.end(), state.begin(), state.end());
    qrc_features.push_back(1.0);
    return qrc_features;
}

// Either half may be absent (0-layer or 0-size degenerate hybrids).
std::vector<double> hybrid_step(const OnionQrcConfig& qrc, std::vector<QrcLayerState>& qstates,
                                const ComplexMatrix& w_in, const ComplexMatrix& w, EsnState& cstate,
                                double x, double humidity, double temperature) {
    std::vector<double> qfeatures{1.0};
    if (!qrc.layers.empty()) {
        OnionStepOutput step = onion_step(qrc, qstates, x, humidity, temperature);
        qstates = std::move(step.next_states);
        qfeatures = std::move(step.features);
    }
    if (w.rows() > 0) cstate = esn_step(w_in, w, cstate, x, humidity, temperature);
    return hybrid_features(std::move(qfeatures), cstate);
}

QrcFeatureRows hybrid_teacher_forced(const OnionQrcConfig& qrc, const ComplexMatrix& w_in,
                                     const ComplexMatrix& w, const SampleSeries& s) {
    if (s.pitting.size() < 2) {
        throw std::invalid_argument("hybrid teacher forcing: series must have at least 2 days");
    }
    QrcFeatureRows rows;
    std::vector<QrcLayerState> qstates = qrc.initial_states();
    EsnState cstate(w.rows(), 0.0);
    for (std::size_t d = 0; d + 1 < s.pitting.size(); ++d) {
        rows.features.push_back(
            hybrid_step(qrc, qstates, w_in, w, cstate, s.pitting[d], s.humidity[d], s.temperature[d]));
        rows.targets.push_back(s.pitting[d + 1]);
    }
    return rows;
}

std::vector<double> hybrid_closed_loop(const OnionQrcConfig& qrc, const ComplexMatrix& w_in,
                                       const ComplexMatrix& w, const RidgeModel& readout,
                                       const SampleSeries& s, int warmup_days) {
    const std::size_t days = s.humidity.size();
    const auto w0 = static_cast<std::size_t>(warmup_days);
    if (warmup_days < 1 || days < w0 + 2) {
        throw std::invalid_argument("hybrid closed loop: horizon too short for warm-up");
    }
    std::vector<QrcLayerState> qstates = qrc.initial_states();
    EsnState cstate(w.rows(), 0.0);
    std::vector<double> predictions;
    for (std::size_t d = 0; d + 3 <= days; ++d) {
        const double x = d < w0 ? s.pitting[d] : predictions.back();
        const std::vector<double> row =
            hybrid_step(qrc, qstates, w_in, w, cstate, x, s.humidity[d], s.temperature[d]);
        const double next = std::clamp(readout.predict_scalar(row), 0.0, 1.0);
        if (d + 1 >= w0) predictions.push_back(next);
    }
    return predictions;
}

void validate_config(const ExperimentConfig& config) {
    if (config.warmup_days < 1) {
        throw std::invalid_argument("experiment: warmup_days must be >= 1");
    }
    if (!(config.ridge_alpha > 0.0)) {
        throw std::invalid_argument("experiment: ridge_alpha must be positive");
    }
    const bool has_quantum = config.qrc_layers >= 1 || !config.b_ladder.empty();
    const bool has_classical = config.esn.size >= 1 || !config.esn_annuli.empty();
    if (config.kind == ModelKind::oqrc) {
        if (!has_quantum) throw std::invalid_argument("experiment: oqrc needs >= 1 layer");
        if (config.qrc_base.n_qubits < 2) {
            throw std::invalid_argument("experiment: quantum layers need >= 2 qubits");
        }
    }
    if (config.kind == ModelKind::crc && !has_classical) {
        throw std::invalid_argument("experiment: crc needs a reservoir of size >= 1");
    }
    // A hybrid may drop either half (degenerating to oqrc or a state-only
    // classical readout) but not both.
    if (config.kind == ModelKind::ocqrc && !has_quantum && !has_classical) {
        throw std::invalid_argument("experiment: ocqrc needs a quantum or classical half");
    }
}

bool uses_classical(ModelKind kind) { return kind == ModelKind::crc || kind == ModelKind::ocqrc; }

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::simple: return "simple";
        case ModelKind::crc: return "crc";
        case ModelKind::oqrc: return "oqrc";
        case ModelKind::ocqrc: return "ocqrc";
    }
    throw std::invalid_argument("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "simple") return ModelKind::simple;
    if (name == "crc") return ModelKind::crc;
    if (name == "oqrc") return ModelKind::oqrc;
    if (name == "ocqrc") return ModelKind::ocqrc;
    throw std::invalid_argument("unknown model kind '" + name +
                                "' (expected simple|crc|oqrc|ocqrc)");
}

OnionQrcConfig ExperimentConfig::onion_config() const {
    if (!b_ladder.empty()) {
        OnionQrcConfig config;
        config.layers.assign(b_ladder.size(), qrc_base);
        for (std::size_t i = 0; i < b_ladder.size(); ++i) config.layers[i].b = b_ladder[i];
        return config;
    }
    if (qrc_layers == 0) return {};
    return make_onion_config(qrc_layers, qrc_base);
}

std::size_t ExperimentConfig::feature_count() const {
    std::size_t classical = static_cast<std::size_t>(std::max(esn.size, 0));
    if (!esn_annuli.empty()) {
        classical = 0;
        for (const auto& b : esn_annuli) classical += static_cast<std::size_t>(b.size);
    }
    switch (kind) {
        case ModelKind::simple: return 0;
        case ModelKind::crc: return 4 + classical;
        case ModelKind::oqrc: return onion_config().feature_count();
        case ModelKind::ocqrc: return onion_config().feature_count() + classical;
    }
    throw std::invalid_argument("unknown model kind");
}

QrcFeatureRows model_teacher_forced(const ExperimentConfig& config, const TrainedModel& model,
                                    std::span<const double> pitting,
                                    std::span<const double> humidity,
                                    std::span<const double> temperature) {
    SampleSeries s;
    s.pitting.assign(pitting.begin(), pitting.end());
    s.humidity.assign(humidity.begin(), humidity.end());
    s.temperature.assign(temperature.begin(), temperature.end());
    switch (config.kind) {
        case ModelKind::crc: {
            EsnFeatureRows rows =
                esn_teacher_forced(model.esn_w_in, model.esn_w, s.pitting, s.humidity, s.temperature);
            return {std::move(rows.features), std::move(rows.targets)};
        }
        case ModelKind::oqrc:
            return qrc_teacher_forced(config.onion_config(), s.pitting, s.humidity, s.temperature);
        case ModelKind::ocqrc:
            return hybrid_teacher_forced(config.onion_config(), model.esn_w_in, model.esn_w, s);
        case ModelKind::simple:
            throw std::invalid_argument("simple baseline has no feature rows");
    }
    throw std::invalid_argument("unknown model kind");
}

TrainedModel train_model(const ExperimentConfig& config, const CorrosionDataset& raw) {
    validate_config(config);
    TrainedModel model;
    model.config = config;

    if (config.kind == ModelKind::simple) {
        const int days = raw.days_per_sample();
        for (const auto& split : raw.split) {
            ZoneModel zm;
            zm.zone = split.zone;
            zm.mean_curve.assign(static_cast<std::size_t>(days), 0.0);
            for (int id : split.train_ids) {
                const auto& s = raw.sample_at(split.zone, id);
                for (int d = 0; d < days; ++d) {
                    zm.mean_curve[static_cast<std::size_t>(d)] +=
                        s.days[static_cast<std::size_t>(d)].pitting;
                }
            }
            for (auto& v : zm.mean_curve) v /= static_cast<double>(split.train_ids.size());
            model.zones.push_back(std::move(zm));
        }
        return model;
    }

    const CorrosionDataset ds = normalize(raw);
    model.normalization = ds.normalization;

    if (uses_classical(config.kind) && (config.esn.size >= 1 || !config.esn_annuli.empty())) {
        if (!config.esn_annuli.empty()) {
            model.esn_w = onion_esn_matrix(config.esn_annuli, derive_seed(config.seed, 101));
            int total = 0;
            for (const auto& b : config.esn_annuli) total += b.size;
            model.esn_w_in =
                generate_input_matrix(total, config.esn.input_scale, derive_seed(config.seed, 102));
        } else {
            EsnConfig esn = config.esn;
            esn.seed = derive_seed(config.seed, 101);
            model.esn_w = generate_esn_matrix(esn);
            model.esn_w_in = generate_input_matrix(config.esn.size, config.esn.input_scale,
                                                   derive_seed(config.seed, 102));
        }
    }

    for (const auto& split : ds.split) {
        std::vector<std::vector<double>> features;
        std::vector<std::vector<double>> targets;
        for (int id : split.train_ids) {
            const SampleSeries s = series_of(ds.sample_at(split.zone, id));
            QrcFeatureRows rows =
                model_teacher_forced(config, model, s.pitting, s.humidity, s.temperature);
            for (std::size_t r = 0; r < rows.features.size(); ++r) {
                features.push_back(std::move(rows.features[r]));
                targets.push_back({rows.targets[r]});
            }
        }
        ZoneModel zm;
        zm.zone = split.zone;
        zm.readout = ridge_fit(features, targets, config.ridge_alpha);
        model.zones.push_back(std::move(zm));
    }
    return model;
}

ExperimentResult evaluate(const TrainedModel& model, const CorrosionDataset& raw) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig& config = model.config;
    const int days = raw.days_per_sample();
    const int warmup = config.warmup_days;
    if (days < warmup + 2) {
        throw std::invalid_argument("evaluate: dataset horizon of " + std::to_string(days) +
                                    " days is too short for " + std::to_string(warmup) +
                                    " warm-up days");
    }

    CorrosionDataset ds = raw;
    if (config.kind != ModelKind::simple) {
        ds = apply_normalization(raw, model.normalization);
    }

    ExperimentResult result;
    result.config = config;
    std::vector<double> pooled_true, pooled_pred;
    for (const auto& split : ds.split) {
        const auto zone_model =
            std::find_if(model.zones.begin(), model.zones.end(),
                         [&](const ZoneModel& z) { return z.zone == split.zone; });
        if (zone_model == model.zones.end()) {
            throw std::invalid_argument("evaluate: model has no readout for zone " +
                                        std::to_string(split.zone));
        }
        ZoneResult zr;
        zr.zone = split.zone;
        std::vector<double> zone_true, zone_pred;
        for (int id : split.test_ids) {
            const SampleSeries s = series_of(ds.sample_at(split.zone, id));
            SamplePrediction sp;
            sp.sample = id;
            sp.first_day = warmup;
            switch (config.kind) {
                case ModelKind::simple:
                    for (int d = warmup; d + 1 < days; ++d) {
                        sp.predicted.push_back(zone_model->mean_curve[static_cast<std::size_t>(d)]);
                    }
                    break;
                case ModelKind::crc:
                    sp.predicted = esn_closed_loop(
                        model.esn_w_in, model.esn_w,
                        [&](std::span<const double> f) { return zone_model->readout.predict_scalar(f); },
                        s.pitting, s.humidity, s.temperature, warmup);
                    break;
                case ModelKind::oqrc:
                    sp.predicted = qrc_closed_loop(
                        config.onion_config(),
                        [&](std::span<const double> f) { return zone_model->readout.predict_scalar(f); },
                        s.pitting, s.humidity, s.temperature, warmup);
                    break;
                case ModelKind::ocqrc:
                    sp.predicted = hybrid_closed_loop(config.onion_config(), model.esn_w_in,
                                                      model.esn_w, zone_model->readout, s, warmup);
                    break;
            }
            sp.truth.assign(s.pitting.begin() + warmup,
                            s.pitting.begin() + warmup + static_cast<std::ptrdiff_t>(sp.predicted.size()));
            zone_true.insert(zone_true.end(), sp.truth.begin(), sp.truth.end());
            zone_pred.insert(zone_pred.end(), sp.predicted.begin(), sp.predicted.end());
            zr.samples.push_back(std::move(sp));
        }
        zr.r2 = r2_score(zone_true, zone_pred);
        pooled_true.insert(pooled_true.end(), zone_true.begin(), zone_true.end());
        pooled_pred.insert(pooled_pred.end(), zone_pred.begin(), zone_pred.end());
        result.per_zone.push_back(std::move(zr));
    }
    result.pooled_r2 = r2_score(pooled_true, pooled_pred);
    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

ExperimentResult simple_baseline(const CorrosionDataset& raw, int warmup_days) {
    ExperimentConfig config;
    config.kind = ModelKind::simple;
    config.warmup_days = warmup_days;
    return evaluate(train_model(config, raw), raw);
}

std::vector<BenchmarkRow> benchmark(const std::vector<std::string>& models,
                                    const std::vector<int>& qubit_counts,
                                    const CorrosionDataset& raw, const ExperimentConfig& base,
                                    const std::string& crc_size_mode) {
    if (models.empty() || qubit_counts.empty()) {
        throw std::invalid_argument("benchmark: need at least one model and one qubit count");
    }
    if (crc_size_mode != "linear" && crc_size_mode != "exp2") {
        throw std::invalid_argument("benchmark: crc size mode must be 'linear' or 'exp2'");
    }
    std::vector<BenchmarkRow> rows;
    for (const auto& name : models) {
        for (int q : qubit_counts) {
            ExperimentConfig config = base;
            config.b_ladder.clear();
            std::string kind = name;
            int layers = base.qrc_layers;
            // Tokens like oqrc3 / ocqrc5 carry the layer count inline.
            const auto digit = kind.find_first_of("0123456789");
            if (digit != std::string::npos) {
                layers = std::stoi(kind.substr(digit));
                kind = kind.substr(0, digit);
            }
            config.kind = model_kind_from_string(kind);
            config.qrc_layers = layers;
            config.qrc_base.n_qubits = q;
            if (config.kind == ModelKind::crc || config.kind == ModelKind::ocqrc) {
                config.esn.size = crc_size_mode == "linear" ? q : (1 << q);
            }
            const auto start = std::chrono::steady_clock::now();
            const ExperimentResult result = evaluate(train_model(config, raw), raw);
            BenchmarkRow row;
            row.model = name;
            row.size = q;
            row.pooled_r2 = result.pooled_r2;
            for (const auto& zr : result.per_zone) row.zone_r2.emplace_back(zr.zone, zr.r2);
            row.runtime_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace oqrc
