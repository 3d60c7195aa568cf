#include "qrc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "quantum.hpp"

namespace oqrc {

std::size_t OnionQrcConfig::feature_count() const {
    std::size_t n = 1;  // trailing constant
    for (const auto& layer : layers) n += static_cast<std::size_t>(layer.feature_count());
    return n;
}

std::vector<QrcLayerState> OnionQrcConfig::initial_states() const {
    std::vector<QrcLayerState> states;
    states.reserve(layers.size());
    for (const auto& layer : layers) states.push_back(QrcLayerState::initial(layer.n_qubits));
    return states;
}

std::vector<double> geometric_b_ladder(int n_layers, double b_center) {
    if (n_layers < 1) throw std::invalid_argument("geometric_b_ladder: need >= 1 layer");
    std::vector<double> ladder(static_cast<std::size_t>(n_layers));
    const double mid = (n_layers - 1) / 2.0;
    for (int i = 0; i < n_layers; ++i) {
        ladder[static_cast<std::size_t>(i)] = b_center * std::exp2(static_cast<double>(i) - mid);
    }
    return ladder;
}

OnionQrcConfig make_onion_config(int n_layers, const QrcLayerConfig& base) {
    const std::vector<double> ladder = geometric_b_ladder(n_layers, base.b);
    OnionQrcConfig config;
    config.layers.assign(static_cast<std::size_t>(n_layers), base);
    for (int i = 0; i < n_layers; ++i) {
        config.layers[static_cast<std::size_t>(i)].b = ladder[static_cast<std::size_t>(i)];
    }
    return config;
}

QrcStepOutput qrc_step(const QrcLayerConfig& config, const QrcLayerState& state, double x,
                       double humidity, double temperature) {
    const int n = config.n_qubits;
    if (n < 2) throw std::invalid_argument("qrc_step: needs at least 2 qubits");
    if (config.n_blocks < 0) throw std::invalid_argument("qrc_step: n_blocks must be >= 0");
    if (!std::isfinite(x) || !std::isfinite(humidity) || !std::isfinite(temperature)) {
        throw std::invalid_argument("qrc_step: non-finite input");
    }
    if (state.feedback.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("qrc_step: feedback has " +
                                    std::to_string(state.feedback.size()) + " angles, layer has " +
                                    std::to_string(n) + " qubits");
    }

    PureState s = PureState::zero(n);
    // Input column: the driven angle on qubit 0, feedback on the rest.
    s = apply_1q(s, ry_gate(config.a * x + config.c_h * humidity + config.c_t * temperature), 0);
    for (int q = 1; q < n; ++q) {
        s = apply_1q(s, ry_gate(config.b * state.feedback[static_cast<std::size_t>(q)]), q);
    }
    s = entangling_layer(s);
    // B block: feedback rotations, entangler, feedback rotations again.
    for (int block = 0; block < config.n_blocks; ++block) {
        for (int q = 0; q < n; ++q) {
            s = apply_1q(s, ry_gate(config.b * state.feedback[static_cast<std::size_t>(q)]), q);
        }
        s = entangling_layer(s);
        for (int q = 0; q < n; ++q) {
            s = apply_1q(s, ry_gate(config.b * state.feedback[static_cast<std::size_t>(q)]), q);
        }
    }

    QrcStepOutput out;
    out.features.reserve(static_cast<std::size_t>(config.feature_count()));
    out.next_state.feedback.resize(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        const double z = expectation_z(s, q);
        out.features.push_back(z);
        out.next_state.feedback[static_cast<std::size_t>(q)] =
            std::acos(std::clamp(z, -1.0, 1.0));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) out.features.push_back(expectation_zz(s, i, j));
    }
    return out;
}

OnionStepOutput onion_step(const OnionQrcConfig& config, const std::vector<QrcLayerState>& states,
                           double x, double humidity, double temperature) {
    if (config.layers.empty()) throw std::invalid_argument("onion_step: need >= 1 layer");
    if (states.size() != config.layers.size()) {
        throw std::invalid_argument("onion_step: " + std::to_string(states.size()) +
                                    " states for " + std::to_string(config.layers.size()) +
                                    " layers");
    }
    OnionStepOutput out;
    out.features.reserve(config.feature_count());
    out.next_states.reserve(states.size());
    for (std::size_t i = 0; i < config.layers.size(); ++i) {
        QrcStepOutput step = qrc_step(config.layers[i], states[i], x, humidity, temperature);
        out.features.insert(out.features.end(), step.features.begin(), step.features.end());
        out.next_states.push_back(std::move(step.next_state));
    }
    out.features.push_back(1.0);
    return out;
}

QrcFeatureRows qrc_teacher_forced(const OnionQrcConfig& config, std::span<const double> pitting,
                                  std::span<const double> humidity,
                                  std::span<const double> temperature) {
    if (pitting.size() < 2) {
        throw std::invalid_argument("qrc_teacher_forced: series must have at least 2 days");
    }
    if (humidity.size() < pitting.size() || temperature.size() < pitting.size()) {
        throw std::invalid_argument("qrc_teacher_forced: exogenous series shorter than pitting");
    }
    QrcFeatureRows rows;
    std::vector<QrcLayerState> states = config.initial_states();
    for (std::size_t d = 0; d + 1 < pitting.size(); ++d) {
        OnionStepOutput step = onion_step(config, states, pitting[d], humidity[d], temperature[d]);
        states = std::move(step.next_states);
        rows.features.push_back(std::move(step.features));
        rows.targets.push_back(pitting[d + 1]);
    }
    return rows;
}

std::vector<double> qrc_closed_loop(const OnionQrcConfig& config,
                                    const std::function<double(std::span<const double>)>& readout,
                                    std::span<const double> warmup_pitting,
                                    std::span<const double> humidity,
                                    std::span<const double> temperature, int warmup_days) {
    if (warmup_days < 1) throw std::invalid_argument("qrc_closed_loop: warmup must be >= 1 day");
    const std::size_t days = humidity.size();
    if (temperature.size() != days) {
        throw std::invalid_argument("qrc_closed_loop: humidity/temperature length mismatch");
    }
    const auto w0 = static_cast<std::size_t>(warmup_days);
    if (days < w0 + 2) {
        throw std::invalid_argument("qrc_closed_loop: horizon of " + std::to_string(days) +
                                    " days leaves no predictions after " +
                                    std::to_string(warmup_days) + " warm-up days");
    }
    if (warmup_pitting.size() < w0) {
        throw std::invalid_argument("qrc_closed_loop: warm-up needs " + std::to_string(w0) +
                                    " true pitting values");
    }

    std::vector<QrcLayerState> states = config.initial_states();
    std::vector<double> predictions;
    for (std::size_t d = 0; d + 3 <= days; ++d) {
        const double x = d < w0 ? warmup_pitting[d] : predictions.back();
        OnionStepOutput step = onion_step(config, states, x, humidity[d], temperature[d]);
        states = std::move(step.next_states);
        const double next = std::clamp(readout(step.features), 0.0, 1.0);
        if (d + 1 >= w0) predictions.push_back(next);
    }
    return predictions;
}

}  // namespace oqrc
