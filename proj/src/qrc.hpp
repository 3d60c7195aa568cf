#pragma once

#include <functional>
#include <span>
#include <vector>

namespace oqrc {

// One quantum reservoir layer: the feed-forward circuit that encodes the
// pitting value on qubit 0, the feedback angles on the rest, and repeats
// n_blocks symmetric rotation/entangler blocks.
struct QrcLayerConfig {
    int n_qubits = 6;
    double a = -0.31;    // pitting input prefactor
    double b = 0.1;      // feedback prefactor
    double c_h = -0.30;  // humidity prefactor on the input angle
    double c_t = -0.30;  // temperature prefactor on the input angle
    int n_blocks = 2;

    // Per layer: n single-qubit Z readouts plus the n(n-1)/2 ZZ pairs.
    int feature_count() const { return n_qubits + n_qubits * (n_qubits - 1) / 2; }
};

struct QrcLayerState {
    std::vector<double> feedback;  // per-qubit angles arccos(<Z_i>) in [0, pi]

    static QrcLayerState initial(int n_qubits) {
        return {std::vector<double>(static_cast<std::size_t>(n_qubits), 0.0)};
    }
};

// Layers share the input prefactor a and differ in the feedback prefactor b.
struct OnionQrcConfig {
    std::vector<QrcLayerConfig> layers;

    // Layer feature blocks concatenated, then one trailing constant.
    std::size_t feature_count() const;
    std::vector<QrcLayerState> initial_states() const;
};

// Geometric ladder of feedback prefactors centred on b_center, e.g.
// {0.05, 0.1, 0.2} for 3 layers at 0.1. Spreads the spectral rings roughly
// evenly in log-modulus.
std::vector<double> geometric_b_ladder(int n_layers, double b_center);

OnionQrcConfig make_onion_config(int n_layers, const QrcLayerConfig& base);

struct QrcStepOutput {
    std::vector<double> features;  // [<Z_i>..., <Z_i Z_j>...] for this layer
    QrcLayerState next_state;
};

QrcStepOutput qrc_step(const QrcLayerConfig& config, const QrcLayerState& state, double x,
                       double humidity, double temperature);

struct OnionStepOutput {
    std::vector<double> features;  // layer blocks + trailing constant 1
    std::vector<QrcLayerState> next_states;
};

OnionStepOutput onion_step(const OnionQrcConfig& config, const std::vector<QrcLayerState>& states,
                           double x, double humidity, double temperature);

struct QrcFeatureRows {
    std::vector<std::vector<double>> features;
    std::vector<double> targets;
};

// Teacher-forced run: day d's features (driven by the true pitting) paired
// with the true pitting of day d+1. Feedback starts at all zeros.
QrcFeatureRows qrc_teacher_forced(const OnionQrcConfig& config, std::span<const double> pitting,
                                  std::span<const double> humidity,
                                  std::span<const double> temperature);

// Closed-loop run mirroring esn_closed_loop: warm up on true pitting, then
// feed back the clamped readout. Returns predictions for days W .. L-2.
std::vector<double> qrc_closed_loop(const OnionQrcConfig& config,
                                    const std::function<double(std::span<const double>)>& readout,
                                    std::span<const double> warmup_pitting,
                                    std::span<const double> humidity,
                                    std::span<const double> temperature, int warmup_days);

}  // namespace oqrc
