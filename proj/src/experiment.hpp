#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "esn.hpp"
#include "qrc.hpp"
#include "ridge.hpp"

namespace oqrc {

enum class ModelKind { simple, crc, oqrc, ocqrc };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct ExperimentConfig {
    ModelKind kind = ModelKind::oqrc;
    int qrc_layers = 1;
    QrcLayerConfig qrc_base;         // shared a/c_h/c_t/n_blocks; b is the ladder centre
    std::vector<double> b_ladder;    // optional explicit override of the per-layer b values
    EsnConfig esn;                   // classical reservoir (crc and the ocqrc half)
    std::vector<AnnulusBlockConfig> esn_annuli;  // optional onion classical reservoir
    int warmup_days = 3;
    double ridge_alpha = 1e-6;
    std::uint64_t seed = 1;

    OnionQrcConfig onion_config() const;
    std::size_t feature_count() const;
};

struct ZoneModel {
    int zone = 0;
    RidgeModel readout;              // unused for the simple baseline
    std::vector<double> mean_curve;  // simple baseline only
};

struct TrainedModel {
    ExperimentConfig config;
    std::vector<ZoneNormalization> normalization;  // empty for the simple baseline
    std::vector<ZoneModel> zones;
    ComplexMatrix esn_w;     // stored by value so reproduction needs no reseeding
    ComplexMatrix esn_w_in;
};

struct SamplePrediction {
    int sample = 0;
    int first_day = 0;  // day index of predicted[0]
    std::vector<double> predicted;
    std::vector<double> truth;
};

struct ZoneResult {
    int zone = 0;
    R2Score r2;
    std::vector<SamplePrediction> samples;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ZoneResult> per_zone;
    R2Score pooled_r2;  // over the concatenated post-warm-up test points
    double runtime_seconds = 0.0;
};

// One reservoir per config, shared across zones; one ridge readout fitted
// per zone on the pooled teacher-forced rows of its training samples.
TrainedModel train_model(const ExperimentConfig& config, const CorrosionDataset& raw);

// Closed-loop prediction on each zone's test samples (3-day warm-up by
// default), per-zone and pooled R^2.
ExperimentResult evaluate(const TrainedModel& model, const CorrosionDataset& raw);

// Training-mean curve of each zone as the prediction for its test samples.
ExperimentResult simple_baseline(const CorrosionDataset& raw, int warmup_days = 3);

struct BenchmarkRow {
    std::string model;
    int size = 0;  // qubit count (or the derived classical size)
    R2Score pooled_r2;
    std::vector<std::pair<int, R2Score>> zone_r2;
    double runtime_seconds = 0.0;
};

// models x qubit counts grid. crc_size_mode selects how a qubit count maps
// to a classical reservoir size: "linear" (size = q) or "exp2" (size = 2^q).
std::vector<BenchmarkRow> benchmark(const std::vector<std::string>& models,
                                    const std::vector<int>& qubit_counts,
                                    const CorrosionDataset& raw, const ExperimentConfig& base,
                                    const std::string& crc_size_mode);

// Teacher-forced feature rows for one sample under this config's model kind
// (also the layout evaluate feeds to the readout in closed loop).
QrcFeatureRows model_teacher_forced(const ExperimentConfig& config, const TrainedModel& model,
                                    std::span<const double> pitting,
                                    std::span<const double> humidity,
                                    std::span<const double> temperature);

}  // namespace oqrc
