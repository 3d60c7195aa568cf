#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqrc {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DayRecord {
    int day = 0;
    double pitting = 0.0;  // relative surface area fraction, in [0, 1]
    std::optional<double> tarnishing;  // parsed but unused
    double humidity = 0.0;
    double temperature = 0.0;
};

struct CorrosionSample {
    int zone = 0;
    int sample = 0;
    std::vector<DayRecord> days;  // day indices consecutive from 0
};

struct ZoneNormalization {
    int zone = 0;
    double humidity_min = 0.0, humidity_max = 0.0;
    double temperature_min = 0.0, temperature_max = 0.0;
};

struct ZoneSplit {
    int zone = 0;
    std::vector<int> train_ids;  // 10 samples
    std::vector<int> test_ids;   // 2 samples
};

// Four climate zones x 12 samples, each observed over the same number of
// days. Samples are kept sorted by (zone, sample).
struct CorrosionDataset {
    std::vector<CorrosionSample> samples;
    std::vector<ZoneSplit> split;
    bool normalized = false;
    std::vector<ZoneNormalization> normalization;  // filled once normalized
    int out_of_range_test_values = 0;  // test-sample values landing outside [0,1]

    std::vector<int> zone_ids() const;
    int days_per_sample() const;
    const CorrosionSample& sample_at(int zone, int sample) const;
    const ZoneSplit& split_for(int zone) const;
};

// CSV schema (header required): zone,sample,day,pitting,tarnishing,humidity,temperature
// The tarnishing column may be empty. Errors name the offending 1-based row.
CorrosionDataset load_csv(const std::string& path);
void save_csv(const CorrosionDataset& dataset, const std::string& path);

// Min-max normalization of humidity and temperature to [0, 1], fitted
// per zone on the training samples only and reapplied to the test samples
// (values outside the training range stay unclipped and are counted).
CorrosionDataset normalize(const CorrosionDataset& dataset);

// Reapply previously fitted parameters (e.g. from a stored model artifact).
CorrosionDataset apply_normalization(const CorrosionDataset& dataset,
                                     const std::vector<ZoneNormalization>& params);

struct ZoneSynthParams {
    double growth_rate = 1.0;       // r, must be >= 0
    double saturation = 0.5;        // K, must be in (0, 1]
    double humidity_mean = 70.0;
    double humidity_amplitude = 10.0;
    double humidity_period = 4.0;   // days
    double temperature_mean = 30.0;
    double temperature_amplitude = 4.0;
    double temperature_period = 6.0;
    double noise_scale = 0.0;       // sigma of the log-normal increment noise
    double initial_pitting = 0.01;  // P0, must be in [0.005, 0.02]
};

std::array<ZoneSynthParams, 4> default_zone_params();

// 4 zones x 12 samples x 14 days. Pitting integrates a logistic growth law
// driven by the zone's normalized humidity; exogenous channels are per-zone
// sinusoids with seeded jitter, shared by every sample in the zone.
CorrosionDataset synth_generate(std::uint64_t seed, const std::array<ZoneSynthParams, 4>& params);

inline constexpr int kSynthDays = 14;
inline constexpr int kSamplesPerZone = 12;
inline constexpr int kTrainPerZone = 10;

}  // namespace oqrc
