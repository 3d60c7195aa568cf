#pragma once

#include <string>
#include <vector>

#include "experiment.hpp"
#include "spectrum.hpp"

namespace oqrc {

// All emitters use a fixed key order and shortest round-trip number
// formatting, so identical inputs serialize byte-identically.

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& json);

std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& json);

// {config, per_zone: [{zone, r2, samples: [{sample, predicted[], true[]}]}],
//  pooled_r2, runtime_seconds}
std::string result_to_json(const ExperimentResult& result);

// zone,sample,day,true_pitting,predicted_pitting
std::string predictions_csv(const ExperimentResult& result);

// parameter_value,re_lambda,im_lambda
std::string spectrum_csv(const SpectrumSweepResult& result);
std::string spectrum_meta_json(const SpectrumSweepResult& result);

// model,size,pooled_r2,r2_zone_<id>...
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);

// row per day, column per feature
std::string feature_matrix_csv(const std::vector<std::vector<double>>& rows);

std::array<ZoneSynthParams, 4> zone_params_from_json(const std::string& json);
std::string zone_params_to_json(const std::array<ZoneSynthParams, 4>& params);

std::string format_double(double v);

}  // namespace oqrc
