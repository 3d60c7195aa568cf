#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "linalg.hpp"

namespace oqrc {

struct EsnConfig {
    int size = 50;
    double spectral_radius_target = 0.9;  // must be in (0, 1)
    double input_scale = 0.5;
    std::uint64_t seed = 0;
};

// One annular band of the eigenvalue spectrum: eps0 <= |lambda| <= eps1 < 1.
struct AnnulusBlockConfig {
    int size = 0;
    double eps0 = 0.0;
    double eps1 = 0.0;
};

using EsnState = std::vector<double>;

// Seeded random real matrix rescaled to the exact target spectral radius.
ComplexMatrix generate_esn_matrix(const EsnConfig& config);

// Real matrix whose eigenvalue moduli all lie in [eps0, eps1]: a block
// diagonal of 2x2 rotation-scalings (plus one real eigenvalue when the size
// is odd) conjugated by a seeded random orthogonal matrix.
ComplexMatrix generate_annulus_matrix(const AnnulusBlockConfig& config, std::uint64_t seed);

// Block-diagonal assembly; the spectrum is the union of the block spectra.
ComplexMatrix onion_esn_matrix(const std::vector<AnnulusBlockConfig>& blocks, std::uint64_t seed);

// size x 4 input weights for [1, pitting, humidity, temperature], entries
// seeded uniform on [-input_scale, input_scale].
ComplexMatrix generate_input_matrix(int size, double input_scale, std::uint64_t seed);

// X' = tanh(W_in [1, P, h, t]^T + W x), entries strictly inside (-1, 1).
EsnState esn_step(const ComplexMatrix& w_in, const ComplexMatrix& w, const EsnState& state,
                  double pitting, double humidity, double temperature);

struct EsnFeatureRows {
    std::vector<std::vector<double>> features;  // rows of [1, P, h, t, state...]
    std::vector<double> targets;                // next-day pitting
};

EsnFeatureRows esn_teacher_forced(const ComplexMatrix& w_in, const ComplexMatrix& w,
                                  std::span<const double> pitting,
                                  std::span<const double> humidity,
                                  std::span<const double> temperature);

// Warm up on true pitting for `warmup_days` steps, then feed back the
// clamped readout. Returns the predictions for days warmup_days .. L-2.
std::vector<double> esn_closed_loop(const ComplexMatrix& w_in, const ComplexMatrix& w,
                                    const std::function<double(std::span<const double>)>& readout,
                                    std::span<const double> warmup_pitting,
                                    std::span<const double> humidity,
                                    std::span<const double> temperature, int warmup_days);

}  // namespace oqrc
