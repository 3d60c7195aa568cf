#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "quantum.hpp"

namespace oqrc {

// Linear map on row-major vectorized density matrices; 4^n x 4^n.
struct Superoperator {
    int n_qubits = 0;
    ComplexMatrix matrix;
};

// rho -> U rho U^H as U (x) conj(U). Rejects non-unitary input.
Superoperator superop_of_unitary(const ComplexMatrix& u);

// rho -> sum_k K rho K^H as sum_k K (x) conj(K). Rejects incomplete channels.
Superoperator superop_of_channel(const KrausChannel& channel);

// Eigenvalues of one reservoir time-step: the measurement channel composed
// after the HEA unitary. An empty measured set gives the purely unitary step.
// Sorted by (|lambda| desc, arg asc).
ComplexVector step_spectrum(int n_qubits, std::span<const double> angles, double prefactor,
                            int depth, const std::vector<int>& measured);

inline constexpr std::uint64_t kDefaultAngleSeed = 20240917;

struct SpectrumConfig {
    int n_qubits = 4;
    int depth = 2;
    std::uint64_t seed = kDefaultAngleSeed;
    double prefactor = 1.0;
    std::vector<int> measured = {0};
    std::vector<double> angles;  // derived from seed when empty

    std::vector<double> resolved_angles() const;
};

struct SpectrumPoint {
    double parameter_value = 0.0;
    ComplexVector eigenvalues;
    double mean_nontrivial_modulus = 0.0;
};

struct SpectrumSweepResult {
    std::string parameter_name;
    int n_qubits = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    std::vector<double> angles;
    std::vector<SpectrumPoint> points;
};

// Mean modulus after dropping the one eigenvalue closest to 1 (the fixed
// point every trace-preserving step carries).
double mean_nontrivial_modulus(const ComplexVector& eigenvalues);

SpectrumSweepResult sweep_prefactor(const SpectrumConfig& base,
                                    const std::vector<double>& prefactors);

SpectrumSweepResult sweep_measurements(const SpectrumConfig& base,
                                       const std::vector<std::vector<int>>& measured_sets);

// The first `count` qubits, the placement convention for measurement sweeps.
std::vector<int> first_qubits(int count);

}  // namespace oqrc
