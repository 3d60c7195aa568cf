#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "linalg.hpp"

namespace oqrc {

// Bit convention used throughout: qubit 0 is the most significant bit of the
// basis index (the top wire of a circuit diagram). For n qubits, qubit q maps
// to bit position n-1-q counted from the least significant bit.

struct PureState {
    int n_qubits = 0;
    ComplexVector amplitudes;  // length 2^n_qubits

    static PureState zero(int n_qubits);
    static PureState basis(int n_qubits, std::size_t index);

    std::size_t dim() const { return amplitudes.size(); }
};

double norm_squared(const PureState& state);

struct DensityMatrix {
    int n_qubits = 0;
    ComplexMatrix matrix;  // 2^n x 2^n

    static DensityMatrix maximally_mixed(int n_qubits);
    static DensityMatrix from_pure(const PureState& state);
};

struct KrausChannel {
    std::vector<ComplexMatrix> operators;  // all 2^n x 2^n

    std::size_t dim() const { return operators.empty() ? 0 : operators.front().rows(); }
};

// ||sum_k K^H K - I||_F; zero for a complete channel.
double completeness_defect(const KrausChannel& channel);

// [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]]
ComplexMatrix ry_gate(double theta);

PureState apply_1q(const PureState& state, const ComplexMatrix& gate, int qubit);

PureState apply_cnot(const PureState& state, int control, int target);

// CNOT(i, j) for every ordered pair i < j, applied in lexicographic order of
// (i, j). Matches Qiskit's "full" entanglement layout.
PureState entangling_layer(const PureState& state);

double expectation_z(const PureState& state, int qubit);
double expectation_zz(const PureState& state, int i, int j);

// Projective Z measurement of the given qubits as a Kraus channel: one
// diagonal 0/1 projector per outcome pattern, identity on unmeasured qubits.
KrausChannel z_measurement_channel(int n_qubits, const std::vector<int>& measured);

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel);

// One hardware-efficient-ansatz step as a 2^n x 2^n unitary: `depth`
// repetitions of [Ry(prefactor * angle) on each qubit, then entangling
// layer]. angles holds depth*n_qubits values, slice-major.
ComplexMatrix hea_step_unitary(int n_qubits, std::span<const double> angles, double prefactor,
                               int depth);

// The fixed base rotation angles for spectrum experiments, drawn once from a
// seeded uniform distribution on [-pi, pi].
std::vector<double> hea_base_angles(int n_qubits, int depth, std::uint64_t seed);

}  // namespace oqrc
