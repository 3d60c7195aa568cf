#include "quantum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace oqrc {

namespace {

void require_qubit(int n_qubits, int qubit, const char* op) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::invalid_argument(std::string(op) + ": qubit index " + std::to_string(qubit) +
                                    " out of range for " + std::to_string(n_qubits) + " qubits");
    }
}

std::size_t bit_mask(int n_qubits, int qubit) {
    return std::size_t{1} << (n_qubits - 1 - qubit);
}

}  // namespace

PureState PureState::zero(int n_qubits) { return basis(n_qubits, 0); }

PureState PureState::basis(int n_qubits, std::size_t index) {
    if (n_qubits < 1) throw std::invalid_argument("PureState: need at least 1 qubit");
    PureState s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, cxd(0.0, 0.0));
    if (index >= s.amplitudes.size()) {
        throw std::invalid_argument("PureState: basis index out of range");
    }
    s.amplitudes[index] = 1.0;
    return s;
}

double norm_squared(const PureState& state) {
    double s = 0.0;
    for (const auto& a : state.amplitudes) s += std::norm(a);
    return s;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("DensityMatrix: need at least 1 qubit");
    const std::size_t d = std::size_t{1} << n_qubits;
    DensityMatrix rho;
    rho.n_qubits = n_qubits;
    rho.matrix = (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d);
    return rho;
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    DensityMatrix rho;
    rho.n_qubits = state.n_qubits;
    rho.matrix = ComplexMatrix(state.dim(), state.dim());
    for (std::size_t r = 0; r < state.dim(); ++r)
        for (std::size_t c = 0; c < state.dim(); ++c)
            rho.matrix(r, c) = state.amplitudes[r] * std::conj(state.amplitudes[c]);
    return rho;
}

double completeness_defect(const KrausChannel& channel) {
    if (channel.operators.empty()) {
        throw std::invalid_argument("completeness_defect: empty channel");
    }
    const std::size_t d = channel.dim();
    ComplexMatrix sum(d, d);
    for (const auto& k : channel.operators) sum = sum + matmul(k.adjoint(), k);
    return frobenius_norm(sum - ComplexMatrix::identity(d));
}

ComplexMatrix ry_gate(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("ry_gate: non-finite angle");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return ComplexMatrix{{c, -s}, {s, c}};
}

PureState apply_1q(const PureState& state, const ComplexMatrix& gate, int qubit) {
    require_qubit(state.n_qubits, qubit, "apply_1q");
    if (gate.rows() != 2 || gate.cols() != 2) {
        throw std::invalid_argument("apply_1q: gate must be 2x2");
    }
    const std::size_t mask = bit_mask(state.n_qubits, qubit);
    PureState out = state;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (i & mask) continue;  // visit each (|0>,|1>) pair once
        const std::size_t j = i | mask;
        const cxd a0 = state.amplitudes[i];
        const cxd a1 = state.amplitudes[j];
        out.amplitudes[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
        out.amplitudes[j] = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
    return out;
}

PureState apply_cnot(const PureState& state, int control, int target) {
    require_qubit(state.n_qubits, control, "apply_cnot");
    require_qubit(state.n_qubits, target, "apply_cnot");
    if (control == target) {
        throw std::invalid_argument("apply_cnot: control and target must differ");
    }
    const std::size_t cm = bit_mask(state.n_qubits, control);
    const std::size_t tm = bit_mask(state.n_qubits, target);
    PureState out = state;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if ((i & cm) && !(i & tm)) std::swap(out.amplitudes[i], out.amplitudes[i | tm]);
    }
    return out;
}

PureState entangling_layer(const PureState& state) {
    if (state.n_qubits < 2) {
        throw std::invalid_argument("entangling_layer: needs at least 2 qubits");
    }
    PureState out = state;
    for (int i = 0; i < state.n_qubits; ++i)
        for (int j = i + 1; j < state.n_qubits; ++j) out = apply_cnot(out, i, j);
    return out;
}

double expectation_z(const PureState& state, int qubit) {
    require_qubit(state.n_qubits, qubit, "expectation_z");
    const std::size_t mask = bit_mask(state.n_qubits, qubit);
    double v = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        v += (i & mask) ? -p : p;
    }
    return v;
}

double expectation_zz(const PureState& state, int i, int j) {
    require_qubit(state.n_qubits, i, "expectation_zz");
    require_qubit(state.n_qubits, j, "expectation_zz");
    if (i == j) throw std::invalid_argument("expectation_zz: indices must differ");
    const std::size_t mi = bit_mask(state.n_qubits, i);
    const std::size_t mj = bit_mask(state.n_qubits, j);
    double v = 0.0;
    for (std::size_t b = 0; b < state.dim(); ++b) {
        const double p = std::norm(state.amplitudes[b]);
        const bool flip = (static_cast<bool>(b & mi) != static_cast<bool>(b & mj));
        v += flip ? -p : p;
    }
    return v;
}

KrausChannel z_measurement_channel(int n_qubits, const std::vector<int>& measured) {
    if (n_qubits < 1) throw std::invalid_argument("z_measurement_channel: need >= 1 qubit");
    if (measured.empty()) {
        throw std::invalid_argument("z_measurement_channel: measured set must be nonempty");
    }
    std::set<int> qubits;
    for (int q : measured) {
        require_qubit(n_qubits, q, "z_measurement_channel");
        qubits.insert(q);
    }
    const std::size_t d = std::size_t{1} << n_qubits;
    KrausChannel channel;
    channel.operators.reserve(std::size_t{1} << qubits.size());
    // One projector per outcome pattern of the measured qubits.
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << qubits.size()); ++pattern) {
        ComplexMatrix op(d, d);
        for (std::size_t b = 0; b < d; ++b) {
            bool match = true;
            std::size_t k = 0;
            for (int q : qubits) {
                const bool bit = (b & bit_mask(n_qubits, q)) != 0;
                const bool want = (pattern >> k) & 1;
                if (bit != want) {
                    match = false;
                    break;
                }
                ++k;
            }
            if (match) op(b, b) = 1.0;
        }
        channel.operators.push_back(std::move(op));
    }
    return channel;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel) {
    if (channel.operators.empty()) {
        throw std::invalid_argument("apply_channel: empty channel");
    }
    if (channel.dim() != rho.matrix.rows()) {
        throw std::invalid_argument("apply_channel: dimension mismatch, state is " +
                                    std::to_string(rho.matrix.rows()) + " but channel is " +
                                    std::to_string(channel.dim()));
    }
    DensityMatrix out;
    out.n_qubits = rho.n_qubits;
    out.matrix = ComplexMatrix(rho.matrix.rows(), rho.matrix.cols());
    for (const auto& k : channel.operators) {
        out.matrix = out.matrix + matmul(matmul(k, rho.matrix), k.adjoint());
    }
    return out;
}

ComplexMatrix hea_step_unitary(int n_qubits, std::span<const double> angles, double prefactor,
                               int depth) {
    if (n_qubits < 2) {
        throw std::invalid_argument("hea_step_unitary: needs at least 2 qubits");
    }
    if (depth < 1) throw std::invalid_argument("hea_step_unitary: depth must be >= 1");
    if (!std::isfinite(prefactor)) {
        throw std::invalid_argument("hea_step_unitary: non-finite prefactor");
    }
    const std::size_t expected = static_cast<std::size_t>(n_qubits) * depth;
    if (angles.size() != expected) {
        throw std::invalid_argument("hea_step_unitary: expected " + std::to_string(expected) +
                                    " angles, got " + std::to_string(angles.size()));
    }
    const std::size_t d = std::size_t{1} << n_qubits;
    ComplexMatrix u(d, d);
    for (std::size_t col = 0; col < d; ++col) {
        PureState s = PureState::basis(n_qubits, col);
        for (int layer = 0; layer < depth; ++layer) {
            for (int q = 0; q < n_qubits; ++q) {
                const double theta = prefactor * angles[static_cast<std::size_t>(layer) * n_qubits + q];
                s = apply_1q(s, ry_gate(theta), q);
            }
            s = entangling_layer(s);
        }
        for (std::size_t row = 0; row < d; ++row) u(row, col) = s.amplitudes[row];
    }
    return u;
}

std::vector<double> hea_base_angles(int n_qubits, int depth, std::uint64_t seed) {
    if (n_qubits < 1 || depth < 1) {
        throw std::invalid_argument("hea_base_angles: n_qubits and depth must be >= 1");
    }
    Rng rng(seed);
    std::vector<double> angles(static_cast<std::size_t>(n_qubits) * depth);
    for (auto& a : angles) a = rng.uniform(-M_PI, M_PI);
    return angles;
}

}  // namespace oqrc
