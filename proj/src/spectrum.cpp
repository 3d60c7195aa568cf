#include "spectrum.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oqrc {

Superoperator superop_of_unitary(const ComplexMatrix& u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw std::invalid_argument("superop_of_unitary: input must be square");
    }
    const double defect = unitarity_defect(u);
    if (defect > 1e-10) {
        throw std::invalid_argument("superop_of_unitary: input is not unitary, ||U^H U - I||_F = " +
                                    std::to_string(defect));
    }
    Superoperator s;
    s.n_qubits = static_cast<int>(std::lround(std::log2(static_cast<double>(u.rows()))));
    s.matrix = kron(u, u.conjugate());
    return s;
}

Superoperator superop_of_channel(const KrausChannel& channel) {
    const double defect = completeness_defect(channel);
    if (defect > 1e-8) {
        throw std::invalid_argument(
            "superop_of_channel: channel completeness violated, ||sum K^H K - I||_F = " +
            std::to_string(defect));
    }
    const std::size_t d = channel.dim();
    Superoperator s;
    s.n_qubits = static_cast<int>(std::lround(std::log2(static_cast<double>(d))));
    s.matrix = ComplexMatrix(d * d, d * d);
    for (const auto& k : channel.operators) s.matrix = s.matrix + kron(k, k.conjugate());
    return s;
}

ComplexVector step_spectrum(int n_qubits, std::span<const double> angles, double prefactor,
                            int depth, const std::vector<int>& measured) {
    if (n_qubits < 2 || n_qubits > 6) {
        throw std::invalid_argument("step_spectrum: n_qubits must be in [2, 6], got " +
                                    std::to_string(n_qubits));
    }
    const Superoperator su = superop_of_unitary(hea_step_unitary(n_qubits, angles, prefactor, depth));
    if (measured.empty()) return eig_general(su.matrix);
    const Superoperator sc = superop_of_channel(z_measurement_channel(n_qubits, measured));
    return eig_general(matmul(sc.matrix, su.matrix));
}

std::vector<double> SpectrumConfig::resolved_angles() const {
    if (!angles.empty()) {
        const std::size_t expected = static_cast<std::size_t>(n_qubits) * depth;
        if (angles.size() != expected) {
            throw std::invalid_argument("SpectrumConfig: expected " + std::to_string(expected) +
                                        " angles, got " + std::to_string(angles.size()));
        }
        return angles;
    }
    return hea_base_angles(n_qubits, depth, seed);
}

double mean_nontrivial_modulus(const ComplexVector& eigenvalues) {
    if (eigenvalues.size() < 2) {
        throw std::invalid_argument("mean_nontrivial_modulus: need at least 2 eigenvalues");
    }
    std::size_t fixed = 0;
    double best = std::abs(eigenvalues[0] - cxd(1.0, 0.0));
    for (std::size_t i = 1; i < eigenvalues.size(); ++i) {
        const double d = std::abs(eigenvalues[i] - cxd(1.0, 0.0));
        if (d < best) {
            best = d;
            fixed = i;
        }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (i != fixed) sum += std::abs(eigenvalues[i]);
    }
    return sum / static_cast<double>(eigenvalues.size() - 1);
}

std::vector<int> first_qubits(int count) {
    std::vector<int> q(static_cast<std::size_t>(std::max(count, 0)));
    std::iota(q.begin(), q.end(), 0);
    return q;
}

SpectrumSweepResult sweep_prefactor(const SpectrumConfig& base,
                                    const std::vector<double>& prefactors) {
    if (prefactors.empty()) {
        throw std::invalid_argument("sweep_prefactor: parameter list must be nonempty");
    }
    SpectrumSweepResult result;
    result.parameter_name = "prefactor";
    result.n_qubits = base.n_qubits;
    result.depth = base.depth;
    result.seed = base.seed;
    result.angles = base.resolved_angles();
    for (double p : prefactors) {
        SpectrumPoint point;
        point.parameter_value = p;
        point.eigenvalues = step_spectrum(base.n_qubits, result.angles, p, base.depth, base.measured);
        point.mean_nontrivial_modulus = mean_nontrivial_modulus(point.eigenvalues);
        result.points.push_back(std::move(point));
    }
    return result;
}

SpectrumSweepResult sweep_measurements(const SpectrumConfig& base,
                                       const std::vector<std::vector<int>>& measured_sets) {
    if (measured_sets.empty()) {
        throw std::invalid_argument("sweep_measurements: parameter list must be nonempty");
    }
    SpectrumSweepResult result;
    result.parameter_name = "measured_qubits";
    result.n_qubits = base.n_qubits;
    result.depth = base.depth;
    result.seed = base.seed;
    result.angles = base.resolved_angles();
    for (const auto& set : measured_sets) {
        SpectrumPoint point;
        point.parameter_value = static_cast<double>(set.size());
        point.eigenvalues =
            step_spectrum(base.n_qubits, result.angles, base.prefactor, base.depth, set);
        point.mean_nontrivial_modulus = mean_nontrivial_modulus(point.eigenvalues);
        result.points.push_back(std::move(point));
    }
    return result;
}

}  // namespace oqrc
