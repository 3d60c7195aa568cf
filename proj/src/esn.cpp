#include "esn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace oqrc {

namespace {

ComplexMatrix random_orthogonal(int n, Rng& rng) {
    Eigen::MatrixXd g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the sign ambiguity of the factorization so the draw is a
    // deterministic function of the seed.
    for (int c = 0; c < n; ++c) {
        if (rmat(c, c) < 0.0) q.col(c) *= -1.0;
    }
    ComplexMatrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = q(r, c);
    return out;
}

void validate_annulus(const AnnulusBlockConfig& config) {
    if (config.size < 1) throw std::invalid_argument("annulus block: size must be >= 1");
    if (!(config.eps0 >= 0.0) || !(config.eps0 <= config.eps1)) {
        throw std::invalid_argument("annulus block: need 0 <= eps0 <= eps1");
    }
    if (config.eps1 >= 1.0) {
        throw std::invalid_argument("annulus block: eps1 must be < 1 (echo state property)");
    }
}

}  // namespace

ComplexMatrix generate_esn_matrix(const EsnConfig& config) {
    if (config.size < 1) throw std::invalid_argument("generate_esn_matrix: size must be >= 1");
    if (!(config.spectral_radius_target > 0.0) || !(config.spectral_radius_target < 1.0)) {
        throw std::invalid_argument("generate_esn_matrix: spectral radius target must be in (0,1)");
    }
    const auto n = static_cast<std::size_t>(config.size);
    for (int attempt = 0; attempt < 3; ++attempt) {
        Rng rng(attempt == 0 ? config.seed : derive_seed(config.seed, static_cast<std::uint64_t>(attempt)));
        ComplexMatrix w(n, n);
        for (auto& e : w.entries()) e = rng.uniform(-1.0, 1.0);
        const double rho = spectral_radius(w);
        if (rho < 1e-12) continue;  // degenerate draw, retry with perturbed seed
        return (config.spectral_radius_target / rho) * w;
    }
    throw std::runtime_error("generate_esn_matrix: degenerate zero-spectrum draw after 3 attempts");
}

ComplexMatrix generate_annulus_matrix(const AnnulusBlockConfig& config, std::uint64_t seed) {
    validate_annulus(config);
    const int n = config.size;
    Rng rng(seed);
    ComplexMatrix canon(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    int placed = 0;
    while (placed + 1 < n) {
        const double r = rng.uniform(config.eps0, config.eps1);
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double c = r * std::cos(phi);
        const double s = r * std::sin(phi);
        canon(placed, placed) = c;
        canon(placed, placed + 1) = -s;
        canon(placed + 1, placed) = s;
        canon(placed + 1, placed + 1) = c;
        placed += 2;
    }
    if (placed < n) {
        const double r = rng.uniform(config.eps0, config.eps1);
        canon(placed, placed) = rng.coin() ? r : -r;
    }
    const ComplexMatrix q = random_orthogonal(n, rng);
    return matmul(matmul(q, canon), q.transpose());
}

ComplexMatrix onion_esn_matrix(const std::vector<AnnulusBlockConfig>& blocks, std::uint64_t seed) {
    if (blocks.empty()) throw std::invalid_argument("onion_esn_matrix: need at least one block");
    std::size_t total = 0;
    for (const auto& b : blocks) {
        validate_annulus(b);
        total += static_cast<std::size_t>(b.size);
    }
    ComplexMatrix w(total, total);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const ComplexMatrix wi = generate_annulus_matrix(blocks[i], derive_seed(seed, i));
        for (std::size_t r = 0; r < wi.rows(); ++r)
            for (std::size_t c = 0; c < wi.cols(); ++c) w(offset + r, offset + c) = wi(r, c);
        offset += wi.rows();
    }
    return w;
}

ComplexMatrix generate_input_matrix(int size, double input_scale, std::uint64_t seed) {
    if (size < 1) throw std::invalid_argument("generate_input_matrix: size must be >= 1");
    Rng rng(seed);
    ComplexMatrix w(static_cast<std::size_t>(size), 4);
    for (auto& e : w.entries()) e = rng.uniform(-input_scale, input_scale);
    return w;
}

EsnState esn_step(const ComplexMatrix& w_in, const ComplexMatrix& w, const EsnState& state,
                  double pitting, double humidity, double temperature) {
    const std::size_t n = w.rows();
    if (w.cols() != n) throw std::invalid_argument("esn_step: W must be square");
    if (w_in.rows() != n || w_in.cols() != 4) {
        throw std::invalid_argument("esn_step: W_in must be " + std::to_string(n) + "x4");
    }
    if (state.size() != n) {
        throw std::invalid_argument("esn_step: state has " + std::to_string(state.size()) +
                                    " entries, reservoir is " + std::to_string(n));
    }
    const double drive[4] = {1.0, pitting, humidity, temperature};
    EsnState next(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        double v = 0.0;
        for (std::size_t c = 0; c < 4; ++c) v += w_in(r, c).real() * drive[c];
        for (std::size_t c = 0; c < n; ++c) v += w(r, c).real() * state[c];
        next[r] = std::tanh(v);
    }
    return next;
}

EsnFeatureRows esn_teacher_forced(const ComplexMatrix& w_in, const ComplexMatrix& w,
                                  std::span<const double> pitting,
                                  std::span<const double> humidity,
                                  std::span<const double> temperature) {
    if (pitting.size() < 2) {
        throw std::invalid_argument("esn_teacher_forced: series must have at least 2 days");
    }
    if (humidity.size() < pitting.size() || temperature.size() < pitting.size()) {
        throw std::invalid_argument("esn_teacher_forced: exogenous series shorter than pitting");
    }
    EsnFeatureRows rows;
    EsnState state(w.rows(), 0.0);
    for (std::size_t d = 0; d + 1 < pitting.size(); ++d) {
        state = esn_step(w_in, w, state, pitting[d], humidity[d], temperature[d]);
        std::vector<double> row;
        row.reserve(4 + state.size());
        row.push_back(1.0);
        row.push_back(pitting[d]);
        row.push_back(humidity[d]);
        row.push_back(temperature[d]);
        row.insert(row.end(), state.begin(), state.end());
        rows.features.push_back(std::move(row));
        rows.targets.push_back(pitting[d + 1]);
    }
    return rows;
}

std::vector<double> esn_closed_loop(const ComplexMatrix& w_in, const ComplexMatrix& w,
                                    const std::function<double(std::span<const double>)>& readout,
                                    std::span<const double> warmup_pitting,
                                    std::span<const double> humidity,
                                    std::span<const double> temperature, int warmup_days) {
    if (warmup_days < 1) throw std::invalid_argument("esn_closed_loop: warmup must be >= 1 day");
    const std::size_t days = humidity.size();
    if (temperature.size() != days) {
        throw std::invalid_argument("esn_closed_loop: humidity/temperature length mismatch");
    }
    const auto w0 = static_cast<std::size_t>(warmup_days);
    if (days < w0 + 2) {
        throw std::invalid_argument("esn_closed_loop: horizon of " + std::to_string(days) +
                                    " days leaves no predictions after " +
                                    std::to_string(warmup_days) + " warm-up days");
    }
    if (warmup_pitting.size() < w0) {
        throw std::invalid_argument("esn_closed_loop: warm-up needs " + std::to_string(w0) +
                                    " true pitting values");
    }

    // Steps run for days 0..L-3; the step at day d consumes (x_d, h_d, t_d)
    // and predicts day d+1, so the returned horizon is days W..L-2.
    EsnState state(w.rows(), 0.0);
    std::vector<double> predictions;
    double x = 0.0;
    for (std::size_t d = 0; d + 3 <= days; ++d) {
        x = d < w0 ? warmup_pitting[d] : predictions.back();
        state = esn_step(w_in, w, state, x, humidity[d], temperature[d]);
        std::vector<double> row;
        row.reserve(4 + state.size());
        row.push_back(1.0);
        row.push_back(x);
        row.push_back(humidity[d]);
        row.push_back(temperature[d]);
        row.insert(row.end(), state.begin(), state.end());
        const double next = std::clamp(readout(row), 0.0, 1.0);
        if (d + 1 >= w0) predictions.push_back(next);
    }
    return predictions;
}

}  // namespace oqrc
