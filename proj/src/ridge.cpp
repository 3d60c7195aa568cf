#include "ridge.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "linalg.hpp"

namespace oqrc {

std::vector<double> RidgeModel::predict(std::span<const double> features) const {
    if (features.size() != feature_count()) {
        throw std::invalid_argument("RidgeModel::predict: expected " +
                                    std::to_string(feature_count()) + " features, got " +
                                    std::to_string(features.size()));
    }
    std::vector<double> out(weights.size(), 0.0);
    for (std::size_t t = 0; t < weights.size(); ++t) {
        double s = 0.0;
        for (std::size_t f = 0; f < features.size(); ++f) s += weights[t][f] * features[f];
        out[t] = s;
    }
    return out;
}

double RidgeModel::predict_scalar(std::span<const double> features) const {
    if (weights.size() != 1) {
        throw std::invalid_argument("RidgeModel::predict_scalar: model has " +
                                    std::to_string(weights.size()) + " targets");
    }
    return predict(features)[0];
}

RidgeModel ridge_fit(const std::vector<std::vector<double>>& x,
                     const std::vector<std::vector<double>>& y, double alpha) {
    if (x.empty() || x.size() != y.size()) {
        throw std::invalid_argument("ridge_fit: X has " + std::to_string(x.size()) +
                                    " rows but Y has " + std::to_string(y.size()));
    }
    if (!(alpha > 0.0)) throw std::invalid_argument("ridge_fit: alpha must be positive");
    const std::size_t rows = x.size();
    const std::size_t features = x.front().size();
    const std::size_t targets = y.front().size();
    if (features == 0 || targets == 0) {
        throw std::invalid_argument("ridge_fit: empty feature or target vectors");
    }
    for (const auto& row : x) {
        if (row.size() != features) throw std::invalid_argument("ridge_fit: ragged X rows");
    }
    for (const auto& row : y) {
        if (row.size() != targets) throw std::invalid_argument("ridge_fit: ragged Y rows");
    }

    ComplexMatrix gram(features, features);
    for (std::size_t i = 0; i < features; ++i) {
        for (std::size_t j = i; j < features; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows; ++r) s += x[r][i] * x[r][j];
            gram(i, j) = s;
            gram(j, i) = s;
        }
        gram(i, i) += alpha;
    }
    ComplexMatrix rhs(features, targets);
    for (std::size_t i = 0; i < features; ++i) {
        for (std::size_t t = 0; t < targets; ++t) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows; ++r) s += x[r][i] * y[r][t];
            rhs(i, t) = s;
        }
    }

    const ComplexMatrix wt = solve_hpd(gram, rhs);  // features x targets
    RidgeModel model;
    model.alpha = alpha;
    model.weights.assign(targets, std::vector<double>(features, 0.0));
    for (std::size_t t = 0; t < targets; ++t)
        for (std::size_t f = 0; f < features; ++f) model.weights[t][f] = wt(f, t).real();
    return model;
}

R2Score r2_score(std::span<const double> y_true, std::span<const double> y_pred) {
    if (y_true.empty() || y_true.size() != y_pred.size()) {
        throw std::invalid_argument("r2_score: series must be nonempty and equally long");
    }
    double mean = 0.0;
    for (double v : y_true) mean += v;
    mean /= static_cast<double>(y_true.size());

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
        ss_tot += (y_true[i] - mean) * (y_true[i] - mean);
    }
    if (ss_tot == 0.0) {
        if (ss_res == 0.0) return {0.0, true};
        return {-std::numeric_limits<double>::infinity(), false};
    }
    return {1.0 - ss_res / ss_tot, true};
}

}  // namespace oqrc
