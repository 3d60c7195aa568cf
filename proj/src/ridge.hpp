#pragma once

#include <span>
#include <vector>

namespace oqrc {

// Linear readout trained by ridge regression on the normal equations. No
// separate intercept: the constant feature every reservoir appends supplies
// the bias term.
struct RidgeModel {
    std::vector<std::vector<double>> weights;  // targets x features
    double alpha = 1e-6;

    std::size_t feature_count() const { return weights.empty() ? 0 : weights.front().size(); }
    std::size_t target_count() const { return weights.size(); }

    std::vector<double> predict(std::span<const double> features) const;
    double predict_scalar(std::span<const double> features) const;
};

// Solves (X^T X + alpha I) W^T = X^T Y; one Cholesky shared across targets.
RidgeModel ridge_fit(const std::vector<std::vector<double>>& x,
                     const std::vector<std::vector<double>>& y, double alpha);

// 1 - SS_res / SS_tot with SS_tot about the mean of y_true. A constant
// y_true makes the score undefined unless the predictions match exactly
// (then 0.0); `defined` records which case occurred.
struct R2Score {
    double value = 0.0;
    bool defined = true;
};

R2Score r2_score(std::span<const double> y_true, std::span<const double> y_pred);

}  // namespace oqrc
