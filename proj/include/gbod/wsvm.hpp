#pragma once

#include <utility>
#include <vector>

namespace gbod::wsvm {

/// Training set for the per-sample-weighted linear soft-margin SVM. The box
/// bound of dual variable k is weights[k] * (labels[k] > 0 ? c_plus : c_minus).
struct TrainingSet {
    std::vector<std::vector<double>> features;  // l x d
    std::vector<int> labels;                    // +1 / -1
    std::vector<double> weights;                // per-sample weights in [0,1]
    double c_plus = 1.0;
    double c_minus = 1.0;
};

struct WsvmModel {
    std::vector<double> w;
    double b = 0.0;
    double platt_a = 0.0;
    double platt_b = 0.0;
    bool converged = false;
    std::vector<double> dual_vars;
};

/// Solves the dual with SMO: two-variable analytic steps, second index chosen
/// by maximal |E_i - E_j|, per-sample box bounds, KKT tolerance tol, at most
/// max_passes sweeps.
WsvmModel train(const TrainingSet& ts, double tol = 1e-3, int max_passes = 200);

std::vector<double> decision_values(const WsvmModel& m,
                                    const std::vector<std::vector<double>>& features);

/// Fits sigmoid parameters (a, b) of P(y=+1|f) = 1/(1+exp(a*f+b)) by
/// regularized maximum likelihood with the smoothed targets
/// (N+ + 1)/(N+ + 2) and 1/(N- + 2), Newton steps with backtracking.
std::pair<double, double> fit_platt(const std::vector<double>& values,
                                    const std::vector<int>& labels);

std::vector<double> predict_probability(const WsvmModel& m,
                                        const std::vector<std::vector<double>>& features);

/// Dual objective (minimization form) at the model's dual variables.
double dual_objective(const TrainingSet& ts, const std::vector<double>& eta);

}  // namespace gbod::wsvm
