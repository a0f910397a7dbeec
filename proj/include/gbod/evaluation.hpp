#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gbod::eval {

/// Mann-Whitney AUROC with half credit for ties.
double auroc(const std::vector<double>& probs, const std::vector<int>& labels);

/// One point per distinct score threshold plus the (0,0) and (1,1) endpoints,
/// ordered from (0,0) to (1,1). Trapezoidal integration reproduces auroc().
std::vector<std::pair<double, double>> roc_points(const std::vector<double>& probs,
                                                  const std::vector<int>& labels);

/// Precision and recall of the identified set {x : P(x) > theta_t} with
/// theta_t the ceil(t*n)-th largest probability (strict inequality, so ties
/// at the threshold are excluded).
std::pair<double, double> precision_recall(const std::vector<double>& probs,
                                           const std::vector<int>& labels, double t);

struct RankTable {
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    std::vector<std::vector<double>> ranks;  // datasets x methods
};

/// Friedman statistics (tau_chi2, tau_F) from per-dataset ranks.
std::pair<double, double> friedman_statistic(const RankTable& rt);

/// Same from the column-average ranks directly.
std::pair<double, double> friedman_from_mean_ranks(const std::vector<double>& mean_ranks,
                                                   int n_datasets);

/// Nemenyi critical difference q_phi * sqrt(M(M+1)/(6N)).
double nemenyi_cd(int n_methods, int n_datasets, double q_phi);

/// Average ranks of one table row, rank 1 for the largest value, ties share
/// the mean of their positions.
std::vector<double> ranks_descending(const std::vector<double>& values);

}  // namespace gbod::eval
