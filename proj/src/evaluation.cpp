#include "gbod/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gbod/util.hpp"

namespace gbod::eval {

namespace {

void check_binary(const std::vector<double>& probs, const std::vector<int>& labels) {
    if (probs.size() != labels.size() || probs.empty())
        throw std::invalid_argument("scores and labels must be nonempty and aligned");
    bool pos = false, neg = false;
    for (int y : labels) (y ? pos : neg) = true;
    if (!pos || !neg) throw std::invalid_argument("both classes must be present");
}

}  // namespace

double auroc(const std::vector<double>& probs, const std::vector<int>& labels) {
    check_binary(probs, labels);
    const int n = static_cast<int>(probs.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return probs[a] < probs[b]; });

    // average ranks over tie groups; rank sum of the positive class
    double n1 = 0.0, n0 = 0.0, rank_sum = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && probs[order[j]] == probs[order[i]]) ++j;
        double avg_rank = (static_cast<double>(i + 1) + j) / 2.0;  // 1-based
        for (int k = i; k < j; ++k)
            if (labels[order[k]]) rank_sum += avg_rank;
        i = j;
    }
    for (int y : labels) (y ? n1 : n0) += 1.0;
    return (rank_sum - n1 * (n1 + 1.0) / 2.0) / (n1 * n0);
}

std::vector<std::pair<double, double>> roc_points(const std::vector<double>& probs,
                                                  const std::vector<int>& labels) {
    check_binary(probs, labels);
    const int n = static_cast<int>(probs.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return probs[a] > probs[b]; });

    double n1 = 0.0, n0 = 0.0;
    for (int y : labels) (y ? n1 : n0) += 1.0;

    std::vector<std::pair<double, double>> pts;
    pts.emplace_back(0.0, 0.0);
    double tp = 0.0, fp = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && probs[order[j]] == probs[order[i]]) ++j;
        for (int k = i; k < j; ++k) (labels[order[k]] ? tp : fp) += 1.0;
        pts.emplace_back(fp / n0, tp / n1);
        i = j;
    }
    if (pts.back() != std::make_pair(1.0, 1.0)) pts.emplace_back(1.0, 1.0);
    return pts;
}

std::pair<double, double> precision_recall(const std::vector<double>& probs,
                                           const std::vector<int>& labels, double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("precision_recall: t must be in (0,1)");
    if (probs.size() != labels.size() || probs.empty())
        throw std::invalid_argument("precision_recall: scores and labels must be aligned");
    double truth = 0.0;
    for (int y : labels) truth += y;
    if (truth == 0.0) throw std::invalid_argument("precision_recall: no ground-truth outliers");

    const int n = static_cast<int>(probs.size());
    std::vector<double> sorted = probs;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const long o = std::min<long>(std::max<long>(ceil_index(t * n), 1), n);
    const double theta = sorted[o - 1];

    double identified = 0.0, hits = 0.0;
    for (int i = 0; i < n; ++i)
        if (probs[i] > theta) {
            identified += 1.0;
            if (labels[i]) hits += 1.0;
        }
    double precision = identified > 0.0 ? hits / identified : 0.0;
    return {precision, hits / truth};
}

std::pair<double, double> friedman_statistic(const RankTable& rt) {
    const int n_data = static_cast<int>(rt.ranks.size());
    if (n_data < 2) throw std::invalid_argument("friedman_statistic: need at least 2 datasets");
    const int m = static_cast<int>(rt.ranks[0].size());
    if (m < 2) throw std::invalid_argument("friedman_statistic: need at least 2 methods");
    std::vector<double> mean(m, 0.0);
    for (const auto& row : rt.ranks) {
        if (static_cast<int>(row.size()) != m)
            throw std::invalid_argument("friedman_statistic: ragged rank table");
        for (int c = 0; c < m; ++c) mean[c] += row[c];
    }
    for (double& v : mean) v /= n_data;
    return friedman_from_mean_ranks(mean, n_data);
}

std::pair<double, double> friedman_from_mean_ranks(const std::vector<double>& mean_ranks,
                                                   int n_datasets) {
    const int m = static_cast<int>(mean_ranks.size());
    if (m < 2 || n_datasets < 2)
        throw std::invalid_argument("friedman: need at least 2 methods and 2 datasets");
    const double n = n_datasets;
    double sumsq = 0.0;
    for (double r : mean_ranks) sumsq += r * r;
    double chi2 = 12.0 * n / (m * (m + 1.0)) * (sumsq - m * (m + 1.0) * (m + 1.0) / 4.0);
    double f = (n - 1.0) * chi2 / (n * (m - 1.0) - chi2);
    return {chi2, f};
}

double nemenyi_cd(int n_methods, int n_datasets, double q_phi) {
    if (n_methods < 2 || n_datasets < 1 || q_phi < 0.0)
        throw std::invalid_argument("nemenyi_cd: invalid arguments");
    return q_phi * std::sqrt(n_methods * (n_methods + 1.0) / (6.0 * n_datasets));
}

std::vector<double> ranks_descending(const std::vector<double>& values) {
    const int m = static_cast<int>(values.size());
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });
    std::vector<double> ranks(m);
    int i = 0;
    while (i < m) {
        int j = i;
        while (j < m && values[order[j]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i + 1) + j) / 2.0;
        for (int k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

}  // namespace gbod::eval
