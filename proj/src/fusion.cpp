#include "gbod/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gbod/fgd.hpp"
#include "gbod/util.hpp"

namespace gbod {

std::vector<double> map_to_probability(const std::vector<double>& scores, double t) {
    const int n = static_cast<int>(scores.size());
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("map_to_probability: t must be in (0,1)");
    const long o = ceil_index(t * n);
    if (o < 1 || o >= n)
        throw std::invalid_argument("map_to_probability: contamination leaves no inlier rank");

    std::vector<double> sorted = scores;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double s_o = sorted[o - 1];
    const double s_o1 = sorted[o];
    const double s_max = sorted.front();
    const double s_min = sorted.back();

    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) {
        if (scores[i] >= s_o)
            p[i] = (scores[i] - s_o) / (2.0 * (s_max - s_o) + 1e-12) + 0.5;
        else
            p[i] = (scores[i] - s_min) / (2.0 * (s_o1 - s_min) + 1e-12);
    }
    return p;
}

double view_weight(const std::vector<double>& probabilities) {
    if (probabilities.empty()) throw std::invalid_argument("view_weight: empty input");
    double h = 0.0;
    for (double p : probabilities) h += binary_entropy(p);
    return 1.0 - h / static_cast<double>(probabilities.size());
}

std::vector<double> sample_weights(const std::vector<std::vector<double>>& entropies,
                                   const std::vector<double>& view_weights) {
    const std::size_t k = entropies.size();
    if (k == 0 || view_weights.size() != k)
        throw std::invalid_argument("sample_weights: inconsistent inputs");
    const std::size_t n = entropies[0].size();
    std::vector<double> mu(n, 0.0);
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t i = 0; i < n; ++i) mu[i] += view_weights[v] * entropies[v][i];
    for (double& m : mu) m = 1.0 - m / static_cast<double>(k);
    return mu;
}

std::vector<double> fuse(const std::vector<std::vector<double>>& probabilities,
                         const std::vector<double>& view_weights) {
    const std::size_t k = probabilities.size();
    if (k == 0 || view_weights.size() != k)
        throw std::invalid_argument("fuse: inconsistent inputs");
    const std::size_t n = probabilities[0].size();
    double total = 0.0;
    for (double w : view_weights) total += w;
    std::vector<double> out(n, 0.0);
    if (total < 1e-12) {
        for (std::size_t v = 0; v < k; ++v)
            for (std::size_t i = 0; i < n; ++i) out[i] += probabilities[v][i];
        for (double& x : out) x /= static_cast<double>(k);
    } else {
        for (std::size_t v = 0; v < k; ++v)
            for (std::size_t i = 0; i < n; ++i) out[i] += view_weights[v] * probabilities[v][i];
        for (double& x : out) x /= total;
    }
    return out;
}

std::pair<double, double> thresholds(const std::vector<double>& fused, double t, double delta_tw) {
    const int n = static_cast<int>(fused.size());
    const long ia = ceil_index(n * (1.0 - t + delta_tw * t));
    const long ib = ceil_index(n * (1.0 - t - delta_tw * (1.0 - t)));
    if (ia < 1 || ia > n || ib < 1 || ib > n)
        throw std::invalid_argument("thresholds: order-statistic index out of range");
    std::vector<double> sorted = fused;
    std::sort(sorted.begin(), sorted.end());
    return {sorted[ia - 1], sorted[ib - 1]};
}

void partition(const std::vector<double>& fused, double alpha, double beta, std::vector<int>& pos,
               std::vector<int>& bnd, std::vector<int>& neg) {
    if (beta > alpha) throw std::invalid_argument("partition: beta must not exceed alpha");
    pos.clear();
    bnd.clear();
    neg.clear();
    for (int i = 0; i < static_cast<int>(fused.size()); ++i) {
        if (fused[i] >= alpha)
            pos.push_back(i);
        else if (fused[i] <= beta)
            neg.push_back(i);
        else
            bnd.push_back(i);
    }
}

std::vector<std::vector<double>> svm_features(const MixedDataset& ds) {
    const int n = ds.n_samples();
    int width = 0;
    for (int a = 0; a < ds.n_features(); ++a)
        width += ds.feature_kinds[a] == AttrKind::nominal
                     ? static_cast<int>(ds.categories[a].size())
                     : 1;
    std::vector<std::vector<double>> x(n, std::vector<double>(width, 0.0));
    for (int i = 0; i < n; ++i) {
        int col = 0;
        for (int a = 0; a < ds.n_features(); ++a) {
            if (ds.feature_kinds[a] == AttrKind::nominal) {
                x[i][col + static_cast<int>(ds.columns[a][i])] = 1.0;
                col += static_cast<int>(ds.categories[a].size());
            } else {
                x[i][col++] = ds.columns[a][i];
            }
        }
    }
    return x;
}

PipelineResult run_pipeline(const MixedDataset& ds, const PipelineConfig& cfg) {
    if (!ds.normalized) throw std::invalid_argument("run_pipeline: dataset must be normalized");
    const int n = ds.n_samples();
    const double t = cfg.contamination;

    PipelineResult res;
    res.hierarchy = generate_views(ds, cfg.delta);

    std::vector<std::vector<double>> probs, ents;
    std::vector<double> nus;
    for (const ScaleView& view : res.hierarchy.views) {
        ViewResult vr;
        vr.level = view.level;
        std::vector<double> ball_scores = outlier_scores(view, ds, cfg.delta, cfg.lambda);
        vr.scores.resize(n);
        for (int i = 0; i < n; ++i) vr.scores[i] = ball_scores[view.sample_to_ball[i]];
        vr.probabilities = map_to_probability(vr.scores, t);
        vr.entropies.resize(n);
        for (int i = 0; i < n; ++i) vr.entropies[i] = binary_entropy(vr.probabilities[i]);
        vr.view_weight = view_weight(vr.probabilities);
        probs.push_back(vr.probabilities);
        ents.push_back(vr.entropies);
        nus.push_back(vr.view_weight);
        res.fusion.per_view.push_back(std::move(vr));
    }

    res.fusion.contamination = t;
    res.fusion.delta_tw = cfg.delta_tw;
    res.fusion.fused = fuse(probs, nus);
    res.fusion.sample_weights = sample_weights(ents, nus);
    auto [alpha, beta] = thresholds(res.fusion.fused, t, cfg.delta_tw);
    res.fusion.alpha = alpha;
    res.fusion.beta = beta;
    partition(res.fusion.fused, alpha, beta, res.fusion.pos, res.fusion.bnd, res.fusion.neg);

    if (res.fusion.pos.empty() || res.fusion.neg.empty()) {
        res.warnings.push_back("empty POS or NEG region; final probabilities fall back to the fused vector");
        res.final_probability = res.fusion.fused;
        return res;
    }

    std::vector<std::vector<double>> all_features = svm_features(ds);
    wsvm::TrainingSet ts;
    ts.c_minus = cfg.c_minus;
    ts.c_plus = cfg.c_minus * t / (1.0 - t);
    if (cfg.invert_cost_ratio) std::swap(ts.c_plus, ts.c_minus);
    for (int i : res.fusion.pos) {
        ts.features.push_back(all_features[i]);
        ts.labels.push_back(1);
        ts.weights.push_back(res.fusion.sample_weights[i]);
    }
    for (int i : res.fusion.neg) {
        ts.features.push_back(all_features[i]);
        ts.labels.push_back(-1);
        ts.weights.push_back(res.fusion.sample_weights[i]);
    }

    res.model = wsvm::train(ts);
    if (!res.model.converged) {
        res.warnings.push_back("SVM did not converge; final probabilities fall back to the fused vector");
        res.final_probability = res.fusion.fused;
        return res;
    }
    std::vector<double> train_values = wsvm::decision_values(res.model, ts.features);
    auto [pa, pb] = wsvm::fit_platt(train_values, ts.labels);
    res.model.platt_a = pa;
    res.model.platt_b = pb;
    res.final_probability = wsvm::predict_probability(res.model, all_features);
    res.svm_used = true;
    return res;
}

}  // namespace gbod
