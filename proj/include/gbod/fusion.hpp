#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gbod/dataset.hpp"
#include "gbod/granular_ball.hpp"
#include "gbod/wsvm.hpp"

namespace gbod {

/// Per-view detection result, sample aligned (ball scores copied to members).
struct ViewResult {
    int level = 1;
    std::vector<double> scores;
    std::vector<double> probabilities;
    std::vector<double> entropies;
    double view_weight = 0.0;
};

struct FusionState {
    std::vector<ViewResult> per_view;
    std::vector<double> fused;           // weighted outlier probability P
    std::vector<double> sample_weights;  // mu(x)
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<int> pos, bnd, neg;
    double contamination = 0.0;
    double delta_tw = 0.7;
};

struct PipelineConfig {
    double delta = 1.0;          // similarity threshold (eps_a = std/delta)
    double lambda = 1.0;         // density weighting strength
    double contamination = 0.1;  // assumed outlier proportion t
    double delta_tw = 0.7;       // three-way band parameter
    double c_minus = 1.0;        // base SVM penalty; c_plus = c_minus * t/(1-t)
    std::uint64_t seed = 0;      // recorded for run metadata; the pipeline is deterministic
    bool invert_cost_ratio = false;
};

struct PipelineResult {
    std::vector<double> final_probability;  // P~ per sample
    FusionState fusion;
    wsvm::WsvmModel model;
    ViewHierarchy hierarchy;
    bool svm_used = false;  // false when the fused-vector fallback applied
    std::vector<std::string> warnings;
};

/// Two-branch piecewise-linear map of scores to [0,1] with o = ceil(t*n):
/// scores >= the o-th largest land in [0.5,1], the rest in [0,0.5).
/// Denominators carry a 1e-12 guard so fully tied score vectors map to 0.5.
std::vector<double> map_to_probability(const std::vector<double>& scores, double t);

/// nu_k = 1 - mean binary entropy of the probability vector.
double view_weight(const std::vector<double>& probabilities);

/// mu(x) = 1 - sum_k nu_k H_k(x) / K.
std::vector<double> sample_weights(const std::vector<std::vector<double>>& entropies,
                                   const std::vector<double>& view_weights);

/// Convex combination of per-view probabilities; uniform weights when the
/// total view weight vanishes.
std::vector<double> fuse(const std::vector<std::vector<double>>& probabilities,
                         const std::vector<double>& view_weights);

/// Ascending order statistics at the ceil(n(1-t+Dt)) and ceil(n(1-t-D(1-t)))
/// positions (1-indexed).
std::pair<double, double> thresholds(const std::vector<double>& fused, double t, double delta_tw);

/// POS = {P >= alpha}, NEG = {P <= beta} among the rest, BND = the band.
void partition(const std::vector<double>& fused, double alpha, double beta, std::vector<int>& pos,
               std::vector<int>& bnd, std::vector<int>& neg);

/// One-hot expands nominal attributes; numerical attributes pass through.
std::vector<std::vector<double>> svm_features(const MixedDataset& ds);

/// The end-to-end pipeline: multi-scale views, per-view scoring, probability
/// mapping, entropy-weighted fusion, three-way partition, weighted SVM on
/// POS/NEG with Platt calibration, final probabilities for all samples.
/// Falls back to the fused vector (with a warning) when POS or NEG is empty
/// or the SVM does not converge.
PipelineResult run_pipeline(const MixedDataset& ds, const PipelineConfig& cfg);

}  // namespace gbod
