#pragma once

#include <vector>

#include "gbod/dataset.hpp"

namespace gbod {

/// A group of samples summarized by its per-attribute center (mean for
/// numerical attributes, mode id for nominal ones) and the largest 2-norm
/// distance from a member to the center over the numerical attributes.
struct GranularBall {
    std::vector<int> members;     // sorted original sample indices
    std::vector<double> center;   // one entry per feature
    double radius = 0.0;
};

/// One granularity level: a partition of all samples into balls.
struct ScaleView {
    int level = 1;
    std::vector<GranularBall> balls;
    std::vector<int> sample_to_ball;
};

/// All levels, finest (n singletons) first, coarsest (one ball) last.
struct ViewHierarchy {
    std::vector<ScaleView> views;
};

GranularBall ball_from_members(const MixedDataset& ds, const std::vector<int>& members);

/// Ball-to-ball similarity on one attribute. Numerical attributes subtract
/// the radius term |r_i^(1/|A|) + r_j^(1/|A|)| from the center gap before
/// applying the epsilon cutoff (eps_a = std(a)/delta over the original
/// samples); nominal attributes compare mode ids. Singleton balls reproduce
/// the sample-level similarity exactly.
double ball_attribute_similarity(const GranularBall& a, const GranularBall& b,
                                 const MixedDataset& ds, int attr, double delta);

/// One coarsening round: greedy maximum-similarity pairing. Pairs are swept
/// in order of descending similarity (ties by index pair); a pair merges iff
/// both balls are still unmerged and the similarity is positive; leftovers
/// survive unchanged. If nothing merged, the two balls with the smallest
/// center distance are merged so every round makes progress.
ScaleView coarsen(const ScaleView& view, const MixedDataset& ds, double delta);

ViewHierarchy generate_views(const MixedDataset& ds, double delta);

void dump_views(const ViewHierarchy& h, const MixedDataset& ds, const std::string& path);

}  // namespace gbod
