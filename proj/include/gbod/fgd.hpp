#pragma once

#include <vector>

#include "gbod/dataset.hpp"
#include "gbod/granular_ball.hpp"

namespace gbod {

/// Symmetric relation matrix with unit diagonal, entries in [0,1].
struct SimilarityMatrix {
    int n = 0;
    std::vector<double> values;  // row-major n*n
    bool density_weighted = false;
    double lambda = 0.0;

    SimilarityMatrix() = default;
    explicit SimilarityMatrix(int n_) : n(n_), values(static_cast<std::size_t>(n_) * n_, 0.0) {}
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

struct GranuleSummary {
    std::vector<double> cardinalities;  // row sums, each in [1, n]
    std::vector<double> densities;      // cardinality / n
};

struct AttributeOrdering {
    std::vector<int> ordered_attrs;      // significance descending, ties by column index
    std::vector<double> per_attr_sig;    // Sig({a}) in ordered_attrs order
    std::vector<double> per_subset_sig;  // Sig(A_i) for the nested prefixes
};

/// Single-attribute relation: equality for nominal attributes, 1-|diff| under
/// the eps_a = std(a)/delta cutoff for numerical ones.
SimilarityMatrix attribute_similarity(const MixedDataset& ds, int attr, double delta);

/// Elementwise minimum across relation matrices.
SimilarityMatrix combine_min(const std::vector<SimilarityMatrix>& mats);

GranuleSummary granule_summary(const SimilarityMatrix& m);

/// Multiplies each entry by exp(-lambda * (Den(x_i) - Den(x_j))^2) with
/// densities taken from the matrix itself.
SimilarityMatrix density_weight(const SimilarityMatrix& m, double lambda);

/// -ln of the mean granule density; 0 for the all-ones matrix, ln(n) for the
/// identity.
double subset_significance(const SimilarityMatrix& m);

AttributeOrdering order_attributes(const MixedDataset& ds, double delta, double lambda);

/// Outlier score per sample: S(x) = 1 - mean_i Sig(A_i) * Den_{A_i}(x) over
/// the nested attribute prefixes.
std::vector<double> outlier_scores(const MixedDataset& ds, double delta, double lambda);

/// Same computation over a ball set (each ball counts once); returns one
/// score per ball. For an all-singleton view this equals the sample-level
/// scores exactly.
std::vector<double> outlier_scores(const ScaleView& view, const MixedDataset& ds, double delta,
                                   double lambda);

}  // namespace gbod
