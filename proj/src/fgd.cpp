#include "gbod/fgd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gbod/util.hpp"

namespace gbod {

namespace {

void check_matrix(const SimilarityMatrix& m) {
    if (m.n <= 0 || m.values.size() != static_cast<std::size_t>(m.n) * m.n)
        throw std::invalid_argument("similarity matrix: inconsistent dimensions");
}

// Per-attribute relation over a ball set via the radius-adjusted similarity;
// singletons (radius 0) reduce to the sample-level formula.
SimilarityMatrix ball_attr_relation(const ScaleView& view, const MixedDataset& ds, int attr,
                                    double eps) {
    const int B = static_cast<int>(view.balls.size());
    const int m = ds.n_features();
    SimilarityMatrix out(B);
    const bool nominal = ds.feature_kinds[attr] == AttrKind::nominal;
    std::vector<double> rpow(B, 0.0);
    for (int i = 0; i < B; ++i)
        if (view.balls[i].radius > 0.0) rpow[i] = std::pow(view.balls[i].radius, 1.0 / m);
    for (int i = 0; i < B; ++i) {
        out.at(i, i) = 1.0;
        double ci = view.balls[i].center[attr];
        for (int j = i + 1; j < B; ++j) {
            double s;
            if (nominal) {
                s = ci == view.balls[j].center[attr] ? 1.0 : 0.0;
            } else {
                double dis =
                    std::max(std::abs(ci - view.balls[j].center[attr]) - (rpow[i] + rpow[j]), 0.0);
                s = dis <= eps ? 1.0 - dis : 0.0;
            }
            out.at(i, j) = s;
            out.at(j, i) = s;
        }
    }
    return out;
}

// Two-pass fold keeping at most two n x n matrices alive: the first pass
// scores each attribute alone, the second rebuilds them in significance
// order and folds into the running prefix relation.
template <typename BuildWeighted>
std::vector<double> scores_from_relations(int m, const BuildWeighted& build) {
    std::vector<double> sigs(m);
    int n = 0;
    for (int a = 0; a < m; ++a) {
        SimilarityMatrix w = build(a);
        n = w.n;
        sigs[a] = subset_significance(w);
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sigs[a] > sigs[b]; });

    std::vector<double> acc(n, 0.0);
    SimilarityMatrix prefix;
    for (int rank = 0; rank < m; ++rank) {
        SimilarityMatrix next = build(order[rank]);
        if (rank == 0) {
            prefix = std::move(next);
        } else {
            for (std::size_t k = 0; k < prefix.values.size(); ++k)
                prefix.values[k] = std::min(prefix.values[k], next.values[k]);
        }
        double sig = subset_significance(prefix);
        for (int i = 0; i < n; ++i) {
            double card = 0.0;
            for (int j = 0; j < n; ++j) card += prefix.at(i, j);
            acc[i] += sig * (card / n);
        }
    }
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = 1.0 - acc[i] / m;
    return s;
}

}  // namespace

SimilarityMatrix attribute_similarity(const MixedDataset& ds, int attr, double delta) {
    if (attr < 0 || attr >= ds.n_features())
        throw std::out_of_range("attribute_similarity: attribute index out of range");
    if (!(delta > 0.0)) throw std::invalid_argument("attribute_similarity: delta must be > 0");
    const int n = ds.n_samples();
    const auto& col = ds.columns[attr];
    SimilarityMatrix out(n);
    if (ds.feature_kinds[attr] == AttrKind::nominal) {
        for (int i = 0; i < n; ++i) {
            out.at(i, i) = 1.0;
            for (int j = i + 1; j < n; ++j) {
                double s = col[i] == col[j] ? 1.0 : 0.0;
                out.at(i, j) = s;
                out.at(j, i) = s;
            }
        }
    } else {
        double eps = population_std(col) / delta;
        for (int i = 0; i < n; ++i) {
            out.at(i, i) = 1.0;
            for (int j = i + 1; j < n; ++j) {
                double gap = std::abs(col[i] - col[j]);
                double s = gap <= eps ? 1.0 - gap : 0.0;
                out.at(i, j) = s;
                out.at(j, i) = s;
            }
        }
    }
    return out;
}

SimilarityMatrix combine_min(const std::vector<SimilarityMatrix>& mats) {
    if (mats.empty()) throw std::invalid_argument("combine_min: empty input");
    SimilarityMatrix out = mats[0];
    check_matrix(out);
    for (std::size_t k = 1; k < mats.size(); ++k) {
        if (mats[k].n != out.n) throw std::invalid_argument("combine_min: mismatched sizes");
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = std::min(out.values[i], mats[k].values[i]);
    }
    return out;
}

GranuleSummary granule_summary(const SimilarityMatrix& m) {
    check_matrix(m);
    GranuleSummary g;
    g.cardinalities.resize(m.n);
    g.densities.resize(m.n);
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.n; ++j) s += m.at(i, j);
        g.cardinalities[i] = s;
        g.densities[i] = s / m.n;
    }
    return g;
}

SimilarityMatrix density_weight(const SimilarityMatrix& m, double lambda) {
    check_matrix(m);
    if (lambda < 0.0) throw std::invalid_argument("density_weight: lambda must be >= 0");
    if (m.density_weighted)
        throw std::invalid_argument("density_weight: matrix already density weighted");
    GranuleSummary g = granule_summary(m);
    SimilarityMatrix out = m;
    out.density_weighted = true;
    out.lambda = lambda;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            double diff = g.densities[i] - g.densities[j];
            out.at(i, j) = m.at(i, j) * std::exp(-lambda * diff * diff);
        }
    return out;
}

double subset_significance(const SimilarityMatrix& m) {
    check_matrix(m);
    double total = 0.0;
    for (double v : m.values) total += v;
    return -std::log(total / (static_cast<double>(m.n) * m.n));
}

AttributeOrdering order_attributes(const MixedDataset& ds, double delta, double lambda) {
    const int m = ds.n_features();
    if (m < 1) throw std::invalid_argument("order_attributes: no features");
    std::vector<double> sigs(m);
    for (int a = 0; a < m; ++a)
        sigs[a] = subset_significance(density_weight(attribute_similarity(ds, a, delta), lambda));
    AttributeOrdering ord;
    ord.ordered_attrs.resize(m);
    std::iota(ord.ordered_attrs.begin(), ord.ordered_attrs.end(), 0);
    std::stable_sort(ord.ordered_attrs.begin(), ord.ordered_attrs.end(),
                     [&](int a, int b) { return sigs[a] > sigs[b]; });
    ord.per_attr_sig.resize(m);
    ord.per_subset_sig.resize(m);
    SimilarityMatrix prefix;
    for (int rank = 0; rank < m; ++rank) {
        int a = ord.ordered_attrs[rank];
        ord.per_attr_sig[rank] = sigs[a];
        SimilarityMatrix next = density_weight(attribute_similarity(ds, a, delta), lambda);
        if (rank == 0) {
            prefix = std::move(next);
        } else {
            for (std::size_t k = 0; k < prefix.values.size(); ++k)
                prefix.values[k] = std::min(prefix.values[k], next.values[k]);
        }
        ord.per_subset_sig[rank] = subset_significance(prefix);
    }
    return ord;
}

std::vector<double> outlier_scores(const MixedDataset& ds, double delta, double lambda) {
    const int m = ds.n_features();
    if (m < 1) throw std::invalid_argument("outlier_scores: no features");
    return scores_from_relations(m, [&](int a) {
        return density_weight(attribute_similarity(ds, a, delta), lambda);
    });
}

std::vector<double> outlier_scores(const ScaleView& view, const MixedDataset& ds, double delta,
                                   double lambda) {
    const int m = ds.n_features();
    if (m < 1) throw std::invalid_argument("outlier_scores: no features");
    return scores_from_relations(m, [&](int a) {
        double eps = ds.feature_kinds[a] == AttrKind::numerical
                         ? population_std(ds.columns[a]) / delta
                         : 0.0;
        return density_weight(ball_attr_relation(view, ds, a, eps), lambda);
    });
}

}  // namespace gbod
