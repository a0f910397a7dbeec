#include "gbod/granular_ball.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "gbod/util.hpp"

namespace gbod {

namespace {

std::vector<double> attribute_epsilons(const MixedDataset& ds, double delta) {
    std::vector<double> eps(ds.n_features(), 0.0);
    for (int a = 0; a < ds.n_features(); ++a)
        if (ds.feature_kinds[a] == AttrKind::numerical)
            eps[a] = population_std(ds.columns[a]) / delta;
    return eps;
}

double radius_term(double r, int n_features) {
    return r > 0.0 ? std::pow(r, 1.0 / n_features) : 0.0;
}

double attr_similarity(const GranularBall& a, const GranularBall& b, AttrKind kind, int attr,
                       double eps, int n_features) {
    if (kind == AttrKind::nominal)
        return a.center[attr] == b.center[attr] ? 1.0 : 0.0;
    double gap = std::abs(a.center[attr] - b.center[attr]);
    double dis = std::max(gap - std::abs(radius_term(a.radius, n_features) +
                                         radius_term(b.radius, n_features)),
                          0.0);
    return dis <= eps ? 1.0 - dis : 0.0;
}

// squared center distance over numerical attributes plus one per differing
// nominal mode; used only to pick the forced merge on stalled rounds
double center_distance_sq(const GranularBall& a, const GranularBall& b, const MixedDataset& ds) {
    double d2 = 0.0;
    for (int attr = 0; attr < ds.n_features(); ++attr) {
        if (ds.feature_kinds[attr] == AttrKind::numerical) {
            double g = a.center[attr] - b.center[attr];
            d2 += g * g;
        } else if (a.center[attr] != b.center[attr]) {
            d2 += 1.0;
        }
    }
    return d2;
}

ScaleView assemble_view(int level, std::vector<std::vector<int>> member_sets,
                        const MixedDataset& ds) {
    std::sort(member_sets.begin(), member_sets.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
    ScaleView v;
    v.level = level;
    v.sample_to_ball.assign(ds.n_samples(), -1);
    for (auto& members : member_sets) {
        int id = static_cast<int>(v.balls.size());
        for (int s : members) v.sample_to_ball[s] = id;
        v.balls.push_back(ball_from_members(ds, members));
    }
    return v;
}

}  // namespace

GranularBall ball_from_members(const MixedDataset& ds, const std::vector<int>& members) {
    if (members.empty()) throw std::invalid_argument("ball_from_members: empty member set");
    GranularBall b;
    b.members = members;
    std::sort(b.members.begin(), b.members.end());
    const int m = ds.n_features();
    b.center.resize(m);
    for (int a = 0; a < m; ++a) {
        if (ds.feature_kinds[a] == AttrKind::numerical) {
            double s = 0.0;
            for (int i : b.members) s += ds.columns[a][i];
            b.center[a] = s / static_cast<double>(b.members.size());
        } else {
            std::map<int, int> counts;
            for (int i : b.members) counts[static_cast<int>(ds.columns[a][i])]++;
            int best_id = -1, best_count = -1;
            for (auto [id, count] : counts)
                if (count > best_count) {  // map iterates ids ascending: ties keep the smallest
                    best_id = id;
                    best_count = count;
                }
            b.center[a] = static_cast<double>(best_id);
        }
    }
    b.radius = 0.0;
    for (int i : b.members) {
        double d2 = 0.0;
        for (int a = 0; a < m; ++a) {
            if (ds.feature_kinds[a] != AttrKind::numerical) continue;
            double g = ds.columns[a][i] - b.center[a];
            d2 += g * g;
        }
        b.radius = std::max(b.radius, std::sqrt(d2));
    }
    return b;
}

double ball_attribute_similarity(const GranularBall& a, const GranularBall& b,
                                 const MixedDataset& ds, int attr, double delta) {
    if (attr < 0 || attr >= ds.n_features())
        throw std::out_of_range("ball_attribute_similarity: attribute index out of range");
    double eps = ds.feature_kinds[attr] == AttrKind::numerical
                     ? population_std(ds.columns[attr]) / delta
                     : 0.0;
    return attr_similarity(a, b, ds.feature_kinds[attr], attr, eps, ds.n_features());
}

ScaleView coarsen(const ScaleView& view, const MixedDataset& ds, double delta) {
    const int B = static_cast<int>(view.balls.size());
    if (B < 2) throw std::invalid_argument("coarsen: need at least two balls");
    const int m = ds.n_features();
    std::vector<double> eps = attribute_epsilons(ds, delta);

    struct Pair {
        double sim;
        int i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<std::size_t>(B) * (B - 1) / 2);
    for (int i = 0; i < B; ++i) {
        for (int j = i + 1; j < B; ++j) {
            double sim = 1.0;
            for (int a = 0; a < m && sim > 0.0; ++a)
                sim = std::min(sim, attr_similarity(view.balls[i], view.balls[j],
                                                    ds.feature_kinds[a], a, eps[a], m));
            pairs.push_back({sim, i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    std::vector<bool> merged(B, false);
    std::vector<std::vector<int>> out;
    bool any = false;
    for (const Pair& p : pairs) {
        if (p.sim <= 0.0) break;
        if (merged[p.i] || merged[p.j]) continue;
        merged[p.i] = merged[p.j] = true;
        std::vector<int> joined = view.balls[p.i].members;
        joined.insert(joined.end(), view.balls[p.j].members.begin(),
                      view.balls[p.j].members.end());
        out.push_back(std::move(joined));
        any = true;
    }
    if (!any) {
        int bi = 0, bj = 1;
        double best = center_distance_sq(view.balls[0], view.balls[1], ds);
        for (int i = 0; i < B; ++i)
            for (int j = i + 1; j < B; ++j) {
                double d2 = center_distance_sq(view.balls[i], view.balls[j], ds);
                if (d2 < best) {
                    best = d2;
                    bi = i;
                    bj = j;
                }
            }
        merged[bi] = merged[bj] = true;
        std::vector<int> joined = view.balls[bi].members;
        joined.insert(joined.end(), view.balls[bj].members.begin(),
                      view.balls[bj].members.end());
        out.push_back(std::move(joined));
    }
    for (int i = 0; i < B; ++i)
        if (!merged[i]) out.push_back(view.balls[i].members);

    return assemble_view(view.level + 1, std::move(out), ds);
}

ViewHierarchy generate_views(const MixedDataset& ds, double delta) {
    if (!ds.normalized) throw std::invalid_argument("generate_views: dataset must be normalized");
    ViewHierarchy h;
    std::vector<std::vector<int>> singletons(ds.n_samples());
    for (int i = 0; i < ds.n_samples(); ++i) singletons[i] = {i};
    h.views.push_back(assemble_view(1, std::move(singletons), ds));
    while (static_cast<int>(h.views.back().balls.size()) > 1)
        h.views.push_back(coarsen(h.views.back(), ds, delta));
    return h;
}

void dump_views(const ViewHierarchy& h, const MixedDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "level\tball\tradius\tcenter\tmembers\n";
    char buf[40];
    for (const ScaleView& v : h.views) {
        for (std::size_t b = 0; b < v.balls.size(); ++b) {
            const GranularBall& ball = v.balls[b];
            std::snprintf(buf, sizeof buf, "%.9g", ball.radius);
            out << v.level << '\t' << b << '\t' << buf << '\t';
            for (std::size_t a = 0; a < ball.center.size(); ++a) {
                if (a) out << ',';
                if (ds.feature_kinds[a] == AttrKind::nominal)
                    out << ds.categories[a][static_cast<int>(ball.center[a])];
                else {
                    std::snprintf(buf, sizeof buf, "%.9g", ball.center[a]);
                    out << buf;
                }
            }
            out << '\t';
            for (std::size_t i = 0; i < ball.members.size(); ++i) {
                if (i) out << ' ';
                out << ball.members[i];
            }
            out << '\n';
        }
    }
}

}  // namespace gbod
