#include "gbod/wsvm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gbod::wsvm {

namespace {

void validate(const TrainingSet& ts) {
    const std::size_t l = ts.features.size();
    if (l < 2) throw std::invalid_argument("wsvm::train: need at least two samples");
    if (ts.labels.size() != l || ts.weights.size() != l)
        throw std::invalid_argument("wsvm::train: inconsistent training set");
    bool pos = false, neg = false;
    for (int y : ts.labels) {
        if (y > 0) pos = true;
        else neg = true;
    }
    if (!pos || !neg) throw std::invalid_argument("wsvm::train: both classes required");
    for (const auto& row : ts.features)
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("wsvm::train: non-finite feature");
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

}  // namespace

WsvmModel train(const TrainingSet& ts, double tol, int max_passes) {
    validate(ts);
    const int l = static_cast<int>(ts.features.size());
    const int d = static_cast<int>(ts.features[0].size());

    std::vector<double> K(static_cast<std::size_t>(l) * l);
    for (int i = 0; i < l; ++i)
        for (int j = i; j < l; ++j) {
            double v = dot(ts.features[i], ts.features[j]);
            K[static_cast<std::size_t>(i) * l + j] = v;
            K[static_cast<std::size_t>(j) * l + i] = v;
        }
    auto k_at = [&](int i, int j) { return K[static_cast<std::size_t>(i) * l + j]; };

    std::vector<double> box(l);
    for (int i = 0; i < l; ++i)
        box[i] = ts.weights[i] * (ts.labels[i] > 0 ? ts.c_plus : ts.c_minus);

    std::vector<double> eta(l, 0.0);
    // f[k] = sum_j eta_j y_j K_jk (bias tracked separately)
    std::vector<double> f(l, 0.0);
    double b = 0.0;
    bool converged = false;
    bool examine_all = true;

    auto dual_obj = [&]() {
        double quad = 0.0, lin = 0.0;
        for (int i = 0; i < l; ++i) {
            if (eta[i] == 0.0) continue;
            lin += eta[i];
            quad += eta[i] * ts.labels[i] * f[i];
        }
        return 0.5 * quad - lin;
    };

    auto try_step = [&](int i, int j, double Ei) -> bool {
        if (i == j) return false;
        double Ej = f[j] + b - ts.labels[j];
        const double yi = ts.labels[i], yj = ts.labels[j];
        const double ai0 = eta[i], aj0 = eta[j];
        double L, H;
        if (yi != yj) {
            L = std::max(0.0, aj0 - ai0);
            H = std::min(box[j], box[i] + aj0 - ai0);
        } else {
            L = std::max(0.0, ai0 + aj0 - box[i]);
            H = std::min(box[j], ai0 + aj0);
        }
        if (L >= H) return false;
        double curv = 2.0 * k_at(i, j) - k_at(i, i) - k_at(j, j);
        double aj;
        if (curv < 0.0) {
            aj = std::min(std::max(aj0 - yj * (Ei - Ej) / curv, L), H);
        } else {
            // zero curvature (duplicate feature vectors): the objective is
            // linear along the pair direction, pick the better endpoint
            double before = dual_obj();
            auto apply = [&](double anew) {
                eta[j] = anew;
                eta[i] = std::min(std::max(ai0 + yi * yj * (aj0 - anew), 0.0), box[i]);
                for (int k = 0; k < l; ++k)
                    f[k] += yi * (eta[i] - ai0) * k_at(i, k) + yj * (anew - aj0) * k_at(j, k);
            };
            apply(L);
            double at_lo = dual_obj();
            apply(H);
            double at_hi = dual_obj();
            double pick = at_lo < at_hi - 1e-15 ? L : H;
            apply(pick);
            if (dual_obj() >= before - 1e-15) {
                apply(aj0);
                return false;
            }
            aj = pick;
        }
        if (std::abs(aj - aj0) < 1e-12) {
            if (curv >= 0.0) return true;  // endpoint move already applied
            return false;
        }
        if (curv < 0.0) {
            double ai = std::min(std::max(ai0 + yi * yj * (aj0 - aj), 0.0), box[i]);
            eta[i] = ai;
            eta[j] = aj;
            for (int k = 0; k < l; ++k)
                f[k] += yi * (ai - ai0) * k_at(i, k) + yj * (aj - aj0) * k_at(j, k);
        }
        double b1 = b - Ei - yi * (eta[i] - ai0) * k_at(i, i) - yj * (aj - aj0) * k_at(i, j);
        double b2 = b - Ej - yi * (eta[i] - ai0) * k_at(i, j) - yj * (aj - aj0) * k_at(j, j);
        if (eta[i] > 0.0 && eta[i] < box[i])
            b = b1;
        else if (eta[j] > 0.0 && eta[j] < box[j])
            b = b2;
        else
            b = (b1 + b2) / 2.0;
        return true;
    };

    auto optimize_pair = [&](int i, double Ei) -> bool {
        // second choice: maximal |Ei - Ej| first, then any partner that moves
        int best_j = -1;
        double best = -1.0;
        for (int k = 0; k < l; ++k) {
            if (k == i) continue;
            double gap = std::abs(Ei - (f[k] + b - ts.labels[k]));
            if (gap > best) {
                best = gap;
                best_j = k;
            }
        }
        if (best_j >= 0 && try_step(i, best_j, Ei)) return true;
        for (int off = 1; off < l; ++off)
            if (int j = (i + off) % l; j != best_j && try_step(i, j, Ei)) return true;
        return false;
    };

    for (int pass = 0; pass < max_passes; ++pass) {
        int changed = 0;
        for (int i = 0; i < l; ++i) {
            if (!examine_all && (eta[i] <= 0.0 || eta[i] >= box[i])) continue;
            double Ei = f[i] + b - ts.labels[i];
            double r = ts.labels[i] * Ei;
            if ((r < -tol && eta[i] < box[i]) || (r > tol && eta[i] > 0.0))
                if (optimize_pair(i, Ei)) ++changed;
        }
        if (examine_all) {
            if (changed == 0) {
                converged = true;
                break;
            }
            examine_all = false;
        } else if (changed == 0) {
            examine_all = true;
        }
    }

    WsvmModel model;
    model.w.assign(d, 0.0);
    for (int i = 0; i < l; ++i) {
        if (eta[i] == 0.0) continue;
        double c = eta[i] * ts.labels[i];
        for (int k = 0; k < d; ++k) model.w[k] += c * ts.features[i][k];
    }
    int free_count = 0;
    double free_sum = 0.0;
    for (int i = 0; i < l; ++i)
        if (eta[i] > 1e-9 && eta[i] < box[i] - 1e-9) {
            free_sum += ts.labels[i] - dot(model.w, ts.features[i]);
            ++free_count;
        }
    model.b = free_count > 0 ? free_sum / free_count : b;
    model.converged = converged;
    model.dual_vars = std::move(eta);
    return model;
}

std::vector<double> decision_values(const WsvmModel& m,
                                    const std::vector<std::vector<double>>& features) {
    std::vector<double> out;
    out.reserve(features.size());
    for (const auto& row : features) {
        if (row.size() != m.w.size())
            throw std::invalid_argument("decision_values: feature dimension mismatch");
        out.push_back(dot(m.w, row) + m.b);
    }
    return out;
}

std::pair<double, double> fit_platt(const std::vector<double>& values,
                                    const std::vector<int>& labels) {
    const std::size_t l = values.size();
    if (labels.size() != l) throw std::invalid_argument("fit_platt: size mismatch");
    double n1 = 0.0, n0 = 0.0;
    for (int y : labels) (y > 0 ? n1 : n0) += 1.0;
    if (n1 == 0.0 || n0 == 0.0) throw std::invalid_argument("fit_platt: both classes required");

    const double t_hi = (n1 + 1.0) / (n1 + 2.0);
    const double t_lo = 1.0 / (n0 + 2.0);
    std::vector<double> target(l);
    for (std::size_t k = 0; k < l; ++k) target[k] = labels[k] > 0 ? t_hi : t_lo;

    auto nll = [&](double a, double b) {
        double s = 0.0;
        for (std::size_t k = 0; k < l; ++k) {
            double z = a * values[k] + b;
            // -t*log(p) - (1-t)*log(1-p) with p = 1/(1+e^z), numerically stable
            if (z >= 0.0)
                s += target[k] * z + std::log1p(std::exp(-z));
            else
                s += (target[k] - 1.0) * z + std::log1p(std::exp(z));
        }
        return s;
    };

    double a = 0.0, b = std::log((n0 + 1.0) / (n1 + 1.0));
    double fval = nll(a, b);
    for (int iter = 0; iter < 100; ++iter) {
        double g1 = 0.0, g2 = 0.0, h11 = 1e-12, h22 = 1e-12, h12 = 0.0;
        for (std::size_t k = 0; k < l; ++k) {
            double z = a * values[k] + b;
            double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(z))
                                : std::exp(-z) / (1.0 + std::exp(-z));
            double dz = target[k] - p;
            double wk = p * (1.0 - p);
            g1 += values[k] * dz;
            g2 += dz;
            h11 += values[k] * values[k] * wk;
            h22 += wk;
            h12 += values[k] * wk;
        }
        if (std::abs(g1) < 1e-10 && std::abs(g2) < 1e-10) break;
        double det = h11 * h22 - h12 * h12;
        if (std::abs(det) < 1e-300) break;
        double da = -(h22 * g1 - h12 * g2) / det;
        double db = -(h11 * g2 - h12 * g1) / det;
        double step = 1.0;
        bool moved = false;
        while (step > 1e-10) {
            double fn = nll(a + step * da, b + step * db);
            if (fn < fval + 1e-12) {
                a += step * da;
                b += step * db;
                fval = fn;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if (!moved) break;
    }
    return {a, b};
}

std::vector<double> predict_probability(const WsvmModel& m,
                                        const std::vector<std::vector<double>>& features) {
    std::vector<double> f = decision_values(m, features);
    for (double& v : f) {
        double z = m.platt_a * v + m.platt_b;
        v = z >= 0.0 ? 1.0 / (1.0 + std::exp(z)) : std::exp(-z) / (1.0 + std::exp(-z));
        // keep strictly inside (0,1) even when the sigmoid saturates in double
        if (v >= 1.0) v = std::nextafter(1.0, 0.0);
        if (v <= 0.0) v = std::nextafter(0.0, 1.0);
    }
    return f;
}

double dual_objective(const TrainingSet& ts, const std::vector<double>& eta) {
    const int l = static_cast<int>(ts.features.size());
    double quad = 0.0, lin = 0.0;
    for (int i = 0; i < l; ++i) {
        if (eta[i] == 0.0) continue;
        lin += eta[i];
        for (int j = 0; j < l; ++j) {
            if (eta[j] == 0.0) continue;
            quad += eta[i] * eta[j] * ts.labels[i] * ts.labels[j] *
                    dot(ts.features[i], ts.features[j]);
        }
    }
    return 0.5 * quad - lin;
}

}  // namespace gbod::wsvm
