#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "gbod/fusion.hpp"
#include "gbod/util.hpp"

using namespace gbod;

namespace {

MixedDataset numeric_dataset(const std::vector<std::vector<double>>& cols) {
    MixedDataset ds;
    for (std::size_t a = 0; a < cols.size(); ++a) {
        ds.feature_names.push_back("f" + std::to_string(a));
        ds.feature_kinds.push_back(AttrKind::numerical);
        ds.columns.push_back(cols[a]);
        ds.categories.emplace_back();
    }
    ds.normalized = true;
    return ds;
}

}  // namespace

TEST_CASE("map_to_probability") {
    SUBCASE("hand-evaluated mapping at t = 0.5") {
        std::vector<double> p = map_to_probability({0.9, 0.7, 0.5, 0.3}, 0.5);
        CHECK(p[0] == doctest::Approx(1.0));
        CHECK(p[1] == doctest::Approx(0.5));
        CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(p[3] == doctest::Approx(0.0));
    }
    SUBCASE("constant scores map to one half") {
        for (double p : map_to_probability({0.4, 0.4, 0.4, 0.4}, 0.25))
            CHECK(p == doctest::Approx(0.5));
    }
    SUBCASE("rank monotone and range split") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> s(40);
        for (double& v : s) v = unit(rng);
        double t = 0.2;
        std::vector<double> p = map_to_probability(s, t);
        std::vector<double> sorted = s;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double s_o = sorted[ceil_index(t * s.size()) - 1];
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(p[i] >= 0.0);
            CHECK(p[i] <= 1.0);
            if (s[i] >= s_o)
                CHECK(p[i] >= 0.5);
            else
                CHECK(p[i] < 0.5);
            for (std::size_t j = 0; j < s.size(); ++j)
                if (s[i] > s[j]) CHECK(p[i] >= p[j]);
        }
    }
    SUBCASE("contamination too large for n") {
        CHECK_THROWS_AS(map_to_probability({1.0, 2.0}, 0.9), std::invalid_argument);
    }
}

TEST_CASE("view_weight") {
    CHECK(view_weight({0.5, 0.5, 0.5}) == doctest::Approx(0.0));
    CHECK(view_weight({0.0, 1.0, 1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(view_weight({1.0, 0.0, 0.5, 0.5}) == doctest::Approx(0.5));
}

TEST_CASE("sample_weights") {
    SUBCASE("certain sample gets weight 1") {
        std::vector<double> mu = sample_weights({{0.0, 1.0}, {0.0, 0.5}}, {0.8, 0.6});
        CHECK(mu[0] == doctest::Approx(1.0));
    }
    SUBCASE("fully uncertain sample under full view weights") {
        std::vector<double> mu = sample_weights({{1.0}, {1.0}}, {1.0, 1.0});
        CHECK(mu[0] == doctest::Approx(0.0));
    }
    SUBCASE("all view weights zero") {
        std::vector<double> mu = sample_weights({{1.0, 0.3}, {0.7, 0.9}}, {0.0, 0.0});
        CHECK(mu[0] == doctest::Approx(1.0));
        CHECK(mu[1] == doctest::Approx(1.0));
    }
}

TEST_CASE("fuse") {
    SUBCASE("single view") {
        std::vector<double> f = fuse({{0.2, 0.9}}, {0.4});
        CHECK(f[0] == doctest::Approx(0.2));
        CHECK(f[1] == doctest::Approx(0.9));
    }
    SUBCASE("weighted mean") {
        std::vector<double> f = fuse({{0.8}, {0.4}}, {1.0, 1.0});
        CHECK(f[0] == doctest::Approx(0.6));
    }
    SUBCASE("zero total weight falls back to the plain mean") {
        std::vector<double> f = fuse({{0.8}, {0.4}}, {0.0, 0.0});
        CHECK(f[0] == doctest::Approx(0.6));
    }
    SUBCASE("convex combination bounds") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<std::vector<double>> probs(3, std::vector<double>(15));
        for (auto& v : probs)
            for (double& x : v) x = unit(rng);
        std::vector<double> w = {unit(rng), unit(rng), unit(rng)};
        std::vector<double> f = fuse(probs, w);
        for (std::size_t i = 0; i < f.size(); ++i) {
            double lo = std::min({probs[0][i], probs[1][i], probs[2][i]});
            double hi = std::max({probs[0][i], probs[1][i], probs[2][i]});
            CHECK(f[i] >= lo - 1e-12);
            CHECK(f[i] <= hi + 1e-12);
        }
    }
}

TEST_CASE("thresholds and partition") {
    std::vector<double> p(100);
    for (int i = 0; i < 100; ++i) p[i] = (i + 1) / 100.0;

    SUBCASE("hand-evaluated order statistics") {
        auto [alpha, beta] = thresholds(p, 0.1, 0.7);
        CHECK(alpha == doctest::Approx(0.97));
        CHECK(beta == doctest::Approx(0.27));
        std::vector<int> pos, bnd, neg;
        partition(p, alpha, beta, pos, bnd, neg);
        CHECK(pos.size() == 4);
        CHECK(neg.size() == 27);
        CHECK(bnd.size() == 69);
    }
    SUBCASE("zero band collapses the thresholds") {
        auto [alpha, beta] = thresholds(p, 0.1, 0.0);
        CHECK(alpha == beta);
        std::vector<int> pos, bnd, neg;
        partition(p, alpha, beta, pos, bnd, neg);
        CHECK(bnd.empty());
    }
    SUBCASE("constant vector") {
        std::vector<double> c(10, 0.4);
        auto [alpha, beta] = thresholds(c, 0.2, 0.7);
        CHECK(alpha == 0.4);
        CHECK(beta == 0.4);
        std::vector<int> pos, bnd, neg;
        partition(c, alpha, beta, pos, bnd, neg);
        CHECK(pos.size() == 10);
        CHECK(bnd.empty());
        CHECK(neg.empty());
    }
    SUBCASE("generic region counts") {
        const int n = 100;
        const double t = 0.17, dtw = 0.55;
        auto [alpha, beta] = thresholds(p, t, dtw);
        std::vector<int> pos, bnd, neg;
        partition(p, alpha, beta, pos, bnd, neg);
        CHECK(static_cast<long>(pos.size()) == n - ceil_index(n * (1 - t + dtw * t)) + 1);
        CHECK(static_cast<long>(neg.size()) == ceil_index(n * (1 - t - dtw * (1 - t))));
        CHECK(pos.size() + bnd.size() + neg.size() == p.size());
    }
}

TEST_CASE("run_pipeline handles fully degenerate data") {
    MixedDataset ds = numeric_dataset({std::vector<double>(12, 0.5),
                                       std::vector<double>(12, 0.2)});
    PipelineConfig cfg;
    cfg.delta = 1.0;
    cfg.lambda = 10.0;
    cfg.contamination = 0.25;
    PipelineResult res = run_pipeline(ds, cfg);
    CHECK_FALSE(res.svm_used);
    CHECK_FALSE(res.warnings.empty());
    for (double v : res.final_probability)
        CHECK(v == doctest::Approx(res.final_probability[0]));
}

TEST_CASE("run_pipeline is deterministic") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> cols(3, std::vector<double>(40));
    for (auto& c : cols)
        for (double& v : c) v = unit(rng);
    MixedDataset ds = numeric_dataset(cols);
    PipelineConfig cfg;
    cfg.delta = 0.5;
    cfg.lambda = 5.0;
    cfg.contamination = 0.15;
    PipelineResult a = run_pipeline(ds, cfg);
    PipelineResult b = run_pipeline(ds, cfg);
    CHECK(a.final_probability == b.final_probability);
    CHECK(a.fusion.fused == b.fusion.fused);
}

TEST_CASE("svm_features one-hot expands nominal attributes") {
    MixedDataset ds;
    ds.feature_names = {"c", "v"};
    ds.feature_kinds = {AttrKind::nominal, AttrKind::numerical};
    ds.columns = {{0, 1, 2}, {0.1, 0.2, 0.3}};
    ds.categories = {{"x", "y", "z"}, {}};
    ds.normalized = true;
    auto f = svm_features(ds);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::vector<double>{1, 0, 0, 0.1});
    CHECK(f[1] == std::vector<double>{0, 1, 0, 0.2});
    CHECK(f[2] == std::vector<double>{0, 0, 1, 0.3});
}
