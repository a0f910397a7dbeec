#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "gbod/fgd.hpp"
#include "gbod/granular_ball.hpp"

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

MixedDataset uniform_dataset(int n, int d, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<double>> cols(d, std::vector<double>(n));
    for (auto& c : cols)
        for (auto& v : c) v = unit(rng);
    return numeric_dataset(cols);
}

void check_partition(const ScaleView& v, int n) {
    std::set<int> seen;
    for (const auto& b : v.balls) {
        REQUIRE(!b.members.empty());
        for (int i : b.members) {
            CHECK(!seen.count(i));
            seen.insert(i);
        }
    }
    CHECK(static_cast<int>(seen.size()) == n);
    for (int i = 0; i < n; ++i) {
        int bi = v.sample_to_ball[i];
        REQUIRE(bi >= 0);
        const auto& mb = v.balls[bi].members;
        CHECK(std::find(mb.begin(), mb.end(), i) != mb.end());
    }
}

}  // namespace

TEST_CASE("ball_from_members center and radius") {
    MixedDataset ds = numeric_dataset({{0.3, 0.0, 1.0}, {0.9, 0.0, 1.0}});
    SUBCASE("singleton") {
        GranularBall b = ball_from_members(ds, {0});
        CHECK(b.center == std::vector<double>{0.3, 0.9});
        CHECK(b.radius == 0.0);
    }
    SUBCASE("two members") {
        GranularBall b = ball_from_members(ds, {1, 2});
        CHECK(b.center[0] == doctest::Approx(0.5));
        CHECK(b.center[1] == doctest::Approx(0.5));
        CHECK(b.radius == doctest::Approx(std::sqrt(0.5)));
    }
    SUBCASE("empty member set") {
        CHECK_THROWS_AS(ball_from_members(ds, {}), std::invalid_argument);
    }
}

TEST_CASE("nominal center is the mode, ties to the smallest id") {
    MixedDataset ds;
    ds.feature_names = {"c"};
    ds.feature_kinds = {AttrKind::nominal};
    ds.columns = {{0, 0, 1}};
    ds.categories = {{"a", "b"}};
    ds.normalized = true;
    CHECK(ball_from_members(ds, {0, 1, 2}).center[0] == 0.0);

    ds.columns = {{1, 0, 1, 0}};
    CHECK(ball_from_members(ds, {0, 1, 2, 3}).center[0] == 0.0);  // tie -> smallest id
}

TEST_CASE("ball_attribute_similarity") {
    SUBCASE("singleton balls reduce to the sample-level formula") {
        // one attribute, values with population std 0.25 -> delta 0.5 gives eps 0.5
        MixedDataset ds = numeric_dataset({{0.2, 0.4, 0.7, 0.9}});
        GranularBall b1 = ball_from_members(ds, {0});
        GranularBall b2 = ball_from_members(ds, {2});  // gap 0.5 <= eps
        double got = ball_attribute_similarity(b1, b2, ds, 0, 0.5);
        SimilarityMatrix m = attribute_similarity(ds, 0, 0.5);
        CHECK(got == m.at(0, 2));
        CHECK(got == doctest::Approx(0.5));
    }
    SUBCASE("radius term shrinks the center gap") {
        // |A| = 2, radii 0.01 -> 0.01^(1/2) = 0.1 each; centers differ 0.3,
        // so the adjusted gap is 0.1 (delta = 1.0 keeps it under the cutoff)
        MixedDataset ds = numeric_dataset({{0.0, 0.3, 0.5, 1.0}, {0.0, 0.3, 0.5, 1.0}});
        GranularBall a, b;
        a.center = {0.0, 0.5};
        a.radius = 0.01;
        b.center = {0.3, 0.5};
        b.radius = 0.01;
        CHECK(ball_attribute_similarity(a, b, ds, 0, 1.0) == doctest::Approx(0.9));
    }
    SUBCASE("overlapping balls are maximally similar") {
        MixedDataset ds = numeric_dataset({{0.0, 0.2, 0.5, 1.0}});
        GranularBall a, b;
        a.center = {0.2};
        a.radius = 0.04;  // 0.04^(1/1) = 0.04
        b.center = {0.25};
        b.radius = 0.04;
        CHECK(ball_attribute_similarity(a, b, ds, 0, 1.0) == 1.0);
    }
}

TEST_CASE("coarsen merge rules") {
    SUBCASE("duplicate samples merge") {
        MixedDataset ds = numeric_dataset({{0.5, 0.5}});
        ViewHierarchy h = generate_views(ds, 1.0);
        REQUIRE(h.views.size() == 2);
        CHECK(h.views[1].balls.size() == 1);
        CHECK(h.views[1].balls[0].members == std::vector<int>{0, 1});
    }
    SUBCASE("mutually dissimilar balls force-merge the closest pair") {
        // pairwise gaps all exceed eps = std/delta with a large delta
        MixedDataset ds = numeric_dataset({{0.0, 0.4, 1.0}});
        ViewHierarchy h = generate_views(ds, 50.0);
        REQUIRE(h.views.size() >= 2);
        CHECK(h.views[1].balls.size() == 2);
        // 0 and 0.4 are the closest centers
        CHECK(h.views[1].balls[0].members == std::vector<int>{0, 1});
    }
    SUBCASE("well-separated tight pairs merge pairwise") {
        std::vector<double> xs;
        for (int k = 0; k < 4; ++k) {
            xs.push_back(k * 0.3);
            xs.push_back(k * 0.3 + 0.005);
        }
        MixedDataset ds = numeric_dataset({xs});
        ScaleView level1 = generate_views(ds, 1e6).views[0];  // eps tiny: no sim merges
        ScaleView merged = coarsen(level1, ds, 3.0);          // eps covers the pair gap only
        CHECK(merged.balls.size() == 4);
        for (const auto& b : merged.balls) CHECK(b.members.size() == 2);
    }
    SUBCASE("single-ball input is rejected") {
        MixedDataset ds = numeric_dataset({{0.5}});
        ScaleView only = generate_views(ds, 1.0).views.back();
        CHECK_THROWS_AS(coarsen(only, ds, 1.0), std::invalid_argument);
    }
}

TEST_CASE("generate_views hierarchy shape") {
    SUBCASE("single sample") {
        MixedDataset ds = numeric_dataset({{0.7}});
        ViewHierarchy h = generate_views(ds, 1.0);
        CHECK(h.views.size() == 1);
        CHECK(h.views[0].balls.size() == 1);
    }
    SUBCASE("two identical samples") {
        MixedDataset ds = numeric_dataset({{0.7, 0.7}});
        ViewHierarchy h = generate_views(ds, 1.0);
        CHECK(h.views.size() == 2);
    }
    SUBCASE("counts strictly decrease and partitions hold") {
        MixedDataset ds = uniform_dataset(64, 2, 21);
        ViewHierarchy h = generate_views(ds, 0.5);
        CHECK(h.views.front().balls.size() == 64);
        CHECK(h.views.back().balls.size() == 1);
        for (std::size_t k = 0; k < h.views.size(); ++k) {
            check_partition(h.views[k], 64);
            if (k) CHECK(h.views[k].balls.size() < h.views[k - 1].balls.size());
        }
    }
    SUBCASE("log-depth on uniform data") {
        for (int n : {64, 256}) {
            MixedDataset ds = uniform_dataset(n, 2, 23);
            ViewHierarchy h = generate_views(ds, 0.25);
            int bound = static_cast<int>(std::ceil(std::log2(n))) + 2;
            CHECK(static_cast<int>(h.views.size()) <= bound);
        }
    }
}

TEST_CASE("singleton view scoring degenerates to the sample-level scores") {
    MixedDataset ds = uniform_dataset(20, 3, 29);
    ViewHierarchy h = generate_views(ds, 0.8);
    std::vector<double> ball_scores = outlier_scores(h.views[0], ds, 0.8, 5.0);
    std::vector<double> sample_scores = outlier_scores(ds, 0.8, 5.0);
    REQUIRE(ball_scores.size() == sample_scores.size());
    for (std::size_t i = 0; i < ball_scores.size(); ++i)
        CHECK(ball_scores[h.views[0].sample_to_ball[i]] == sample_scores[i]);
}
