#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace semshift;

namespace {

EmbeddingStore shifted(const EmbeddingStore& s, const Vector& v, const std::string& language) {
    std::map<std::string, TokenCloud> clouds;
    for (const auto& [word, cloud] : s.clouds()) clouds.emplace(word, shift_cloud(cloud, v));
    return EmbeddingStore(SliceId{language, s.slice().period}, s.dim(), std::move(clouds));
}

}  // namespace

TEST_CASE("rectification of identical stores is zero") {
    std::mt19937_64 rng(1);
    std::map<std::string, TokenCloud> clouds;
    clouds.emplace("a", testing::random_cloud("a", 4, 5, rng));
    const EmbeddingStore s(SliceId{"en", "t0"}, 5, clouds);
    for (double x : rectification_vector(s, s).b) CHECK(x == 0.0);
}

TEST_CASE("rectification recovers a constant shift") {
    std::mt19937_64 rng(2);
    std::map<std::string, TokenCloud> clouds;
    for (int w = 0; w < 6; ++w) clouds.emplace("w" + std::to_string(w), testing::random_cloud("w" + std::to_string(w), 1 + w, 5, rng));
    const EmbeddingStore l1(SliceId{"en", "t0"}, 5, clouds);
    const Vector v = testing::random_vector(5, rng);
    const RectifiedVector r = rectification_vector(l1, shifted(l1, v, "de"));
    for (std::size_t i = 0; i < 5; ++i) CHECK(r.b[i] == doctest::Approx(v[i]).epsilon(1e-6));
    CHECK(r.from.language == "en");
    CHECK(r.to.language == "de");
}

TEST_CASE("rectification equals the weighted mean difference") {
    std::mt19937_64 rng(3);
    std::map<std::string, TokenCloud> c1;
    std::map<std::string, TokenCloud> c2;
    c1.emplace("x", testing::random_cloud("x", 3, 4, rng));
    c1.emplace("y", testing::random_cloud("y", 7, 4, rng));
    c2.emplace("z", testing::random_cloud("z", 5, 4, rng));
    const EmbeddingStore l1(SliceId{"en", "t0"}, 4, c1);
    const EmbeddingStore l2(SliceId{"de", "t0"}, 4, c2);
    Vector m1(4, 0.0);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 4; ++c) m1[c] += l1.cloud("x").row(r)[c] / 10.0;
    for (std::size_t r = 0; r < 7; ++r)
        for (std::size_t c = 0; c < 4; ++c) m1[c] += l1.cloud("y").row(r)[c] / 10.0;
    const Vector m2 = testing::naive_mean(l2.cloud("z"));
    const RectifiedVector rv = rectification_vector(l1, l2);
    for (std::size_t c = 0; c < 4; ++c) CHECK(rv.b[c] == doctest::Approx(m2[c] - m1[c]).epsilon(1e-9));
}

TEST_CASE("compare_changes buckets") {
    SUBCASE("both empty") {
        const XlingComparison c = compare_changes({}, {}, {}, {}, 0.4);
        CHECK(c.consistent_gains.empty());
        CHECK(c.divergent_gains_l1.empty());
        CHECK(c.consistent_losses.empty());
    }
    SUBCASE("one gain each") {
        ChangeReport r1{"mouse", {}, {2}, true};
        ChangeReport r2{"Maus", {}, {0}, true};
        const XlingComparison c = compare_changes(r1, r2, SimilarityMatrix::from_rows({{0.9}}), {}, 0.4);
        REQUIRE(c.consistent_gains.size() == 1);
        CHECK(c.consistent_gains[0] == SensePair{2, 0, 0.9});
    }
    SUBCASE("greedy 2x2") {
        ChangeReport r1{"a", {}, {0, 1}, true};
        ChangeReport r2{"b", {}, {0, 1}, true};
        const auto sims = SimilarityMatrix::from_rows({{0.9, 0.5}, {0.5, 0.1}});
        const XlingComparison c = compare_changes(r1, r2, sims, {}, 0.4);
        REQUIRE(c.consistent_gains.size() == 1);
        CHECK(c.consistent_gains[0].l1 == 0);
        CHECK(c.consistent_gains[0].l2 == 0);
        CHECK(c.divergent_gains_l1 == std::vector<std::size_t>{1});
        CHECK(c.divergent_gains_l2 == std::vector<std::size_t>{1});
    }
    SUBCASE("optimal pairing maximizes the number of pairs") {
        ChangeReport r1{"a", {}, {0, 1}, true};
        ChangeReport r2{"b", {}, {0, 1}, true};
        const auto sims = SimilarityMatrix::from_rows({{0.9, 0.8}, {0.7, 0.1}});
        CHECK(compare_changes(r1, r2, sims, {}, 0.4, Pairing::greedy).consistent_gains.size() == 1);
        CHECK(compare_changes(r1, r2, sims, {}, 0.4, Pairing::optimal).consistent_gains.size() == 2);
    }
    SUBCASE("losses") {
        ChangeReport r1{"a", {1}, {}, true};
        ChangeReport r2{"b", {0}, {}, true};
        const XlingComparison c = compare_changes(r1, r2, {}, SimilarityMatrix::from_rows({{0.2}}), 0.4);
        CHECK(c.consistent_losses.empty());
        CHECK(c.divergent_losses_l1 == std::vector<std::size_t>{1});
        CHECK(c.divergent_losses_l2 == std::vector<std::size_t>{0});
    }
    SUBCASE("shape mismatch") {
        ChangeReport r1{"a", {}, {0}, true};
        CHECK_THROWS_AS(compare_changes(r1, {}, SimilarityMatrix::from_rows({{0.2}}), {}, 0.4), Error);
    }
}

TEST_CASE("topology score") {
    const Vector e{1.0, 0.0, 0.0};
    CHECK(topology_score(e, TokenCloud("c", 3, {2, 0, 0, 1, 0, 0})) == doctest::Approx(1.0));
    CHECK(topology_score(e, TokenCloud("c", 3, {0, 1, 0, 0, 0, 3})) == doctest::Approx(0.0));
    std::mt19937_64 rng(4);
    const TokenCloud cloud = testing::random_cloud("c", 9, 3, rng);
    double want = 0.0;
    for (std::size_t r = 0; r < 9; ++r) want += (1.0 - cosine_distance(e, cloud.row(r))) / 9.0;
    CHECK(topology_score(e, cloud) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("cross-lingual pipeline on shifted copies") {
    BenchmarkOptions opts;
    opts.words = 2;
    opts.changed = 1;
    const Benchmark bench = make_benchmark(opts);
    Vector v(opts.dim, 0.0);
    v[0] = 0.3;
    const EmbeddingStore d0 = shifted(bench.t0, v, "de");
    const EmbeddingStore d1 = shifted(bench.t1, v, "de");
    DetectionConfig cfg;
    cfg.cluster_params = {{0.34, 5}, {0.40, 0}};
    const Detector en(bench.t0, bench.t1, cfg);
    const Detector de(d0, d1, cfg);
    const XlingResult r = compare_word_pair(en, de, "target000", "target000", 0.4);
    CHECK(r.comparison.consistent_gains.size() == 1);
    CHECK(r.comparison.divergent_gains_l1.empty());
    CHECK(r.b_later.b[0] == doctest::Approx(0.3).epsilon(1e-5));
}
