#include <doctest.h>

#include <cmath>
#include <set>

#include "mallows/bounds.hpp"
#include "mallows/montecarlo.hpp"
#include "mallows/report.hpp"
#include "test_util.hpp"

using namespace mallows;

TEST_CASE("run_trials is schedule independent") {
    const auto fn = [](std::int64_t trial, RngStream& rng) {
        return static_cast<double>(trial) + rng.next_double();
    };
    const auto serial = run_trials(200, 1, SeedSpec{5, 2}, fn);
    const auto parallel = run_trials(200, 4, SeedSpec{5, 2}, fn);
    CHECK(serial == parallel);
    CHECK(serial.size() == 200);
    // trial order preserved
    for (size_t i = 0; i < serial.size(); ++i)
        CHECK(std::floor(serial[i]) == static_cast<double>(i));
}

TEST_CASE("summarize") {
    const Estimate c = summarize({3.0, 3.0, 3.0, 3.0});
    CHECK(c.mean == doctest::Approx(3.0));
    CHECK(c.stderr_ == doctest::Approx(0.0));
    CHECK(c.count == 4);
    const Estimate e = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(e.mean == doctest::Approx(2.5));
    // sample sd sqrt(5/3), stderr sd/2
    CHECK(e.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("estimate_statistic against the exact oracle") {
    const auto one = estimate_statistic({10, 0.5}, [](const Permutation&) { return 1.0; }, 100,
                                        SeedSpec{41, 0});
    CHECK(one.mean == doctest::Approx(1.0));
    CHECK(one.stderr_ == doctest::Approx(0.0));

    const auto inv = estimate_statistic({2, 0.5},
                                        [](const Permutation& pi) {
                                            return static_cast<double>(inversion_count(pi));
                                        },
                                        100000, SeedSpec{41, 1}, 2);
    CHECK(std::fabs(inv.mean - 1.0 / 3.0) < 3 * inv.stderr_);

    const ExactDistribution uniform5 = enumerate_distribution({5, 1.0});
    const double exact_lis = exact_expectation(uniform5, [](const Permutation& pi) {
        return static_cast<double>(lis_length(pi));
    });
    const auto lis = estimate_statistic({5, 1.0},
                                        [](const Permutation& pi) {
                                            return static_cast<double>(lis_length(pi));
                                        },
                                        100000, SeedSpec{41, 2}, 2);
    CHECK(std::fabs(lis.mean - exact_lis) < 3 * lis.stderr_);
}

TEST_CASE("estimate_tails") {
    const std::vector<std::int64_t> thresholds{0, 2, 3, 4, 5, 6};
    const auto tails = estimate_tails({5, 0.5},
                                      [](const Permutation& pi) {
                                          return static_cast<std::int64_t>(lds_length(pi));
                                      },
                                      thresholds, 50000, SeedSpec{42, 0}, 2);
    REQUIRE(tails.size() == thresholds.size());
    CHECK(tails.front().p_hat == doctest::Approx(1.0)); // threshold 0
    CHECK(tails.back().p_hat == doctest::Approx(0.0));  // LDS <= 5
    for (size_t i = 1; i < tails.size(); ++i) CHECK(tails[i].p_hat <= tails[i - 1].p_hat);
    for (const auto& t : tails) {
        const double hits = t.p_hat * static_cast<double>(t.count);
        CHECK(std::fabs(hits - std::round(hits)) < 1e-9);
    }
    const ExactDistribution d = enumerate_distribution({5, 0.5});
    for (size_t i = 1; i + 1 < tails.size(); ++i) {
        const std::int64_t L = thresholds[i];
        const double exact = exact_event_probability(
            d, [L](const Permutation& pi) { return lds_length(pi) >= L; });
        const double se = std::max(tails[i].stderr_, 1e-4);
        CHECK(std::fabs(tails[i].p_hat - exact) < 4 * se);
    }
}

TEST_CASE("goodness_of_fit") {
    const auto good = goodness_of_fit({4, 0.7}, 20000, SeedSpec{43, 0}, 0.02, 2);
    CHECK(good.dof == 23);
    CHECK(good.pass);
    CHECK(good.tv <= 0.02);
    CHECK(good.chi_square_stat < good.chi_square_threshold);

    const auto good5 = goodness_of_fit({5, 0.5}, 200000, SeedSpec{43, 1}, 0.02, 2);
    CHECK(good5.dof == 119);
    CHECK(good5.pass);

    CHECK_THROWS(goodness_of_fit({8, 0.5}, 10000000, SeedSpec{43, 2}));
    CHECK_THROWS(goodness_of_fit({4, 0.5}, 100, SeedSpec{43, 3}));
}

TEST_CASE("goodness_of_fit negative control") {
    // samples drawn at q = 0.25 tested against the q = 0.5 oracle must fail
    const std::int64_t count = 20000;
    std::vector<std::int64_t> hist(static_cast<size_t>(factorial(4)), 0);
    RngStream rng(SeedSpec{44, 0}, 0);
    for (std::int64_t k = 0; k < count; ++k)
        ++hist[static_cast<size_t>(lehmer_rank(sample_mallows({4, 0.25}, rng)))];
    const ExactDistribution oracle = enumerate_distribution({4, 0.5});
    double tv = 0.0, chi = 0.0;
    for (size_t r = 0; r < hist.size(); ++r) {
        const double obs = static_cast<double>(hist[r]);
        const double exp_count = oracle.probs[r] * static_cast<double>(count);
        tv += 0.5 * std::fabs(obs / static_cast<double>(count) - oracle.probs[r]);
        chi += (obs - exp_count) * (obs - exp_count) / exp_count;
    }
    CHECK(tv > 0.02);
    CHECK(chi > chi_square_999(23));
}

TEST_CASE("chi_square_999 sanity") {
    // textbook quantiles: chi2_{0.999}(10) ~ 29.59, chi2_{0.999}(100) ~ 149.45
    CHECK(chi_square_999(10) == doctest::Approx(29.59).epsilon(0.01));
    CHECK(chi_square_999(100) == doctest::Approx(149.45).epsilon(0.01));
}

TEST_CASE("block_decomposition") {
    const Permutation pi({3, 1, 4, 2});
    const auto whole = block_decomposition(pi, 4);
    CHECK(whole.block_lis == std::vector<int>{2});
    CHECK(whole.sum == whole.lis);

    const auto ones = block_decomposition(pi, 1);
    CHECK(ones.block_lis == std::vector<int>{1, 1, 1, 1});
    CHECK(ones.sum == 4);
    CHECK(ones.lis == 2);

    const auto halves = block_decomposition(pi, 2);
    CHECK(halves.block_lis == std::vector<int>{1, 1});
    CHECK(halves.sum == 2);
    CHECK(halves.lis == 2);

    // ragged last block
    const auto ragged = block_decomposition(Permutation({5, 3, 1, 2, 4}), 2);
    CHECK(ragged.block_lis.size() == 3);
    CHECK(ragged.sum >= ragged.lis);

    CHECK_THROWS(block_decomposition(pi, 0));
    CHECK_THROWS(block_decomposition(pi, 5));

    // inequality on fuzzed input
    RngStream rng(SeedSpec{45, 0}, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_in(300));
        const Permutation p = testutil::random_permutation(n, rng);
        const int bs = static_cast<int>(rng.next_in(static_cast<std::uint64_t>(n)));
        const auto d = block_decomposition(p, bs);
        CHECK(d.lis <= d.sum);
        CHECK(static_cast<int>(d.block_lis.size()) == (n + bs - 1) / bs);
    }
}

TEST_CASE("greedy_window_subsequence validity") {
    RngStream rng(SeedSpec{46, 0}, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2000;
        const double q = 0.99;
        const ProcessRecord record = run_process(n, q, rng);
        const int L = 20;
        const IndexSequence idx = greedy_window_subsequence(record, L, 1.0);
        CHECK(static_cast<int>(idx.size()) <= L);
        const Permutation pi = reverse(replay_process(record));
        int prev_pos = 0, prev_val = 0;
        for (int pos : idx) {
            CHECK(pos > prev_pos);
            CHECK(pi.of(pos) > prev_val);
            prev_pos = pos;
            prev_val = pi.of(pos);
        }
    }
    // L=1 trivially returns at most one index
    const ProcessRecord record = run_process(1000, 0.99, rng);
    CHECK(greedy_window_subsequence(record, 1, 1.0).size() <= 1);
    // degenerate window rejected: 1/(1-q) already past the end of the line
    CHECK_THROWS(greedy_window_subsequence(run_process(5, 0.9, rng), 2, 1.0));
}

TEST_CASE("bounded_difference_experiment") {
    CHECK(bounded_difference_experiment(2, 0.5, 50, SeedSpec{47, 0}) == 1);
    CHECK(bounded_difference_experiment(200, 0.9, 2000, SeedSpec{47, 1}, 2) <= 1);
    CHECK_THROWS(bounded_difference_experiment(1, 0.5, 10, SeedSpec{47, 2}));
}

TEST_CASE("monotonicity_experiment") {
    CHECK(monotonicity_experiment(2, 0.5, 50, SeedSpec{48, 0}));
    CHECK(monotonicity_experiment(500, 0.5, 2000, SeedSpec{48, 1}, 2));
}

TEST_CASE("mueller_starr_experiment") {
    CHECK_THROWS(mueller_starr_experiment(5.0, 4, 10, SeedSpec{49, 0}));   // n < 10
    CHECK_THROWS(mueller_starr_experiment(20000.0, 100, 10, SeedSpec{49, 1})); // q <= 0
    const auto r = mueller_starr_experiment(0.0, 2000, 100, SeedSpec{49, 2}, 2);
    CHECK(r.ell == doctest::Approx(2.0));
    CHECK(r.q == doctest::Approx(1.0));
    CHECK(r.ratio_mean.mean > 1.6);
    CHECK(r.ratio_mean.mean < 2.1);
}

TEST_CASE("checked_sample applies the hard assertion without changing the draw") {
    RngStream a(SeedSpec{50, 0}, 0), b(SeedSpec{50, 0}, 0);
    CHECK(checked_sample({100, 0.5}, a) == sample_mallows({100, 0.5}, b));
}

TEST_CASE("run_verification basics") {
    VerifyParams params;
    CHECK_THROWS(run_verification("no-such-experiment", params, ConstantsConfig{}, SeedSpec{1, 0}));
    CHECK(!known_experiments().empty());
    for (const auto& name : known_experiments()) CHECK(!name.empty());

    // small deterministic run, byte-identical across worker counts
    params.ns = {30};
    params.qs = {0.8};
    params.count = 500;
    const auto r1 = run_verification("identity", params, ConstantsConfig{}, SeedSpec{51, 0});
    params.workers = 4;
    const auto r4 = run_verification("identity", params, ConstantsConfig{}, SeedSpec{51, 0});
    CHECK(r1.to_json() == r4.to_json());
    CHECK(r1.to_text() == r4.to_text());
    CHECK(!r1.rows.empty());
    CHECK(r1.experiment == "identity");

    // text rendering carries the verdict and an overall line
    CHECK(r1.to_text().find("overall:") != std::string::npos);
}
