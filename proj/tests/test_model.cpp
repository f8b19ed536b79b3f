#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "mallows/exact.hpp"
#include "mallows/model.hpp"
#include "test_util.hpp"

using namespace mallows;

namespace {

// Brute-force partition function: the definition, summed over S_n.
double brute_force_z(int n, double q) {
    double z = 0.0;
    testutil::for_each_permutation(n, [&](const Permutation& pi) {
        z += std::pow(q, static_cast<double>(inversion_count(pi)));
    });
    return z;
}

// All insertion records for S_n, odometer-style.
template <typename Fn>
void for_each_record(int n, double q, Fn&& fn) {
    std::vector<int> a(static_cast<size_t>(n), 1);
    while (true) {
        fn(ProcessRecord{q, a});
        int i = n - 1;
        while (i >= 0 && a[static_cast<size_t>(i)] == i + 1) a[static_cast<size_t>(i--)] = 1;
        if (i < 0) break;
        ++a[static_cast<size_t>(i)];
    }
}

} // namespace

TEST_CASE("partition_function examples") {
    CHECK(partition_function({1, 0.3}) == doctest::Approx(1.0));
    CHECK(partition_function({1, 2.0}) == doctest::Approx(1.0));
    CHECK(partition_function({3, 0.5}) == doctest::Approx(2.625).epsilon(1e-12));
    CHECK(partition_function({4, 1.0}) == doctest::Approx(24.0).epsilon(1e-10));
    CHECK_THROWS(partition_function({0, 0.5}));
    CHECK_THROWS(partition_function({3, 0.0}));
    CHECK_THROWS(partition_function({3, -1.0}));
}

TEST_CASE("partition_function matches brute force") {
    for (int n = 1; n <= 6; ++n)
        for (double q : {0.1, 0.5, 0.9, 1.0, 2.0})
            CHECK(partition_function({n, q}) ==
                  doctest::Approx(brute_force_z(n, q)).epsilon(1e-10));
}

TEST_CASE("partition_function overflow goes through log") {
    const MallowsParams params{2000, 2.0}; // Z ~ 2^(n(n+1)/2), way past double range
    CHECK_THROWS_AS((void)partition_function(params), std::overflow_error);
    CHECK(std::isfinite(log_partition_function(params)));
}

TEST_CASE("log_pmf") {
    CHECK(log_pmf(Permutation({1, 2, 3}), 0.5) ==
          doctest::Approx(std::log(1.0 / 2.625)).epsilon(1e-12));
    CHECK(log_pmf(Permutation({2, 1}), 1.0) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(log_pmf(Permutation({3, 2, 1}), 0.5) ==
          doctest::Approx(std::log(0.125 / 2.625)).epsilon(1e-12));
}

TEST_CASE("log_pmf normalizes over S_n") {
    for (int n = 1; n <= 6; ++n) {
        for (double q : {0.1, 0.5, 0.9, 1.0, 2.0}) {
            double total = 0.0;
            testutil::for_each_permutation(n, [&](const Permutation& pi) {
                total += std::exp(log_pmf(pi, q));
            });
            CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("truncated_geometric_pmf") {
    CHECK(truncated_geometric_pmf(3, 0.5, 1) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    CHECK(truncated_geometric_pmf(5, 1.0, 2) == doctest::Approx(0.2));
    CHECK(truncated_geometric_pmf(2, 0.5, 3) == 0.0);
    CHECK(truncated_geometric_pmf(2, 0.5, 0) == 0.0);
    for (int i : {1, 2, 5, 9}) {
        for (double q : {0.2, 0.9, 1.0, 1.7}) {
            double total = 0.0;
            for (int j = 1; j <= i; ++j) total += truncated_geometric_pmf(i, q, j);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("truncated_geometric_sample distribution") {
    RngStream rng(SeedSpec{7, 1}, 0);
    for (int k = 0; k < 20; ++k) CHECK(truncated_geometric_sample(1, 0.5, rng) == 1);

    const int draws = 200000;
    SUBCASE("i=3 q=0.5") {
        std::map<int, int> hist;
        for (int k = 0; k < draws; ++k) ++hist[truncated_geometric_sample(3, 0.5, rng)];
        for (int j = 1; j <= 3; ++j) {
            const double p = truncated_geometric_pmf(3, 0.5, j);
            const double se = std::sqrt(p * (1 - p) / draws);
            CHECK(std::fabs(static_cast<double>(hist[j]) / draws - p) < 4 * se);
        }
    }
    SUBCASE("uniform branch i=10") {
        std::map<int, int> hist;
        for (int k = 0; k < draws; ++k) ++hist[truncated_geometric_sample(10, 1.0, rng)];
        const double se = std::sqrt(0.1 * 0.9 / draws);
        for (int j = 1; j <= 10; ++j)
            CHECK(std::fabs(static_cast<double>(hist[j]) / draws - 0.1) < 4 * se);
    }
    SUBCASE("extreme q stays in support") {
        for (int k = 0; k < 1000; ++k) {
            const int a = truncated_geometric_sample(10000000, 1.0 - 1e-9, rng);
            CHECK(a >= 1);
            CHECK(a <= 10000000);
        }
    }
}

TEST_CASE("run_process") {
    RngStream rng(SeedSpec{11, 0}, 3);
    CHECK(run_process(1, 0.5, rng).insertions == std::vector<int>{1});
    const ProcessRecord r = run_process(50, 0.4, rng);
    for (size_t i = 0; i < r.insertions.size(); ++i) {
        CHECK(r.insertions[i] >= 1);
        CHECK(r.insertions[i] <= static_cast<int>(i) + 1);
    }
    RngStream a(SeedSpec{11, 0}, 5), b(SeedSpec{11, 0}, 5);
    CHECK(run_process(100, 0.7, a).insertions == run_process(100, 0.7, b).insertions);

    // last-coordinate distribution matches the truncated geometric
    const int draws = 100000, n = 6;
    std::map<int, int> hist;
    RngStream rng2(SeedSpec{12, 0}, 0);
    for (int k = 0; k < draws; ++k) ++hist[run_process(n, 0.6, rng2).insertions.back()];
    for (int j = 1; j <= n; ++j) {
        const double p = truncated_geometric_pmf(n, 0.6, j);
        const double se = std::sqrt(p * (1 - p) / draws);
        CHECK(std::fabs(static_cast<double>(hist[j]) / draws - p) < 4.5 * se);
    }
}

TEST_CASE("replay_process worked example") {
    CHECK(replay_process({0.5, {1, 1, 2, 4, 2, 3}}).one_line() ==
          std::vector<int>{5, 1, 4, 6, 2, 3});
    CHECK(replay_process({0.5, {1, 1, 2}}).one_line() == std::vector<int>{3, 1, 2});
    CHECK(replay_process({0.5, {1, 2, 3, 4, 5}}) == Permutation::identity(5));
    CHECK_THROWS(replay_process({0.5, {1, 3}}));
    CHECK_THROWS(replay_process({0.5, {2}}));
    CHECK_THROWS(replay_process({0.5, {}}));
}

TEST_CASE("replay_process matches the literal recursion") {
    RngStream rng(SeedSpec{13, 0}, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(rng.next_in(200));
        const ProcessRecord r = run_process(n, 0.8, rng);
        CHECK(replay_process(r) == replay_process_quadratic(r));
    }
}

TEST_CASE("replay_process is a bijection onto S_n") {
    for (int n = 1; n <= 7; ++n) {
        std::set<std::vector<int>> images;
        std::int64_t records = 0;
        for_each_record(n, 0.5, [&](const ProcessRecord& r) {
            ++records;
            images.insert(replay_process(r).one_line());
        });
        CHECK(records == factorial(n));
        CHECK(static_cast<std::int64_t>(images.size()) == factorial(n));
    }
}

TEST_CASE("insertion monotonicity, exhaustive") {
    // raising a_j strictly raises the final position of element j
    for (int n = 2; n <= 6; ++n) {
        for_each_record(n, 0.5, [&](const ProcessRecord& r) {
            for (int j = 2; j <= n; ++j) {
                for (int lower = 1; lower < r.insertions[j - 1]; ++lower) {
                    ProcessRecord r2 = r;
                    r2.insertions[j - 1] = lower;
                    CHECK(replay_process(r).of(j) > replay_process(r2).of(j));
                }
            }
        });
    }
}

TEST_CASE("four_couplings closed forms") {
    const ProcessRecord record{0.5, {1, 2, 1, 3}};
    const Permutation p = replay_process(record);
    const Permutation pinv = invert(p);
    const auto [c1, c2, c3, c4] = four_couplings(record);
    const int n = p.size();
    for (int i = 1; i <= n; ++i) {
        CHECK(c1.of(i) == p.of(n + 1 - i));
        CHECK(c2.of(i) == n + 1 - pinv.of(i));
        CHECK(c3.of(i) == pinv.of(n + 1 - i));
        CHECK(c4.of(i) == n + 1 - p.of(i));
    }
}

TEST_CASE("four_couplings pushforwards all equal mu_{n,q}") {
    const int n = 4;
    const double q = 0.5;
    const ExactDistribution target = enumerate_distribution({n, q});
    std::array<std::vector<double>, 4> push;
    for (auto& v : push) v.assign(static_cast<size_t>(factorial(n)), 0.0);
    for_each_record(n, q, [&](const ProcessRecord& r) {
        // record probability under independent truncated geometrics
        double pr = 1.0;
        for (int i = 1; i <= n; ++i)
            pr *= truncated_geometric_pmf(i, q, r.insertions[static_cast<size_t>(i) - 1]);
        const auto perms = four_couplings(r);
        for (int k = 0; k < 4; ++k)
            push[static_cast<size_t>(k)][static_cast<size_t>(lehmer_rank(perms[static_cast<size_t>(k)]))] += pr;
    });
    for (const auto& v : push) CHECK(total_variation(v, target.probs) < 1e-12);
}

TEST_CASE("sample_mallows basics") {
    RngStream rng(SeedSpec{21, 0}, 0);
    for (int k = 0; k < 5; ++k) CHECK(sample_mallows({1, 0.7}, rng) == Permutation::identity(1));

    RngStream a(SeedSpec{21, 1}, 9), b(SeedSpec{21, 1}, 9);
    CHECK(sample_mallows({50, 0.5}, a) == sample_mallows({50, 0.5}, b));

    // P(pi(2) > pi(1)) = (1+q+q^2)/Z_{3,q} = 2/3 at q = 1/2
    const int draws = 100000;
    int hits = 0;
    RngStream rng2(SeedSpec{22, 0}, 0);
    for (int k = 0; k < draws; ++k) {
        const Permutation pi = sample_mallows({3, 0.5}, rng2);
        if (pi.of(2) > pi.of(1)) ++hits;
    }
    const double p = static_cast<double>(hits) / draws;
    const double se = std::sqrt(p * (1 - p) / draws);
    CHECK(std::fabs(p - 2.0 / 3.0) < 4 * se);
}

TEST_CASE("record serialization round trip") {
    const ProcessRecord record{0.25, {1, 1, 3, 2}};
    const std::string line = format_record(record);
    CHECK(line == "q=0.25; a=1,1,3,2");
    const ProcessRecord back = parse_record(line);
    CHECK(back.q == record.q);
    CHECK(back.insertions == record.insertions);
    CHECK_THROWS(parse_record("a=1,2"));
    CHECK_THROWS(parse_record("q=0.5; a=2,1"));
}
