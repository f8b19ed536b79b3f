#include <doctest.h>

#include <algorithm>

#include "mallows/permutation.hpp"
#include "test_util.hpp"

using namespace mallows;

namespace {

// Exponential-time LIS by checking every subsequence; the independent
// oracle for the patience-sorting kernel on tiny inputs.
int lis_exhaustive(const Permutation& pi) {
    const int n = pi.size();
    int best = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        int prev = 0, len = 0;
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i) {
            if (!(mask & (1u << (i - 1)))) continue;
            if (pi.of(i) <= prev) ok = false;
            prev = pi.of(i);
            ++len;
        }
        if (ok) best = std::max(best, len);
    }
    return best;
}

int lds_exhaustive(const Permutation& pi) {
    return lis_exhaustive(reverse(pi));
}

} // namespace

TEST_CASE("identity") {
    CHECK(Permutation::identity(1).one_line() == std::vector<int>{1});
    CHECK(Permutation::identity(4).one_line() == std::vector<int>{1, 2, 3, 4});
    CHECK(Permutation::identity(2).one_line() == std::vector<int>{1, 2});
    CHECK_THROWS(Permutation::identity(0));
}

TEST_CASE("permutation validation") {
    CHECK_THROWS(Permutation({1, 1}));
    CHECK_THROWS(Permutation({0, 1}));
    CHECK_THROWS(Permutation({2, 3}));
    CHECK_THROWS(Permutation({}));
}

TEST_CASE("reverse") {
    CHECK(reverse(Permutation({1, 2, 3})).one_line() == std::vector<int>{3, 2, 1});
    CHECK(reverse(Permutation({2, 1, 4, 3})).one_line() == std::vector<int>{3, 4, 1, 2});
    CHECK(reverse(Permutation({1})).one_line() == std::vector<int>{1});
}

TEST_CASE("invert") {
    CHECK(invert(Permutation({1, 2, 3})).one_line() == std::vector<int>{1, 2, 3});
    CHECK(invert(Permutation({3, 1, 2})).one_line() == std::vector<int>{2, 3, 1});
    CHECK(invert(Permutation({2, 1})).one_line() == std::vector<int>{2, 1});
}

TEST_CASE("inversion_count examples") {
    CHECK(inversion_count(Permutation({1, 2, 3, 4})) == 0);
    CHECK(inversion_count(Permutation({4, 3, 2, 1})) == 6);
    CHECK(inversion_count(Permutation({3, 1, 4, 2})) == 3);
}

TEST_CASE("lis/lds examples") {
    CHECK(lis_length(Permutation({1, 2, 3, 4, 5})) == 5);
    CHECK(lis_length(Permutation({5, 4, 3, 2, 1})) == 1);
    CHECK(lis_length(Permutation({3, 1, 4, 2})) == 2);
    CHECK(lis_exhaustive(Permutation({3, 1, 4, 2})) == 2);
    CHECK(lds_length(Permutation({1, 2, 3})) == 1);
    CHECK(lds_length(Permutation({3, 2, 1})) == 3);
    CHECK(lds_length(Permutation({3, 1, 4, 2})) == 2);
    CHECK(lds_exhaustive(Permutation({3, 1, 4, 2})) == 2);
}

TEST_CASE("longest_decreasing_run") {
    CHECK(longest_decreasing_run(Permutation({1, 2, 3})) == 1);
    CHECK(longest_decreasing_run(Permutation({3, 2, 1})) == 3);
    CHECK(longest_decreasing_run(Permutation({2, 5, 4, 3, 1})) == 4);
}

TEST_CASE("induced_ordering") {
    const Permutation pi({3, 1, 4, 2});
    CHECK(induced_ordering(pi, {1, 3}).one_line() == std::vector<int>{1, 2});
    CHECK(induced_ordering(pi, {1, 2, 4}).one_line() == std::vector<int>{3, 1, 2});
    CHECK(induced_ordering(pi, {2}).one_line() == std::vector<int>{1});
    CHECK_THROWS(induced_ordering(pi, {}));
    CHECK_THROWS(induced_ordering(pi, {0, 2}));
    CHECK_THROWS(induced_ordering(pi, {1, 5}));
    CHECK_THROWS(induced_ordering(pi, {2, 2}));
}

TEST_CASE("displacement") {
    CHECK(displacement(Permutation({1, 2, 3}), 2) == 0);
    CHECK(displacement(Permutation({3, 2, 1}), 1) == 2);
    CHECK(displacement(Permutation({2, 1}), 2) == 1);
    CHECK_THROWS(displacement(Permutation({2, 1}), 0));
    CHECK_THROWS(displacement(Permutation({2, 1}), 3));
}

TEST_CASE("erdos_szekeres examples") {
    CHECK(erdos_szekeres_check(Permutation({1, 2, 3})));
    CHECK(erdos_szekeres_check(Permutation({2, 1, 4, 3})));
    CHECK(erdos_szekeres_check(Permutation({3, 1, 4, 2})));
}

TEST_CASE("exhaustive invariants on small S_n") {
    for (int n = 1; n <= 7; ++n) {
        const std::int64_t half = static_cast<std::int64_t>(n) * (n - 1) / 2;
        testutil::for_each_permutation(n, [&](const Permutation& pi) {
            CHECK(inversion_count(reverse(pi)) == half - inversion_count(pi));
            CHECK(inversion_count(invert(pi)) == inversion_count(pi));
            CHECK(lis_length(pi) == lds_length(reverse(pi)));
            CHECK(erdos_szekeres_check(pi));
            CHECK(inversion_count(pi) == inversion_count_quadratic(pi));
            CHECK(lis_length(pi) == lis_length_quadratic(pi));
            IndexSequence all(static_cast<size_t>(n));
            std::iota(all.begin(), all.end(), 1);
            CHECK(induced_ordering(pi, all) == pi);
        });
    }
    // exhaustive subsequence oracle up to n = 6
    for (int n = 1; n <= 6; ++n) {
        testutil::for_each_permutation(n, [&](const Permutation& pi) {
            CHECK(lis_length(pi) == lis_exhaustive(pi));
            CHECK(lds_length(pi) == lds_exhaustive(pi));
        });
    }
}

TEST_CASE("fast kernels agree with quadratic references on fuzzed input") {
    RngStream rng(SeedSpec{20240817, 0}, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = static_cast<int>(rng.next_in(2000));
        const Permutation pi = testutil::random_permutation(n, rng);
        CHECK(inversion_count(pi) == inversion_count_quadratic(pi));
        CHECK(lis_length(pi) == lis_length_quadratic(pi));
        CHECK(lis_length(pi) == lds_length(reverse(pi)));
        CHECK(erdos_szekeres_check(pi));
    }
    for (int trial = 0; trial < 3; ++trial) {
        const Permutation pi = testutil::random_permutation(10000, rng);
        CHECK(inversion_count(pi) == inversion_count_quadratic(pi));
        CHECK(lis_length(pi) == lis_length_quadratic(pi));
    }
}

TEST_CASE("text format round trip") {
    const Permutation pi({3, 1, 4, 2});
    CHECK(format_permutation(pi) == "3 1 4 2");
    CHECK(parse_permutation("3 1 4 2") == pi);
    CHECK_THROWS(parse_permutation("3 1 4"));
    CHECK_THROWS(parse_permutation(""));
}
