#ifndef MALLOWS_PERMUTATION_HPP
#define MALLOWS_PERMUTATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mallows {

/// A permutation of {1..n} in one-line notation. The public model is
/// 1-indexed: of(i) is pi(i) for 1 <= i <= n. Storage is a plain
/// vector with values[i-1] = pi(i).
class Permutation {
public:
    explicit Permutation(std::vector<int> one_line);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(values_.size()); }
    int of(int i) const { return values_[i - 1]; }
    const std::vector<int>& one_line() const { return values_; }

    bool operator==(const Permutation& other) const = default;

private:
    std::vector<int> values_;
};

/// Strictly increasing indices into {1..n} of some target permutation.
using IndexSequence = std::vector<int>;

Permutation reverse(const Permutation& pi);
Permutation invert(const Permutation& pi);

// Inversion counting: merge-count production kernel plus the
// quadratic definition, kept as a test oracle.
std::int64_t inversion_count(const Permutation& pi);
std::int64_t inversion_count_quadratic(const Permutation& pi);

// Longest strictly increasing / decreasing subsequence lengths.
// Patience sorting, O(n log n); the exponential/quadratic references
// live in the test suite.
int lis_length(const Permutation& pi);
int lis_length_quadratic(const Permutation& pi);
int lds_length(const Permutation& pi);

/// Largest m with pi(j) > pi(j+1) > ... > pi(j+m-1) for some j.
int longest_decreasing_run(const Permutation& pi);

/// Relative ordering of pi restricted to indices I: the sigma in
/// S_|I| with sigma(j) > sigma(k) iff pi(i_j) > pi(i_k).
Permutation induced_ordering(const Permutation& pi, const IndexSequence& indices);

/// |pi(i) - i|.
int displacement(const Permutation& pi, int i);

/// LIS * LDS >= n. Holds for every permutation (Erdos-Szekeres);
/// used as a hard assertion on everything the harness samples.
bool erdos_szekeres_check(const Permutation& pi);

// Text format: one line, space-separated 1-indexed values, "3 1 4 2".
std::string format_permutation(const Permutation& pi);
Permutation parse_permutation(const std::string& line);

} // namespace mallows

#endif
