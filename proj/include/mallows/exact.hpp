#ifndef MALLOWS_EXACT_HPP
#define MALLOWS_EXACT_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "mallows/model.hpp"
#include "mallows/permutation.hpp"

namespace mallows {

inline constexpr int kMaxExactN = 10;

std::int64_t factorial(int n);

/// Position of pi in the lexicographic order of S_n (0-based).
std::int64_t lehmer_rank(const Permutation& pi);
Permutation lehmer_unrank(int n, std::int64_t rank);

/// mu_{n,q} materialized in full: a flat probability table over S_n,
/// indexed by Lehmer rank so exact comparisons are reproducible
/// byte-for-byte.
struct ExactDistribution {
    int n;
    double q;
    std::vector<double> probs;

    double prob(const Permutation& pi) const { return probs[lehmer_rank(pi)]; }
};

/// Weights every pi in S_n by q^inv(pi) and normalizes. Log-space
/// with max-subtraction; small-q weights underflow at n=10 otherwise.
/// Hard cap n <= 10.
ExactDistribution enumerate_distribution(const MallowsParams& params);

double exact_expectation(const ExactDistribution& dist,
                         const std::function<double(const Permutation&)>& statistic);

double exact_event_probability(const ExactDistribution& dist,
                               const std::function<bool(const Permutation&)>& predicate);

/// Pushforward of dist under pi -> induced_ordering(pi, I). For a
/// consecutive block I this equals mu_{|I|,q} exactly.
ExactDistribution induced_block_distribution(const ExactDistribution& dist,
                                             const IndexSequence& indices);

/// Joint pushforward onto S_|I| x S_|I'|, flattened row-major
/// (rank(sigma_I) * |I'|! + rank(sigma_I')). Requires max(I) < min(I').
std::vector<double> joint_induced_distribution(const ExactDistribution& dist,
                                               const IndexSequence& left,
                                               const IndexSequence& right);

/// (1/2) sum |a - b| over a shared domain. Works for exact tables and
/// normalized empirical histograms alike.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);
double total_variation(const ExactDistribution& a, const ExactDistribution& b);

/// CSV export: header comment with Z_{n,q}, then rows perm,inv,prob
/// in Lehmer-rank order.
void write_distribution_csv(std::ostream& out, const ExactDistribution& dist);

} // namespace mallows

#endif
