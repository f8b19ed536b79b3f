#ifndef MALLOWS_MODEL_HPP
#define MALLOWS_MODEL_HPP

#include <array>
#include <string>
#include <vector>

#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

/// Parameters (n, q) of the Mallows measure mu_{n,q}, which weights
/// each permutation proportionally to q^inv(pi).
struct MallowsParams {
    int n;
    double q;
};

void validate(const MallowsParams& params);

/// The insertion sequence (a_1..a_n) of one run of the q-Mallows
/// process, with a_i in {1..i}. Together with q it is a complete,
/// replayable record of the sampled permutation.
struct ProcessRecord {
    double q;
    std::vector<int> insertions;
};

// q-branch threshold: formulas are 0/0 at q = 1, the limit branch
// (Z = n!, uniform insertions) activates inside this window.
inline constexpr double kUniformBranchEps = 1e-12;

/// log of Z_{n,q} = prod_{i=1..n} (1-q^i)/(1-q); log(n!) at q ~ 1.
double log_partition_function(const MallowsParams& params);

/// Z_{n,q} itself. Throws std::overflow_error when the value exceeds
/// the double range; use log_partition_function in that regime.
double partition_function(const MallowsParams& params);

/// log mu_{n,q}(pi) = inv(pi) log q - log Z_{n,q}.
double log_pmf(const Permutation& pi, double q);

/// P(a_i = j) = (1-q) q^{j-1} / (1-q^i) on {1..i}, 0 outside; the
/// uniform 1/i limit at q ~ 1.
double truncated_geometric_pmf(int i, double q, int j);

/// Exact inverse-CDF draw from the truncated geometric on {1..i}.
int truncated_geometric_sample(int i, double q, RngStream& rng);

/// Runs the q-Mallows process: a_i ~ TruncGeom(i, q) independently.
ProcessRecord run_process(int n, double q, RngStream& rng);

/// Deterministically rebuilds p_n from a record: element m takes
/// position a_m and everything at or past it shifts up. Production
/// path is O(n log n) via k-th-free-slot search on a Fenwick tree.
Permutation replay_process(const ProcessRecord& record);

/// Literal shift-loop recursion, O(n^2). Test reference.
Permutation replay_process_quadratic(const ProcessRecord& record);

/// Draws pi ~ mu_{n,q} exactly, for any q > 0. For q <= 1 this is the
/// reversal of the q-Mallows process output; q > 1 goes through the
/// reversal duality with parameter 1/q, avoiding q^(n-1) overflow.
Permutation sample_mallows(const MallowsParams& params, RngStream& rng);

/// The four couplings (p^R, (p^R)^-1, (p^-1)^R, ((p^-1)^R)^-1) of one
/// process run; each is marginally mu_{n,q} when the record used
/// parameter q.
std::array<Permutation, 4> four_couplings(const ProcessRecord& record);

// Record serialization: "q=<float>; a=<a_1,...,a_n>".
std::string format_record(const ProcessRecord& record);
ProcessRecord parse_record(const std::string& line);

} // namespace mallows

#endif
