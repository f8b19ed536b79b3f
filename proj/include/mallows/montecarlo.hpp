#ifndef MALLOWS_MONTECARLO_HPP
#define MALLOWS_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mallows/exact.hpp"
#include "mallows/model.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t count = 0;
};

struct TailEstimate {
    std::int64_t threshold = 0;
    double p_hat = 0.0;
    double stderr_ = 0.0;
    std::int64_t count = 0;
};

/// Runs fn once per trial with a stream derived from (seed, trial)
/// and collects results in trial order. Output is identical at any
/// worker count; workers only changes scheduling.
std::vector<double> run_trials(std::int64_t count, int workers, SeedSpec seed,
                               const std::function<double(std::int64_t, RngStream&)>& fn);

/// Same, with `width` doubles per trial (row-major count x width).
std::vector<double> run_trials_multi(std::int64_t count, int width, int workers, SeedSpec seed,
                                     const std::function<void(std::int64_t, RngStream&, double*)>& fn);

Estimate summarize(const std::vector<double>& values);

/// sample_mallows plus the Erdos-Szekeres hard assertion applied to
/// everything the harness draws. A violation aborts the run.
Permutation checked_sample(const MallowsParams& params, RngStream& rng);

Estimate estimate_statistic(const MallowsParams& params,
                            const std::function<double(const Permutation&)>& statistic,
                            std::int64_t count, SeedSpec seed, int workers = 1);

/// P(statistic >= t) for each threshold, all from one shared sample
/// set, so the tails are nonincreasing in t by construction.
std::vector<TailEstimate> estimate_tails(const MallowsParams& params,
                                         const std::function<std::int64_t(const Permutation&)>& statistic,
                                         const std::vector<std::int64_t>& thresholds,
                                         std::int64_t count, SeedSpec seed, int workers = 1);

struct GoodnessOfFit {
    double tv = 0.0;
    double chi_square_stat = 0.0;
    std::int64_t dof = 0;
    double chi_square_threshold = 0.0; // 99.9th percentile of chi^2(dof)
    double tv_threshold = 0.0;
    bool pass = false;
};

/// Empirical histogram over S_n against the exact oracle. Requires
/// n <= 7 and count >= 100 n! so the cells are adequately filled.
GoodnessOfFit goodness_of_fit(const MallowsParams& params, std::int64_t count, SeedSpec seed,
                              double tv_threshold = 0.02, int workers = 1);

/// 99.9th percentile of the chi-square distribution (Wilson-Hilferty).
double chi_square_999(std::int64_t dof);

struct BlockDecomposition {
    std::vector<int> block_lis;
    int sum = 0;
    int lis = 0;
};

/// Partitions {1..n} into consecutive index blocks (last may be
/// short) and takes the LIS of each induced ordering. Any increasing
/// subsequence meets each block in an increasing run, so
/// lis <= sum always; violation throws.
BlockDecomposition block_decomposition(const Permutation& pi, int block_size);

/// Replays the stopping-time strategy: repeatedly wait for an
/// insertion to land in the window W = [1/(1-q), 1/(1-q) + w + 1]
/// with w = window_scale * n/(1000 L), then wait for that element to
/// drift out of W before hunting the next. Returns the positions of
/// the collected elements in pi = reverse(replay_process(record)),
/// sorted increasingly; the pi-values at those positions are
/// strictly increasing (asserted). At most L elements are collected.
IndexSequence greedy_window_subsequence(const ProcessRecord& record, int L,
                                        double window_scale = 1.0);

/// Max |LIS(p) - LIS(p')| over `trials` single-coordinate resamples
/// of a random insertion record. Must be <= 1.
int bounded_difference_experiment(int n, double q, std::int64_t trials, SeedSpec seed,
                                  int workers = 1);

/// Checks that raising a single insertion a_j strictly raises the
/// final position of element j. Returns all-passed.
bool monotonicity_experiment(int n, double q, std::int64_t trials, SeedSpec seed,
                             int workers = 1);

struct MuellerStarrResult {
    Estimate ratio_mean; // E[LIS/sqrt(n)] at q = 1 - beta/n
    double ell = 0.0;
    double q = 0.0;
};

MuellerStarrResult mueller_starr_experiment(double beta, int n, std::int64_t count,
                                            SeedSpec seed, int workers = 1);

} // namespace mallows

#endif
