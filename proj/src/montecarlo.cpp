#include "mallows/montecarlo.hpp"

#include "mallows/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mallows {

std::vector<double> run_trials_multi(std::int64_t count, int width, int workers, SeedSpec seed,
                                     const std::function<void(std::int64_t, RngStream&, double*)>& fn) {
    if (count < 0) throw std::invalid_argument("run_trials: negative count");
    std::vector<double> out(static_cast<size_t>(count) * width);
    auto work = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t t = lo; t < hi; ++t) {
            RngStream rng(seed, static_cast<std::uint64_t>(t));
            fn(t, rng, out.data() + static_cast<size_t>(t) * width);
        }
    };
    if (workers <= 1 || count < 2 * workers) {
        work(0, count);
        return out;
    }
    std::vector<std::thread> pool;
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min<std::int64_t>(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
    return out;
}

std::vector<double> run_trials(std::int64_t count, int workers, SeedSpec seed,
                               const std::function<double(std::int64_t, RngStream&)>& fn) {
    return run_trials_multi(count, 1, workers, seed,
                            [&](std::int64_t t, RngStream& rng, double* slot) { *slot = fn(t, rng); });
}

Estimate summarize(const std::vector<double>& values) {
    const auto count = static_cast<std::int64_t>(values.size());
    if (count < 1) throw std::invalid_argument("summarize: empty sample");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(count);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double stderr_ =
        count >= 2 ? std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count)) : 0.0;
    return {mean, stderr_, count};
}

Permutation checked_sample(const MallowsParams& params, RngStream& rng) {
    Permutation pi = sample_mallows(params, rng);
    if (!erdos_szekeres_check(pi))
        throw std::logic_error("Erdos-Szekeres violation: sampled object is not a permutation");
    return pi;
}

Estimate estimate_statistic(const MallowsParams& params,
                            const std::function<double(const Permutation&)>& statistic,
                            std::int64_t count, SeedSpec seed, int workers) {
    if (count < 2) throw std::invalid_argument("estimate_statistic: count >= 2 required");
    return summarize(run_trials(count, workers, seed, [&](std::int64_t, RngStream& rng) {
        return statistic(checked_sample(params, rng));
    }));
}

std::vector<TailEstimate> estimate_tails(const MallowsParams& params,
                                         const std::function<std::int64_t(const Permutation&)>& statistic,
                                         const std::vector<std::int64_t>& thresholds,
                                         std::int64_t count, SeedSpec seed, int workers) {
    if (count < 1) throw std::invalid_argument("estimate_tails: count >= 1 required");
    if (thresholds.empty()) throw std::invalid_argument("estimate_tails: thresholds required");
    const std::vector<double> values =
        run_trials(count, workers, seed, [&](std::int64_t, RngStream& rng) {
            return static_cast<double>(statistic(checked_sample(params, rng)));
        });
    std::vector<TailEstimate> out;
    out.reserve(thresholds.size());
    for (std::int64_t t : thresholds) {
        std::int64_t hits = 0;
        for (double v : values)
            if (v >= static_cast<double>(t)) ++hits;
        const double p = static_cast<double>(hits) / static_cast<double>(count);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(count));
        out.push_back({t, p, se, count});
    }
    return out;
}

double chi_square_999(std::int64_t dof) {
    // Wilson-Hilferty cube approximation at z = 3.090232 (99.9%).
    const double k = static_cast<double>(dof);
    const double z = 3.090232306167814;
    const double h = 2.0 / (9.0 * k);
    const double t = 1.0 - h + z * std::sqrt(h);
    return k * t * t * t;
}

GoodnessOfFit goodness_of_fit(const MallowsParams& params, std::int64_t count, SeedSpec seed,
                              double tv_threshold, int workers) {
    validate(params);
    if (params.n > 7) throw std::invalid_argument("goodness_of_fit: n <= 7 required");
    const std::int64_t cells = factorial(params.n);
    if (count < 100 * cells)
        throw std::invalid_argument("goodness_of_fit: count >= 100 * n! required");
    const ExactDistribution exact = enumerate_distribution(params);

    const std::vector<double> ranks =
        run_trials(count, workers, seed, [&](std::int64_t, RngStream& rng) {
            return static_cast<double>(lehmer_rank(checked_sample(params, rng)));
        });
    std::vector<std::int64_t> hist(static_cast<size_t>(cells), 0);
    for (double r : ranks) ++hist[static_cast<size_t>(r)];

    GoodnessOfFit result;
    result.dof = cells - 1;
    result.tv_threshold = tv_threshold;
    result.chi_square_threshold = chi_square_999(result.dof);
    std::vector<double> empirical(static_cast<size_t>(cells));
    for (size_t i = 0; i < empirical.size(); ++i)
        empirical[i] = static_cast<double>(hist[i]) / static_cast<double>(count);
    result.tv = total_variation(empirical, exact.probs);
    double chi2 = 0.0;
    for (size_t i = 0; i < empirical.size(); ++i) {
        const double expected = exact.probs[i] * static_cast<double>(count);
        const double diff = static_cast<double>(hist[i]) - expected;
        chi2 += diff * diff / expected;
    }
    result.chi_square_stat = chi2;
    result.pass = result.tv <= tv_threshold && chi2 <= result.chi_square_threshold;
    return result;
}

BlockDecomposition block_decomposition(const Permutation& pi, int block_size) {
    const int n = pi.size();
    if (block_size < 1 || block_size > n)
        throw std::invalid_argument("block_decomposition: 1 <= block_size <= n required");
    BlockDecomposition out;
    out.lis = lis_length(pi);
    for (int start = 1; start <= n; start += block_size) {
        const int stop = std::min(n, start + block_size - 1);
        IndexSequence block;
        block.reserve(static_cast<size_t>(stop - start + 1));
        for (int i = start; i <= stop; ++i) block.push_back(i);
        const int x = lis_length(induced_ordering(pi, block));
        out.block_lis.push_back(x);
        out.sum += x;
    }
    if (out.lis > out.sum) throw std::logic_error("block_decomposition: LIS exceeded block sum");
    return out;
}

IndexSequence greedy_window_subsequence(const ProcessRecord& record, int L, double window_scale) {
    const int n = static_cast<int>(record.insertions.size());
    const double q = record.q;
    if (!(q > 0 && q < 1))
        throw std::invalid_argument("greedy_window_subsequence: record needs 0 < q < 1");
    if (L < 1) throw std::invalid_argument("greedy_window_subsequence: L >= 1 required");
    const double width = window_scale * static_cast<double>(n) / (1000.0 * L);
    const double lo_real = 1.0 / (1.0 - q);
    const int w_lo = static_cast<int>(std::ceil(lo_real));
    const int w_hi = static_cast<int>(std::floor(lo_real + width + 1.0));
    if (width + 1.0 < 1.0 || w_hi < w_lo || w_hi >= n)
        throw std::invalid_argument("greedy_window_subsequence: degenerate window");

    std::vector<int> hit_times;
    hit_times.reserve(static_cast<size_t>(L));
    int tracked_pos = -1; // position of the most recent hit, -1 when hunting
    for (int t = w_hi + 1; t <= n && static_cast<int>(hit_times.size()) < L; ++t) {
        const int a = record.insertions[t - 1];
        if (tracked_pos >= 0) {
            if (a <= tracked_pos) ++tracked_pos;
            if (tracked_pos > w_hi) tracked_pos = -1; // left the window at time t
            continue; // S_{i+1} must be strictly after T_i
        }
        if (a >= w_lo && a <= w_hi) {
            hit_times.push_back(t);
            tracked_pos = a;
            if (tracked_pos > w_hi) tracked_pos = -1;
        }
    }

    // Hit times map to positions n+1-S_i of pi = reverse(p_n).
    IndexSequence indices;
    indices.reserve(hit_times.size());
    for (auto it = hit_times.rbegin(); it != hit_times.rend(); ++it)
        indices.push_back(n + 1 - *it);

    if (!indices.empty()) {
        const Permutation pi = reverse(replay_process(record));
        for (size_t j = 1; j < indices.size(); ++j) {
            if (indices[j] <= indices[j - 1] || pi.of(indices[j]) <= pi.of(indices[j - 1]))
                throw std::logic_error("greedy_window_subsequence: construction not increasing");
        }
    }
    return indices;
}

int bounded_difference_experiment(int n, double q, std::int64_t trials, SeedSpec seed, int workers) {
    if (n < 2) throw std::invalid_argument("bounded_difference_experiment: n >= 2 required");
    const std::vector<double> diffs =
        run_trials(trials, workers, seed, [&](std::int64_t, RngStream& rng) {
            ProcessRecord record = run_process(n, q, rng);
            // pick a coordinate with a nontrivial flip available
            int j;
            do {
                j = static_cast<int>(rng.next_in(static_cast<std::uint64_t>(n)));
            } while (j == 1);
            const int old = record.insertions[j - 1];
            int fresh = old;
            while (fresh == old) fresh = static_cast<int>(rng.next_in(static_cast<std::uint64_t>(j)));
            const int base = lis_length(replay_process(record));
            record.insertions[j - 1] = fresh;
            const int flipped = lis_length(replay_process(record));
            return static_cast<double>(std::abs(base - flipped));
        });
    double max_diff = 0.0;
    for (double d : diffs) max_diff = std::max(max_diff, d);
    return static_cast<int>(max_diff);
}

bool monotonicity_experiment(int n, double q, std::int64_t trials, SeedSpec seed, int workers) {
    if (n < 2) throw std::invalid_argument("monotonicity_experiment: n >= 2 required");
    const std::vector<double> ok =
        run_trials(trials, workers, seed, [&](std::int64_t, RngStream& rng) {
            ProcessRecord record = run_process(n, q, rng);
            const int j = 1 + static_cast<int>(rng.next_in(static_cast<std::uint64_t>(n - 1)));
            const int old = record.insertions[j - 1];
            if (old == j) return 1.0; // no strictly larger a_j available: skip
            const int larger =
                old + static_cast<int>(rng.next_in(static_cast<std::uint64_t>(j - old)));
            const int base_pos = replay_process(record).of(j);
            record.insertions[j - 1] = larger;
            const int raised_pos = replay_process(record).of(j);
            return raised_pos > base_pos ? 1.0 : 0.0;
        });
    return std::all_of(ok.begin(), ok.end(), [](double v) { return v == 1.0; });
}

MuellerStarrResult mueller_starr_experiment(double beta, int n, std::int64_t count,
                                            SeedSpec seed, int workers) {
    if (n < 10) throw std::invalid_argument("mueller_starr_experiment: n >= 10 required");
    if (!std::isfinite(beta)) throw std::invalid_argument("mueller_starr_experiment: finite beta required");
    const double q = 1.0 - beta / static_cast<double>(n);
    if (!(q > 0)) throw std::invalid_argument("mueller_starr_experiment: beta >= n gives q <= 0");
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    MuellerStarrResult result;
    result.q = q;
    result.ell = ell_beta(beta);
    result.ratio_mean = estimate_statistic(
        MallowsParams{n, q},
        [&](const Permutation& pi) { return static_cast<double>(lis_length(pi)) / sqrt_n; }, count,
        seed, workers);
    return result;
}

} // namespace mallows
