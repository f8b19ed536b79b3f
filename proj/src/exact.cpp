#include "mallows/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mallows/format.hpp"

namespace mallows {

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::int64_t lehmer_rank(const Permutation& pi) {
    const int n = pi.size();
    std::int64_t rank = 0;
    for (int i = 1; i <= n; ++i) {
        int smaller_later = 0;
        for (int j = i + 1; j <= n; ++j)
            if (pi.of(j) < pi.of(i)) ++smaller_later;
        rank += smaller_later * factorial(n - i);
    }
    return rank;
}

Permutation lehmer_unrank(int n, std::int64_t rank) {
    std::vector<int> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 1);
    std::vector<int> v;
    v.reserve(n);
    for (int i = n; i >= 1; --i) {
        const std::int64_t f = factorial(i - 1);
        const auto d = static_cast<size_t>(rank / f);
        rank %= f;
        v.push_back(remaining[d]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return Permutation(std::move(v));
}

ExactDistribution enumerate_distribution(const MallowsParams& params) {
    validate(params);
    if (params.n > kMaxExactN)
        throw std::invalid_argument("enumerate_distribution: n > 10 exceeds the exact-oracle cap");
    const int n = params.n;
    const double q = params.q;
    const auto size = static_cast<size_t>(factorial(n));
    const bool uniform = std::fabs(q - 1.0) < kUniformBranchEps;
    const double logq = uniform ? 0.0 : std::log(q);

    std::vector<double> logw(size);
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 1);
    size_t rank = 0;
    double max_logw = -std::numeric_limits<double>::infinity();
    do {
        std::int64_t inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (a[i] > a[j]) ++inv;
        const double lw = uniform ? 0.0 : static_cast<double>(inv) * logq;
        logw[rank++] = lw;
        max_logw = std::max(max_logw, lw);
    } while (std::next_permutation(a.begin(), a.end()));

    double total = 0.0;
    for (double& lw : logw) {
        lw = std::exp(lw - max_logw);
        total += lw;
    }
    for (double& w : logw) w /= total;
    return ExactDistribution{n, q, std::move(logw)};
}

double exact_expectation(const ExactDistribution& dist,
                         const std::function<double(const Permutation&)>& statistic) {
    double acc = 0.0;
    std::vector<int> a(dist.n);
    std::iota(a.begin(), a.end(), 1);
    size_t rank = 0;
    do {
        acc += statistic(Permutation(a)) * dist.probs[rank++];
    } while (std::next_permutation(a.begin(), a.end()));
    return acc;
}

double exact_event_probability(const ExactDistribution& dist,
                               const std::function<bool(const Permutation&)>& predicate) {
    return exact_expectation(dist, [&](const Permutation& pi) {
        return predicate(pi) ? 1.0 : 0.0;
    });
}

ExactDistribution induced_block_distribution(const ExactDistribution& dist,
                                             const IndexSequence& indices) {
    const int k = static_cast<int>(indices.size());
    if (k == 0) throw std::invalid_argument("induced_block_distribution: empty index sequence");
    std::vector<double> out(static_cast<size_t>(factorial(k)), 0.0);
    std::vector<int> a(dist.n);
    std::iota(a.begin(), a.end(), 1);
    size_t rank = 0;
    do {
        const Permutation pi(a);
        out[lehmer_rank(induced_ordering(pi, indices))] += dist.probs[rank++];
    } while (std::next_permutation(a.begin(), a.end()));
    return ExactDistribution{k, dist.q, std::move(out)};
}

std::vector<double> joint_induced_distribution(const ExactDistribution& dist,
                                               const IndexSequence& left,
                                               const IndexSequence& right) {
    if (left.empty() || right.empty())
        throw std::invalid_argument("joint_induced_distribution: empty index sequence");
    if (left.back() >= right.front())
        throw std::invalid_argument("joint_induced_distribution: requires max(I) < min(I')");
    const auto rsize = static_cast<size_t>(factorial(static_cast<int>(right.size())));
    std::vector<double> joint(static_cast<size_t>(factorial(static_cast<int>(left.size()))) * rsize, 0.0);
    std::vector<int> a(dist.n);
    std::iota(a.begin(), a.end(), 1);
    size_t rank = 0;
    do {
        const Permutation pi(a);
        const auto lr = static_cast<size_t>(lehmer_rank(induced_ordering(pi, left)));
        const auto rr = static_cast<size_t>(lehmer_rank(induced_ordering(pi, right)));
        joint[lr * rsize + rr] += dist.probs[rank++];
    } while (std::next_permutation(a.begin(), a.end()));
    return joint;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("total_variation: domain mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return 0.5 * s;
}

double total_variation(const ExactDistribution& a, const ExactDistribution& b) {
    if (a.n != b.n) throw std::invalid_argument("total_variation: domain mismatch");
    return total_variation(a.probs, b.probs);
}

void write_distribution_csv(std::ostream& out, const ExactDistribution& dist) {
    const MallowsParams params{dist.n, dist.q};
    out << "# n=" << dist.n << " q=" << format_double(dist.q)
        << " log_Z=" << format_double(log_partition_function(params)) << "\n";
    out << "perm,inv,prob\n";
    std::vector<int> a(dist.n);
    std::iota(a.begin(), a.end(), 1);
    size_t rank = 0;
    do {
        const Permutation pi(a);
        out << format_permutation(pi) << ',' << inversion_count(pi) << ','
            << format_double(dist.probs[rank++]) << "\n";
    } while (std::next_permutation(a.begin(), a.end()));
}

} // namespace mallows
