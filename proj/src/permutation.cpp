#include "mallows/permutation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mallows {

Permutation::Permutation(std::vector<int> one_line) : values_(std::move(one_line)) {
    const int n = static_cast<int>(values_.size());
    if (n < 1) throw std::invalid_argument("permutation must have n >= 1");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : values_) {
        if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a bijection of {1..n}");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    if (n < 1) throw std::invalid_argument("identity: n >= 1 required");
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return Permutation(std::move(v));
}

Permutation reverse(const Permutation& pi) {
    const int n = pi.size();
    std::vector<int> v(n);
    for (int i = 1; i <= n; ++i) v[i - 1] = pi.of(n + 1 - i);
    return Permutation(std::move(v));
}

Permutation invert(const Permutation& pi) {
    const int n = pi.size();
    std::vector<int> v(n);
    for (int i = 1; i <= n; ++i) v[pi.of(i) - 1] = i;
    return Permutation(std::move(v));
}

namespace {

std::int64_t merge_count(std::vector<int>& a, std::vector<int>& tmp, int lo, int hi) {
    if (hi - lo < 2) return 0;
    const int mid = lo + (hi - lo) / 2;
    std::int64_t inv = merge_count(a, tmp, lo, mid) + merge_count(a, tmp, mid, hi);
    int i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[i] <= a[j]) {
            tmp[k++] = a[i++];
        } else {
            inv += mid - i;
            tmp[k++] = a[j++];
        }
    }
    while (i < mid) tmp[k++] = a[i++];
    while (j < hi) tmp[k++] = a[j++];
    std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
    return inv;
}

} // namespace

std::int64_t inversion_count(const Permutation& pi) {
    std::vector<int> a = pi.one_line();
    std::vector<int> tmp(a.size());
    return merge_count(a, tmp, 0, static_cast<int>(a.size()));
}

std::int64_t inversion_count_quadratic(const Permutation& pi) {
    const int n = pi.size();
    std::int64_t inv = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (pi.of(i) > pi.of(j)) ++inv;
    return inv;
}

int lis_length(const Permutation& pi) {
    // Patience sorting: tails[k] = smallest possible last value of an
    // increasing subsequence of length k+1. Strict comparison so the
    // kernel stays correct if reused on sequences with ties.
    std::vector<int> tails;
    tails.reserve(64);
    for (int x : pi.one_line()) {
        auto it = std::lower_bound(tails.begin(), tails.end(), x);
        if (it == tails.end())
            tails.push_back(x);
        else
            *it = x;
    }
    return static_cast<int>(tails.size());
}

int lis_length_quadratic(const Permutation& pi) {
    const int n = pi.size();
    std::vector<int> best(n, 1);
    int ans = 1;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i)
            if (pi.of(i + 1) < pi.of(j + 1)) best[j] = std::max(best[j], best[i] + 1);
        ans = std::max(ans, best[j]);
    }
    return ans;
}

int lds_length(const Permutation& pi) {
    const int n = pi.size();
    std::vector<int> neg(n);
    for (int i = 0; i < n; ++i) neg[i] = n + 1 - pi.of(i + 1);
    std::vector<int> tails;
    for (int x : neg) {
        auto it = std::lower_bound(tails.begin(), tails.end(), x);
        if (it == tails.end())
            tails.push_back(x);
        else
            *it = x;
    }
    return static_cast<int>(tails.size());
}

int longest_decreasing_run(const Permutation& pi) {
    const int n = pi.size();
    int best = 1, cur = 1;
    for (int i = 2; i <= n; ++i) {
        cur = pi.of(i - 1) > pi.of(i) ? cur + 1 : 1;
        best = std::max(best, cur);
    }
    return best;
}

Permutation induced_ordering(const Permutation& pi, const IndexSequence& indices) {
    const int k = static_cast<int>(indices.size());
    if (k == 0) throw std::invalid_argument("induced_ordering: empty index sequence");
    std::vector<int> vals(k);
    for (int j = 0; j < k; ++j) {
        const int i = indices[j];
        if (i < 1 || i > pi.size()) throw std::out_of_range("induced_ordering: index out of range");
        if (j > 0 && indices[j] <= indices[j - 1])
            throw std::invalid_argument("induced_ordering: indices must be strictly increasing");
        vals[j] = pi.of(i);
    }
    // rank each value among the selected ones
    std::vector<int> order(k);
    for (int j = 0; j < k; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<int> sigma(k);
    for (int r = 0; r < k; ++r) sigma[order[r]] = r + 1;
    return Permutation(std::move(sigma));
}

int displacement(const Permutation& pi, int i) {
    if (i < 1 || i > pi.size()) throw std::out_of_range("displacement: index out of range");
    return std::abs(pi.of(i) - i);
}

bool erdos_szekeres_check(const Permutation& pi) {
    return static_cast<std::int64_t>(lis_length(pi)) * lds_length(pi) >= pi.size();
}

std::string format_permutation(const Permutation& pi) {
    std::string out;
    for (int i = 1; i <= pi.size(); ++i) {
        if (i > 1) out += ' ';
        out += std::to_string(pi.of(i));
    }
    return out;
}

Permutation parse_permutation(const std::string& line) {
    std::istringstream in(line);
    std::vector<int> v;
    int x;
    while (in >> x) v.push_back(x);
    return Permutation(std::move(v));
}

} // namespace mallows
