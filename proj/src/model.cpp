#include "mallows/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mallows/format.hpp"

namespace mallows {

void validate(const MallowsParams& params) {
    if (params.n < 1) throw std::invalid_argument("MallowsParams: n >= 1 required");
    if (!(params.q > 0) || !std::isfinite(params.q))
        throw std::invalid_argument("MallowsParams: q must be positive and finite");
}

namespace {

bool near_one(double q) { return std::fabs(q - 1.0) < kUniformBranchEps; }

// log|1 - q^i|, stable for q near 1 and for q > 1 at large i.
double log_abs_one_minus_qpow(double q, double i) {
    if (q < 1.0) return std::log1p(-std::exp(i * std::log(q)));
    return i * std::log(q) + std::log1p(-std::exp(-i * std::log(q)));
}

} // namespace

double log_partition_function(const MallowsParams& params) {
    validate(params);
    const int n = params.n;
    const double q = params.q;
    if (near_one(q)) return std::lgamma(static_cast<double>(n) + 1.0);
    double sum = 0.0;
    if (q < 1.0) {
        const double logq = std::log(q);
        for (int i = 1; i <= n; ++i) {
            const double qi = std::exp(i * logq);
            if (qi < 1e-18) break; // remaining factors are 1 to double precision
            sum += std::log1p(-qi);
        }
        return sum - n * std::log1p(-q);
    }
    // q > 1: (1-q^i)/(1-q) = (q^i-1)/(q-1)
    const double logq = std::log(q);
    for (int i = 1; i <= n; ++i) {
        const double ri = std::exp(-i * logq);
        if (ri < 1e-18) break;
        sum += std::log1p(-ri);
    }
    return logq * (static_cast<double>(n) * (n + 1) / 2.0) + sum - n * std::log(q - 1.0);
}

double partition_function(const MallowsParams& params) {
    const double logz = log_partition_function(params);
    if (logz > std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error("partition_function exceeds double range; use log_partition_function");
    return std::exp(logz);
}

double log_pmf(const Permutation& pi, double q) {
    MallowsParams params{pi.size(), q};
    validate(params);
    const double inv = static_cast<double>(inversion_count(pi));
    const double logz = log_partition_function(params);
    if (near_one(q)) return -logz;
    return inv * std::log(q) - logz;
}

double truncated_geometric_pmf(int i, double q, int j) {
    if (i < 1) throw std::invalid_argument("truncated_geometric_pmf: i >= 1 required");
    if (j < 1 || j > i) return 0.0;
    if (near_one(q)) return 1.0 / i;
    const double log_num = (j - 1) * std::log(q) + std::log(std::fabs(1.0 - q));
    return std::exp(log_num - log_abs_one_minus_qpow(q, i));
}

namespace {

// Inverse-CDF with the CDF written through expm1/log1p so that it
// remains accurate for q = 1 - 1e-9 and i = 1e7.
inline int trunc_geom_draw(int i, double logq, double u) {
    const double j = 1.0 + std::floor(std::log1p(-u * (-std::expm1(i * logq))) / logq);
    if (!(j >= 1.0)) return 1;
    if (j > i) return i;
    return static_cast<int>(j);
}

} // namespace

int truncated_geometric_sample(int i, double q, RngStream& rng) {
    if (i < 1) throw std::invalid_argument("truncated_geometric_sample: i >= 1 required");
    if (i == 1) return 1;
    const double u = rng.next_double();
    if (near_one(q)) {
        const int j = 1 + static_cast<int>(u * i);
        return j > i ? i : j;
    }
    return trunc_geom_draw(i, std::log(q), u);
}

ProcessRecord run_process(int n, double q, RngStream& rng) {
    validate(MallowsParams{n, q});
    ProcessRecord record{q, std::vector<int>(n)};
    record.insertions[0] = 1;
    if (near_one(q)) {
        for (int i = 2; i <= n; ++i) {
            const int j = 1 + static_cast<int>(rng.next_double() * i);
            record.insertions[i - 1] = j > i ? i : j;
        }
        return record;
    }
    const double logq = std::log(q);
    for (int i = 2; i <= n; ++i)
        record.insertions[i - 1] = trunc_geom_draw(i, logq, rng.next_double());
    return record;
}

namespace {

void validate_record(const ProcessRecord& record) {
    if (record.insertions.empty()) throw std::invalid_argument("ProcessRecord: empty");
    for (size_t i = 0; i < record.insertions.size(); ++i) {
        const int a = record.insertions[i];
        if (a < 1 || a > static_cast<int>(i) + 1)
            throw std::invalid_argument("ProcessRecord: insertion out of range");
    }
}

// Fenwick tree over slots 1..n supporting "find the k-th free slot"
// by binary lifting.
class FreeSlots {
public:
    explicit FreeSlots(int n) : n_(n), tree_(static_cast<size_t>(n) + 1, 0) {
        for (int i = 1; i <= n; ++i) tree_[i] = i & -i;
        log_ = 0;
        while ((1 << (log_ + 1)) <= n) ++log_;
    }

    int take_kth(int k) {
        int pos = 0;
        for (int pw = 1 << log_; pw; pw >>= 1) {
            if (pos + pw <= n_ && tree_[pos + pw] < k) {
                pos += pw;
                k -= tree_[pos];
            }
        }
        const int slot = pos + 1;
        for (int i = slot; i <= n_; i += i & -i) --tree_[i];
        return slot;
    }

private:
    int n_;
    int log_;
    std::vector<int> tree_;
};

} // namespace

Permutation replay_process(const ProcessRecord& record) {
    validate_record(record);
    const int n = static_cast<int>(record.insertions.size());
    // Element m freezes its rank among the first m at insertion time:
    // its final position is the a_m-th slot left free by elements
    // inserted after it. Fill positions from the last element down.
    FreeSlots slots(n);
    std::vector<int> p(n);
    for (int m = n; m >= 1; --m) p[m - 1] = slots.take_kth(record.insertions[m - 1]);
    return Permutation(std::move(p));
}

Permutation replay_process_quadratic(const ProcessRecord& record) {
    validate_record(record);
    const int n = static_cast<int>(record.insertions.size());
    std::vector<int> p;
    p.reserve(n);
    for (int m = 1; m <= n; ++m) {
        const int a = record.insertions[m - 1];
        for (int& pos : p)
            if (pos >= a) ++pos;
        p.push_back(a);
    }
    return Permutation(std::move(p));
}

Permutation sample_mallows(const MallowsParams& params, RngStream& rng) {
    validate(params);
    if (params.q > 1.0) {
        const Permutation sigma = sample_mallows(MallowsParams{params.n, 1.0 / params.q}, rng);
        return reverse(sigma);
    }
    return reverse(replay_process(run_process(params.n, params.q, rng)));
}

std::array<Permutation, 4> four_couplings(const ProcessRecord& record) {
    const Permutation p = replay_process(record);
    const Permutation pinv = invert(p);
    return {reverse(p), invert(reverse(p)), reverse(pinv), invert(reverse(pinv))};
}

std::string format_record(const ProcessRecord& record) {
    std::string out = "q=" + format_double(record.q) + "; a=";
    for (size_t i = 0; i < record.insertions.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(record.insertions[i]);
    }
    return out;
}

ProcessRecord parse_record(const std::string& line) {
    const auto qpos = line.find("q=");
    const auto apos = line.find("; a=");
    if (qpos != 0 || apos == std::string::npos)
        throw std::invalid_argument("ProcessRecord: expected 'q=<float>; a=<list>'");
    ProcessRecord record;
    record.q = std::stod(line.substr(2, apos - 2));
    std::istringstream in(line.substr(apos + 4));
    std::string tok;
    while (std::getline(in, tok, ',')) record.insertions.push_back(std::stoi(tok));
    validate_record(record);
    return record;
}

} // namespace mallows
