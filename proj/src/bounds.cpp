#include "mallows/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mallows {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double clamp_prob(double x) { return std::clamp(x, 0.0, 1.0); }

} // namespace

double displacement_tail_upper(double q, int t) {
    require(q > 0 && q < 1, "displacement_tail_upper: 0 < q < 1 required");
    require(t >= 1, "displacement_tail_upper: t >= 1 required");
    return 2.0 * std::pow(q, t);
}

std::optional<double> displacement_tail_lower(double q, int t, int n) {
    require(q > 0 && q < 1, "displacement_tail_lower: 0 < q < 1 required");
    require(t >= 1, "displacement_tail_lower: t >= 1 required");
    if (n < 3 || t > (n + 5) / 8.0) return std::nullopt;
    return 0.5 * std::pow(q, 2 * t - 1);
}

ExpectationBounds displacement_expectation_bounds(int n, double q, const ConstantsConfig& cfg) {
    require(n >= 1, "displacement_expectation_bounds: n >= 1 required");
    require(q > 0 && q < 1, "displacement_expectation_bounds: 0 < q < 1 required");
    const double inner = std::min(q / (1.0 - q), static_cast<double>(n - 1));
    return {cfg.c * inner, std::min(2.0 * q / (1.0 - q), static_cast<double>(n - 1))};
}

double lis_scale(std::int64_t n, double q) {
    require(q > 0 && q < 1, "lis_scale: 0 < q < 1 required");
    return static_cast<double>(n) * std::sqrt(1.0 - q);
}

ExpectationBounds lis_expectation_sandwich(std::int64_t n, double q) {
    require(n >= 1, "lis_expectation_sandwich: n >= 1 required");
    require(q > 0 && q <= 1, "lis_expectation_sandwich: 0 < q <= 1 required");
    const double nd = static_cast<double>(n);
    return {nd * (1.0 - q), nd - q * (nd - 1.0) / (1.0 + q)};
}

LisTailBounds lis_tail_bounds(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg) {
    require(q > 0 && q < 1, "lis_tail_bounds: 0 < q < 1 required");
    require(L >= 1, "lis_tail_bounds: L >= 1 required");
    const double nd = static_cast<double>(n);
    const double Ld = static_cast<double>(L);
    const double omq = 1.0 - q;
    LisTailBounds out;

    const bool large_L = Ld >= cfg.C * nd * std::sqrt(omq);
    // (x)^L in log-space; the exponent is huge for large n.
    out.upper_at_large_L = {clamp_prob(std::exp(Ld * std::log(cfg.C * omq * nd * nd / (Ld * Ld)))),
                            large_L};
    out.lower_at_large_L = {clamp_prob(std::exp(Ld * std::log(cfg.c * omq * nd * nd / (Ld * Ld)))),
                            large_L};

    const bool small_L = nd * omq <= Ld && Ld <= cfg.c * nd * std::sqrt(omq);
    out.lower_tail_at_small_L = {clamp_prob(std::exp(-cfg.c * omq * nd * nd / Ld)), small_L};
    return out;
}

double lds_tail_upper(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg) {
    require(L >= 2, "lds_tail_upper: L >= 2 required");
    require(q > 0 && q < 1, "lds_tail_upper: 0 < q < 1 required");
    const double nd = static_cast<double>(n);
    const double Ld = static_cast<double>(L);
    const double omq = 1.0 - q;
    const double pairs = Ld * (Ld - 1.0) / 2.0;

    double best = 1.0;
    if (q < 1.0 - 2.0 / nd) {
        double log_main;
        if (Ld <= 3.0 / omq)
            log_main = 8.0 * std::log(nd) + Ld * std::log(cfg.C / (omq * Ld * Ld));
        else
            log_main = 8.0 * std::log(nd) + Ld * std::log(cfg.C * omq) + pairs * std::log(q);
        best = std::min(best, std::exp(log_main));
    }
    if (q < 0.5) {
        const double log_refined = std::log(nd) + Ld * std::log(cfg.C) + pairs * std::log(q);
        best = std::min(best, std::exp(log_refined));
    }
    return clamp_prob(best);
}

LdsTailLower lds_tail_lower(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg) {
    require(L >= 2, "lds_tail_lower: L >= 2 required");
    require(q > 0 && q < 1, "lds_tail_lower: 0 < q < 1 required");
    const double nd = static_cast<double>(n);
    const double Ld = static_cast<double>(L);
    const double omq = 1.0 - q;
    LdsTailLower out;

    // universal: one strictly decreasing block among floor(n/L)
    // disjoint consecutive blocks
    const double log_p0 = Ld * (Ld - 1.0) / 2.0 * std::log(q) + Ld * std::log(omq);
    const double reps = std::floor(nd / Ld);
    out.universal_bound = clamp_prob(-std::expm1(reps * std::log1p(-std::exp(log_p0))));

    if (0.5 <= q && q <= 1.0 - 4.0 / nd && cfg.C / std::sqrt(omq) <= Ld && Ld <= 1.0 / omq) {
        const double log_pw = Ld * std::log(cfg.c / (omq * Ld * Ld));
        const double wreps = std::floor(nd * omq / 4.0);
        out.window_bound = clamp_prob(-std::expm1(wreps * std::log1p(-std::exp(log_pw))));
    }
    return out;
}

BoundValue lds_small_tail(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg) {
    require(L >= 2, "lds_small_tail: L >= 2 required");
    require(q > 0 && q < 1, "lds_small_tail: 0 < q < 1 required");
    const double nd = static_cast<double>(n);
    const double Ld = static_cast<double>(L);
    const double omq = 1.0 - q;
    const bool ok = 0.5 <= q && q <= 1.0 - 4.0 / nd && Ld < cfg.c / std::sqrt(omq);
    const double value = clamp_prob(std::exp(nd / Ld * std::log(cfg.C * omq * Ld * Ld)));
    return {value, ok};
}

std::string to_string(LdsRegimeLabel label) {
    switch (label) {
        case LdsRegimeLabel::SQRT_SCALE: return "SQRT_SCALE";
        case LdsRegimeLabel::LOG_RATIO_SCALE: return "LOG_RATIO_SCALE";
        case LdsRegimeLabel::SQRT_LOG_SCALE: return "SQRT_LOG_SCALE";
        case LdsRegimeLabel::SMALL_Q: return "SMALL_Q";
    }
    return "?";
}

LdsRegime lds_regime(std::int64_t n, double q, const ConstantsConfig& cfg) {
    require(n >= 2, "lds_regime: n >= 2 required");
    require(q > 0 && q < 1, "lds_regime: 0 < q < 1 required");
    const double nd = static_cast<double>(n);
    const double logn = std::log(nd);
    const double t_sqrt = 1.0 - cfg.C0 / (logn * logn);
    const double t_logratio = 1.0 - cfg.c1 * std::pow(std::log(logn), 2) / logn;
    const double t_small = 1.0 / nd;

    // Intervals checked from high q downward; a boundary point
    // belongs to the higher-q regime. With loose default constants
    // the first two thresholds can cross, so the top regime requires
    // clearing both.
    if (q >= t_sqrt && q >= t_logratio)
        return {LdsRegimeLabel::SQRT_SCALE, 1.0 / std::sqrt(1.0 - q)};
    if (q >= t_logratio)
        return {LdsRegimeLabel::LOG_RATIO_SCALE, logn / std::log((1.0 - q) * logn * logn)};
    if (q >= t_small)
        return {LdsRegimeLabel::SQRT_LOG_SCALE, std::sqrt(logn / std::log(1.0 / q))};
    return {LdsRegimeLabel::SMALL_Q, nd * q};
}

double ell_beta(double beta) {
    require(std::isfinite(beta), "ell_beta: finite beta required");
    if (std::fabs(beta) < 1e-8) return 2.0;
    if (beta > 0) return 2.0 / std::sqrt(beta) * std::asinh(std::sqrt(std::expm1(beta)));
    return 2.0 / std::sqrt(-beta) * std::asin(std::sqrt(-std::expm1(beta)));
}

double variance_bound(std::int64_t n) {
    require(n >= 1, "variance_bound: n >= 1 required");
    return static_cast<double>(n - 1);
}

double gaussian_tail(double t) {
    require(t > 0, "gaussian_tail: t > 0 required");
    return 2.0 * std::exp(-t * t / 2.0);
}

double identity_probability(std::int64_t n, double q) {
    require(n >= 1, "identity_probability: n >= 1 required");
    require(q > 0 && q < 1, "identity_probability: 0 < q < 1 required");
    double log_denom = 0.0;
    double logq = std::log(q);
    for (std::int64_t i = 1; i <= n; ++i) {
        const double qi = std::exp(static_cast<double>(i) * logq);
        if (qi < 1e-18) break;
        log_denom += std::log1p(-qi);
    }
    return std::exp(static_cast<double>(n) * std::log1p(-q) - log_denom);
}

} // namespace mallows
