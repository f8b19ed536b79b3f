#ifndef MALLOWS_BOUNDS_HPP
#define MALLOWS_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace mallows {

/// The absolute constants left unnamed by the large-deviation and
/// regime statements. The defaults are working choices; verification
/// checks order-of-magnitude containment, not exact constants, and
/// every report echoes the config it ran with.
struct ConstantsConfig {
    double C = 8.0;
    double c = 1.0 / 8.0;
    double C0 = 100.0;
    double c1 = 0.01;
};

/// A bound value together with whether the statement's validity
/// window contains the queried parameters.
struct BoundValue {
    double value = 0.0;
    bool applicable = false;
};

// ---- displacement (tail and expectation of |pi(i)-i|) ----

/// Upper tail bound 2 q^t. May exceed 1 (vacuous) and is returned as-is.
double displacement_tail_upper(double q, int t);

/// Lower tail bound q^(2t-1)/2, valid only for n >= 3 and t <= (n+5)/8.
std::optional<double> displacement_tail_lower(double q, int t, int n);

struct ExpectationBounds {
    double lower;
    double upper;
};

/// c*min(q/(1-q), n-1) <= E|pi(i)-i| <= min(2q/(1-q), n-1).
ExpectationBounds displacement_expectation_bounds(int n, double q, const ConstantsConfig& cfg);

// ---- LIS ----

/// Constant-free scale n*sqrt(1-q) of E(LIS).
double lis_scale(std::int64_t n, double q);

/// n(1-q) <= E(LIS) <= n - q(n-1)/(1+q), valid for 0 < q <= 1.
ExpectationBounds lis_expectation_sandwich(std::int64_t n, double q);

struct LisTailBounds {
    BoundValue upper_at_large_L;      // (C(1-q)n^2/L^2)^L, needs L >= C n sqrt(1-q)
    BoundValue lower_at_large_L;      // (c(1-q)n^2/L^2)^L, same window
    BoundValue lower_tail_at_small_L; // exp(-c(1-q)n^2/L), needs n(1-q) <= L <= c n sqrt(1-q)
};

LisTailBounds lis_tail_bounds(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg);

// ---- LDS ----

/// Minimum of the applicable upper tail bounds on P(LDS >= L),
/// capped at 1.
double lds_tail_upper(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg);

struct LdsTailLower {
    std::optional<double> window_bound; // needs 1/2 <= q <= 1-4/n and C/sqrt(1-q) <= L <= 1/(1-q)
    double universal_bound;             // any L >= 2
};

LdsTailLower lds_tail_lower(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg);

/// Bound on P(LDS < L), window 1/2 <= q <= 1-4/n, 2 <= L < c/sqrt(1-q).
BoundValue lds_small_tail(std::int64_t n, double q, std::int64_t L, const ConstantsConfig& cfg);

enum class LdsRegimeLabel { SQRT_SCALE, LOG_RATIO_SCALE, SQRT_LOG_SCALE, SMALL_Q };

struct LdsRegime {
    LdsRegimeLabel label;
    double scale; // the constant-free Theta-formula value at (n,q)
};

std::string to_string(LdsRegimeLabel label);

/// Classifies (n,q) into the four E(LDS) growth regimes. In SMALL_Q
/// the scale is the nq law for E(LDS)-1. Boundary points go to the
/// higher-q regime.
LdsRegime lds_regime(std::int64_t n, double q, const ConstantsConfig& cfg);

// ---- limits and small exact formulas ----

/// Mueller-Starr limit of LIS/sqrt(n) at n(1-q) -> beta. Continuous
/// at 0 with ell(0) = 2; the constant branch activates below
/// |beta| = 1e-8 where both branch formulas cancel catastrophically.
double ell_beta(double beta);

/// var(LIS) <= n-1.
double variance_bound(int64_t n);

/// P(|LIS - E LIS| > t sqrt(n-1)) < 2 exp(-t^2/2).
double gaussian_tail(double t);

/// P(pi = identity) = (1-q)^n / prod_{i=1..n}(1-q^i), log-space.
double identity_probability(std::int64_t n, double q);

} // namespace mallows

#endif
