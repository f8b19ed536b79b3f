#include "mallows/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "mallows/format.hpp"
#include "mallows/montecarlo.hpp"

namespace mallows {

namespace {

const char* kPass = "PASS";
const char* kFail = "FAIL";
const char* kNa = "NOT_APPLICABLE";

const char* verdict_of(bool ok) { return ok ? kPass : kFail; }

double binom_se(double p, std::int64_t count) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

SeedSpec cell_seed(SeedSpec base, std::uint64_t cell) {
    return SeedSpec{base.seed, base.stream * 1024 + cell};
}

struct Ctx {
    VerificationReport& rep;
    const VerifyParams& params;
    const ConstantsConfig& cfg;
    SeedSpec seed;
    double k; // sigma margin multiplier
    int workers;

    std::int64_t count_or(std::int64_t dflt) const {
        return params.count > 0 ? params.count : dflt;
    }
    std::vector<std::int64_t> ns_or(std::vector<std::int64_t> dflt) const {
        return params.ns.empty() ? dflt : params.ns;
    }
    std::vector<double> qs_or(std::vector<double> dflt) const {
        return params.qs.empty() ? dflt : params.qs;
    }
    void row(ReportRow r) { rep.rows.push_back(std::move(r)); }
};

// Collects one statistic per trial for a Mallows cell.
std::vector<double> sample_stat(const Ctx& ctx, std::int64_t n, double q, std::int64_t count,
                                std::uint64_t cell,
                                const std::function<double(const Permutation&)>& stat) {
    const MallowsParams params{static_cast<int>(n), q};
    return run_trials(count, ctx.workers, cell_seed(ctx.seed, cell),
                      [&](std::int64_t, RngStream& rng) { return stat(checked_sample(params, rng)); });
}

double tail_p(const std::vector<double>& values, double t) {
    std::int64_t hits = 0;
    for (double v : values)
        if (v >= t) ++hits;
    return static_cast<double>(hits) / static_cast<double>(values.size());
}

// ---- experiments ----

void exp_displacement(Ctx& ctx) {
    const auto ns = ctx.ns_or({1000});
    const auto qs = ctx.qs_or({0.9, 0.99});
    const std::int64_t count = ctx.count_or(10000);
    std::uint64_t cell = 0;
    for (std::int64_t n : ns) {
        const std::vector<int> sites = {1, static_cast<int>((n + 1) / 2), static_cast<int>(n)};
        for (double q : qs) {
            const MallowsParams params{static_cast<int>(n), q};
            const auto feats = run_trials_multi(
                count, static_cast<int>(sites.size()), ctx.workers, cell_seed(ctx.seed, cell++),
                [&](std::int64_t, RngStream& rng, double* out) {
                    const Permutation pi = checked_sample(params, rng);
                    for (size_t s = 0; s < sites.size(); ++s)
                        out[s] = static_cast<double>(displacement(pi, sites[s]));
                });
            for (size_t s = 0; s < sites.size(); ++s) {
                std::vector<double> d(static_cast<size_t>(count));
                for (std::int64_t t = 0; t < count; ++t)
                    d[static_cast<size_t>(t)] = feats[static_cast<size_t>(t) * sites.size() + s];
                const std::string site = " i=" + std::to_string(sites[s]);
                for (int t = 1; t <= 50; ++t) {
                    const double p = tail_p(d, t);
                    const double se = binom_se(p, count);
                    const double upper = displacement_tail_upper(q, t);
                    ctx.row({n, q, "disp_tail_upper" + site, static_cast<double>(t), upper, p, se,
                             ctx.k * se, verdict_of(p <= upper + ctx.k * se), true});
                    const auto lower = displacement_tail_lower(q, t, static_cast<int>(n));
                    if (lower) {
                        ctx.row({n, q, "disp_tail_lower" + site, static_cast<double>(t), *lower, p,
                                 se, ctx.k * se, verdict_of(p >= *lower - ctx.k * se), true});
                    } else {
                        ctx.row({n, q, "disp_tail_lower" + site, static_cast<double>(t), 0.0, p, se,
                                 ctx.k * se, kNa, false});
                    }
                }
                const Estimate est = summarize(d);
                const auto bounds = displacement_expectation_bounds(static_cast<int>(n), q, ctx.cfg);
                ctx.row({n, q, "disp_mean_upper" + site, 0.0, bounds.upper, est.mean, est.stderr_,
                         ctx.k * est.stderr_,
                         verdict_of(est.mean <= bounds.upper + ctx.k * est.stderr_), true});
                // informational: the constant c the lower bound would need
                const double inner =
                    std::min(q / (1.0 - q), static_cast<double>(n - 1));
                ctx.row({n, q, "disp_mean_implied_c" + site, 0.0, ctx.cfg.c, est.mean / inner,
                         est.stderr_ / inner, 0.0, kNa, false});
            }
        }
    }
}

void exp_lis_expectation(Ctx& ctx) {
    const std::int64_t count = ctx.count_or(200);
    const bool defaults = ctx.params.ns.empty() && ctx.params.qs.empty();
    const auto ns = ctx.ns_or({1000});
    const auto qs = ctx.qs_or({0.01, 0.1});
    std::uint64_t cell = 0;
    for (std::int64_t n : ns) {
        for (double q : qs) {
            const auto lis = sample_stat(ctx, n, q, count, cell++, [](const Permutation& pi) {
                return static_cast<double>(lis_length(pi));
            });
            const Estimate est = summarize(lis);
            const auto sandwich = lis_expectation_sandwich(n, q);
            ctx.row({n, q, "lis_mean_lower", 0.0, sandwich.lower, est.mean, est.stderr_,
                     ctx.k * est.stderr_,
                     verdict_of(est.mean >= sandwich.lower - ctx.k * est.stderr_), true});
            ctx.row({n, q, "lis_mean_upper", 0.0, sandwich.upper, est.mean, est.stderr_,
                     ctx.k * est.stderr_,
                     verdict_of(est.mean <= sandwich.upper + ctx.k * est.stderr_), true});
        }
    }
    if (defaults) {
        const std::int64_t n = 50000;
        const double q = 1.0 - std::pow(static_cast<double>(n), -0.7);
        const auto lis = sample_stat(ctx, n, q, count, cell++, [](const Permutation& pi) {
            return static_cast<double>(lis_length(pi));
        });
        const Estimate est = summarize(lis);
        const double scale = lis_scale(n, q);
        const double ratio = est.mean / scale;
        ctx.row({n, q, "lis_scale_ratio", 0.0, 1.0, ratio, est.stderr_ / scale, 0.0,
                 verdict_of(ratio >= 0.5 && ratio <= 2.0), true});
    }
}

void exp_lis_tails(Ctx& ctx) {
    const auto ns = ctx.ns_or({300});
    const auto qs = ctx.qs_or({0.96});
    const std::int64_t count = ctx.count_or(2000);
    std::uint64_t cell = 0;
    for (std::int64_t n : ns) {
        for (double q : qs) {
            std::vector<std::int64_t> thresholds = ctx.params.thresholds;
            if (thresholds.empty()) {
                const double s = lis_scale(n, q);
                thresholds = {static_cast<std::int64_t>(0.5 * s), static_cast<std::int64_t>(s),
                              static_cast<std::int64_t>(1.5 * s), static_cast<std::int64_t>(2 * s),
                              static_cast<std::int64_t>(3 * s)};
            }
            const auto lis = sample_stat(ctx, n, q, count, cell++, [](const Permutation& pi) {
                return static_cast<double>(lis_length(pi));
            });
            for (std::int64_t L : thresholds) {
                if (L < 1) continue;
                const double p = tail_p(lis, static_cast<double>(L));
                const double se = binom_se(p, count);
                const auto b = lis_tail_bounds(n, q, L, ctx.cfg);
                ctx.row({n, q, "lis_tail_upper", static_cast<double>(L), b.upper_at_large_L.value,
                         p, se, ctx.k * se,
                         b.upper_at_large_L.applicable
                             ? verdict_of(p <= b.upper_at_large_L.value + ctx.k * se)
                             : kNa,
                         b.upper_at_large_L.applicable});
                ctx.row({n, q, "lis_tail_lower", static_cast<double>(L), b.lower_at_large_L.value,
                         p, se, ctx.k * se,
                         b.lower_at_large_L.applicable
                             ? verdict_of(p >= b.lower_at_large_L.value - ctx.k * se)
                             : kNa,
                         b.lower_at_large_L.applicable});
                const double p_below = 1.0 - p;
                ctx.row({n, q, "lis_small_tail", static_cast<double>(L),
                         b.lower_tail_at_small_L.value, p_below, se, ctx.k * se,
                         b.lower_tail_at_small_L.applicable
                             ? verdict_of(p_below <= b.lower_tail_at_small_L.value + ctx.k * se)
                             : kNa,
                         b.lower_tail_at_small_L.applicable});
            }
        }
    }
}

void exp_lln(Ctx& ctx) {
    const auto ns = ctx.ns_or({1000, 10000, 100000});
    const std::int64_t count = ctx.count_or(100);
    std::vector<double> ratios;
    std::uint64_t cell = 0;
    for (std::int64_t n : ns) {
        const double q = 1.0 - 1.0 / std::sqrt(static_cast<double>(n));
        const auto lis = sample_stat(ctx, n, q, count, cell++, [](const Permutation& pi) {
            return static_cast<double>(lis_length(pi));
        });
        const Estimate est = summarize(lis);
        const double scale = lis_scale(n, q);
        const double ratio = est.mean / scale;
        ratios.push_back(ratio);
        ctx.row({n, q, "lln_ratio", 0.0, 1.0, ratio, est.stderr_ / scale, 0.0, kNa, false});
    }
    for (size_t i = 1; i < ratios.size(); ++i) {
        ctx.row({ns[i], 0.0, "lln_gap_shrinks", static_cast<double>(i),
                 std::fabs(ratios[i - 1] - 1.0), std::fabs(ratios[i] - 1.0), 0.0, 0.0,
                 verdict_of(std::fabs(ratios[i] - 1.0) < std::fabs(ratios[i - 1] - 1.0)), true});
    }
    const double last = ratios.back();
    ctx.row({ns.back(), 0.0, "lln_final_band", 0.0, 1.0, last, 0.0, 0.2,
             verdict_of(last >= 0.8 && last <= 1.2), true});
}

void exp_mueller_starr(Ctx& ctx) {
    const std::vector<double> betas =
        ctx.params.beta ? std::vector<double>{*ctx.params.beta} : std::vector<double>{-2.0, 0.0, 1.0};
    const std::int64_t n = ctx.ns_or({10000}).front();
    const std::int64_t count = ctx.count_or(200);
    std::uint64_t cell = 0;
    for (double beta : betas) {
        const auto result = mueller_starr_experiment(beta, static_cast<int>(n), count,
                                                     cell_seed(ctx.seed, cell++), ctx.workers);
        const double margin = 0.1 * result.ell;
        ctx.row({n, result.q, "ms_ratio beta=" + format_double(beta), 0.0, result.ell,
                 result.ratio_mean.mean, result.ratio_mean.stderr_, margin,
                 verdict_of(std::fabs(result.ratio_mean.mean - result.ell) <= margin), true});
    }
}

void exp_lds_regimes(Ctx& ctx) {
    struct CellSpec {
        std::int64_t n;
        double q;
        std::int64_t count;
    };
    std::vector<CellSpec> cells;
    if (!ctx.params.ns.empty() || !ctx.params.qs.empty()) {
        for (std::int64_t n : ctx.ns_or({1000000}))
            for (double q : ctx.qs_or({0.5}))
                cells.push_back({n, q, ctx.count_or(30)});
    } else {
        const std::int64_t n = 1000000;
        cells = {{n, 1.0 - 4.0 / static_cast<double>(n), ctx.count_or(30)},
                 {n, 0.5, ctx.count_or(30)},
                 {n, 1e-7, ctx.count_or(200)}};
    }
    std::uint64_t cell = 0;
    for (const auto& spec : cells) {
        const LdsRegime regime = lds_regime(spec.n, spec.q, ctx.cfg);
        const auto lds = sample_stat(ctx, spec.n, spec.q, spec.count, cell++,
                                     [](const Permutation& pi) {
                                         return static_cast<double>(lds_length(pi));
                                     });
        Estimate est = summarize(lds);
        double empirical = est.mean;
        if (regime.label == LdsRegimeLabel::SMALL_Q) empirical -= 1.0; // E(LDS)-1 law
        ctx.row({spec.n, spec.q, "lds_regime:" + to_string(regime.label), 0.0, regime.scale,
                 empirical, est.stderr_, 0.0,
                 verdict_of(empirical >= regime.scale / 8.0 && empirical <= 8.0 * regime.scale),
                 true});
    }
}

void exp_lds_tails(Ctx& ctx) {
    const std::int64_t count = ctx.count_or(3000);
    std::uint64_t cell = 0;
    // universal lower bound at q = 1/2
    {
        const std::int64_t n = ctx.ns_or({10000}).front();
        const double q = 0.5;
        const auto lds = sample_stat(ctx, n, q, count, cell++, [](const Permutation& pi) {
            return static_cast<double>(lds_length(pi));
        });
        for (std::int64_t L : std::vector<std::int64_t>{2, 3, 4}) {
            const double p = tail_p(lds, static_cast<double>(L));
            const double se = binom_se(p, count);
            const auto lower = lds_tail_lower(n, q, L, ctx.cfg);
            ctx.row({n, q, "lds_tail_lower_universal", static_cast<double>(L),
                     lower.universal_bound, p, se, ctx.k * se,
                     verdict_of(p >= lower.universal_bound - ctx.k * se), true});
        }
    }
    // refined upper bound in the q < 1/2 regime
    {
        const std::int64_t n = ctx.ns_or({10000}).front();
        const double q = 0.3;
        const auto lds = sample_stat(ctx, n, q, count, cell++, [](const Permutation& pi) {
            return static_cast<double>(lds_length(pi));
        });
        for (std::int64_t L = 4; L <= 8; ++L) {
            const double p = tail_p(lds, static_cast<double>(L));
            const double se = binom_se(p, count);
            const double ld = static_cast<double>(L);
            const double bound = std::min(
                1.0, std::exp(std::log(static_cast<double>(n)) + ld * std::log(ctx.cfg.C) +
                              ld * (ld - 1.0) / 2.0 * std::log(q)));
            ctx.row({n, q, "lds_tail_upper_refined", static_cast<double>(L), bound, p, se,
                     ctx.k * se, verdict_of(p <= bound + ctx.k * se), true});
        }
    }
}

void exp_variance(Ctx& ctx) {
    const auto ns = ctx.ns_or({100, 10000});
    const std::int64_t count = ctx.count_or(10000);
    std::uint64_t cell = 0;
    for (std::int64_t n : ns) {
        const auto qs = ctx.qs_or({0.5, 1.0 - 4.0 / static_cast<double>(n)});
        for (double q : qs) {
            const auto lis = sample_stat(ctx, n, q, count, cell++, [](const Permutation& pi) {
                return static_cast<double>(lis_length(pi));
            });
            const Estimate est = summarize(lis);
            const double var = est.stderr_ * est.stderr_ * static_cast<double>(count);
            const double vb = variance_bound(n);
            ctx.row({n, q, "lis_variance", 0.0, vb, var, 0.0, 0.1 * vb,
                     verdict_of(var <= vb * 1.1), true});
            const double spread = std::sqrt(static_cast<double>(n - 1));
            for (int t = 1; t <= 3; ++t) {
                std::int64_t hits = 0;
                for (double v : lis)
                    if (std::fabs(v - est.mean) > t * spread) ++hits;
                const double p = static_cast<double>(hits) / static_cast<double>(count);
                const double se = binom_se(std::max(p, 1.0 / static_cast<double>(count)), count);
                const double bound = gaussian_tail(static_cast<double>(t));
                ctx.row({n, q, "lis_concentration", static_cast<double>(t), bound, p, se,
                         ctx.k * se, verdict_of(p <= bound + ctx.k * se), true});
            }
        }
    }
}

void exp_identity(Ctx& ctx) {
    const std::int64_t n = ctx.ns_or({100}).front();
    const double q = ctx.qs_or({1e-3}).front();
    const std::int64_t count = ctx.count_or(100000);
    const Permutation id = Permutation::identity(static_cast<int>(n));
    const auto not_id = sample_stat(ctx, n, q, count, 0, [&](const Permutation& pi) {
        return pi == id ? 0.0 : 1.0;
    });
    const double p = summarize(not_id).mean;
    const double se = binom_se(p, count);
    const double exact = 1.0 - identity_probability(n, q);
    ctx.row({n, q, "identity_prob", 0.0, exact, p, se, ctx.k * se,
             verdict_of(std::fabs(p - exact) <= ctx.k * se), true});
    const double nq = static_cast<double>(n) * q;
    ctx.row({n, q, "identity_nq_band", 0.0, nq, exact, 0.0, 0.0,
             verdict_of(exact >= nq / 8.0 && exact <= 8.0 * nq), true});
}

void exp_sampler_gof(Ctx& ctx) {
    const std::int64_t n = ctx.ns_or({5}).front();
    const auto qs = ctx.qs_or({0.3, 0.5, 0.9, 1.0, 2.0});
    const std::int64_t count = ctx.count_or(200000);
    std::uint64_t cell = 0;
    for (double q : qs) {
        const auto gof = goodness_of_fit(MallowsParams{static_cast<int>(n), q}, count,
                                         cell_seed(ctx.seed, cell++), 0.02, ctx.workers);
        ctx.row({n, q, "gof_tv", 0.0, gof.tv_threshold, gof.tv, 0.0, 0.0,
                 verdict_of(gof.tv <= gof.tv_threshold), true});
        ctx.row({n, q, "gof_chi2", static_cast<double>(gof.dof), gof.chi_square_threshold,
                 gof.chi_square_stat, 0.0, 0.0,
                 verdict_of(gof.chi_square_stat <= gof.chi_square_threshold), true});
    }
}

void exp_block_decomposition(Ctx& ctx) {
    const std::int64_t trials = ctx.count_or(1000);
    const auto violations = run_trials(trials, ctx.workers, cell_seed(ctx.seed, 0),
                                       [&](std::int64_t, RngStream& rng) {
                                           const int n = static_cast<int>(rng.next_in(300));
                                           const double q = 2.0 * rng.next_double() + 1e-3;
                                           const int bs = static_cast<int>(
                                               rng.next_in(static_cast<std::uint64_t>(n)));
                                           const Permutation pi =
                                               checked_sample(MallowsParams{n, q}, rng);
                                           const auto dec = block_decomposition(pi, bs);
                                           return dec.lis <= dec.sum ? 0.0 : 1.0;
                                       });
    double bad = 0.0;
    for (double v : violations) bad += v;
    ctx.row({0, 0.0, "block_lis_le_sum", static_cast<double>(trials), 0.0, bad, 0.0, 0.0,
             verdict_of(bad == 0.0), true});
}

void exp_bounded_difference(Ctx& ctx) {
    const std::int64_t n = ctx.ns_or({200}).front();
    const double q = ctx.qs_or({0.9}).front();
    const std::int64_t trials = ctx.count_or(10000);
    const int max_diff = bounded_difference_experiment(static_cast<int>(n), q, trials,
                                                       cell_seed(ctx.seed, 0), ctx.workers);
    ctx.row({n, q, "max_abs_delta_lis", static_cast<double>(trials), 1.0,
             static_cast<double>(max_diff), 0.0, 0.0, verdict_of(max_diff <= 1), true});
}

void exp_monotonicity(Ctx& ctx) {
    const std::int64_t n = ctx.ns_or({500}).front();
    const double q = ctx.qs_or({0.5}).front();
    const std::int64_t trials = ctx.count_or(10000);
    const bool ok = monotonicity_experiment(static_cast<int>(n), q, trials,
                                            cell_seed(ctx.seed, 0), ctx.workers);
    ctx.row({n, q, "insertion_monotonicity", static_cast<double>(trials), 1.0, ok ? 1.0 : 0.0,
             0.0, 0.0, verdict_of(ok), true});
}

void exp_greedy_window(Ctx& ctx) {
    const std::int64_t n = ctx.ns_or({10000}).front();
    const double q = ctx.qs_or({0.99}).front();
    const std::int64_t trials = ctx.count_or(100);
    const int L = static_cast<int>(0.05 * lis_scale(n, q));
    const auto full = run_trials(trials, ctx.workers, cell_seed(ctx.seed, 0),
                                 [&](std::int64_t, RngStream& rng) {
                                     const ProcessRecord record =
                                         run_process(static_cast<int>(n), q, rng);
                                     // validity of the output is asserted inside
                                     const IndexSequence idx =
                                         greedy_window_subsequence(record, L);
                                     return static_cast<int>(idx.size()) == L ? 1.0 : 0.0;
                                 });
    const Estimate est = summarize(full);
    ctx.row({n, q, "greedy_window_valid", static_cast<double>(L), 0.0, 0.0, 0.0, 0.0, kPass,
             true});
    ctx.row({n, q, "greedy_window_full_length", static_cast<double>(L), 0.5, est.mean,
             est.stderr_, 0.0, verdict_of(est.mean >= 0.5), true});
}

} // namespace

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> names = {
        "displacement",    "lis-expectation", "lis-tails",          "lln",
        "mueller-starr",   "lds-regimes",     "lds-tails",          "variance",
        "identity",        "sampler-gof",     "block-decomposition", "bounded-difference",
        "monotonicity",    "greedy-window"};
    return names;
}

VerificationReport run_verification(const std::string& experiment, const VerifyParams& params,
                                    const ConstantsConfig& constants, SeedSpec seed) {
    VerificationReport rep;
    rep.experiment = experiment;
    rep.constants = constants;
    rep.seed = seed;
    rep.sigma_margin = params.sigma_margin;
    Ctx ctx{rep, params, constants, seed, params.sigma_margin,
            params.workers > 0 ? params.workers : 1};

    if (experiment == "displacement") exp_displacement(ctx);
    else if (experiment == "lis-expectation") exp_lis_expectation(ctx);
    else if (experiment == "lis-tails") exp_lis_tails(ctx);
    else if (experiment == "lln") exp_lln(ctx);
    else if (experiment == "mueller-starr") exp_mueller_starr(ctx);
    else if (experiment == "lds-regimes") exp_lds_regimes(ctx);
    else if (experiment == "lds-tails") exp_lds_tails(ctx);
    else if (experiment == "variance") exp_variance(ctx);
    else if (experiment == "identity") exp_identity(ctx);
    else if (experiment == "sampler-gof") exp_sampler_gof(ctx);
    else if (experiment == "block-decomposition") exp_block_decomposition(ctx);
    else if (experiment == "bounded-difference") exp_bounded_difference(ctx);
    else if (experiment == "monotonicity") exp_monotonicity(ctx);
    else if (experiment == "greedy-window") exp_greedy_window(ctx);
    else throw std::invalid_argument("unknown experiment: " + experiment);
    return rep;
}

bool VerificationReport::passed() const {
    return std::none_of(rows.begin(), rows.end(),
                        [](const ReportRow& r) { return r.applicable && r.verdict == kFail; });
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment;
    j["seed"] = {{"seed", seed.seed}, {"stream", seed.stream}};
    j["constants"] = {{"C", constants.C}, {"c", constants.c}, {"C0", constants.C0},
                      {"c1", constants.c1}};
    j["sigma_margin"] = sigma_margin;
    j["passed"] = passed();
    auto rows_json = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        rows_json.push_back({{"n", r.n},
                             {"q", r.q},
                             {"statistic", r.statistic},
                             {"threshold", r.threshold},
                             {"theory", r.theory},
                             {"empirical", r.empirical},
                             {"stderr", r.stderr_},
                             {"margin", r.margin},
                             {"verdict", r.verdict},
                             {"applicable", r.applicable}});
    }
    j["rows"] = std::move(rows_json);
    return j.dump(2);
}

std::string VerificationReport::to_text() const {
    std::string out;
    out += "experiment: " + experiment + "\n";
    out += "seed: " + std::to_string(seed.seed) + "/" + std::to_string(seed.stream) + "\n";
    out += "constants: C=" + format_double(constants.C) + " c=" + format_double(constants.c) +
           " C0=" + format_double(constants.C0) + " c1=" + format_double(constants.c1) + "\n";
    out += "sigma_margin: " + format_double(sigma_margin) + "\n";
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%10s %12s %-34s %10s %14s %14s %12s %12s %-15s\n", "n", "q",
                  "statistic", "threshold", "theory", "empirical", "stderr", "margin", "verdict");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%10lld %12.6g %-34s %10.6g %14.8g %14.8g %12.6g %12.6g %-15s\n",
                      static_cast<long long>(r.n), r.q, r.statistic.c_str(), r.threshold, r.theory,
                      r.empirical, r.stderr_, r.margin, r.verdict.c_str());
        out += buf;
    }
    out += passed() ? "overall: PASS\n" : "overall: FAIL\n";
    return out;
}

} // namespace mallows
