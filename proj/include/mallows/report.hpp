#ifndef MALLOWS_REPORT_HPP
#define MALLOWS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mallows/bounds.hpp"
#include "mallows/rng.hpp"

namespace mallows {

/// Grid and budget for one verification run. Empty vectors / zero
/// counts fall back to the experiment's defaults; the effective
/// values are echoed in the report.
struct VerifyParams {
    std::vector<std::int64_t> ns;
    std::vector<double> qs;
    std::optional<double> beta;
    std::int64_t count = 0;
    std::vector<std::int64_t> thresholds;
    int block_size = 0;
    double sigma_margin = 4.0; // k in the margin k * stderr
    int workers = 1;           // scheduling only; never affects report bytes
};

struct ReportRow {
    std::int64_t n = 0;
    double q = 0.0;
    std::string statistic;
    double threshold = 0.0;
    double theory = 0.0;
    double empirical = 0.0;
    double stderr_ = 0.0;
    double margin = 0.0;
    std::string verdict; // PASS / FAIL / NOT_APPLICABLE
    bool applicable = true;
};

struct VerificationReport {
    std::string experiment;
    ConstantsConfig constants;
    SeedSpec seed;
    double sigma_margin = 4.0;
    std::vector<ReportRow> rows;

    bool passed() const;
    std::string to_json() const;
    std::string to_text() const;
};

const std::vector<std::string>& known_experiments();

/// Runs one named verification experiment; every theory value comes
/// from the bound evaluators, every empirical value from the seeded
/// harness. Deterministic given (experiment, params, constants, seed).
VerificationReport run_verification(const std::string& experiment, const VerifyParams& params,
                                    const ConstantsConfig& constants, SeedSpec seed);

} // namespace mallows

#endif
