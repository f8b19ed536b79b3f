// Command-line front end: sampling, exact tables, verification suites,
// and scatter export of the point set {(i, pi(i))}.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mallows/bounds.hpp"
#include "mallows/exact.hpp"
#include "mallows/format.hpp"
#include "mallows/model.hpp"
#include "mallows/montecarlo.hpp"
#include "mallows/permutation.hpp"
#include "mallows/report.hpp"
#include "mallows/rng.hpp"

namespace {

using namespace mallows;

struct CommonOpts {
    std::int64_t n = 0;
    std::optional<double> q;
    std::optional<double> beta;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    int workers = 1;
    std::string output;
    std::string format;
    std::string config_path;
    ConstantsConfig constants;
};

// Fills any option the user left untouched from the JSON config file;
// explicit flags always win.
void merge_config(CLI::App& app, CommonOpts& opts) {
    if (opts.config_path.empty()) return;
    std::ifstream in(opts.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot read " + opts.config_path);
    nlohmann::json j;
    in >> j;
    const auto take = [&](const char* flag, const char* key, auto& slot) {
        const CLI::Option* opt = app.get_option_no_throw(flag);
        if (opt != nullptr && opt->count() > 0) return; // flag wins
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    take("--n", "n", opts.n);
    if (j.contains("q") && app.get_option_no_throw("--q")->count() == 0 && !opts.beta)
        opts.q = j.at("q").get<double>();
    if (j.contains("beta") && app.get_option_no_throw("--beta")->count() == 0 && !opts.q)
        opts.beta = j.at("beta").get<double>();
    take("--count", "count", opts.count);
    take("--seed", "seed", opts.seed);
    take("--stream", "stream", opts.stream);
    take("--workers", "workers", opts.workers);
    take("--format", "format", opts.format);
    take("--output", "output", opts.output);
    if (j.contains("constants")) {
        const auto& c = j.at("constants");
        if (c.contains("C") && app.get_option_no_throw("--C")->count() == 0)
            opts.constants.C = c.at("C").get<double>();
        if (c.contains("c") && app.get_option_no_throw("--c")->count() == 0)
            opts.constants.c = c.at("c").get<double>();
        if (c.contains("C0") && app.get_option_no_throw("--C0")->count() == 0)
            opts.constants.C0 = c.at("C0").get<double>();
        if (c.contains("c1") && app.get_option_no_throw("--c1")->count() == 0)
            opts.constants.c1 = c.at("c1").get<double>();
    }
}

void add_common(CLI::App& app, CommonOpts& opts, bool with_beta = true) {
    app.add_option("--n", opts.n, "permutation length");
    app.add_option("--q", [&opts](const std::vector<std::string>& vals) {
        opts.q = std::stod(vals.front());
        return true;
    }, "Mallows parameter q");
    if (with_beta)
        app.add_option("--beta", [&opts](const std::vector<std::string>& vals) {
            opts.beta = std::stod(vals.front());
            return true;
        }, "sets q = 1 - beta/n");
    app.add_option("--count", opts.count, "number of samples / trials");
    app.add_option("--seed", opts.seed, "RNG seed");
    app.add_option("--stream", opts.stream, "RNG stream");
    app.add_option("--workers", opts.workers, "worker threads (never changes output)");
    app.add_option("--output,-o", opts.output, "output file (default stdout)");
    app.add_option("--format", opts.format, "output format");
    app.add_option("--config", opts.config_path, "JSON config merged under flags");
    app.add_option("--C", opts.constants.C, "large absolute constant");
    app.add_option("--c", opts.constants.c, "small absolute constant");
    app.add_option("--C0", opts.constants.C0, "regime threshold constant");
    app.add_option("--c1", opts.constants.c1, "regime threshold constant");
}

double effective_q(const CommonOpts& opts) {
    if (opts.q && opts.beta)
        throw CLI::ValidationError("--q/--beta", "supply exactly one of q and beta");
    if (opts.beta) {
        if (opts.n <= 0) throw CLI::ValidationError("--beta", "beta requires --n");
        const double q = 1.0 - *opts.beta / static_cast<double>(opts.n);
        if (q <= 0.0) throw CLI::ValidationError("--beta", "beta >= n gives q <= 0");
        return q;
    }
    if (opts.q) return *opts.q;
    throw CLI::ValidationError("--q", "one of q and beta is required");
}

std::string config_header(const CommonOpts& opts, double q) {
    std::string h;
    h += "# n=" + std::to_string(opts.n) + " q=" + format_double(q);
    h += " count=" + std::to_string(opts.count);
    h += " seed=" + std::to_string(opts.seed) + " stream=" + std::to_string(opts.stream);
    h += " workers=" + std::to_string(opts.workers);
    h += " C=" + format_double(opts.constants.C) + " c=" + format_double(opts.constants.c);
    h += " C0=" + format_double(opts.constants.C0) + " c1=" + format_double(opts.constants.c1);
    h += "\n";
    return h;
}

void write_out(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.output);
    if (!out) throw std::runtime_error("cannot write " + opts.output);
    out << text;
}

int cmd_sample(CommonOpts& opts, bool annotate) {
    const double q = effective_q(opts);
    if (opts.count <= 0) opts.count = 10;
    const MallowsParams params{static_cast<int>(opts.n), q};
    validate(params);
    std::string out = config_header(opts, q);
    if (annotate) out += "# columns: perm,inv,lis,lds\n";
    RngStream rng(SeedSpec{opts.seed, opts.stream}, 0);
    for (std::int64_t k = 0; k < opts.count; ++k) {
        const Permutation pi = sample_mallows(params, rng);
        out += format_permutation(pi);
        if (annotate) {
            out += "," + std::to_string(inversion_count(pi));
            out += "," + std::to_string(lis_length(pi));
            out += "," + std::to_string(lds_length(pi));
        }
        out += "\n";
    }
    write_out(opts, out);
    return 0;
}

int cmd_exact(CommonOpts& opts) {
    const double q = effective_q(opts);
    const ExactDistribution dist = enumerate_distribution({static_cast<int>(opts.n), q});
    std::ostringstream table;
    table << config_header(opts, q);
    write_distribution_csv(table, dist);
    write_out(opts, table.str());
    return 0;
}

int cmd_verify(CommonOpts& opts, const std::string& experiment, std::vector<double>& qs,
               std::vector<std::int64_t>& thresholds, int block_size, double sigma_margin) {
    VerifyParams params;
    if (opts.n > 0) params.ns = {opts.n};
    if (opts.beta) params.beta = opts.beta;
    if (opts.q) qs.insert(qs.begin(), *opts.q);
    params.qs = qs;
    params.count = opts.count;
    params.thresholds = thresholds;
    params.block_size = block_size;
    params.sigma_margin = sigma_margin;
    params.workers = opts.workers;
    const auto report = run_verification(experiment, params, opts.constants,
                                         SeedSpec{opts.seed, opts.stream});
    if (opts.format == "json")
        write_out(opts, report.to_json() + "\n");
    else
        write_out(opts, report.to_text());
    return report.passed() ? 0 : 1;
}

int cmd_points(CommonOpts& opts, double strip_k) {
    const double q = effective_q(opts);
    const MallowsParams params{static_cast<int>(opts.n), q};
    validate(params);
    const std::string format = opts.format.empty() ? "svg" : opts.format;
    if (format != "svg" && format != "csv")
        throw CLI::ValidationError("--format", "points supports svg or csv");
    if (format == "svg" && opts.n > 1000000)
        throw CLI::ValidationError("--n", "svg export limited to n <= 10^6");
    RngStream rng(SeedSpec{opts.seed, opts.stream}, 0);
    const Permutation pi = sample_mallows(params, rng);
    const double half_width = q < 1.0 ? strip_k / (1.0 - q) : static_cast<double>(opts.n);
    const auto in_strip = [&](int i) {
        return std::fabs(static_cast<double>(pi.of(i) - i)) <= half_width;
    };
    std::string out;
    if (format == "csv") {
        out += config_header(opts, q);
        out += "# strip_k=" + format_double(strip_k) + "\n";
        out += "i,pi_i,in_strip\n";
        for (int i = 1; i <= pi.size(); ++i)
            out += std::to_string(i) + "," + std::to_string(pi.of(i)) + "," +
                   (in_strip(i) ? "1" : "0") + "\n";
    } else {
        const double size = 600.0;
        const double n = static_cast<double>(opts.n);
        const double radius = std::max(0.5, 300.0 / n);
        const auto x_of = [&](double i) { return (i - 0.5) / n * size; };
        const auto y_of = [&](double v) { return size - (v - 0.5) / n * size; };
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
               "viewBox=\"0 0 600 600\">\n";
        out += "<!--" + config_header(opts, q) + " strip_k=" + format_double(strip_k) + " -->\n";
        out += "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\" "
               "stroke=\"black\"/>\n";
        for (double sign : {-1.0, 1.0}) {
            // the line pi(i) = i + sign*half_width in plot coordinates
            const double y1 = y_of(1.0 + sign * half_width);
            const double y2 = y_of(n + sign * half_width);
            out += "<line x1=\"" + format_double(x_of(1.0)) + "\" y1=\"" + format_double(y1) +
                   "\" x2=\"" + format_double(x_of(n)) + "\" y2=\"" + format_double(y2) +
                   "\" stroke=\"red\" stroke-width=\"1\"/>\n";
        }
        for (int i = 1; i <= pi.size(); ++i) {
            out += "<circle cx=\"" + format_double(x_of(static_cast<double>(i))) + "\" cy=\"" +
                   format_double(y_of(static_cast<double>(pi.of(i)))) + "\" r=\"" +
                   format_double(radius) + "\" fill=\"" +
                   (in_strip(i) ? std::string("black") : std::string("blue")) + "\"/>\n";
        }
        out += "</svg>\n";
    }
    write_out(opts, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mallows permutation laboratory"};
    app.require_subcommand(1);

    CommonOpts sample_opts, exact_opts, verify_opts, points_opts;
    bool annotate = false;
    std::string experiment;
    std::vector<double> verify_qs;
    std::vector<std::int64_t> thresholds;
    int block_size = 0;
    double sigma_margin = 4.0;
    double strip_k = 2.0;

    CLI::App* sample = app.add_subcommand("sample", "draw Mallows permutations");
    add_common(*sample, sample_opts);
    sample->add_flag("--annotate", annotate, "append inv,lis,lds columns");

    CLI::App* exact = app.add_subcommand("exact", "exact distribution table (n <= 10)");
    add_common(*exact, exact_opts);

    CLI::App* verify = app.add_subcommand("verify", "run a named verification experiment");
    verify->add_option("experiment", experiment, "experiment name")->required();
    add_common(*verify, verify_opts);
    verify->add_option("--q-grid", verify_qs, "additional q grid points");
    verify->add_option("--thresholds", thresholds, "tail thresholds");
    verify->add_option("--block-size", block_size, "block size");
    verify->add_option("--sigma-margin", sigma_margin, "k in the k*stderr margin");

    CLI::App* points = app.add_subcommand("points", "scatter of {(i, pi(i))} as svg or csv");
    add_common(*points, points_opts);
    points->add_option("--strip-k", strip_k, "strip half-width multiplier k in k/(1-q)");

    try {
        app.parse(argc, argv);
        if (sample->parsed()) {
            merge_config(*sample, sample_opts);
            return cmd_sample(sample_opts, annotate);
        }
        if (exact->parsed()) {
            merge_config(*exact, exact_opts);
            return cmd_exact(exact_opts);
        }
        if (verify->parsed()) {
            merge_config(*verify, verify_opts);
            return cmd_verify(verify_opts, experiment, verify_qs, thresholds, block_size,
                              sigma_margin);
        }
        if (points->parsed()) {
            merge_config(*points, points_opts);
            return cmd_points(points_opts, strip_k);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
