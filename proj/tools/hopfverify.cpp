// hopfverify: runs the verification suites and exports leaf samples.
//
// Exit status: 0 all checks pass, 1 some check fails or a suite aborts, 2 usage or configuration
// error, 3 I/O error. Every option can also be set through an environment
// variable named HOPFVERIFY_<OPTION>, e.g. HOPFVERIFY_SEED=7.

#include "hopf/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes to stdout when path is "-" or empty.
void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing '" + path + "'");
}

/// Slope syntax: "inf", "origin", "eK" for a basis element, or comma-separated coefficients.
hopf::LeafId<double> parse_leaf(const std::string& spec, hopf::AlgebraDim d, double radius) {
    using hopf::LeafKind;
    hopf::LeafId<double> leaf;
    leaf.radius_sq = radius * radius;
    if (spec == "origin") {
        leaf.kind = LeafKind::Origin;
        leaf.slope = hopf::Element<double>::zero(d);
        leaf.radius_sq = 0.0;
        return leaf;
    }
    if (spec == "inf" || spec == "infinity") {
        leaf.kind = LeafKind::Infinity;
        leaf.slope = hopf::Element<double>::zero(d);
        return leaf;
    }
    leaf.kind = LeafKind::Finite;
    const int n = hopf::dim_value(d);
    if (spec.size() >= 2 && spec[0] == 'e' && spec.find(',') == std::string::npos) {
        int k = -1;
        try {
            k = std::stoi(spec.substr(1));
        } catch (const std::exception&) {
        }
        if (k < 0 || k >= n) throw hopf::ConfigError("basis slope '" + spec + "' out of range for this dimension");
        leaf.slope = hopf::Element<double>::basis(d, k);
        return leaf;
    }
    std::vector<double> coeffs;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            coeffs.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw hopf::ConfigError("cannot parse slope coefficient '" + item + "'");
        }
    }
    if (static_cast<int>(coeffs.size()) != n)
        throw hopf::ConfigError("slope needs " + std::to_string(n) + " coefficients, got " + std::to_string(coeffs.size()));
    leaf.slope = hopf::Element<double>(d, coeffs);
    return leaf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification suites for the singular Hopf foliation and its algebraic structures"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "Run verification suites and write a report");
    std::string suite = "all", dim_text, backend = "exact", format = "json", out = "-";
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double tol = 0.0;
    bool canonical = false;
    std::vector<std::string> suite_choices;
    for (const auto& [name, s] : hopf::suite_names()) suite_choices.push_back(name);
    verify->add_option("--suite", suite, "Suite to run")
        ->check(CLI::IsMember(suite_choices))
        ->envname("HOPFVERIFY_SUITE");
    auto* dim_opt = verify->add_option("--dim", dim_text, "Algebra dimension (1, 2, 4, 8, 16 or a name such as octonion)")
                        ->envname("HOPFVERIFY_DIM");
    verify->add_option("--seed", seed, "Root seed; component k uses splitmix64-derived seed k")
        ->envname("HOPFVERIFY_SEED");
    auto* samples_opt = verify->add_option("--samples", samples, "Random samples per floating check")
                            ->envname("HOPFVERIFY_SAMPLES");
    auto* tol_opt = verify->add_option("--tol", tol, "Residual tolerance for floating checks")
                        ->envname("HOPFVERIFY_TOL");
    verify->add_option("--backend", backend, "exact (symbolic where available) or float")
        ->check(CLI::IsMember({"exact", "float"}))
        ->envname("HOPFVERIFY_BACKEND");
    verify->add_option("--out", out, "Output path, '-' for stdout")->envname("HOPFVERIFY_OUT");
    verify->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->envname("HOPFVERIFY_FORMAT");
    verify->add_flag("--canonical", canonical, "Omit the timing envelope so repeated runs are byte-identical");

    // export-leaf
    auto* exp = app.add_subcommand("export-leaf", "Sample points on one leaf and write them as CSV");
    std::string slope = "e1", exp_dim_text = "8", exp_out;
    double radius = 1.0;
    std::size_t count = 1000;
    std::uint64_t exp_seed = 0;
    exp->add_option("--slope", slope, "inf, origin, eK or comma-separated coefficients")->envname("HOPFVERIFY_SLOPE");
    exp->add_option("--radius", radius, "Sphere radius r (not r^2)")->envname("HOPFVERIFY_RADIUS");
    exp->add_option("-n,--count", count, "Number of points; the origin leaf always yields one row")
        ->envname("HOPFVERIFY_COUNT");
    exp->add_option("--seed", exp_seed, "Sampling seed")->envname("HOPFVERIFY_SEED");
    exp->add_option("--dim", exp_dim_text, "Algebra dimension")->envname("HOPFVERIFY_DIM");
    exp->add_option("--out", exp_out, "CSV path, '-' for stdout")->required()->envname("HOPFVERIFY_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*verify) {
            hopf::SuiteConfig cfg;
            for (const auto& [name, s] : hopf::suite_names())
                if (name == suite) cfg.suite = s;
            if (*dim_opt) cfg.dim = hopf::parse_dim(dim_text);
            cfg.seed = seed;
            if (*samples_opt) cfg.samples = samples;
            if (*tol_opt) cfg.tol = tol;
            cfg.backend = backend == "exact" ? hopf::Backend::Exact : hopf::Backend::Float;
            (void)hopf::plan(cfg);  // validate before doing any work

            auto reports = hopf::run(cfg);
            std::ostringstream os;
            if (format == "json")
                os << hopf::document(cfg, reports, !canonical).dump(2) << "\n";
            else
                hopf::write_text(os, reports, !canonical);
            emit(out, os.str());
            return hopf::all_pass(reports) ? kExitPass : kExitFail;
        }

        const hopf::AlgebraDim d = hopf::parse_dim(exp_dim_text);
        if (hopf::dim_value(d) > 8) throw hopf::ConfigError("export-leaf supports dimensions up to 8");
        if (count < 1) throw hopf::ConfigError("--count must be at least 1");
        if (!(radius > 0) || !std::isfinite(radius)) throw hopf::ConfigError("--radius must be positive");
        hopf::LeafId<double> leaf = parse_leaf(slope, d, radius);
        // The origin leaf is a single point, so it is exported once.
        const std::size_t n = leaf.kind == hopf::LeafKind::Origin ? 1 : count;
        auto pts = hopf::sample_leaf(leaf, n, exp_seed, d);
        std::ostringstream csv;
        hopf::write_leaf_csv(csv, pts);
        emit(exp_out, csv.str());
        hopf::LeafResiduals r = hopf::leaf_residuals(leaf, pts);
        nlohmann::json summary = {{"points", pts.size()}, {"sphere_residual", r.sphere}, {"slope_residual", r.slope}};
        (exp_out == "-" ? std::cerr : std::cout) << summary.dump() << "\n";
        return kExitPass;
    } catch (const hopf::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << (*verify ? verify->help() : exp->help());
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "verification aborted: " << e.what() << "\n";
        return kExitFail;
    }
}
