#pragma once

#include "hopf/algebroid.hpp"
#include "hopf/cayley_dickson.hpp"
#include "hopf/foliation.hpp"
#include "hopf/groupoid.hpp"
#include "hopf/hopf_leaves.hpp"
#include "hopf/lie3.hpp"
#include "hopf/report.hpp"

#include <json.hpp>

#include <functional>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hopf {

enum class Suite { Algebra, Leaves, Groupoid, Algebroid, Lie3, Foliation, All };
enum class Backend { Exact, Float };
enum class Format { Json, Text };

/// Raised for configurations that cannot be run; maps to the usage exit status.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::pair<std::string, Suite>>& suite_names() {
    static const std::vector<std::pair<std::string, Suite>> names = {
        {"algebra", Suite::Algebra}, {"leaves", Suite::Leaves}, {"groupoid", Suite::Groupoid},
        {"algebroid", Suite::Algebroid}, {"lie3", Suite::Lie3}, {"foliation", Suite::Foliation},
        {"all", Suite::All}};
    return names;
}

inline std::string suite_name(Suite s) {
    for (const auto& [name, v] : suite_names())
        if (v == s) return name;
    return "?";
}

/// Accepts "8", "octonion" or "8-octonion". A name suffix must agree with the number.
inline AlgebraDim parse_dim(const std::string& text) {
    for (int n : {1, 2, 4, 8, 16}) {
        const AlgebraDim d = algebra_dim(n);
        const std::string num = std::to_string(n), name = dim_name(d);
        if (text == num || text == name || text == num + "-" + name) return d;
    }
    throw ConfigError("unrecognized algebra dimension '" + text + "' (expected 1, 2, 4, 8 or 16)");
}

struct SuiteConfig {
    Suite suite = Suite::All;
    std::optional<AlgebraDim> dim;  // unset: each suite runs its default dimensions
    std::uint64_t seed = 0;
    std::optional<std::size_t> samples;
    std::optional<double> tol;
    Backend backend = Backend::Exact;
};

/// One scheduled unit of work: a named component whose seed is derived from the
/// root seed by its fixed position in the suite plan.
struct PlannedRun {
    std::string label;
    std::function<VerificationReport()> run;
};

namespace detail {

inline std::vector<AlgebraDim> dims_or(const SuiteConfig& c, std::vector<AlgebraDim> defaults) {
    return c.dim ? std::vector<AlgebraDim>{*c.dim} : defaults;
}

inline void require_dim(const SuiteConfig& c, const std::string& suite, std::initializer_list<int> allowed) {
    if (!c.dim) return;
    for (int n : allowed)
        if (dim_value(*c.dim) == n) return;
    std::string list;
    for (int n : allowed) list += (list.empty() ? "" : ", ") + std::to_string(n);
    throw ConfigError("suite '" + suite + "' is defined for dimensions " + list + " only, got " +
                      std::to_string(dim_value(*c.dim)));
}

/// Suite-level sanity check for leaf sampling, the data behind export-leaf.
inline VerificationReport leaf_sampling_report(AlgebraDim d, std::size_t n, std::uint64_t seed, double tol) {
    Stopwatch watch;
    VerificationReport rep;
    rep.suite = std::string("leaves/sampling/") + dim_name(d);
    rep.seed = seed;
    LeafId<double> leaf{LeafKind::Finite, Element<double>::basis(d, 1), 1.0};
    auto pts = sample_leaf(leaf, n, seed, d);
    LeafResiduals r = leaf_residuals(leaf, pts);
    add_residual(rep, "on_sphere", r.sphere, tol, "sampled points satisfy |x|^2 + |y|^2 = r^2");
    add_residual(rep, "on_slope", r.slope, tol, "sampled points satisfy y = m x");
    bool classified = true;
    for (const auto& p : pts) classified = classified && same_leaf(p, pts.front(), 1e-9);
    rep.add("single_leaf", classified, "value", classified, "all samples lie on one leaf");
    rep.elapsed_seconds = watch.seconds();
    return rep;
}

}  // namespace detail

/// Expands a configuration into independent runs. Throws ConfigError for
/// combinations that are not meaningful. Component k of the plan receives the
/// seed derive_seed(root, k), so results do not depend on execution order.
inline std::vector<PlannedRun> plan(const SuiteConfig& c) {
    if (c.tol && !(*c.tol > 0)) throw ConfigError("--tol must be positive");
    if (c.samples && *c.samples == 0) throw ConfigError("--samples must be at least 1");
    std::vector<PlannedRun> out;
    std::uint64_t index = 0;
    auto seed = [&] { return derive_seed(c.seed, index++); };
    auto samples = [&](std::size_t def) { return c.samples.value_or(def); };
    auto tol = [&](double def) { return c.tol.value_or(def); };
    const bool all = c.suite == Suite::All;
    const bool exact = c.backend == Backend::Exact;
    using D = AlgebraDim;

    if (all && c.dim) throw ConfigError("--dim cannot be combined with --suite all");

    if (all || c.suite == Suite::Algebra) {
        if (!exact && !all) throw ConfigError("suite 'algebra' is symbolic; use --backend exact");
        for (D d : detail::dims_or(c, {D::R, D::C, D::H, D::O, D::S})) {
            const auto s = seed();
            out.push_back({"algebra", [d, s] { return verify_algebra_identities(d, s); }});
        }
    }
    if (all || c.suite == Suite::Leaves) {
        detail::require_dim(c, "leaves", {4, 8});
        for (D d : detail::dims_or(c, {D::H, D::O})) {
            out.push_back({"leaves", [d] { return right_mult_counterexample(d); }});
            const auto s = seed();
            const auto n = samples(1000);
            const double t = tol(1e-12);
            out.push_back({"leaves", [d, n, s, t] { return detail::leaf_sampling_report(d, n, s, t); }});
        }
    }
    if (all || c.suite == Suite::Groupoid) {
        detail::require_dim(c, "groupoid", {1, 2, 4, 8});
        for (D d : detail::dims_or(c, {D::O})) {
            const auto s = seed();
            const auto n = samples(1000);
            const double t = tol(1e-9);
            out.push_back({"groupoid", [d, n, s, t] { return verify_structure(d, n, s, t); }});
        }
        for (D d : detail::dims_or(c, {D::C, D::H, D::O})) {
            const auto s = seed();
            const auto n = samples(500);
            const double t = tol(1e-9);
            out.push_back({"groupoid", [d, n, s, t] { return verify_phi(d, n, s, t); }});
        }
        if (!c.dim || *c.dim == D::O) {
            const auto s = seed();
            const auto n = samples(50);
            const double t = tol(1e-8);
            out.push_back({"groupoid", [n, s, t] { return verify_g2_equivariance(n, s, t); }});
        }
    }
    if (all || c.suite == Suite::Algebroid) {
        detail::require_dim(c, "algebroid", {1, 2, 4, 8});
        for (D d : detail::dims_or(c, {D::O})) {
            out.push_back({"algebroid", [d] { return verify_algebroid_symbolic(d); }});
            const auto s = seed();
            const auto n = samples(200);
            const double t = tol(1e-6);
            out.push_back({"algebroid", [d, n, s, t] { return verify_groupoid_consistency(d, n, s, t); }});
        }
    }
    if (all || c.suite == Suite::Lie3) {
        detail::require_dim(c, "lie3", {2, 4, 8});
        for (D d : detail::dims_or(c, {D::O})) {
            const auto s = seed();
            const Lie3Mode mode = exact ? Lie3Mode::Symbolic : Lie3Mode::Sampled;
            const auto n = samples(3);
            out.push_back({"lie3", [d, mode, n, s] { return verify_lie3(mode, n, s, d); }});
            if (d == D::O) out.push_back({"lie3", [] { return verify_transcribed_matrix(); }});
            const auto rs = seed();
            const auto rn = samples(100);
            const double t = tol(1e-8);
            out.push_back({"lie3", [d, rn, rs, t] { return generic_ranks(rn, rs, t, d); }});
        }
    }
    if (all || c.suite == Suite::Foliation) {
        detail::require_dim(c, "foliation", {2, 4, 8});
        for (D d : detail::dims_or(c, {D::C, D::H, D::O})) {
            const auto s = seed();
            const auto n = samples(20);
            const double t = tol(1e-8);
            out.push_back({"foliation", [d, n, s, t] { return verify_foliation(d, n, s, t); }});
        }
        if (!c.dim || *c.dim == D::O) {
            const auto s = seed();
            out.push_back({"foliation", [s] { return linear_obstruction_report(s); }});
        }
    }
    return out;
}

/// Runs every planned component concurrently and returns reports in plan order.
inline std::vector<VerificationReport> run(const SuiteConfig& c) {
    std::vector<PlannedRun> p = plan(c);
    std::vector<std::future<VerificationReport>> futures;
    futures.reserve(p.size());
    for (auto& r : p) futures.push_back(std::async(std::launch::async, r.run));
    std::vector<VerificationReport> out;
    out.reserve(p.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

inline bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.all_pass()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json config_json(const SuiteConfig& c) {
    nlohmann::json j;
    j["suite"] = suite_name(c.suite);
    j["dim"] = c.dim ? nlohmann::json(dim_value(*c.dim)) : nlohmann::json("default");
    j["seed"] = c.seed;
    j["samples"] = c.samples ? nlohmann::json(*c.samples) : nlohmann::json("default");
    j["tol"] = c.tol ? nlohmann::json(*c.tol) : nlohmann::json("default");
    j["backend"] = c.backend == Backend::Exact ? "exact" : "float";
    return j;
}

inline nlohmann::json report_json(const VerificationReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["status"] = c.pass ? "pass" : "fail";
        e["kind"] = c.kind;
        e["value"] = c.value;
        e["anchor"] = c.anchor;
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    return {{"suite", r.suite}, {"seed", r.seed}, {"checks", std::move(checks)}, {"pass", r.all_pass()}};
}

/// The canonical document contains no timing; `envelope` carries wall-clock
/// data and is omitted when `with_envelope` is false.
inline nlohmann::json document(const SuiteConfig& c, const std::vector<VerificationReport>& reports,
                               bool with_envelope = true) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["artifact_version"] = kArtifactVersion;
    doc["config"] = config_json(c);
    nlohmann::json rs = nlohmann::json::array();
    std::size_t checks = 0, failures = 0;
    for (const auto& r : reports) {
        rs.push_back(report_json(r));
        checks += r.checks.size();
        failures += r.failures();
    }
    doc["reports"] = std::move(rs);
    doc["summary"] = {{"checks", checks}, {"failures", failures}, {"pass", failures == 0}};
    if (with_envelope) {
        nlohmann::json timing = nlohmann::json::array();
        double total = 0.0;
        for (const auto& r : reports) {
            timing.push_back({{"suite", r.suite}, {"elapsed_seconds", r.elapsed_seconds}});
            total += r.elapsed_seconds;
        }
        doc["envelope"] = {{"timing", std::move(timing)}, {"total_seconds", total}};
    }
    return doc;
}

inline std::string value_text(const nlohmann::json& v) {
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(3) << std::scientific << v.get<double>();
        return os.str();
    }
    std::string s = v.dump();
    return s.size() > 40 ? s.substr(0, 37) + "..." : s;
}

inline void write_text(std::ostream& os, const std::vector<VerificationReport>& reports, bool with_timing = true) {
    std::size_t failures = 0, checks = 0;
    for (const auto& r : reports) {
        os << r.suite << "  (seed " << r.seed;
        if (with_timing) os << ", " << std::fixed << std::setprecision(3) << r.elapsed_seconds << " s";
        os << ")\n";
        os.unsetf(std::ios::floatfield);
        for (const auto& c : r.checks) {
            os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(44) << c.name << std::setw(10)
               << c.kind << value_text(c.value) << std::right << "\n";
            failures += !c.pass;
            ++checks;
        }
    }
    os << checks - failures << "/" << checks << " checks passed\n";
}

}  // namespace hopf
