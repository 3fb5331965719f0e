#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hopf {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// One verified statement inside a suite.
struct Check {
    std::string name;
    bool pass = false;
    /// What `value` measures: "residual", "rank", "dimension", "value", "witness", "seconds".
    std::string kind;
    nlohmann::json value;
    /// The mathematical statement being checked, in words.
    std::string anchor;
    std::string detail;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    /// Wall-clock seconds; excluded from the canonical serialization.
    double elapsed_seconds = 0.0;

    [[nodiscard]] bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    [[nodiscard]] std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += !c.pass;
        return n;
    }
    [[nodiscard]] const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    Check& add(std::string name, bool pass, std::string kind, nlohmann::json value, std::string anchor,
               std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(kind), std::move(value), std::move(anchor),
                          std::move(detail)});
        return checks.back();
    }

    void append(const VerificationReport& other, const std::string& prefix = {}) {
        for (auto c : other.checks) {
            if (!prefix.empty()) c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        elapsed_seconds += other.elapsed_seconds;
    }
};

/// Residual check helper for floating suites.
inline Check& add_residual(VerificationReport& r, const std::string& name, double residual, double tol,
                           const std::string& anchor, const std::string& detail = {}) {
    return r.add(name, residual <= tol, "residual", residual, anchor, detail);
}

/// Exact check helper: the residual is a count of nonzero polynomial terms.
inline Check& add_exact(VerificationReport& r, const std::string& name, std::size_t nonzero_terms,
                        const std::string& anchor, const std::string& detail = {}) {
    return r.add(name, nonzero_terms == 0, "residual", nonzero_terms, anchor, detail);
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// splitmix64 step, used to derive independent per-check seeds from one root.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` under `root`: splitmix64(root + index * golden).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root + 0x9E3779B97F4A7C15ULL * (index + 1));
}

}  // namespace hopf
