#pragma once

#include <complex>
#include <string>
#include <vector>

#include "treelift/linalg.hpp"

namespace treelift {

inline constexpr const char* kVersion = "0.1.0";

// One verified identity instance. zero_target records compare lhs against
// zero with an absolute tolerance scaled by the input magnitude; the rest
// use relative residuals.
struct IdentityRecord {
    std::string identity;
    std::string graph;
    double lambda = 0.0;
    double lambda_prime = 0.0;
    std::string branch = "principal";
    int index = 0;
    cx lhs{0.0, 0.0};
    cx rhs{0.0, 0.0};
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double tolerance = 0.0;
    bool zero_target = false;
    bool pass = false;
};

// floor widens the denominator of the relative residual to max(|lhs|, |rhs|,
// floor). Pass the natural magnitude of the quantity when the target can
// vanish structurally (orthogonal pairs, eigenvector zeros), so that a
// both-sides-zero instance is judged on absolute grounds instead of failing
// on roundoff noise.
IdentityRecord make_record(const std::string& identity, const std::string& graph,
                           double lambda, double lambda_prime, cx lhs, cx rhs,
                           double tol, double floor = 0.0);
IdentityRecord make_zero_record(const std::string& identity, const std::string& graph,
                                double lambda, double lambda_prime, cx lhs,
                                double scale, double tol);

struct VerificationReport {
    std::string command;
    std::string graph;
    std::vector<std::string> suites;
    std::string branch = "principal";
    unsigned long long seed = 0;
    std::vector<IdentityRecord> records;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
    int passed = 0;
    int failed = 0;

    void add(IdentityRecord r);
    void warn(const std::string& msg);
    void note(const std::string& msg);
    bool all_pass() const { return failed == 0; }
    double max_rel_residual(const std::string& identity_prefix = "") const;
};

// Deterministic JSON rendering (stable key order, no timestamps).
std::string report_to_json(const VerificationReport& r);

// Spectrum listing for the CLI front end.
struct SpectrumRow {
    double lambda = 0.0;
    int multiplicity = 0;
    std::string classification;
    cx z{0.0, 0.0};
    cx mu{0.0, 0.0};
};
std::string spectrum_to_json(const std::string& graph, unsigned long long seed,
                             const std::vector<SpectrumRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

} // namespace treelift
