#pragma once

#include <string>
#include <vector>

#include "treelift/graph.hpp"
#include "treelift/report.hpp"

namespace treelift {

// Shared knobs for the verification suites. tol covers the identities whose
// tolerance is configurable (default 1e-8); identities with pinned
// tolerances (pairing 1e-9, eigen residuals 1e-10, refinement 1e-11, basic
// example and Poisson round trip 1e-10, base-point 1e-9, measure recovery
// 1e-3) keep them regardless.
struct SuiteConfig {
    std::string graph_label = "graph";
    RegularGraph graph;
    unsigned long long seed = 20260816ull;
    double tol = 1e-8;
    int symbol_depth = 2;
    int max_n = 3;
    int symbol_count = 10;
    int cover_radius_override = 0;
    // "principal" or "conjugate": which quadratic root parametrizes each
    // eigenvalue. The ruelle and measure_limit suites are branch-pinned by
    // their operators and always run principal.
    std::string branch = "principal";
    // Fault-injection hook: nonzero perturbs one resonant amplitude in the
    // pairing suite so the identity visibly fails.
    double corrupt_amplitude = 0.0;
};

std::vector<std::string> all_suite_names();

// Dispatch by suite name; throws InvalidInput("unknown_name: ...") for
// names outside all_suite_names().
void run_suite(const std::string& name, const SuiteConfig& cfg, VerificationReport& rep);

// Geodesic pairing formula plus resonant-state structure (eigen residuals,
// kernel dimensions, cylinder additivity).
void suite_pairing(const SuiteConfig& cfg, VerificationReport& rep);
// Boundary-measure route vs dynamical route to the PS pairing.
void suite_ps_modern(const SuiteConfig& cfg, VerificationReport& rep);
// Kernel-built invariant trace vs scaled diagonal PS sums, unit trace,
// transfer covariance.
void suite_ruelle(const SuiteConfig& cfg, VerificationReport& rep);
// Wigner/PS relation across orders n, plus the off-diagonal smoothing
// identity on the cover.
void suite_wigner_ps(const SuiteConfig& cfg, VerificationReport& rep);
// Constant-symbol normalization: W(1) = 1 = PS(c (1 + 1/q)).
void suite_cfun(const SuiteConfig& cfg, VerificationReport& rep);
// Poisson transform round trip and boundary-measure structure (total mass,
// additivity, cocycle, partition counts).
void suite_poisson_roundtrip(const SuiteConfig& cfg, VerificationReport& rep);
// Recovery of the harmonic measure from vertex sums at an untempered
// parameter, with monotone approximant error.
void suite_measure_limit(const SuiteConfig& cfg, VerificationReport& rep);
// Cover-side vs dynamical operator action, and independence of the
// fundamental-domain cutoff.
void suite_basepoint(const SuiteConfig& cfg, VerificationReport& rep);

struct AnalysisTables {
    std::string distributions_csv;
    std::string cfun_csv;
};
AnalysisTables analyze_tables(const SuiteConfig& cfg);

} // namespace treelift
