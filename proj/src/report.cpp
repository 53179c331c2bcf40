#include "treelift/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "treelift/errors.hpp"

namespace treelift {

using ordered_json = nlohmann::ordered_json;

IdentityRecord make_record(const std::string& identity, const std::string& graph,
                           double lambda, double lambda_prime, cx lhs, cx rhs,
                           double tol, double floor) {
    IdentityRecord r;
    r.identity = identity;
    r.graph = graph;
    r.lambda = lambda;
    r.lambda_prime = lambda_prime;
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tol;
    r.abs_residual = std::abs(lhs - rhs);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), floor});
    r.rel_residual = (scale > 0.0) ? r.abs_residual / scale : r.abs_residual;
    r.pass = r.rel_residual <= tol;
    return r;
}

IdentityRecord make_zero_record(const std::string& identity, const std::string& graph,
                                double lambda, double lambda_prime, cx lhs,
                                double scale, double tol) {
    IdentityRecord r;
    r.identity = identity;
    r.graph = graph;
    r.lambda = lambda;
    r.lambda_prime = lambda_prime;
    r.lhs = lhs;
    r.rhs = cx(0.0, 0.0);
    r.tolerance = tol;
    r.zero_target = true;
    r.abs_residual = std::abs(lhs);
    const double floor = std::max(scale, 1.0);
    r.rel_residual = r.abs_residual / floor;
    r.pass = r.rel_residual <= tol;
    return r;
}

void VerificationReport::add(IdentityRecord r) {
    r.branch = branch;
    if (r.pass) {
        ++passed;
    } else {
        ++failed;
    }
    records.push_back(std::move(r));
}

void VerificationReport::warn(const std::string& msg) { warnings.push_back(msg); }

void VerificationReport::note(const std::string& msg) {
    if (std::find(notes.begin(), notes.end(), msg) == notes.end()) notes.push_back(msg);
}

double VerificationReport::max_rel_residual(const std::string& identity_prefix) const {
    double m = 0.0;
    for (const auto& r : records) {
        if (!identity_prefix.empty() &&
            r.identity.compare(0, identity_prefix.size(), identity_prefix) != 0) {
            continue;
        }
        m = std::max(m, r.rel_residual);
    }
    return m;
}

namespace {

ordered_json complex_json(cx v) {
    return ordered_json{{"re", v.real()}, {"im", v.imag()}};
}

ordered_json record_json(const IdentityRecord& r) {
    ordered_json j;
    j["identity"] = r.identity;
    j["graph"] = r.graph;
    j["lambda"] = r.lambda;
    j["lambda_prime"] = r.lambda_prime;
    j["branch"] = r.branch;
    j["index"] = r.index;
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["abs_residual"] = r.abs_residual;
    j["rel_residual"] = r.rel_residual;
    j["tolerance"] = r.tolerance;
    j["zero_target"] = r.zero_target;
    j["pass"] = r.pass;
    return j;
}

ordered_json environment_json(unsigned long long seed) {
    return ordered_json{{"version", kVersion}, {"seed", seed}};
}

} // namespace

std::string report_to_json(const VerificationReport& r) {
    ordered_json j;
    j["command"] = r.command;
    j["graph"] = r.graph;
    j["suites"] = r.suites;
    j["branch"] = r.branch;
    j["environment"] = environment_json(r.seed);
    j["summary"] = ordered_json{{"records", r.records.size()},
                                {"passed", r.passed},
                                {"failed", r.failed},
                                {"all_pass", r.all_pass()}};
    j["warnings"] = r.warnings;
    j["notes"] = r.notes;
    ordered_json recs = ordered_json::array();
    for (const auto& rec : r.records) recs.push_back(record_json(rec));
    j["records"] = recs;
    return j.dump(2) + "\n";
}

std::string spectrum_to_json(const std::string& graph, unsigned long long seed,
                             const std::vector<SpectrumRow>& rows) {
    ordered_json j;
    j["command"] = "spectrum";
    j["graph"] = graph;
    j["environment"] = environment_json(seed);
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json e;
        e["lambda"] = row.lambda;
        e["multiplicity"] = row.multiplicity;
        e["classification"] = row.classification;
        e["z"] = complex_json(row.z);
        e["mu"] = complex_json(row.mu);
        arr.push_back(e);
    }
    j["spectrum"] = arr;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("bad_output_path: cannot open " + path);
    out << content;
    if (!out) throw InvalidInput("bad_output_path: write failed for " + path);
}

} // namespace treelift
