#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "treelift/errors.hpp"
#include "treelift/graph.hpp"
#include "treelift/report.hpp"
#include "treelift/spectral.hpp"
#include "treelift/verify.hpp"

namespace {

using namespace treelift;

struct CliOptions {
    std::string graph_source = "petersen";
    std::vector<std::string> suites;
    int depth = 2;
    int max_n = 3;
    double tol = 1e-8;
    std::string branch = "principal";
    std::string out_path;
    unsigned long long seed = 20260816ull;
    int cover_radius = 0;
    int symbol_count = 10;
    double corrupt_amplitude = 0.0;
    std::string config_path;
};

RegularGraph resolve_graph(const std::string& src, std::string& label) {
    if (src.rfind("random:", 0) == 0) {
        int v = 0;
        int d = 0;
        unsigned long long s = 0;
        if (std::sscanf(src.c_str() + 7, "%d,%d,%llu", &v, &d, &s) != 3) {
            throw InvalidInput("parse_error: expected random:vertices,degree,seed");
        }
        label = src;
        return random_regular(v, d, s);
    }
    if (std::filesystem::exists(src)) {
        label = std::filesystem::path(src).filename().string();
        return load_graph_file(src);
    }
    label = src;
    return named_graph(src);
}

// Config file mirrors the flags; explicit flags win.
void apply_config(CliOptions& opt, const CLI::App& sub) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw InvalidInput("bad_config: cannot open " + opt.config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("parse_error: config: ") + e.what());
    }
    auto unset = [&sub](const char* flag) {
        const CLI::Option* o = sub.get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    try {
        if (j.contains("graph") && unset("--graph")) opt.graph_source = j["graph"];
        if (j.contains("suites") && unset("--suite"))
            opt.suites = j["suites"].get<std::vector<std::string>>();
        if (j.contains("depth") && unset("--depth")) opt.depth = j["depth"];
        if (j.contains("n") && unset("--n")) opt.max_n = j["n"];
        if (j.contains("tol") && unset("--tol")) opt.tol = j["tol"];
        if (j.contains("branch") && unset("--branch")) opt.branch = j["branch"];
        if (j.contains("seed") && unset("--seed")) opt.seed = j["seed"];
        if (j.contains("out") && unset("--out")) opt.out_path = j["out"];
        if (j.contains("cover_radius") && unset("--cover-radius"))
            opt.cover_radius = j["cover_radius"];
        if (j.contains("symbols") && unset("--symbols")) opt.symbol_count = j["symbols"];
        if (j.contains("corrupt_amplitude") && unset("--corrupt-amplitude"))
            opt.corrupt_amplitude = j["corrupt_amplitude"];
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("parse_error: config: ") + e.what());
    }
}

void validate(const CliOptions& opt) {
    if (opt.tol <= 0.0) throw InvalidInput("bad_tolerance: must be positive");
    if (opt.depth < 0 || opt.depth > 3) throw InvalidInput("bad_depth: symbol depth in 0..3");
    if (opt.max_n < 0 || opt.max_n > 3) throw InvalidInput("bad_depth: relation order in 0..3");
    if (opt.symbol_count < 0) throw InvalidInput("bad_count: symbols must be >= 0");
    if (opt.branch != "principal" && opt.branch != "conjugate" && opt.branch != "both") {
        throw InvalidInput("bad_branch: expected principal, conjugate, or both");
    }
}

SuiteConfig make_suite_config(const CliOptions& opt, const std::string& label,
                              RegularGraph graph, const std::string& branch) {
    SuiteConfig cfg;
    cfg.graph_label = label;
    cfg.graph = std::move(graph);
    cfg.seed = opt.seed;
    cfg.tol = opt.tol;
    cfg.symbol_depth = opt.depth;
    cfg.max_n = opt.max_n;
    cfg.symbol_count = opt.symbol_count;
    cfg.cover_radius_override = opt.cover_radius;
    cfg.branch = branch;
    cfg.corrupt_amplitude = opt.corrupt_amplitude;
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

int run_spectrum(const CliOptions& opt) {
    std::string label;
    const RegularGraph g = resolve_graph(opt.graph_source, label);
    std::vector<SpectrumRow> rows;
    for (const EigenSpace& es : eigh_decompose(g)) {
        const SpectralParameter sp = spectral_parameter(es.lambda, g.q);
        SpectrumRow row;
        row.lambda = es.lambda;
        row.multiplicity = es.multiplicity;
        row.classification = to_string(sp.classification);
        row.z = sp.z;
        row.mu = sp.mu;
        rows.push_back(row);
    }
    emit(spectrum_to_json(label, opt.seed, rows), opt.out_path);
    return 0;
}

int run_verify(const CliOptions& opt) {
    std::string label;
    RegularGraph g = resolve_graph(opt.graph_source, label);

    std::vector<std::string> suites = opt.suites.empty() ? all_suite_names() : opt.suites;
    const std::vector<std::string> known = all_suite_names();
    for (const std::string& s : suites) {
        if (std::find(known.begin(), known.end(), s) == known.end()) {
            throw InvalidInput("unknown_name: suite " + s);
        }
    }

    VerificationReport rep;
    rep.command = "verify";
    rep.graph = label;
    rep.suites = suites;
    rep.seed = opt.seed;
    rep.branch = (opt.branch == "both") ? "principal" : opt.branch;

    SuiteConfig cfg = make_suite_config(opt, label, g, rep.branch);
    for (const std::string& s : suites) run_suite(s, cfg, rep);

    if (opt.branch == "both") {
        VerificationReport alt;
        alt.command = rep.command;
        alt.graph = label;
        alt.suites = suites;
        alt.seed = opt.seed;
        alt.branch = "conjugate";
        SuiteConfig cfg2 = make_suite_config(opt, label, g, "conjugate");
        for (const std::string& s : suites) run_suite(s, cfg2, alt);

        std::vector<std::string> ids;
        for (const auto& r : rep.records) {
            if (std::find(ids.begin(), ids.end(), r.identity) == ids.end()) {
                ids.push_back(r.identity);
            }
        }
        for (const std::string& id : ids) {
            const double m1 = rep.max_rel_residual(id);
            const double m2 = alt.max_rel_residual(id);
            const double hi = std::max(m1, m2);
            const double lo = std::max(std::min(m1, m2), 1e-15);
            if (hi > 1e-11 && hi / lo > 10.0) {
                rep.warn("branch_sensitivity: " + id + " residual ratio " +
                         std::to_string(hi / lo) + " between branches");
            }
        }
        for (const auto& r : alt.records) {
            rep.records.push_back(r);
            if (r.pass) {
                ++rep.passed;
            } else {
                ++rep.failed;
            }
        }
        for (const auto& w : alt.warnings) rep.warn(w);
        for (const auto& n : alt.notes) rep.note(n);
        rep.branch = "both";
    }

    emit(report_to_json(rep), opt.out_path);
    std::cerr << "verify: " << rep.passed << "/" << (rep.passed + rep.failed)
              << " identities passed" << std::endl;
    return rep.all_pass() ? 0 : 1;
}

int run_analyze(const CliOptions& opt) {
    std::string label;
    RegularGraph g = resolve_graph(opt.graph_source, label);
    const std::string branch = (opt.branch == "both") ? "principal" : opt.branch;
    const SuiteConfig cfg = make_suite_config(opt, label, std::move(g), branch);
    const AnalysisTables tables = analyze_tables(cfg);

    const std::string prefix = opt.out_path.empty() ? "analysis" : opt.out_path;
    const std::string dist_path = prefix + "_distributions.csv";
    const std::string cfun_path = prefix + "_cfun.csv";
    write_text_file(dist_path, tables.distributions_csv);
    write_text_file(cfun_path, tables.cfun_csv);

    nlohmann::ordered_json j;
    j["command"] = "analyze";
    j["graph"] = label;
    j["environment"] = nlohmann::ordered_json{{"version", kVersion}, {"seed", opt.seed}};
    j["files"] = nlohmann::ordered_json::array({dist_path, cfun_path});
    std::cout << j.dump(2) << "\n";
    return 0;
}

void add_common(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--graph", opt.graph_source,
                    "named graph (k4, k5, cube, petersen, k33, dodecahedron), edge-list "
                    "path, or random:v,degree,seed");
    sub->add_option("--seed", opt.seed, "base seed for generated symbols");
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--config", opt.config_path, "JSON config mirroring the flags");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"treelift: eigenfunction distributions on regular graphs"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue table with classifications");
    add_common(spectrum, opt);

    CLI::App* verify = app.add_subcommand("verify", "run identity verification suites");
    add_common(verify, opt);
    verify->add_option("--suite", opt.suites, "suites to run (default: all)");
    verify->add_option("--depth", opt.depth, "max random-symbol depth (0..3)");
    verify->add_option("--n", opt.max_n, "max relation order (0..3)");
    verify->add_option("--tol", opt.tol, "relative tolerance for configurable identities");
    verify->add_option("--branch", opt.branch, "principal | conjugate | both");
    verify->add_option("--cover-radius", opt.cover_radius, "override truncation radius");
    verify->add_option("--symbols", opt.symbol_count, "random symbols per family");
    verify->add_option("--corrupt-amplitude", opt.corrupt_amplitude,
                       "fault injection: perturb one resonant amplitude");

    CLI::App* analyze = app.add_subcommand("analyze", "emit PS/Wigner and c-function CSV tables");
    add_common(analyze, opt);
    analyze->add_option("--depth", opt.depth, "max random-symbol depth (0..3)");
    analyze->add_option("--symbols", opt.symbol_count, "random symbols per eigenpair");
    analyze->add_option("--branch", opt.branch, "principal | conjugate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config(opt, *sub);
        validate(opt);
        if (sub == spectrum) return run_spectrum(opt);
        if (sub == verify) return run_verify(opt);
        return run_analyze(opt);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 3;
    }
}
