#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "treelift/errors.hpp"
#include "treelift/report.hpp"

#include "test_util.hpp"

using namespace treelift;

TEST_CASE("record residuals and pass policy") {
    const auto good = make_record("alpha_check", "k4", 0.5, 0.5, cx(1.0, 0.0),
                                  cx(1.0, 1e-12), 1e-9);
    CHECK(good.pass);
    CHECK(good.abs_residual == doctest::Approx(1e-12).epsilon(1e-3));
    CHECK(!good.zero_target);

    const auto bad = make_record("alpha_check", "k4", 0.5, 0.5, cx(1.0, 0.0),
                                 cx(1.001, 0.0), 1e-9);
    CHECK(!bad.pass);

    // Residuals are relative to the larger side.
    const auto scaled = make_record("beta_check", "k4", 0.0, 0.0, cx(1e6, 0.0),
                                    cx(1e6 + 1e-4, 0.0), 1e-9);
    CHECK(scaled.pass);
    CHECK(scaled.rel_residual == doctest::Approx(1e-10).epsilon(1e-2));
}

TEST_CASE("floor rescues structural zeros") {
    // Both sides are roundoff residue of a quantity whose natural size is 1.
    // Without a floor the relative test compares noise against noise.
    const auto noisy = make_record("gamma", "g", 0.0, 0.0, cx(1e-16, 0.0),
                                   cx(-2e-16, 0.0), 1e-8);
    CHECK(!noisy.pass);
    const auto floored = make_record("gamma", "g", 0.0, 0.0, cx(1e-16, 0.0),
                                     cx(-2e-16, 0.0), 1e-8, 1.0);
    CHECK(floored.pass);
    CHECK(floored.abs_residual == noisy.abs_residual);
}

TEST_CASE("zero-target records") {
    const auto ok = make_zero_record("delta", "g", 0.1, 0.2, cx(0.0, 1e-12), 1.0, 1e-9);
    CHECK(ok.pass);
    CHECK(ok.zero_target);
    CHECK(ok.rhs == cx(0.0, 0.0));

    const auto off = make_zero_record("delta", "g", 0.1, 0.2, cx(1e-6, 0.0), 1.0, 1e-9);
    CHECK(!off.pass);

    // The scale keeps large-magnitude contexts from being judged unfairly.
    const auto big = make_zero_record("delta", "g", 0.1, 0.2, cx(1e-4, 0.0), 1e6, 1e-9);
    CHECK(big.pass);
}

TEST_CASE("report bookkeeping and residual queries") {
    VerificationReport rep;
    rep.command = "verify";
    rep.graph = "k4";
    rep.branch = "principal";
    rep.seed = 7;
    rep.suites = {"pairing"};

    rep.add(make_record("pair_a", "k4", 0.1, 0.1, cx(1.0, 0.0), cx(1.0, 1e-13), 1e-9));
    rep.add(make_record("pair_b", "k4", 0.1, 0.1, cx(1.0, 0.0), cx(1.0, 1e-11), 1e-9));
    rep.add(make_record("other", "k4", 0.1, 0.1, cx(1.0, 0.0), cx(2.0, 0.0), 1e-9));
    CHECK(rep.passed == 2);
    CHECK(rep.failed == 1);
    CHECK(!rep.all_pass());

    CHECK(rep.max_rel_residual("pair_") == doctest::Approx(1e-11).epsilon(1e-2));
    CHECK(rep.max_rel_residual() == doctest::Approx(0.5).epsilon(1e-6));

    rep.note("same note");
    rep.note("same note");
    CHECK(rep.notes.size() == 1);
    rep.warn("w");
    rep.warn("w");
    CHECK(rep.warnings.size() == 2);
}

TEST_CASE("report JSON is deterministic and well shaped") {
    VerificationReport rep;
    rep.command = "verify";
    rep.graph = "petersen";
    rep.branch = "principal";
    rep.seed = 42;
    rep.suites = {"pairing", "wigner"};
    rep.add(make_record("pair_a", "petersen", 1.0 / 3.0, 1.0 / 3.0, cx(1.0, 2.0),
                        cx(1.0, 2.0), 1e-9));
    rep.warn("example warning");

    const std::string text = report_to_json(rep);
    CHECK(text == report_to_json(rep));

    const auto j = nlohmann::json::parse(text);
    CHECK(j["command"] == "verify");
    CHECK(j["graph"] == "petersen");
    CHECK(j["branch"] == "principal");
    CHECK(j["environment"]["version"] == kVersion);
    CHECK(j["environment"]["seed"] == 42);
    CHECK(j["summary"]["records"] == 1);
    CHECK(j["summary"]["passed"] == 1);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["summary"]["all_pass"] == true);
    REQUIRE(j["records"].is_array());
    const auto& r0 = j["records"][0];
    CHECK(r0["identity"] == "pair_a");
    CHECK(r0["lhs"]["im"] == 2.0);
    CHECK(r0["zero_target"] == false);
    CHECK(r0["pass"] == true);
    CHECK(j["warnings"].size() == 1);
}

TEST_CASE("spectrum JSON") {
    SpectrumRow row;
    row.lambda = 1.0 / 3.0;
    row.multiplicity = 5;
    row.classification = "tempered";
    row.z = cx(0.35, 0.94);
    row.mu = cx(0.5, 1.32);
    const auto j = nlohmann::json::parse(spectrum_to_json("petersen", 3, {row}));
    CHECK(j["command"] == "spectrum");
    CHECK(j["spectrum"].size() == 1);
    CHECK(j["spectrum"][0]["multiplicity"] == 5);
    CHECK(j["spectrum"][0]["classification"] == "tempered");
    CHECK(j["spectrum"][0]["mu"].contains("re"));
}

TEST_CASE("text file writing") {
    const std::string path = "report_fixture_tmp.txt";
    write_text_file(path, "line one\nline two\n");
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "line one\nline two\n");
    std::remove(path.c_str());

    CHECK(thrown_tag<InvalidInput>([&] {
              write_text_file("no_such_dir_tmp/x.txt", "y");
          }) == "bad_output_path");
}
