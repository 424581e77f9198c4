#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "cli_harness.hpp"

using json = nlohmann::json;

namespace {

std::string golden_path(const std::string& name) {
    return std::string(GOLDEN_DIR) + "/" + name;
}

// Byte-for-byte comparison against the stored report. Regenerate with
// HRE_UPDATE_GOLDENS=1 after a deliberate output change.
void check_golden(const std::string& name, const std::string& actual) {
    if (std::getenv("HRE_UPDATE_GOLDENS")) {
        std::ofstream out(golden_path(name), std::ios::binary);
        out << actual;
        return;
    }
    const std::string expected = cli::slurp(golden_path(name));
    REQUIRE_MESSAGE(!expected.empty(), "missing golden file ", name);
    CHECK_MESSAGE(actual == expected, "output drifted from golden ", name);
}

}  // namespace

TEST_CASE("validate accepts the consistent example") {
    const cli::RunResult r = cli::run("validate " + cli::fixture("consistent.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ok") != std::string::npos);
}

TEST_CASE("validate reports broken reciprocity and exits 2") {
    const cli::RunResult r =
        cli::run("validate --format json " + cli::fixture("invalid.json"));
    CHECK(r.exit_code == 2);
    const json doc = json::parse(r.out);
    CHECK(doc["ok"] == false);
    REQUIRE(doc["findings"].size() == 1);
    CHECK(doc["findings"][0]["kind"] == "broken-reciprocity");
    CHECK(doc["findings"][0]["row"] == 1);
    CHECK(doc["findings"][0]["col"] == 2);
}

TEST_CASE("consistency picks the index by completeness") {
    const cli::RunResult full =
        cli::run("consistency --format json " + cli::fixture("consistent.json"));
    CHECK(full.exit_code == 0);
    const json fdoc = json::parse(full.out);
    CHECK(fdoc["kind"] == "saaty");
    CHECK(fdoc["index"].get<double>() == doctest::Approx(0.0).epsilon(1e-10));

    const cli::RunResult part =
        cli::run("consistency --format json " + cli::fixture("partial.json"));
    CHECK(part.exit_code == 0);
    const json pdoc = json::parse(part.out);
    CHECK(pdoc["kind"] == "harker");
    CHECK(pdoc["index"].get<double>() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("consistency refuses a disconnected comparison graph") {
    const cli::RunResult r = cli::run("consistency " + cli::fixture("reducible.json"));
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("NotIrreducible") != std::string::npos);
}

TEST_CASE("check reports the attained complete-case threshold") {
    const cli::RunResult r =
        cli::run("check --format json " + cli::fixture("example1.json"));
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["theorem"] == "complete-arithmetic");
    CHECK(doc["unknowns"] == json::array({"a", "b", "c"}));
    CHECK(doc["ci"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(doc["threshold"].get<double>() == 1.0);
    CHECK(doc["verdict"] == "not-guaranteed");
    check_golden("check_example1.json", r.out);
}

TEST_CASE("check reports the attained incomplete-case threshold") {
    const cli::RunResult r =
        cli::run("check --format json " + cli::fixture("example2.json"));
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["theorem"] == "incomplete-arithmetic");
    CHECK(doc["s_max"] == 3);
    CHECK(doc["s_min"] == 3);
    CHECK(doc["threshold"].get<double>() == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(doc["verdict"] == "not-guaranteed");
    check_golden("check_example2.json", r.out);
}

TEST_CASE("check accepts an explicit unknown set on files without references") {
    const cli::RunResult r = cli::run("check --format json --unknowns a,b --variant geometric " +
                                      cli::fixture("partial.json"));
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["theorem"] == "geometric-always");
    CHECK(doc["verdict"] == "guaranteed");

    const cli::RunResult missing = cli::run("check " + cli::fixture("partial.json"));
    CHECK(missing.exit_code == 1);  // nothing marks the unknowns
}

TEST_CASE("rank solves the consistent example exactly") {
    const cli::RunResult r =
        cli::run("rank --format json " + cli::fixture("consistent.json"));
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["variant"] == "arithmetic-complete");
    CHECK(doc["weights"]["a"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["weights"]["b"].get<double>() == 2.0);
    CHECK(doc["weights"]["c"].get<double>() == 4.0);
    CHECK(doc["computed"] == json::array({"a"}));
    CHECK(doc["applicability"]["verdict"] == "guaranteed");
    CHECK(doc["warnings"].empty());
    check_golden("rank_consistent.json", r.out);
}

TEST_CASE("rank fails with exit 3 and threshold evidence on the singular examples") {
    for (const std::string name : {"example1.json", "example2.json"}) {
        const cli::RunResult r = cli::run("rank " + cli::fixture(name));
        CHECK(r.exit_code == 3);
        CHECK(r.err.find("SingularSystem") != std::string::npos);
        CHECK(r.err.find("threshold") != std::string::npos);
        CHECK(r.err.find("not-guaranteed") != std::string::npos);
    }
}

TEST_CASE("the singular examples still rank geometrically") {
    for (const std::string name : {"example1.json", "example2.json"}) {
        const cli::RunResult r =
            cli::run("rank --variant geometric --format json " + cli::fixture(name));
        CHECK(r.exit_code == 0);
        const json doc = json::parse(r.out);
        CHECK(doc["applicability"]["theorem"] == "geometric-always");
        for (const auto& [name2, w] : doc["weights"].items())
            CHECK(w.get<double>() > 0.0);
    }
}

TEST_CASE("rank maps data and structure failures to distinct exit codes") {
    CHECK(cli::run("rank " + cli::fixture("invalid.json")).exit_code == 2);
    CHECK(cli::run("rank " + cli::fixture("reducible.json")).exit_code == 4);
    CHECK(cli::run("rank " + cli::fixture("partial.json")).exit_code == 2);  // no reference
    CHECK(cli::run("rank does_not_exist.json").exit_code == 2);
}

TEST_CASE("usage errors exit 1") {
    CHECK(cli::run("").exit_code == 1);
    CHECK(cli::run("rank").exit_code == 1);
    CHECK(cli::run("rank --no-such-flag x.json").exit_code == 1);
    CHECK(cli::run("rank --variant cubic " + cli::fixture("consistent.json")).exit_code == 1);
    CHECK(cli::run("--help").exit_code == 0);
}

TEST_CASE("reference weights can come from flags or a sidecar file") {
    const std::string base = "rank --format json " + cli::fixture("consistent.csv");
    const cli::RunResult via_flags = cli::run(base + " --ref b=2 --ref c=4");
    REQUIRE(via_flags.exit_code == 0);
    const cli::RunResult via_file =
        cli::run(base + " --ref-file " + cli::fixture("refs.csv"));
    REQUIRE(via_file.exit_code == 0);
    CHECK(via_flags.out == via_file.out);
    const json doc = json::parse(via_flags.out);
    CHECK(doc["weights"]["a"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("--upper expands an upper-triangle file") {
    const cli::RunResult r = cli::run("rank --format json --upper --ref b=2 --ref c=4 " +
                                      cli::fixture("upper.csv"));
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["variant"] == "arithmetic-incomplete");
    CHECK(doc["weights"]["a"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("baseline reports all four methods on complete input") {
    const cli::RunResult r =
        cli::run("baseline --format json " + cli::fixture("consistent.json"));
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["complete"] == true);
    for (const char* method : {"evm", "gmm", "harker_evm", "incomplete_gmm"}) {
        CHECK(doc["methods"][method]["a"].get<double>() ==
              doctest::Approx(1.0 / 7.0).epsilon(1e-9));
        CHECK(doc["methods"][method]["c"].get<double>() ==
              doctest::Approx(4.0 / 7.0).epsilon(1e-9));
    }
    check_golden("baseline_consistent.json", r.out);
}

TEST_CASE("baseline marks complete-only methods unavailable on gaps") {
    const cli::RunResult r =
        cli::run("baseline --format json " + cli::fixture("partial.json"));
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["complete"] == false);
    CHECK(doc["methods"]["evm"].is_null());
    CHECK(doc["methods"]["gmm"].is_null());
    CHECK(doc["methods"]["harker_evm"]["b"].get<double>() ==
          doctest::Approx(2.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("complete fills the chain-determined entry and re-ingests") {
    const cli::RunResult r =
        cli::run("complete --format json " + cli::fixture("partial.json"));
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["matrix"][0][2].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(doc["matrix"][2][0].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
    check_golden("complete_partial.json", r.out);

    // The emitted document must itself parse as a problem file.
    const std::string tag = std::to_string(::getpid());
    const std::string path = "completed_" + tag + ".json";
    {
        std::ofstream out(path, std::ios::binary);
        out << r.out;
    }
    const cli::RunResult again = cli::run("consistency --format json " + path);
    CHECK(again.exit_code == 0);
    CHECK(json::parse(again.out)["kind"] == "saaty");
    std::remove(path.c_str());
}

TEST_CASE("complete rejects contradictory data as NotConsistent") {
    const cli::RunResult r = cli::run("complete " + cli::fixture("consistent.json"));
    CHECK(r.exit_code == 0);  // already complete and consistent: echoed back

    // invalid.json breaks reciprocity, which is caught by validation first.
    CHECK(cli::run("complete " + cli::fixture("invalid.json")).exit_code == 2);

    // Reciprocal but cyclically contradictory: 2 * 2 != 5.
    const std::string path = "contradictory_" + std::to_string(::getpid()) + ".json";
    {
        std::ofstream out(path, std::ios::binary);
        out << R"({"alternatives": ["a", "b", "c"],
                   "matrix": [[1.0, 2.0, 5.0], [0.5, 1.0, 2.0], [0.2, 0.5, 1.0]]})";
    }
    const cli::RunResult bad = cli::run("complete " + path);
    CHECK(bad.exit_code == 3);
    CHECK(bad.err.find("NotConsistent") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("reports are byte-stable across runs") {
    const std::string cmd = "rank --format json " + cli::fixture("consistent.json");
    const cli::RunResult first = cli::run(cmd);
    const cli::RunResult second = cli::run(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);

    const std::string check_cmd = "consistency --format json " + cli::fixture("example2.json");
    const cli::RunResult c1 = cli::run(check_cmd);
    const cli::RunResult c2 = cli::run(check_cmd);
    CHECK(c1.out == c2.out);
    check_golden("consistency_example2.json", c1.out);
}

TEST_CASE("a recorded seed shows up in the report without changing results") {
    const std::string base = "rank --format json " + cli::fixture("consistent.json");
    const cli::RunResult plain = cli::run(base);
    const cli::RunResult seeded = cli::run(base + " --seed 7");
    const json pdoc = json::parse(plain.out);
    const json sdoc = json::parse(seeded.out);
    CHECK(!pdoc.contains("seed"));
    CHECK(sdoc["seed"] == 7);
    CHECK(pdoc["weights"] == sdoc["weights"]);
}

TEST_CASE("text output lists weights with their provenance") {
    const cli::RunResult r = cli::run("rank " + cli::fixture("consistent.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("a 1 computed") != std::string::npos);
    CHECK(r.out.find("b 2 reference") != std::string::npos);
    CHECK(r.out.find("verdict: guaranteed") != std::string::npos);
}
