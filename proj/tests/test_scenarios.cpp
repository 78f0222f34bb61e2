#include <filesystem>
#include <string>
#include <vector>

#include "core/csvio.hpp"
#include "core/errors.hpp"
#include "core/scenarios.hpp"

#include "doctest.h"

using namespace minpart;

namespace {

// Every claim names the oracle its expected value comes from.
void check_oracle_tags(const ScenarioReport& rep) {
    for (const Claim& c : rep.claims) {
        bool tagged = c.description.find("[analytic]") != std::string::npos ||
                      c.description.find("[1D-radial]") != std::string::npos ||
                      c.description.find("[paper-exact]") != std::string::npos;
        CHECK_MESSAGE(tagged, c.description);
        CHECK(!c.expected.empty());
        CHECK(!c.measured.empty());
        CHECK(!c.tolerance.empty());
    }
}

void check_all_pass(const ScenarioReport& rep) {
    for (const Claim& c : rep.claims)
        CHECK_MESSAGE(c.pass, c.description, ": expected ", c.expected, ", measured ",
                      c.measured);
    CHECK(rep.pass);
}

} // namespace

TEST_SUITE_BEGIN("scenarios");

TEST_CASE("the registry lists the five scenarios in fixed order") {
    const auto& reg = scenario_registry();
    REQUIRE(reg.size() == 5);
    CHECK(reg[0].first == "lemma-C2");
    CHECK(reg[1].first == "thm-cylinder");
    CHECK(reg[2].first == "prop-2-3");
    CHECK(reg[3].first == "k-thresholds");
    CHECK(reg[4].first == "annulus-condthin");
    for (const auto& [id, desc] : reg) CHECK(!desc.empty());
    CHECK_THROWS_AS(run_scenario("no-such-id", {}, nullptr), InvalidArgument);
}

TEST_CASE("wide cylinder scenario passes and is reproducible") {
    ScenarioOverrides ov;
    ov.restarts = 0;
    ScenarioReport rep = run_scenario("prop-2-3", ov, nullptr);
    CHECK(rep.id == "prop-2-3");
    check_all_pass(rep);
    check_oracle_tags(rep);
    REQUIRE(rep.claims.size() >= 5);
    CHECK(!rep.inputs.empty());

    ScenarioReport again = run_scenario("prop-2-3", ov, nullptr);
    CHECK(rep.text() == again.text());
}

TEST_CASE("thin cylinder scenario passes on a reduced grid") {
    ScenarioOverrides ov;
    ov.ntheta = 96;
    ov.nt = 12;
    ov.restarts = 1;
    ScenarioReport rep = run_scenario("thm-cylinder", ov, nullptr);
    check_all_pass(rep);
    check_oracle_tags(rep);
}

TEST_CASE("double cover scenario passes on a reduced grid") {
    ScenarioOverrides ov;
    ov.ntheta = 128;
    ov.nt = 20;
    ScenarioReport rep = run_scenario("lemma-C2", ov, nullptr);
    check_all_pass(rep);
    check_oracle_tags(rep);
}

TEST_CASE("threshold scenario passes on a reduced grid") {
    ScenarioOverrides ov;
    ov.ntheta = 100;
    ov.nt = 10;
    ov.restarts = 0;
    ScenarioReport rep = run_scenario("k-thresholds", ov, nullptr);
    check_all_pass(rep);
    check_oracle_tags(rep);
    // The three exact threshold claims carry surd strings.
    CHECK(rep.claims[0].measured == "1/sqrt(20)");
    CHECK(rep.claims[1].measured == "1/sqrt(84)");
    CHECK(rep.claims[2].measured == "1/sqrt(132)");
}

TEST_CASE("annulus scenario passes on a reduced grid") {
    ScenarioOverrides ov;
    ov.ntheta = 128;
    ov.nt = 10;
    ScenarioReport rep = run_scenario("annulus-condthin", ov, nullptr);
    check_all_pass(rep);
    check_oracle_tags(rep);
}

TEST_CASE("artifacts land under the sink with a manifest") {
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / ("minpart-scn-" + std::to_string(::getpid()));
    std::filesystem::remove_all(tmp);
    {
        ArtifactSink sink(tmp.string());
        ScenarioOverrides ov;
        ov.restarts = 0;
        ScenarioReport rep = run_scenario("prop-2-3", ov, &sink);
        sink.write_manifest();

        REQUIRE(!rep.artifacts.empty());
        std::string manifest = read_text_file((tmp / "manifest.txt").string());
        for (const std::string& rel : rep.artifacts) {
            CHECK(std::filesystem::exists(tmp / rel));
            CHECK(std::filesystem::file_size(tmp / rel) > 0);
            CHECK(manifest.find(rel) != std::string::npos);
        }
        std::string pgm = read_text_file((tmp / "prop-2-3" / "nodal_labels.pgm").string());
        CHECK(pgm.substr(0, 3) == "P2\n");
    }
    std::filesystem::remove_all(tmp);
}

TEST_SUITE_END();
