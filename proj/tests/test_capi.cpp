#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "minpart/minpart.h"

// Exercises the shared-library boundary only: no core headers, everything
// observable must flow through the C handles.

TEST_SUITE_BEGIN("capi");

namespace {

constexpr double kPi2 = 9.869604401089358;

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("minpart-capi-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Problem {
    mp_problem* p = nullptr;
    Problem() { REQUIRE(mp_problem_new(&p) == MP_OK); }
    ~Problem() { mp_problem_free(p); }
    void set(const char* key, const char* value) {
        REQUIRE(mp_problem_set(p, key, value) == MP_OK);
    }
};

struct Str {
    char* s = nullptr;
    ~Str() { mp_string_free(s); }
};

int count_lines(const char* s) {
    int n = 0;
    for (const char* c = s; *c; ++c) {
        if (*c == '\n') ++n;
    }
    return n;
}

} // namespace

TEST_CASE("problem validates keys and values at set time") {
    Problem p;
    CHECK(mp_problem_set(p.p, "nosuch", "1") == MP_ERR_INVALID);
    CHECK(std::string(mp_last_error()).find("nosuch") != std::string::npos);
    CHECK(mp_problem_set(p.p, "b", "zebra") == MP_ERR_PARSE);
    CHECK(mp_problem_set(p.p, "ntheta", "12.5") == MP_ERR_PARSE);
    CHECK(mp_problem_set(p.p, "seed", "-3") == MP_ERR_PARSE);
    CHECK(mp_problem_set(p.p, "init", "diagonal") == MP_ERR_PARSE);
    CHECK(mp_problem_set(p.p, "kind", "torus") == MP_ERR_PARSE);

    p.set("b", "1/5");
    CHECK(std::string(mp_last_error()).empty());

    // A failed load leaves the problem untouched.
    CHECK(mp_problem_load_text(p.p, "k = 4\nbogus line") == MP_ERR_PARSE);
    Str desc;
    REQUIRE(mp_problem_describe(p.p, &desc.s) == MP_OK);
    CHECK(std::string(desc.s) == "b = 1/5\n");

    CHECK(mp_problem_load_text(p.p, "# comment\nk = 4\n\nntheta = 48") == MP_OK);
    Str desc2;
    REQUIRE(mp_problem_describe(p.p, &desc2.s) == MP_OK);
    CHECK(std::string(desc2.s) == "b = 1/5\nk = 4\nntheta = 48\n");
}

TEST_CASE("null handles are rejected without crashing") {
    CHECK(mp_problem_set(nullptr, "b", "1/5") == MP_ERR_INVALID);
    CHECK(mp_problem_load_text(nullptr, "") == MP_ERR_INVALID);
    CHECK(mp_spectrum_compute(nullptr, nullptr) == MP_ERR_INVALID);
    CHECK(mp_eigs_count(nullptr) == 0);
    CHECK(mp_nodal_domain_count(nullptr) == 0);
    CHECK(mp_report_pass(nullptr) == 0);
    double v = 0.0;
    CHECK(mp_eigs_value(nullptr, 0, &v) == MP_ERR_INVALID);
    CHECK(mp_scenario_run(nullptr, nullptr, nullptr, nullptr) == MP_ERR_INVALID);
    mp_string_free(nullptr);
    CHECK(std::string(mp_version()).find('.') != std::string::npos);
}

TEST_CASE("spectrum handle carries the exact catalog") {
    Problem p;
    p.set("b", "1/2");
    p.set("count", "5");
    mp_spectrum* s = nullptr;
    REQUIRE(mp_spectrum_compute(p.p, &s) == MP_OK);
    CHECK(mp_spectrum_entry_count(s) >= 3);

    Str csv;
    REQUIRE(mp_spectrum_csv(s, &csv.s) == MP_OK);
    std::string text(csv.s);
    CHECK(text.rfind("index,value_over_pi2,value,m,n,multiplicity,deck_class", 0) == 0);
    CHECK(text.find("1,0/1,") != std::string::npos);

    Str desc;
    REQUIRE(mp_spectrum_describe(s, &desc.s) == MP_OK);
    CHECK(std::string(desc.s).find("b=1/2") != std::string::npos);
    mp_spectrum_free(s);

    Problem ann;
    ann.set("kind", "annulus");
    ann.set("b", "1/10");
    mp_spectrum* s2 = nullptr;
    CHECK(mp_spectrum_compute(ann.p, &s2) == MP_ERR_INVALID);
}

TEST_CASE("solve exposes ordered eigenvalues and grid fields") {
    Problem p;
    p.set("b", "1/5");
    p.set("ntheta", "48");
    p.set("nt", "6");
    p.set("count", "4");
    mp_eigs* e = nullptr;
    REQUIRE(mp_eigs_solve(p.p, &e) == MP_OK);
    REQUIRE(mp_eigs_count(e) == 4);

    double v0 = 1.0, v1 = 0.0;
    REQUIRE(mp_eigs_value(e, 0, &v0) == MP_OK);
    REQUIRE(mp_eigs_value(e, 1, &v1) == MP_OK);
    CHECK(std::abs(v0) < 1e-8);
    CHECK(v1 == doctest::Approx(4.0 * kPi2).epsilon(0.01));
    CHECK(mp_eigs_value(e, 9, &v0) == MP_ERR_INVALID);

    Str values;
    REQUIRE(mp_eigs_values_csv(e, &values.s) == MP_OK);
    CHECK(std::string(values.s).rfind("index,value,residual,cluster", 0) == 0);

    Str vec;
    REQUIRE(mp_eigs_vector_csv(e, 1, &vec.s) == MP_OK);
    CHECK(count_lines(vec.s) == 6); // one line per transverse row
    CHECK(mp_eigs_vector_csv(e, 4, &vec.s) == MP_ERR_INVALID);
    mp_eigs_free(e);

    // Missing grid sizes are a usage error, not a crash.
    Problem bare;
    bare.set("b", "1/5");
    mp_eigs* e2 = nullptr;
    CHECK(mp_eigs_solve(bare.p, &e2) == MP_ERR_INVALID);
}

TEST_CASE("nodal handle reports domains, graph and sharpness") {
    Problem p;
    p.set("b", "3/10");
    p.set("degree", "2");
    p.set("ntheta", "96");
    p.set("nt", "14");
    p.set("index", "6");
    mp_nodal* n = nullptr;
    REQUIRE(mp_nodal_analyze(p.p, &n) == MP_OK);
    CHECK(mp_nodal_domain_count(n) == 6);
    CHECK(mp_nodal_witness_found(n) == 1);

    Str labels, pgm, graph, mode, desc;
    REQUIRE(mp_nodal_labels_csv(n, &labels.s) == MP_OK);
    CHECK(count_lines(labels.s) == 14);
    REQUIRE(mp_nodal_labels_pgm(n, &pgm.s) == MP_OK);
    CHECK(std::string(pgm.s).rfind("P2\n", 0) == 0);
    REQUIRE(mp_nodal_graph_text(n, &graph.s) == MP_OK);
    CHECK(count_lines(graph.s) >= 5);
    REQUIRE(mp_nodal_mode_csv(n, &mode.s) == MP_OK);
    CHECK(count_lines(mode.s) == 14);
    REQUIRE(mp_nodal_describe(n, &desc.s) == MP_OK);
    CHECK(std::string(desc.s).find("nodal domains: 6") != std::string::npos);
    mp_nodal_free(n);
}

TEST_CASE("partition run lands on the sector optimum") {
    Problem p;
    p.set("b", "1/5");
    p.set("ntheta", "48");
    p.set("nt", "6");
    p.set("k", "3");
    p.set("restarts", "0");
    mp_partition* q = nullptr;
    REQUIRE(mp_partition_run(p.p, &q) == MP_OK);

    double lambda = 0.0;
    REQUIRE(mp_partition_lambda(q, &lambda) == MP_OK);
    CHECK(lambda == doctest::Approx(9.0 * kPi2).epsilon(0.02));

    Str labels, history, desc;
    REQUIRE(mp_partition_labels_csv(q, &labels.s) == MP_OK);
    CHECK(count_lines(labels.s) == 6);
    REQUIRE(mp_partition_history_csv(q, &history.s) == MP_OK);
    CHECK(std::string(history.s).rfind("sweep,lambda_max,moved", 0) == 0);
    REQUIRE(mp_partition_describe(q, &desc.s) == MP_OK);
    CHECK(std::string(desc.s).find("property B: yes") != std::string::npos);
    mp_partition_free(q);
}

TEST_CASE("sink writes under its root and checksums the artifacts") {
    TempDir tmp;
    mp_sink* bad = nullptr;
    CHECK(mp_sink_new("", &bad) == MP_ERR_INVALID);

    mp_sink* s = nullptr;
    REQUIRE(mp_sink_new(tmp.path.string().c_str(), &s) == MP_OK);
    CHECK(mp_sink_write_text(s, "/abs.txt", "x") == MP_ERR_INVALID);
    REQUIRE(mp_sink_write_text(s, "a/data.csv", "1,2\n") == MP_OK);
    REQUIRE(mp_sink_write_manifest(s) == MP_OK);
    mp_sink_free(s);

    CHECK(slurp(tmp.path / "a" / "data.csv") == "1,2\n");
    std::string manifest = slurp(tmp.path / "manifest.txt");
    CHECK(manifest.find("a/data.csv") != std::string::npos);
    CHECK(manifest.rfind("fnv1a64 ", 0) == 0);
}

TEST_CASE("scenario registry and a full run through the C boundary") {
    REQUIRE(mp_scenario_count() == 5);
    Str first;
    REQUIRE(mp_scenario_id(0, &first.s) == MP_OK);
    CHECK(std::string(first.s) == "lemma-C2");
    Str oob;
    CHECK(mp_scenario_id(5, &oob.s) == MP_ERR_INVALID);

    Str listing;
    REQUIRE(mp_scenario_list(&listing.s) == MP_OK);
    std::string ls(listing.s);
    for (const char* id : {"lemma-C2", "thm-cylinder", "prop-2-3", "k-thresholds",
                           "annulus-condthin"}) {
        CHECK(ls.find(id) != std::string::npos);
    }

    mp_report* missing = nullptr;
    CHECK(mp_scenario_run("nope", nullptr, nullptr, &missing) == MP_ERR_INVALID);

    TempDir tmp;
    mp_sink* sink = nullptr;
    REQUIRE(mp_sink_new(tmp.path.string().c_str(), &sink) == MP_OK);
    Problem overrides;
    overrides.set("ntheta", "16");
    overrides.set("nt", "48");
    overrides.set("restarts", "0");
    mp_report* rep = nullptr;
    REQUIRE(mp_scenario_run("prop-2-3", overrides.p, sink, &rep) == MP_OK);
    CHECK(mp_report_pass(rep) == 1);

    Str text;
    REQUIRE(mp_report_text(rep, &text.s) == MP_OK);
    std::string t(text.s);
    CHECK(t.find("scenario: prop-2-3") != std::string::npos);
    CHECK(t.find("result: PASS") != std::string::npos);
    mp_report_free(rep);

    REQUIRE(mp_sink_write_manifest(sink) == MP_OK);
    mp_sink_free(sink);
    CHECK(std::filesystem::exists(tmp.path / "prop-2-3" / "eigenvalues.csv"));
    CHECK(std::filesystem::exists(tmp.path / "manifest.txt"));
}

TEST_SUITE_END();
