#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minpart/minpart.h"

// Thin front end over the C interface: build a problem from config text and
// flag overrides, run one operation, land every artifact under --out-dir
// with a checksum manifest. Exit codes: 0 pass, 1 claim failure, 2 usage,
// 3 numerical failure.

namespace {

struct CStr {
    char* s = nullptr;
    CStr() = default;
    CStr(const CStr&) = delete;
    CStr& operator=(const CStr&) = delete;
    ~CStr() { mp_string_free(s); }
    const char* get() const { return s ? s : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
    T* h = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(h); }
    T* get() const { return h; }
    T** out() { return &h; }
};

using Problem = Handle<mp_problem, mp_problem_free>;
using Sink = Handle<mp_sink, mp_sink_free>;
using Spectrum = Handle<mp_spectrum, mp_spectrum_free>;
using Eigs = Handle<mp_eigs, mp_eigs_free>;
using Nodal = Handle<mp_nodal, mp_nodal_free>;
using Partition = Handle<mp_partition, mp_partition_free>;
using Report = Handle<mp_report, mp_report_free>;

int exit_for(mp_status st) {
    switch (st) {
        case MP_OK:
            return 0;
        case MP_ERR_INVALID:
        case MP_ERR_PARSE:
        case MP_ERR_IO:
            return 2;
        default:
            return 3;
    }
}

int fail(mp_status st) {
    std::fprintf(stderr, "error: %s\n", mp_last_error());
    return exit_for(st);
}

struct CommonOpts {
    std::string config;
    std::string b, degree, ntheta, nt;
    std::string k, count, index, init, restarts, seed, tol;
    std::string out_dir = "out";
};

void add_domain_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config, "Config file (key = value lines)");
    cmd->add_option("--b", o.b, "Domain width, rational like 1/5 or decimal");
    cmd->add_option("--degree", o.degree, "Covering degree, 1 or 2");
    cmd->add_option("--ntheta", o.ntheta, "Angular grid cells");
    cmd->add_option("--nt", o.nt, "Transverse grid cells");
}

void add_run_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--k", o.k, "Number of parts");
    cmd->add_option("--count", o.count, "Eigenvalues to compute");
    cmd->add_option("--index", o.index, "Eigenfunction index, 1-based");
    cmd->add_option("--init", o.init,
                    "Partition init: equal_sectors | equal_bands | random_voronoi");
    cmd->add_option("--restarts", o.restarts, "Random-voronoi restarts");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--tol", o.tol, "Eigensolver tolerance");
}

void add_out_flag(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out-dir", o.out_dir, "Artifact directory")->capture_default_str();
}

// Config file first, explicit flags on top.
mp_status build_problem(const CLI::App* cmd, const CommonOpts& o, Problem& p) {
    mp_status st = mp_problem_new(p.out());
    if (st != MP_OK) return st;
    const CLI::Option* cfg = cmd->get_option_no_throw("--config");
    if (cfg != nullptr && cfg->count() > 0) {
        st = mp_problem_load_file(p.get(), o.config.c_str());
        if (st != MP_OK) return st;
    }
    const struct {
        const char* flag;
        const char* key;
        const std::string& value;
    } overrides[] = {
        {"--b", "b", o.b},
        {"--degree", "degree", o.degree},
        {"--ntheta", "ntheta", o.ntheta},
        {"--nt", "nt", o.nt},
        {"--k", "k", o.k},
        {"--count", "count", o.count},
        {"--index", "index", o.index},
        {"--init", "init", o.init},
        {"--restarts", "restarts", o.restarts},
        {"--seed", "seed", o.seed},
        {"--tol", "tol", o.tol},
    };
    for (const auto& ov : overrides) {
        const CLI::Option* opt = cmd->get_option_no_throw(ov.flag);
        if (opt == nullptr || opt->count() == 0) continue;
        st = mp_problem_set(p.get(), ov.key, ov.value.c_str());
        if (st != MP_OK) return st;
    }
    return MP_OK;
}

int run_spectrum(const CLI::App* cmd, const CommonOpts& o) {
    Problem p;
    mp_status st = build_problem(cmd, o, p);
    if (st != MP_OK) return fail(st);
    Spectrum s;
    st = mp_spectrum_compute(p.get(), s.out());
    if (st != MP_OK) return fail(st);

    CStr csv, desc;
    if ((st = mp_spectrum_csv(s.get(), &csv.s)) != MP_OK) return fail(st);
    if ((st = mp_spectrum_describe(s.get(), &desc.s)) != MP_OK) return fail(st);

    Sink sink;
    if ((st = mp_sink_new(o.out_dir.c_str(), sink.out())) != MP_OK) return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "spectrum.csv", csv.s)) != MP_OK) return fail(st);
    if ((st = mp_sink_write_manifest(sink.get())) != MP_OK) return fail(st);

    std::fputs(desc.get(), stdout);
    std::printf("artifacts: %s\n", o.out_dir.c_str());
    return 0;
}

int run_solve(const CLI::App* cmd, const CommonOpts& o) {
    Problem p;
    mp_status st = build_problem(cmd, o, p);
    if (st != MP_OK) return fail(st);
    Eigs e;
    st = mp_eigs_solve(p.get(), e.out());
    if (st != MP_OK) return fail(st);

    CStr csv, desc;
    if ((st = mp_eigs_values_csv(e.get(), &csv.s)) != MP_OK) return fail(st);
    if ((st = mp_eigs_describe(e.get(), &desc.s)) != MP_OK) return fail(st);

    Sink sink;
    if ((st = mp_sink_new(o.out_dir.c_str(), sink.out())) != MP_OK) return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "eigenvalues.csv", csv.s)) != MP_OK) return fail(st);
    if (cmd->count("--index") > 0) {
        int index = std::atoi(o.index.c_str());
        CStr vec;
        if ((st = mp_eigs_vector_csv(e.get(), index - 1, &vec.s)) != MP_OK) return fail(st);
        std::string name = "eigenvector_" + std::to_string(index) + ".csv";
        if ((st = mp_sink_write_text(sink.get(), name.c_str(), vec.s)) != MP_OK) return fail(st);
    }
    if ((st = mp_sink_write_manifest(sink.get())) != MP_OK) return fail(st);

    std::fputs(desc.get(), stdout);
    std::printf("artifacts: %s\n", o.out_dir.c_str());
    return 0;
}

int run_nodal(const CLI::App* cmd, const CommonOpts& o) {
    Problem p;
    mp_status st = build_problem(cmd, o, p);
    if (st != MP_OK) return fail(st);
    Nodal n;
    st = mp_nodal_analyze(p.get(), n.out());
    if (st != MP_OK) return fail(st);

    CStr mode, labels, pgm, graph, desc;
    if ((st = mp_nodal_mode_csv(n.get(), &mode.s)) != MP_OK) return fail(st);
    if ((st = mp_nodal_labels_csv(n.get(), &labels.s)) != MP_OK) return fail(st);
    if ((st = mp_nodal_labels_pgm(n.get(), &pgm.s)) != MP_OK) return fail(st);
    if ((st = mp_nodal_graph_text(n.get(), &graph.s)) != MP_OK) return fail(st);
    if ((st = mp_nodal_describe(n.get(), &desc.s)) != MP_OK) return fail(st);

    Sink sink;
    if ((st = mp_sink_new(o.out_dir.c_str(), sink.out())) != MP_OK) return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "mode.csv", mode.s)) != MP_OK) return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "nodal_labels.csv", labels.s)) != MP_OK)
        return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "nodal_labels.pgm", pgm.s)) != MP_OK)
        return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "nodal_graph.txt", graph.s)) != MP_OK)
        return fail(st);
    if ((st = mp_sink_write_manifest(sink.get())) != MP_OK) return fail(st);

    std::fputs(desc.get(), stdout);
    std::printf("artifacts: %s\n", o.out_dir.c_str());
    return 0;
}

int run_partition(const CLI::App* cmd, const CommonOpts& o) {
    Problem p;
    mp_status st = build_problem(cmd, o, p);
    if (st != MP_OK) return fail(st);
    Partition q;
    st = mp_partition_run(p.get(), q.out());
    if (st != MP_OK) return fail(st);

    CStr labels, pgm, history, desc;
    if ((st = mp_partition_labels_csv(q.get(), &labels.s)) != MP_OK) return fail(st);
    if ((st = mp_partition_labels_pgm(q.get(), &pgm.s)) != MP_OK) return fail(st);
    if ((st = mp_partition_history_csv(q.get(), &history.s)) != MP_OK) return fail(st);
    if ((st = mp_partition_describe(q.get(), &desc.s)) != MP_OK) return fail(st);

    Sink sink;
    if ((st = mp_sink_new(o.out_dir.c_str(), sink.out())) != MP_OK) return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "partition_labels.csv", labels.s)) != MP_OK)
        return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "partition_labels.pgm", pgm.s)) != MP_OK)
        return fail(st);
    if ((st = mp_sink_write_text(sink.get(), "history.csv", history.s)) != MP_OK)
        return fail(st);
    if ((st = mp_sink_write_manifest(sink.get())) != MP_OK) return fail(st);

    std::fputs(desc.get(), stdout);
    std::printf("artifacts: %s\n", o.out_dir.c_str());
    return 0;
}

int run_verify(const CLI::App* cmd, const CommonOpts& o, std::vector<std::string> ids) {
    Problem p;
    mp_status st = build_problem(cmd, o, p);
    if (st != MP_OK) return fail(st);

    if (ids.empty()) {
        int n = mp_scenario_count();
        for (int i = 0; i < n; ++i) {
            CStr id;
            if ((st = mp_scenario_id(i, &id.s)) != MP_OK) return fail(st);
            ids.emplace_back(id.get());
        }
    }

    Sink sink;
    if ((st = mp_sink_new(o.out_dir.c_str(), sink.out())) != MP_OK) return fail(st);

    bool all_pass = true;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        Report rep;
        st = mp_scenario_run(ids[i].c_str(), p.get(), sink.get(), rep.out());
        if (st != MP_OK) return fail(st);
        CStr text;
        if ((st = mp_report_text(rep.get(), &text.s)) != MP_OK) return fail(st);
        if (i > 0) std::fputs("\n", stdout);
        std::fputs(text.get(), stdout);
        std::string name = ids[i] + "/report.txt";
        if ((st = mp_sink_write_text(sink.get(), name.c_str(), text.s)) != MP_OK)
            return fail(st);
        if (mp_report_pass(rep.get()) == 0) all_pass = false;
    }
    if ((st = mp_sink_write_manifest(sink.get())) != MP_OK) return fail(st);

    std::printf("artifacts: %s\n", o.out_dir.c_str());
    return all_pass ? 0 : 1;
}

int run_list() {
    CStr text;
    mp_status st = mp_scenario_list(&text.s);
    if (st != MP_OK) return fail(st);
    std::fputs(text.get(), stdout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral minimal partitions of thin cylinders and annuli"};
    app.set_version_flag("--version", std::string(mp_version()));
    app.require_subcommand(1);

    CommonOpts so, eo, no, po, vo;
    std::vector<std::string> verify_ids;

    CLI::App* spectrum =
        app.add_subcommand("spectrum", "Exact low spectrum of the cylinder strip");
    add_domain_flags(spectrum, so);
    add_run_flags(spectrum, so);
    add_out_flag(spectrum, so);

    CLI::App* solve =
        app.add_subcommand("solve", "Finite-difference eigenvalues of the configured domain");
    add_domain_flags(solve, eo);
    add_run_flags(solve, eo);
    add_out_flag(solve, eo);

    CLI::App* nodal =
        app.add_subcommand("nodal", "Nodal domains and Courant probe of one eigenfunction");
    add_domain_flags(nodal, no);
    add_run_flags(nodal, no);
    add_out_flag(nodal, no);

    CLI::App* partition = app.add_subcommand("partition", "Optimize a spectral k-partition");
    add_domain_flags(partition, po);
    add_run_flags(partition, po);
    add_out_flag(partition, po);

    CLI::App* verify =
        app.add_subcommand("verify", "Run named verification scenarios and write reports");
    verify->add_option("ids", verify_ids, "Scenario ids (default: all)");
    verify->add_option("--ntheta", vo.ntheta, "Angular grid override");
    verify->add_option("--nt", vo.nt, "Transverse grid override");
    verify->add_option("--restarts", vo.restarts, "Restart count override");
    verify->add_option("--seed", vo.seed, "Seed override");
    verify->add_option("--tol", vo.tol, "Tolerance override");
    add_out_flag(verify, vo);

    CLI::App* list = app.add_subcommand("list", "List verification scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (spectrum->parsed()) return run_spectrum(spectrum, so);
    if (solve->parsed()) return run_solve(solve, eo);
    if (nodal->parsed()) return run_nodal(nodal, no);
    if (partition->parsed()) return run_partition(partition, po);
    if (verify->parsed()) return run_verify(verify, vo, verify_ids);
    if (list->parsed()) return run_list();
    return 2;
}
