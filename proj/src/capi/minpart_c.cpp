#include "minpart/minpart.h"

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core/analytic.hpp"
#include "core/csvio.hpp"
#include "core/domain.hpp"
#include "core/eigensolve.hpp"
#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/nodal.hpp"
#include "core/op.hpp"
#include "core/partition.hpp"
#include "core/rational.hpp"
#include "core/scenarios.hpp"

// Opaque handle bodies. Each owns plain value copies of the core results so
// a handle stays valid independently of the problem it was computed from.

struct mp_problem {
    std::map<std::string, std::string> kv;
};

struct mp_sink {
    minpart::ArtifactSink sink;
};

struct mp_spectrum {
    minpart::CylinderSpectrum spec;
    std::string domain_desc;
    int requested = 0;
};

struct mp_eigs {
    minpart::Grid grid;
    minpart::SymmetricOperator op;
    std::vector<minpart::EigenPair> pairs;
};

struct mp_nodal {
    minpart::Grid grid;
    int index = 0;
    double lambda = 0.0;
    std::vector<double> mode;
    minpart::NodalResult nodal;
    minpart::NeighborGraph graph;
    bool graph_bipartite = false;
    minpart::CourantReport courant;
};

struct mp_partition {
    minpart::Grid grid;
    minpart::PartitionState state;
    minpart::TheoryReport theory;
    std::string init_name;
    minpart::IterateOptions opts;
    int k = 0;
};

struct mp_report {
    minpart::ScenarioReport rep;
};

namespace {

thread_local std::string tl_error;

mp_status fail_invalid(const char* msg) {
    tl_error = msg;
    return MP_ERR_INVALID;
}

template <typename Fn>
mp_status guarded(Fn&& fn) {
    try {
        fn();
        tl_error.clear();
        return MP_OK;
    } catch (const minpart::InvalidArgument& e) {
        tl_error = e.what();
        return MP_ERR_INVALID;
    } catch (const minpart::ParseError& e) {
        tl_error = e.what();
        return MP_ERR_PARSE;
    } catch (const minpart::StructuralError& e) {
        tl_error = e.what();
        return MP_ERR_STRUCTURAL;
    } catch (const minpart::NumericalError& e) {
        tl_error = e.what();
        return MP_ERR_NUMERICAL;
    } catch (const minpart::IoError& e) {
        tl_error = e.what();
        return MP_ERR_IO;
    } catch (const std::exception& e) {
        tl_error = e.what();
        return MP_ERR_INTERNAL;
    } catch (...) {
        tl_error = "unknown failure";
        return MP_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

long long checked_ll(const std::string& value, const std::string& key) {
    std::size_t pos = 0;
    long long v = 0;
    bool ok = true;
    try {
        v = std::stoll(value, &pos);
    } catch (...) {
        ok = false;
    }
    if (!ok || pos != value.size()) {
        throw minpart::ParseError("config: " + key + " expects an integer, got '" + value + "'");
    }
    return v;
}

int checked_int(const std::string& value, const std::string& key) {
    long long v = checked_ll(value, key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw minpart::ParseError("config: " + key + " is out of range: " + value);
    }
    return static_cast<int>(v);
}

double checked_real(const std::string& value, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    bool ok = true;
    try {
        v = std::stod(value, &pos);
    } catch (...) {
        ok = false;
    }
    if (!ok || pos != value.size()) {
        throw minpart::ParseError("config: " + key + " expects a number, got '" + value + "'");
    }
    return v;
}

void check_coef_list(const std::string& value, const std::string& key) {
    std::istringstream is(value);
    std::string tok;
    int n = 0;
    while (is >> tok) {
        checked_real(tok, key);
        ++n;
    }
    if (n == 0) throw minpart::ParseError("config: " + key + " expects a coefficient list");
}

minpart::PartitionInit parse_init(const std::string& s) {
    if (s == "equal_sectors") return minpart::PartitionInit::equal_sectors;
    if (s == "equal_bands") return minpart::PartitionInit::equal_bands;
    if (s == "random_voronoi") return minpart::PartitionInit::random_voronoi;
    throw minpart::ParseError(
        "config: init must be equal_sectors, equal_bands or random_voronoi, got '" + s + "'");
}

void validate_value(const std::string& key, const std::string& value) {
    if (key == "kind") {
        if (value != "strip" && value != "annulus") {
            throw minpart::ParseError("config: kind must be strip or annulus, got " + value);
        }
    } else if (key == "b") {
        minpart::Rational::parse(value);
    } else if (key == "degree" || key == "ntheta" || key == "nt" || key == "k" ||
               key == "count" || key == "index" || key == "restarts" || key == "max_sweeps" ||
               key == "patience") {
        checked_int(value, key);
    } else if (key == "seed") {
        if (checked_ll(value, key) < 0) {
            throw minpart::ParseError("config: seed expects a nonnegative integer");
        }
    } else if (key == "tol") {
        checked_real(value, key);
    } else if (key == "bc_bottom" || key == "bc_top") {
        minpart::parse_bc(value);
    } else if (key == "h1" || key == "h2") {
        check_coef_list(value, key);
    } else if (key == "init") {
        parse_init(value);
    } else {
        throw minpart::InvalidArgument("config: unknown key '" + key + "'");
    }
}

// Parses "key = value" lines with '#' comments; a failed load changes nothing.
void load_text(mp_problem* p, const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::vector<std::pair<std::string, std::string>> staged;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw minpart::ParseError("config line " + std::to_string(lineno) +
                                      ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw minpart::ParseError("config line " + std::to_string(lineno) +
                                      ": empty key or value");
        }
        validate_value(key, value);
        staged.emplace_back(std::move(key), std::move(value));
    }
    for (auto& [k, v] : staged) p->kv[k] = v;
}

long long run_ll(const mp_problem* p, const char* key, long long def) {
    auto it = p->kv.find(key);
    return it == p->kv.end() ? def : checked_ll(it->second, key);
}

int run_int(const mp_problem* p, const char* key, int def) {
    auto it = p->kv.find(key);
    return it == p->kv.end() ? def : checked_int(it->second, key);
}

double run_real(const mp_problem* p, const char* key, double def) {
    auto it = p->kv.find(key);
    return it == p->kv.end() ? def : checked_real(it->second, key);
}

std::string run_string(const mp_problem* p, const char* key, const char* def) {
    auto it = p->kv.find(key);
    return it == p->kv.end() ? std::string(def) : it->second;
}

minpart::DomainConfig resolve_domain(const mp_problem* p) {
    static const char* const dom_keys[] = {"kind",      "b",      "degree", "ntheta", "nt",
                                           "bc_bottom", "bc_top", "h1",     "h2"};
    std::string text;
    for (const char* key : dom_keys) {
        auto it = p->kv.find(key);
        if (it != p->kv.end()) text += std::string(key) + " = " + it->second + "\n";
    }
    return minpart::parse_config_text(text);
}

minpart::Grid resolve_grid(const mp_problem* p, const char* what) {
    minpart::DomainConfig cfg = resolve_domain(p);
    if (cfg.ntheta <= 0 || cfg.nt <= 0) {
        throw minpart::InvalidArgument(std::string(what) + ": ntheta and nt must be set");
    }
    return minpart::build_grid(cfg.domain, cfg.ntheta, cfg.nt);
}

minpart::EigenOptions eig_opts(const mp_problem* p) {
    minpart::EigenOptions eo;
    eo.tol = run_real(p, "tol", eo.tol);
    eo.seed = static_cast<std::uint64_t>(run_ll(p, "seed", static_cast<long long>(eo.seed)));
    return eo;
}

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

std::string fd(double v) { return minpart::format_double(v); }

std::string grid_line(const minpart::Grid& g) {
    std::ostringstream os;
    os << "grid " << g.ntheta << " x " << g.nt << " (" << g.ncells() << " cells), bc "
       << minpart::to_string(g.domain.bc.bottom) << "/" << minpart::to_string(g.domain.bc.top);
    return os.str();
}

std::string spectrum_text(const mp_spectrum& s) {
    std::ostringstream os;
    os << s.domain_desc << "\n";
    os << "requested " << s.requested << ", total multiplicity " << s.spec.total_multiplicity
       << "\n";
    os << "index  value/pi^2  value           m   n   mult  deck\n";
    int idx = 1;
    for (const auto& e : s.spec.entries) {
        os << std::left << std::setw(7) << idx << std::setw(12)
           << e.value_over_pi2.to_fraction_string() << std::setw(16) << fd(e.value)
           << std::setw(4) << e.m << std::setw(4) << e.n << std::setw(6) << e.multiplicity
           << minpart::to_string(e.deck_class) << "\n";
        idx += e.multiplicity;
    }
    if (!s.spec.note.empty()) os << "note: " << s.spec.note << "\n";
    return os.str();
}

std::string eigs_text(const mp_eigs& e) {
    std::ostringstream os;
    os << e.grid.domain.describe() << "\n" << grid_line(e.grid) << "\n";
    os << "lowest " << e.pairs.size() << " eigenvalues:\n";
    os << "index  value               value/pi^2          residual   cluster\n";
    for (std::size_t i = 0; i < e.pairs.size(); ++i) {
        std::ostringstream res;
        res << std::scientific << std::setprecision(2) << e.pairs[i].residual;
        os << std::left << std::setw(7) << (i + 1) << std::setw(20) << fd(e.pairs[i].value)
           << std::setw(20) << fd(e.pairs[i].value / kPi2) << std::setw(11) << res.str()
           << e.pairs[i].cluster << "\n";
    }
    return os.str();
}

std::string nodal_text(const mp_nodal& n) {
    std::ostringstream os;
    os << n.grid.domain.describe() << "\n" << grid_line(n.grid) << "\n";
    os << "eigenfunction " << n.index << ": lambda = " << fd(n.lambda)
       << " (lambda/pi^2 = " << fd(n.lambda / kPi2) << ")\n";
    os << "nodal domains: " << n.nodal.count << "\n";
    os << "neighbor graph: " << n.graph.k << " vertices, " << n.graph.edges.size()
       << " edges, bipartite: " << (n.graph_bipartite ? "yes" : "no") << "\n";
    os << "courant cluster [" << n.courant.cluster_begin << ", " << n.courant.cluster_end
       << "], best mu = " << n.courant.best_mu
       << ", sharp witness: " << (n.courant.witness_found ? "yes" : "no");
    if (n.courant.ambiguous) os << " (cluster end ambiguous)";
    os << "\n";
    return os.str();
}

std::string partition_text(const mp_partition& q) {
    std::ostringstream os;
    os << q.grid.domain.describe() << "\n" << grid_line(q.grid) << "\n";
    os << "k = " << q.k << ", init = " << q.init_name << ", restarts = " << q.opts.restarts
       << ", seed = " << q.opts.seed << ", tol = " << fd(q.opts.tol) << "\n";
    os << "best state: restart " << q.state.restart_index << ", sweeps " << q.state.sweeps
       << ", lambda_max = " << fd(q.state.lambda_max)
       << " (lambda/pi^2 = " << fd(q.state.lambda_max / kPi2) << ")\n";
    os << "part energies:";
    for (double v : q.state.energies) os << " " << fd(v);
    os << "\n";
    os << "reference: " << fd(q.theory.reference) << " (" << fd(q.theory.reference / kPi2)
       << " pi^2, " << (q.theory.reference_is_exact ? "optimal value" : "upper bound")
       << "), rel gap = " << fd(q.theory.rel_gap) << "\n";
    os << "bipartite: " << (q.theory.bipartite ? "yes" : "no")
       << ", property B: " << (q.theory.property_b ? "yes" : "no")
       << ", sector-like: " << (q.theory.sector_like ? "yes" : "no");
    if (q.theory.max_cut_offset_cells >= 0.0) {
        os << ", cut offset " << fd(q.theory.max_cut_offset_cells) << " cells";
    }
    os << ", nonnice parts: " << q.theory.nonnice_parts << "\n";
    return os.str();
}

} // namespace

extern "C" {

const char* mp_version(void) { return "1.0.0"; }

const char* mp_last_error(void) { return tl_error.c_str(); }

void mp_string_free(char* s) { std::free(s); }

mp_status mp_problem_new(mp_problem** out) {
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = new mp_problem(); });
}

void mp_problem_free(mp_problem* p) { delete p; }

mp_status mp_problem_load_text(mp_problem* p, const char* config_text) {
    if (!p) return fail_invalid("null problem handle");
    if (!config_text) return fail_invalid("null config text");
    return guarded([&] { load_text(p, config_text); });
}

mp_status mp_problem_load_file(mp_problem* p, const char* path) {
    if (!p) return fail_invalid("null problem handle");
    if (!path) return fail_invalid("null config path");
    return guarded([&] { load_text(p, minpart::read_text_file(path)); });
}

mp_status mp_problem_set(mp_problem* p, const char* key, const char* value) {
    if (!p) return fail_invalid("null problem handle");
    if (!key || !value) return fail_invalid("null key or value");
    return guarded([&] {
        std::string k = trim(key);
        std::string v = trim(value);
        if (k.empty() || v.empty()) {
            throw minpart::InvalidArgument("config: empty key or value");
        }
        validate_value(k, v);
        p->kv[k] = v;
    });
}

mp_status mp_problem_describe(const mp_problem* p, char** out) {
    if (!p) return fail_invalid("null problem handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] {
        std::string s;
        for (const auto& [k, v] : p->kv) s += k + " = " + v + "\n";
        *out = dup_string(s);
    });
}

mp_status mp_sink_new(const char* root_dir, mp_sink** out) {
    if (!root_dir) return fail_invalid("null root directory");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = new mp_sink{minpart::ArtifactSink(root_dir)}; });
}

void mp_sink_free(mp_sink* s) { delete s; }

mp_status mp_sink_write_text(mp_sink* s, const char* relpath, const char* content) {
    if (!s) return fail_invalid("null sink handle");
    if (!relpath || !content) return fail_invalid("null path or content");
    return guarded([&] { s->sink.write(relpath, content); });
}

mp_status mp_sink_write_manifest(mp_sink* s) {
    if (!s) return fail_invalid("null sink handle");
    return guarded([&] { s->sink.write_manifest(); });
}

mp_status mp_spectrum_compute(const mp_problem* p, mp_spectrum** out) {
    if (!p) return fail_invalid("null problem handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] {
        minpart::DomainConfig cfg = resolve_domain(p);
        if (cfg.domain.is_annulus()) {
            throw minpart::InvalidArgument(
                "spectrum: the analytic catalog covers the cylinder strip only");
        }
        int count = run_int(p, "count", 8);
        auto h = std::make_unique<mp_spectrum>();
        h->spec = minpart::analytic::cylinder_spectrum(cfg.domain.b_exact, cfg.domain.degree,
                                                       cfg.domain.bc, count);
        h->domain_desc = cfg.domain.describe();
        h->requested = count;
        *out = h.release();
    });
}

void mp_spectrum_free(mp_spectrum* s) { delete s; }

int mp_spectrum_entry_count(const mp_spectrum* s) {
    return s ? static_cast<int>(s->spec.entries.size()) : 0;
}

mp_status mp_spectrum_csv(const mp_spectrum* s, char** out) {
    if (!s) return fail_invalid("null spectrum handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::spectrum_csv(s->spec)); });
}

mp_status mp_spectrum_describe(const mp_spectrum* s, char** out) {
    if (!s) return fail_invalid("null spectrum handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(spectrum_text(*s)); });
}

mp_status mp_eigs_solve(const mp_problem* p, mp_eigs** out) {
    if (!p) return fail_invalid("null problem handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] {
        auto h = std::make_unique<mp_eigs>();
        h->grid = resolve_grid(p, "solve");
        h->op = minpart::assemble(h->grid, h->grid.domain.bc);
        int count = run_int(p, "count", 8);
        h->pairs = minpart::lowest_eigenpairs(h->op, count, eig_opts(p));
        *out = h.release();
    });
}

void mp_eigs_free(mp_eigs* e) { delete e; }

int mp_eigs_count(const mp_eigs* e) { return e ? static_cast<int>(e->pairs.size()) : 0; }

mp_status mp_eigs_value(const mp_eigs* e, int i, double* out) {
    if (!e) return fail_invalid("null eigensolve handle");
    if (!out) return fail_invalid("null output pointer");
    if (i < 0 || i >= static_cast<int>(e->pairs.size())) {
        return fail_invalid("eigenvalue index out of range");
    }
    *out = e->pairs[i].value;
    tl_error.clear();
    return MP_OK;
}

mp_status mp_eigs_values_csv(const mp_eigs* e, char** out) {
    if (!e) return fail_invalid("null eigensolve handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::eigenvalues_csv(e->pairs)); });
}

mp_status mp_eigs_vector_csv(const mp_eigs* e, int i, char** out) {
    if (!e) return fail_invalid("null eigensolve handle");
    if (!out) return fail_invalid("null output pointer");
    if (i < 0 || i >= static_cast<int>(e->pairs.size())) {
        return fail_invalid("eigenvalue index out of range");
    }
    return guarded([&] {
        std::vector<double> field = e->op.scatter(e->pairs[i].vector);
        *out = dup_string(minpart::field_csv(field, e->grid));
    });
}

mp_status mp_eigs_describe(const mp_eigs* e, char** out) {
    if (!e) return fail_invalid("null eigensolve handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(eigs_text(*e)); });
}

mp_status mp_nodal_analyze(const mp_problem* p, mp_nodal** out) {
    if (!p) return fail_invalid("null problem handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] {
        auto h = std::make_unique<mp_nodal>();
        h->grid = resolve_grid(p, "nodal");
        minpart::SymmetricOperator op = minpart::assemble(h->grid, h->grid.domain.bc);
        int index = run_int(p, "index", 6);
        if (index < 1) throw minpart::InvalidArgument("nodal: index is 1-based");
        minpart::EigenOptions eo = eig_opts(p);
        std::vector<minpart::EigenPair> pairs = minpart::lowest_eigenpairs(op, index, eo);
        h->index = index;
        h->lambda = pairs[index - 1].value;
        h->mode = op.scatter(pairs[index - 1].vector);
        h->nodal = minpart::nodal_domains(h->mode, h->grid);
        h->graph = minpart::neighbor_graph(h->nodal.labels, h->grid);
        h->graph_bipartite = minpart::is_bipartite(h->graph).first;
        h->courant = minpart::courant_sharp_check(op, h->grid, index, eo.tol);
        *out = h.release();
    });
}

void mp_nodal_free(mp_nodal* n) { delete n; }

int mp_nodal_domain_count(const mp_nodal* n) { return n ? n->nodal.count : 0; }

int mp_nodal_witness_found(const mp_nodal* n) {
    return (n && n->courant.witness_found) ? 1 : 0;
}

mp_status mp_nodal_mode_csv(const mp_nodal* n, char** out) {
    if (!n) return fail_invalid("null nodal handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::field_csv(n->mode, n->grid)); });
}

mp_status mp_nodal_labels_csv(const mp_nodal* n, char** out) {
    if (!n) return fail_invalid("null nodal handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::labels_csv(n->nodal.labels, n->grid)); });
}

mp_status mp_nodal_labels_pgm(const mp_nodal* n, char** out) {
    if (!n) return fail_invalid("null nodal handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::labels_pgm(n->nodal.labels, n->grid)); });
}

mp_status mp_nodal_graph_text(const mp_nodal* n, char** out) {
    if (!n) return fail_invalid("null nodal handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::graph_edges_text(n->graph)); });
}

mp_status mp_nodal_describe(const mp_nodal* n, char** out) {
    if (!n) return fail_invalid("null nodal handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(nodal_text(*n)); });
}

mp_status mp_partition_run(const mp_problem* p, mp_partition** out) {
    if (!p) return fail_invalid("null problem handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] {
        auto h = std::make_unique<mp_partition>();
        h->grid = resolve_grid(p, "partition");
        h->k = run_int(p, "k", 3);
        h->init_name = run_string(p, "init", "equal_sectors");
        minpart::PartitionInit init = parse_init(h->init_name);
        minpart::IterateOptions io;
        io.max_sweeps = run_int(p, "max_sweeps", io.max_sweeps);
        io.restarts = run_int(p, "restarts", io.restarts);
        io.seed = static_cast<std::uint64_t>(run_ll(p, "seed", static_cast<long long>(io.seed)));
        io.patience = run_int(p, "patience", io.patience);
        io.tol = run_real(p, "tol", io.tol);
        h->opts = io;
        h->state = minpart::iterate(h->grid, h->grid.domain.bc, h->k, init, io);
        h->theory = minpart::compare_with_theory(h->state, h->grid);
        *out = h.release();
    });
}

void mp_partition_free(mp_partition* q) { delete q; }

mp_status mp_partition_lambda(const mp_partition* q, double* out) {
    if (!q) return fail_invalid("null partition handle");
    if (!out) return fail_invalid("null output pointer");
    *out = q->state.lambda_max;
    tl_error.clear();
    return MP_OK;
}

mp_status mp_partition_labels_csv(const mp_partition* q, char** out) {
    if (!q) return fail_invalid("null partition handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::labels_csv(q->state.labels, q->grid)); });
}

mp_status mp_partition_labels_pgm(const mp_partition* q, char** out) {
    if (!q) return fail_invalid("null partition handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::labels_pgm(q->state.labels, q->grid)); });
}

mp_status mp_partition_history_csv(const mp_partition* q, char** out) {
    if (!q) return fail_invalid("null partition handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(minpart::history_csv(q->state.history)); });
}

mp_status mp_partition_describe(const mp_partition* q, char** out) {
    if (!q) return fail_invalid("null partition handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(partition_text(*q)); });
}

int mp_scenario_count(void) {
    return static_cast<int>(minpart::scenario_registry().size());
}

mp_status mp_scenario_id(int i, char** out) {
    if (!out) return fail_invalid("null output pointer");
    const auto& reg = minpart::scenario_registry();
    if (i < 0 || i >= static_cast<int>(reg.size())) {
        return fail_invalid("scenario index out of range");
    }
    return guarded([&] { *out = dup_string(reg[i].first); });
}

mp_status mp_scenario_list(char** out) {
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] {
        std::ostringstream os;
        for (const auto& [id, desc] : minpart::scenario_registry()) {
            os << std::left << std::setw(18) << id << desc << "\n";
        }
        *out = dup_string(os.str());
    });
}

mp_status mp_scenario_run(const char* id, const mp_problem* overrides, mp_sink* sink,
                          mp_report** out) {
    if (!id) return fail_invalid("null scenario id");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] {
        minpart::ScenarioOverrides ov;
        if (overrides) {
            ov.ntheta = run_int(overrides, "ntheta", 0);
            ov.nt = run_int(overrides, "nt", 0);
            ov.restarts = run_int(overrides, "restarts", -1);
            ov.seed = run_ll(overrides, "seed", -1);
            ov.tol = run_real(overrides, "tol", 0.0);
        }
        minpart::ScenarioReport rep =
            minpart::run_scenario(id, ov, sink ? &sink->sink : nullptr);
        *out = new mp_report{std::move(rep)};
    });
}

void mp_report_free(mp_report* r) { delete r; }

int mp_report_pass(const mp_report* r) { return (r && r->rep.pass) ? 1 : 0; }

mp_status mp_report_text(const mp_report* r, char** out) {
    if (!r) return fail_invalid("null report handle");
    if (!out) return fail_invalid("null output pointer");
    return guarded([&] { *out = dup_string(r->rep.text()); });
}

} // extern "C"
