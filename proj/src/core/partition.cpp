#include "partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "analytic.hpp"
#include "errors.hpp"

namespace minpart {

namespace {

constexpr double kPi = 3.14159265358979323846;

int validate_labels(const std::vector<int>& labels, const Grid& g) {
    if (static_cast<int>(labels.size()) != g.ncells())
        throw InvalidArgument("partition: label field does not match the grid");
    int k = 0;
    for (int l : labels) {
        if (l < 0) throw InvalidArgument("partition: negative label");
        k = std::max(k, l + 1);
    }
    std::vector<int> present(k, 0);
    for (int l : labels) present[l] = 1;
    for (int l = 0; l < k; ++l)
        if (!present[l])
            throw InvalidArgument("partition: label " + std::to_string(l) + " has no cells");
    return k;
}

std::vector<std::uint8_t> part_mask(const std::vector<int>& labels, int part) {
    std::vector<std::uint8_t> m(labels.size(), 0);
    for (std::size_t c = 0; c < labels.size(); ++c) m[c] = labels[c] == part;
    return m;
}

std::vector<std::uint8_t> dilate(const Grid& g, const std::vector<std::uint8_t>& m) {
    std::vector<std::uint8_t> out = m;
    for (int c = 0; c < g.ncells(); ++c) {
        if (!m[c]) continue;
        for (int dir = 0; dir < 4; ++dir) {
            int nb = g.neighbor(c, dir);
            if (nb >= 0) out[nb] = 1;
        }
    }
    return out;
}

bool all_parts_present(const std::vector<int>& labels, int k) {
    std::vector<int> present(k, 0);
    for (int l : labels) present[l] = 1;
    for (int l = 0; l < k; ++l)
        if (!present[l]) return false;
    return true;
}

// Keep each part's largest component (earliest one on ties), then hand the
// stray cells to adjacent parts by largest shared interface, lower id on
// ties, in synchronous rounds.
void repair_connectivity(std::vector<int>& labels, const Grid& g, int k) {
    const int n = g.ncells();
    for (int part = 0; part < k; ++part) {
        auto mask = part_mask(labels, part);
        std::vector<int> comp;
        int ncomp = connected_components(g, mask, &comp);
        if (ncomp <= 1) continue;
        std::vector<int> size(ncomp, 0);
        for (int c = 0; c < n; ++c)
            if (comp[c] >= 0) ++size[comp[c]];
        int keep = 0;
        for (int s = 1; s < ncomp; ++s)
            if (size[s] > size[keep]) keep = s;
        for (int c = 0; c < n; ++c)
            if (comp[c] >= 0 && comp[c] != keep) labels[c] = -1;
    }
    for (int round = 0; round <= n; ++round) {
        std::vector<std::pair<int, int>> adopt;
        for (int c = 0; c < n; ++c) {
            if (labels[c] >= 0) continue;
            int ids[4], faces[4], ncand = 0;
            for (int dir = 0; dir < 4; ++dir) {
                int nb = g.neighbor(c, dir);
                if (nb < 0 || labels[nb] < 0) continue;
                int f = -1;
                for (int s = 0; s < ncand; ++s)
                    if (ids[s] == labels[nb]) f = s;
                if (f < 0) {
                    ids[ncand] = labels[nb];
                    faces[ncand++] = 1;
                } else {
                    ++faces[f];
                }
            }
            int best = -1, best_faces = 0;
            for (int s = 0; s < ncand; ++s)
                if (faces[s] > best_faces || (faces[s] == best_faces && ids[s] < best)) {
                    best = ids[s];
                    best_faces = faces[s];
                }
            if (best >= 0) adopt.emplace_back(c, best);
        }
        if (adopt.empty()) break;
        for (auto [c, id] : adopt) labels[c] = id;
    }
}

std::vector<int> init_labels(const Grid& g, int k, PartitionInit kind, std::uint64_t seed) {
    const int n = g.ncells();
    std::vector<int> labels(n, 0);
    switch (kind) {
    case PartitionInit::equal_sectors:
        for (int c = 0; c < n; ++c)
            labels[c] = static_cast<int>(static_cast<long long>(g.col(c)) * k / g.ntheta);
        break;
    case PartitionInit::equal_bands:
        for (int c = 0; c < n; ++c)
            labels[c] = static_cast<int>(static_cast<long long>(g.row(c)) * k / g.nt);
        break;
    case PartitionInit::random_voronoi: {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        std::vector<int> sites;
        while (static_cast<int>(sites.size()) < k) {
            int s = pick(rng);
            if (std::find(sites.begin(), sites.end(), s) == sites.end()) sites.push_back(s);
        }
        for (int c = 0; c < n; ++c) {
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < k; ++i) {
                int dcols = std::abs(g.col(c) - g.col(sites[i]));
                dcols = std::min(dcols, g.ntheta - dcols);
                double dx = dcols * g.htheta;
                double dy = (g.row(c) - g.row(sites[i])) * g.ht;
                double d2 = dx * dx + dy * dy;
                if (d2 < best) { // strict: ties stay with the lower part id
                    best = d2;
                    labels[c] = i;
                }
            }
        }
        repair_connectivity(labels, g, k);
        break;
    }
    }
    return labels;
}

PartitionEnergies energies_with(const SymmetricOperator& full, const std::vector<int>& labels,
                                const Grid& grid, double tol) {
    int k = validate_labels(labels, grid);
    EigenOptions eo;
    eo.tol = tol;
    PartitionEnergies out;
    out.energies.resize(k);
    for (int part = 0; part < k; ++part) {
        auto mask = part_mask(labels, part);
        std::vector<int> comp;
        int ncomp = connected_components(grid, mask, &comp);
        if (ncomp == 1) {
            out.energies[part] = groundstate(restrict_to_subdomain(full, grid, mask), eo).value;
        } else {
            out.disconnected_parts.push_back(part);
            double best = std::numeric_limits<double>::infinity();
            for (int cc = 0; cc < ncomp; ++cc) {
                std::vector<std::uint8_t> sub(grid.ncells(), 0);
                for (int c = 0; c < grid.ncells(); ++c) sub[c] = comp[c] == cc;
                best = std::min(best,
                                groundstate(restrict_to_subdomain(full, grid, sub), eo).value);
            }
            out.energies[part] = best;
        }
    }
    out.lambda_max = *std::max_element(out.energies.begin(), out.energies.end());
    return out;
}

struct RunOutcome {
    bool vanished = false;
    std::vector<int> best_labels;
    double best_lambda = std::numeric_limits<double>::infinity();
    std::vector<SweepRecord> history;
    int sweeps = 0;
};

RunOutcome run_once(const Grid& g, BcPair bc, int k, std::vector<int> labels,
                    const IterateOptions& opts) {
    const int n = g.ncells();
    SymmetricOperator full = assemble(g, bc);
    EigenOptions eo;
    eo.tol = opts.tol;
    RunOutcome out;
    std::vector<double> logrho(k, 0.0);
    int moved = 0;
    int last_improve = 0;

    for (int sweep = 0;; ++sweep) {
        PartitionEnergies en = energies_with(full, labels, g, opts.tol);
        out.history.push_back({en.lambda_max, moved});
        out.sweeps = sweep;
        if (en.lambda_max < out.best_lambda * (1.0 - 1e-12)) {
            out.best_lambda = en.lambda_max;
            out.best_labels = labels;
            last_improve = sweep;
        }
        double lo = *std::min_element(en.energies.begin(), en.energies.end());
        double spread = (en.lambda_max - lo) / en.lambda_max;
        // A label fixed point only counts once the energies have leveled;
        // until then the scale factors keep building pressure to move.
        if (sweep > 0 && moved == 0 && spread <= 0.04) break;
        if (sweep - last_improve >= opts.patience) break;
        if (sweep >= opts.max_sweeps) break;

        double meanlog = 0.0;
        for (double e : en.energies) meanlog += std::log(e);
        meanlog /= k;
        for (int i = 0; i < k; ++i) {
            logrho[i] = 0.98 * logrho[i] + (std::log(en.energies[i]) - meanlog);
            logrho[i] = std::clamp(logrho[i], -30.0, 30.0);
        }

        // Groundstates on one-cell dilated supports, sup-normalized, so a
        // part competes for the first ring of cells beyond its interface.
        std::vector<std::vector<double>> phi(k);
        std::vector<double> scale(k);
        for (int i = 0; i < k; ++i) {
            auto sub = restrict_to_subdomain(full, g, dilate(g, part_mask(labels, i)));
            Groundstate gs = groundstate(sub, eo);
            phi[i] = sub.scatter(gs.phi);
            double peak = *std::max_element(phi[i].begin(), phi[i].end());
            for (double& v : phi[i]) v /= peak;
            scale[i] = std::exp(logrho[i]);
        }

        std::vector<int> prev = labels;
        for (int c = 0; c < n; ++c) {
            int best = 0;
            double best_score = -1.0;
            for (int i = 0; i < k; ++i) {
                double s = phi[i][c] > 0.0 ? scale[i] * phi[i][c] : 0.0;
                if (s > best_score) {
                    best_score = s;
                    best = i;
                }
            }
            labels[c] = best;
        }

        for (int round = 0; round < 4; ++round) {
            if (!all_parts_present(labels, k)) {
                out.vanished = true;
                return out;
            }
            repair_connectivity(labels, g, k);
            if (absorb_slits(labels, g) == 0) break;
        }
        if (!all_parts_present(labels, k)) {
            out.vanished = true;
            return out;
        }
        // Net change over the whole sweep map, repairs included; zero means
        // a genuine fixed point.
        moved = 0;
        for (int c = 0; c < n; ++c) moved += labels[c] != prev[c];
    }
    return out;
}

} // namespace

PartitionEnergies partition_energy(const std::vector<int>& labels, const Grid& grid, BcPair bc,
                                   double tol) {
    if (tol <= 0.0) throw InvalidArgument("partition_energy: tolerance must be positive");
    return energies_with(assemble(grid, bc), labels, grid, tol);
}

PartitionState iterate(const Grid& grid, BcPair bc, int k, PartitionInit init,
                       const IterateOptions& opts) {
    if (k < 2) throw InvalidArgument("iterate: need at least two parts");
    if (grid.ncells() < 16 * k)
        throw InvalidArgument("iterate: grid too coarse to give every part 16 cells");
    if (opts.max_sweeps < 1 || opts.restarts < 0 || opts.patience < 1 || opts.tol <= 0.0)
        throw InvalidArgument("iterate: bad options");

    RunOutcome best;
    int best_run = -1;
    int best_sweeps = 0;
    std::vector<SweepRecord> best_history;
    for (int r = 0; r <= opts.restarts; ++r) {
        PartitionInit kind = r == 0 ? init : PartitionInit::random_voronoi;
        RunOutcome ro;
        ro.vanished = true;
        for (int attempt = 0; attempt < 6 && ro.vanished; ++attempt) {
            std::vector<int> labels0 = init_labels(grid, k, kind, opts.seed + r + 104729ull * attempt);
            if (!all_parts_present(labels0, k)) {
                if (kind != PartitionInit::random_voronoi)
                    throw InvalidArgument("iterate: grid cannot seat the requested init");
                continue;
            }
            ro = run_once(grid, bc, k, labels0, opts);
            kind = PartitionInit::random_voronoi; // fresh seeds after a vanish
        }
        if (ro.vanished) throw NumericalError("iterate: a part kept vanishing across restarts");
        if (best_run < 0 || ro.best_lambda < best.best_lambda) {
            best_sweeps = ro.sweeps;
            best_history = std::move(ro.history);
            best.best_lambda = ro.best_lambda;
            best.best_labels = std::move(ro.best_labels);
            best_run = r;
        }
    }

    PartitionState st;
    st.labels = std::move(best.best_labels);
    st.k = k;
    PartitionEnergies en = partition_energy(st.labels, grid, bc, opts.tol);
    st.energies = en.energies;
    st.lambda_max = en.lambda_max;
    st.history = std::move(best_history);
    st.restart_index = best_run;
    st.sweeps = best_sweeps;
    return st;
}

bool property_B_check(const PartitionState& state, const Grid& grid) {
    if (grid.domain.degree != 1)
        throw InvalidArgument("property_B_check: needs a degree-1 grid");
    int k = validate_labels(state.labels, grid);
    if (k != state.k) throw InvalidArgument("property_B_check: state part count is stale");
    for (int i = 0; i < k; ++i) {
        auto mask = part_mask(state.labels, i);
        if (connected_components(grid, mask) != 1) return false;
        if (homotopy_class(mask, grid) == Homotopy::noncontractible) return false;
    }
    return true;
}

std::vector<bool> niceness_check(const std::vector<int>& labels, const Grid& grid) {
    int k = validate_labels(labels, grid);
    std::vector<bool> nice(k, true);
    for (int c = 0; c < grid.ncells(); ++c) {
        int a = grid.neighbor(c, 0), b = grid.neighbor(c, 1);
        if (a >= 0 && b >= 0 && labels[a] == labels[b] && labels[a] != labels[c])
            nice[labels[a]] = false;
        int u = grid.neighbor(c, 2), d = grid.neighbor(c, 3);
        if (u >= 0 && d >= 0 && labels[u] == labels[d] && labels[u] != labels[c])
            nice[labels[u]] = false;
    }
    return nice;
}

int absorb_slits(std::vector<int>& labels, const Grid& grid) {
    validate_labels(labels, grid);
    int total = 0;
    // Synchronous rounds; capped so adversarial alternating patterns (a
    // checkerboard is all slits) cannot cycle forever.
    for (int round = 0; round < 32; ++round) {
        std::vector<std::pair<int, int>> moves;
        for (int c = 0; c < grid.ncells(); ++c) {
            int target = -1;
            int a = grid.neighbor(c, 0), b = grid.neighbor(c, 1);
            if (a >= 0 && b >= 0 && labels[a] == labels[b] && labels[a] != labels[c])
                target = labels[a];
            int u = grid.neighbor(c, 2), d = grid.neighbor(c, 3);
            if (u >= 0 && d >= 0 && labels[u] == labels[d] && labels[u] != labels[c] &&
                (target < 0 || labels[u] < target))
                target = labels[u];
            if (target >= 0) moves.emplace_back(c, target);
        }
        if (moves.empty()) break;
        for (auto [c, t] : moves) labels[c] = t;
        total += static_cast<int>(moves.size());
    }
    return total;
}

TheoryReport compare_with_theory(const PartitionState& state, const Grid& grid) {
    TheoryReport rep;
    rep.k = validate_labels(state.labels, grid);
    if (rep.k != state.k) throw InvalidArgument("compare_with_theory: state part count is stale");
    rep.b = grid.domain.b;
    rep.lambda = state.lambda_max;

    if (rep.k == 3) {
        auto p = analytic::predicted_l3(grid.domain.b_exact);
        rep.reference = p.value;
        rep.reference_is_exact = p.is_exact;
    } else if (rep.k > 3 && rep.k % 2 == 1) {
        auto t = analytic::thin_threshold(rep.k);
        rep.reference = static_cast<double>(rep.k) * rep.k * kPi * kPi;
        rep.reference_is_exact = grid.domain.b <= t.bound;
    } else {
        rep.reference = static_cast<double>(rep.k) * rep.k * kPi * kPi; // equal-sector bound
        rep.reference_is_exact = false;
    }
    rep.rel_gap = (rep.lambda - rep.reference) / rep.reference;

    rep.bipartite = is_bipartite(neighbor_graph(state.labels, grid)).first;
    if (grid.domain.degree == 1) rep.property_b = property_B_check(state, grid);
    for (bool nice : niceness_check(state.labels, grid))
        if (!nice) ++rep.nonnice_parts;

    rep.sector_like = true;
    std::vector<int> col_label(grid.ntheta);
    for (int i = 0; i < grid.ntheta && rep.sector_like; ++i) {
        col_label[i] = state.labels[grid.index(i, 0)];
        for (int j = 1; j < grid.nt; ++j)
            if (state.labels[grid.index(i, j)] != col_label[i]) {
                rep.sector_like = false;
                break;
            }
    }
    if (rep.sector_like) {
        std::vector<int> cuts;
        for (int i = 0; i < grid.ntheta; ++i)
            if (col_label[i] != col_label[(i + 1) % grid.ntheta]) cuts.push_back(i + 1);
        if (static_cast<int>(cuts.size()) == rep.k) {
            double s = static_cast<double>(grid.ntheta) / rep.k;
            double best = std::numeric_limits<double>::infinity();
            for (int a = 0; a < rep.k; ++a) {
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                for (int l = 0; l < rep.k; ++l) {
                    double meas = cuts[(a + l) % rep.k] + (a + l >= rep.k ? grid.ntheta : 0);
                    double r = meas - l * s;
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                }
                best = std::min(best, (hi - lo) / 2.0);
            }
            rep.max_cut_offset_cells = best;
        }
    }
    return rep;
}

} // namespace minpart
