#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "errors.hpp"
#include "op.hpp"

namespace minpart {

namespace {

using EntryMap = std::map<std::pair<int, int>, double>;

void add_sym(EntryMap& m, int p, int q, double v) {
    m[{p, q}] += v;
    if (p != q) m[{q, p}] += v;
}

// Coupled face term coef*(u_a - u_b)^2 between active cells, or the
// face-Dirichlet closure coef*(2 u_a)*u_a/... folded as +2*coef on the
// diagonal (ghost value -u_a across the face).
struct Assembler {
    const Grid& g;
    BcPair bc;
    const std::vector<std::uint8_t>* mask;
    std::vector<int> cell_to_active;
    std::vector<int> active;
    EntryMap entries;

    bool cell_active(int cell) const { return !mask || (*mask)[cell] != 0; }
    int act(int cell) const { return cell_to_active[cell]; }

    double theta_face_coef(int i, int j) const {
        double a = g.is_annulus() ? g.face_a[g.base_col(i)][j] : 1.0;
        return a / (g.htheta * g.htheta);
    }
    double t_face_coef(int i, int j_face) const {
        double d = g.is_annulus() ? g.face_d[g.base_col(i)][j_face] : 1.0;
        return d / (g.ht * g.ht);
    }

    void face_terms() {
        for (int j = 0; j < g.nt; ++j) {
            for (int i = 0; i < g.ntheta; ++i) {
                int c = g.index(i, j);
                // theta face between columns i and i+1 (periodic)
                int e = g.neighbor(c, 0);
                double s = theta_face_coef(i, j);
                bool ca = cell_active(c), ea = cell_active(e);
                if (ca && ea) {
                    add_sym(entries, act(c), act(c), s);
                    add_sym(entries, act(e), act(e), s);
                    add_sym(entries, act(c), act(e), -s);
                } else if (ca) {
                    add_sym(entries, act(c), act(c), 2.0 * s);
                } else if (ea) {
                    add_sym(entries, act(e), act(e), 2.0 * s);
                }
                // t face above (between rows j and j+1) for interior rows
                if (j + 1 < g.nt) {
                    int n = g.neighbor(c, 2);
                    double sd = t_face_coef(i, j + 1);
                    bool na = cell_active(n);
                    if (ca && na) {
                        add_sym(entries, act(c), act(c), sd);
                        add_sym(entries, act(n), act(n), sd);
                        add_sym(entries, act(c), act(n), -sd);
                    } else if (ca) {
                        add_sym(entries, act(c), act(c), 2.0 * sd);
                    } else if (na) {
                        add_sym(entries, act(n), act(n), 2.0 * sd);
                    }
                }
            }
        }
        // Ambient transverse boundaries: Dirichlet closes the half cell with
        // a mirrored ghost, Neumann contributes nothing.
        for (int i = 0; i < g.ntheta; ++i) {
            if (bc.bottom == Bc::dirichlet) {
                int c = g.index(i, 0);
                if (cell_active(c)) add_sym(entries, act(c), act(c), 2.0 * t_face_coef(i, 0));
            }
            if (bc.top == Bc::dirichlet) {
                int c = g.index(i, g.nt - 1);
                if (cell_active(c)) add_sym(entries, act(c), act(c), 2.0 * t_face_coef(i, g.nt));
            }
        }
    }

    // Central-difference stencil for one derivative at cell c, with ghosts
    // folded in: Dirichlet (interface or ambient) reflects to -u_c, Neumann
    // mirrors to +u_c. Entries are (active index, weight).
    using Stencil = std::vector<std::pair<int, double>>;

    Stencil d_theta(int c) const {
        const double h = 0.5 / g.htheta;
        int e = g.neighbor(c, 0), w = g.neighbor(c, 1);
        Stencil s;
        if (cell_active(e)) s.push_back({act(e), h});
        else s.push_back({act(c), -h});
        if (cell_active(w)) s.push_back({act(w), -h});
        else s.push_back({act(c), h});
        return s;
    }

    Stencil d_t(int c) const {
        const double h = 0.5 / g.ht;
        int n = g.neighbor(c, 2), s_ = g.neighbor(c, 3);
        Stencil s;
        if (n >= 0 && cell_active(n)) {
            s.push_back({act(n), h});
        } else if (n < 0 && bc.top == Bc::neumann) {
            s.push_back({act(c), h});
        } else {
            s.push_back({act(c), -h});
        }
        if (s_ >= 0 && cell_active(s_)) {
            s.push_back({act(s_), -h});
        } else if (s_ < 0 && bc.bottom == Bc::neumann) {
            s.push_back({act(c), -h});
        } else {
            s.push_back({act(c), h});
        }
        return s;
    }

    void cross_terms() {
        if (!g.is_annulus()) return;
        for (int j = 0; j < g.nt; ++j) {
            for (int i = 0; i < g.ntheta; ++i) {
                int c = g.index(i, j);
                if (!cell_active(c)) continue;
                double gamma = g.cell_c[g.base_col(i)][j];
                if (gamma == 0.0) continue;
                Stencil st = d_theta(c), stt = d_t(c);
                for (const auto& [p, alpha] : st) {
                    for (const auto& [q, beta] : stt) {
                        double v = gamma * alpha * beta;
                        entries[{p, q}] += v;
                        entries[{q, p}] += v;
                    }
                }
            }
        }
    }
};

SymmetricOperator assemble_impl(const Grid& g, BcPair bc, const std::vector<std::uint8_t>* mask) {
    SymmetricOperator op;
    op.bc = bc;
    op.grid_ntheta = g.ntheta;
    op.grid_nt = g.nt;
    op.degree = g.domain.degree;

    Assembler as{g, bc, mask, std::vector<int>(g.ncells(), -1), {}, {}};
    for (int c = 0; c < g.ncells(); ++c) {
        if (!mask || (*mask)[c]) {
            as.cell_to_active[c] = static_cast<int>(as.active.size());
            as.active.push_back(c);
        }
    }
    if (as.active.empty()) throw InvalidArgument("restrict_to_subdomain: empty mask");
    // A mask covering every cell is the unrestricted operator.
    op.restricted = mask && static_cast<int>(as.active.size()) < g.ncells();
    op.all_neumann_unrestricted =
        !op.restricted && bc.bottom == Bc::neumann && bc.top == Bc::neumann;

    as.face_terms();
    as.cross_terms();

    op.dim = static_cast<int>(as.active.size());
    op.active = std::move(as.active);
    op.cell_to_active = std::move(as.cell_to_active);
    op.w.resize(op.dim);
    for (int r = 0; r < op.dim; ++r) op.w[r] = g.weight(op.active[r]);

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(as.entries.size());
    for (const auto& [key, v] : as.entries) {
        trips.emplace_back(key.first, key.second, v);
    }
    op.A.resize(op.dim, op.dim);
    op.A.setFromTriplets(trips.begin(), trips.end());
    op.A.makeCompressed();
    return op;
}

} // namespace

std::vector<double> SymmetricOperator::scatter(const Eigen::VectorXd& u) const {
    if (u.size() != dim) throw InvalidArgument("scatter: vector size mismatch");
    std::vector<double> out(static_cast<std::size_t>(grid_ntheta) * grid_nt, 0.0);
    if (!is_block()) {
        for (int r = 0; r < dim; ++r) out[active[r]] = u[r];
        return out;
    }
    // Deck block: replicate onto both sheets, renormalized for the cover.
    const int half = grid_ntheta / 2;
    const double scale = 1.0 / std::sqrt(2.0);
    const double sign = block == Block::deck_antisymmetric ? -1.0 : 1.0;
    for (int r = 0; r < dim; ++r) {
        int c = active[r];
        int i = c % grid_ntheta, j = c / grid_ntheta;
        int c2 = j * grid_ntheta + (i + half) % grid_ntheta;
        out[c] = u[r] * scale;
        out[c2] = sign * u[r] * scale;
    }
    return out;
}

SymmetricOperator assemble(const Grid& grid, BcPair bc) {
    return assemble_impl(grid, bc, nullptr);
}

SymmetricOperator restrict_to_subdomain(const SymmetricOperator& op, const Grid& grid,
                                        const std::vector<std::uint8_t>& mask) {
    if (op.is_block()) {
        throw InvalidArgument("restrict_to_subdomain: deck blocks cannot be restricted");
    }
    if (static_cast<int>(mask.size()) != grid.ncells() || grid.ntheta != op.grid_ntheta ||
        grid.nt != op.grid_nt) {
        throw InvalidArgument("restrict_to_subdomain: mask/grid mismatch");
    }
    bool any = std::any_of(mask.begin(), mask.end(), [](std::uint8_t v) { return v != 0; });
    if (!any) throw InvalidArgument("restrict_to_subdomain: empty mask");
    return assemble_impl(grid, op.bc, &mask);
}

std::pair<SymmetricOperator, SymmetricOperator> deck_split(const SymmetricOperator& op,
                                                           const Grid& grid) {
    if (op.degree != 2 || grid.domain.degree != 2) {
        throw InvalidArgument("deck_split: operator must live on a degree-2 grid");
    }
    if (op.restricted || op.is_block()) {
        throw InvalidArgument("deck_split: operator must be unrestricted");
    }
    const int ntheta = grid.ntheta, half = ntheta / 2;

    // Representatives: first sheet columns. rho maps any cell to its
    // representative, sheet_sign is +1 there and -1 on the translate.
    auto col_of = [&](int c) { return c % ntheta; };
    auto rho = [&](int c) {
        int i = col_of(c), j = c / ntheta;
        return j * ntheta + (i % half);
    };

    SymmetricOperator base;
    base.bc = op.bc;
    base.grid_ntheta = ntheta;
    base.grid_nt = grid.nt;
    base.degree = 2;
    base.restricted = false;
    base.all_neumann_unrestricted = false;

    std::vector<int> rep_index(grid.ncells(), -1);
    for (int j = 0; j < grid.nt; ++j) {
        for (int i = 0; i < half; ++i) {
            int c = grid.index(i, j);
            base.active.push_back(c);
            rep_index[c] = static_cast<int>(base.active.size()) - 1;
        }
    }
    base.dim = static_cast<int>(base.active.size());
    base.cell_to_active.assign(grid.ncells(), -1);
    for (int r = 0; r < base.dim; ++r) base.cell_to_active[base.active[r]] = r;
    base.w.resize(base.dim);
    for (int r = 0; r < base.dim; ++r) base.w[r] = grid.weight(base.active[r]);

    SymmetricOperator sym = base, anti = base;
    sym.block = SymmetricOperator::Block::deck_symmetric;
    anti.block = SymmetricOperator::Block::deck_antisymmetric;
    sym.all_neumann_unrestricted = op.all_neumann_unrestricted;

    std::vector<Eigen::Triplet<double>> ts, ta;
    for (int outer = 0; outer < op.A.outerSize(); ++outer) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(op.A, outer); it; ++it) {
            int c = op.active[it.row()];
            if (col_of(c) >= half) continue;
            int c2 = op.active[it.col()];
            int r1 = rep_index[c], r2 = rep_index[rho(c2)];
            double v = it.value();
            ts.emplace_back(r1, r2, v);
            ta.emplace_back(r1, r2, col_of(c2) < half ? v : -v);
        }
    }
    sym.A.resize(sym.dim, sym.dim);
    sym.A.setFromTriplets(ts.begin(), ts.end());
    sym.A.makeCompressed();
    anti.A.resize(anti.dim, anti.dim);
    anti.A.setFromTriplets(ta.begin(), ta.end());
    anti.A.makeCompressed();
    return {std::move(sym), std::move(anti)};
}

} // namespace minpart
