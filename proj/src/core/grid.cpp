#include "grid.hpp"

#include <cmath>
#include <numbers>
#include <queue>

#include "errors.hpp"

namespace minpart {

int Grid::neighbor(int cell, int dir) const {
    int i = col(cell), j = row(cell);
    switch (dir) {
        case 0: return index(i + 1 == ntheta ? 0 : i + 1, j);
        case 1: return index(i == 0 ? ntheta - 1 : i - 1, j);
        case 2: return j + 1 < nt ? index(i, j + 1) : -1;
        case 3: return j > 0 ? index(i, j - 1) : -1;
        default: throw InvalidArgument("neighbor: bad direction");
    }
}

double Grid::weight(int cell) const {
    if (!is_annulus()) return 1.0;
    return cell_w[base_col(col(cell))][row(cell)];
}

Grid build_grid(const DomainSpec& domain, int ntheta, int nt) {
    if (ntheta < 8) throw InvalidArgument("build_grid: ntheta must be >= 8");
    if (nt < 2) throw InvalidArgument("build_grid: nt must be >= 2");
    if (ntheta % (2 * domain.degree) != 0) {
        throw InvalidArgument("build_grid: ntheta must be divisible by 2*degree");
    }

    Grid g;
    g.domain = domain;
    g.ntheta = ntheta;
    g.nt = nt;
    g.htheta = static_cast<double>(domain.degree) / ntheta;
    g.ht = domain.is_annulus() ? 1.0 / nt : domain.b / nt;

    if (!domain.is_annulus()) return g;

    const int nb = g.base_ntheta();
    const double two_pi = 2.0 * std::numbers::pi;
    const double b = domain.b;

    // R and its partials in mapped coordinates. t-derivative is independent
    // of t; all angular evaluations use the base-sheet angle.
    auto R = [&](double th, double t) {
        double h1 = domain.h1.eval(th), h2 = domain.h2.eval(th);
        return 1.0 + b * (h1 + t * (h2 - h1));
    };
    auto Rt = [&](double th) {
        return b * (domain.h2.eval(th) - domain.h1.eval(th));
    };
    auto Rth = [&](double th, double t) {
        double d1 = domain.h1.deriv(th), d2 = domain.h2.deriv(th);
        return b * (d1 + t * (d2 - d1));
    };

    // Validity: h1 < h2 at every sampled angle (cell centers and faces).
    for (int i = 0; i <= 2 * nb; ++i) {
        double th = 0.5 * i * g.htheta;
        if (domain.h1.eval(th) >= domain.h2.eval(th)) {
            throw InvalidArgument("build_grid: invalid domain, profile h1 >= h2 at theta=" +
                                  std::to_string(th));
        }
        if (R(th, 0.0) <= 0.0) {
            throw InvalidArgument("build_grid: invalid domain, inner radius <= 0 at theta=" +
                                  std::to_string(th));
        }
    }

    g.face_a.assign(nb, std::vector<double>(nt));
    g.face_d.assign(nb, std::vector<double>(nt + 1));
    g.cell_c.assign(nb, std::vector<double>(nt));
    g.cell_w.assign(nb, std::vector<double>(nt));

    for (int i = 0; i < nb; ++i) {
        const double th_c = (i + 0.5) * g.htheta;
        const double th_f = (i + 1.0) * g.htheta; // face between columns i and i+1
        for (int j = 0; j < nt; ++j) {
            const double t_c = (j + 0.5) * g.ht;
            {
                double r = R(th_f, t_c), rt = Rt(th_f);
                g.face_a[i][j] = rt / (two_pi * r);
            }
            {
                double r = R(th_c, t_c), rt = Rt(th_c), rth = Rth(th_c, t_c);
                g.cell_c[i][j] = -rth / (two_pi * r);
                g.cell_w[i][j] = two_pi * r * rt;
            }
        }
        for (int j = 0; j <= nt; ++j) {
            const double t_f = j * g.ht;
            double r = R(th_c, t_f), rt = Rt(th_c), rth = Rth(th_c, t_f);
            g.face_d[i][j] = (rth * rth + 4.0 * std::numbers::pi * std::numbers::pi * r * r) /
                             (two_pi * r * rt);
        }
    }
    return g;
}

Grid make_cover_grid(const Grid& base) {
    if (base.domain.degree != 1) {
        throw InvalidArgument("make_cover_grid: base grid must have degree 1");
    }
    DomainSpec d = base.domain;
    d.degree = 2;
    return build_grid(d, 2 * base.ntheta, base.nt);
}

std::vector<double> lift_field(const Grid& base, const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != base.ncells()) {
        throw InvalidArgument("lift_field: field size does not match grid");
    }
    std::vector<double> out(2 * f.size());
    for (int j = 0; j < base.nt; ++j) {
        for (int i = 0; i < 2 * base.ntheta; ++i) {
            out[j * 2 * base.ntheta + i] = f[base.index(i % base.ntheta, j)];
        }
    }
    return out;
}

std::vector<std::uint8_t> lift_mask(const Grid& base, const std::vector<std::uint8_t>& mask) {
    if (static_cast<int>(mask.size()) != base.ncells()) {
        throw InvalidArgument("lift_mask: mask size does not match grid");
    }
    std::vector<std::uint8_t> out(2 * mask.size());
    for (int j = 0; j < base.nt; ++j) {
        for (int i = 0; i < 2 * base.ntheta; ++i) {
            out[j * 2 * base.ntheta + i] = mask[base.index(i % base.ntheta, j)];
        }
    }
    return out;
}

std::vector<int> deck_permutation(const Grid& cover) {
    if (cover.domain.degree != 2) {
        throw InvalidArgument("deck_permutation: grid must have degree 2");
    }
    const int half = cover.ntheta / 2;
    std::vector<int> p(cover.ncells());
    for (int j = 0; j < cover.nt; ++j) {
        for (int i = 0; i < cover.ntheta; ++i) {
            p[cover.index(i, j)] = cover.index((i + half) % cover.ntheta, j);
        }
    }
    return p;
}

int connected_components(const Grid& grid, const std::vector<std::uint8_t>& mask,
                         std::vector<int>* labels) {
    if (static_cast<int>(mask.size()) != grid.ncells()) {
        throw InvalidArgument("connected_components: mask size does not match grid");
    }
    std::vector<int> lab(mask.size(), -1);
    int count = 0;
    for (int start = 0; start < grid.ncells(); ++start) {
        if (!mask[start] || lab[start] >= 0) continue;
        std::queue<int> q;
        q.push(start);
        lab[start] = count;
        while (!q.empty()) {
            int c = q.front();
            q.pop();
            for (int dir = 0; dir < 4; ++dir) {
                int nb = grid.neighbor(c, dir);
                if (nb >= 0 && mask[nb] && lab[nb] < 0) {
                    lab[nb] = count;
                    q.push(nb);
                }
            }
        }
        ++count;
    }
    if (labels) *labels = std::move(lab);
    return count;
}

} // namespace minpart
