#include "nodal.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>

#include "errors.hpp"

namespace minpart {

namespace {

// Connected components of {c : sign[c] == want} seeded in cell order, so
// provisional ids are deterministic.
int sign_components(const Grid& g, const std::vector<int>& sign, std::vector<int>* prov) {
    const int n = g.ncells();
    prov->assign(n, -1);
    int np = 0;
    std::queue<int> q;
    for (int s = 0; s < n; ++s) {
        if (sign[s] == 0 || (*prov)[s] >= 0) continue;
        (*prov)[s] = np;
        q.push(s);
        while (!q.empty()) {
            int c = q.front();
            q.pop();
            for (int dir = 0; dir < 4; ++dir) {
                int nb = g.neighbor(c, dir);
                if (nb >= 0 && (*prov)[nb] < 0 && sign[nb] == sign[s]) {
                    (*prov)[nb] = np;
                    q.push(nb);
                }
            }
        }
        ++np;
    }
    return np;
}

} // namespace

NodalResult nodal_domains(const std::vector<double>& u, const Grid& grid, double dead_band) {
    const int n = grid.ncells();
    if (static_cast<int>(u.size()) != n)
        throw InvalidArgument("nodal_domains: field size does not match the grid");
    if (dead_band < 0.0) throw InvalidArgument("nodal_domains: dead band must be nonnegative");

    double peak = 0.0;
    for (double v : u) peak = std::max(peak, std::abs(v));
    double band = dead_band * peak;

    std::vector<int> sign(n, 0);
    int strong = 0;
    for (int c = 0; c < n; ++c) {
        if (u[c] > band)
            sign[c] = 1, ++strong;
        else if (u[c] < -band)
            sign[c] = -1, ++strong;
    }
    if (strong == 0)
        throw InvalidArgument("nodal_domains: degenerate input, every cell lies inside the dead band");

    std::vector<int> prov;
    int np = sign_components(grid, sign, &prov);
    std::vector<int> prov_sign(np, 0);
    for (int c = 0; c < n; ++c)
        if (sign[c] != 0) prov_sign[prov[c]] = sign[c];

    // Dead cells join the adjacent component sharing the most faces, lower
    // id on ties; synchronous rounds so the order of scan cannot matter.
    // The grid is connected, so every round with work left assigns a cell.
    int unassigned = n - strong;
    while (unassigned > 0) {
        std::vector<std::pair<int, int>> adopt;
        for (int c = 0; c < n; ++c) {
            if (prov[c] >= 0) continue;
            int ids[4], faces[4], ncand = 0;
            for (int dir = 0; dir < 4; ++dir) {
                int nb = grid.neighbor(c, dir);
                if (nb < 0 || prov[nb] < 0) continue;
                int id = prov[nb], f = -1;
                for (int s = 0; s < ncand; ++s)
                    if (ids[s] == id) f = s;
                if (f < 0) {
                    ids[ncand] = id;
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
        for (auto [c, id] : adopt) {
            prov[c] = id;
            sign[c] = prov_sign[id];
        }
        unassigned -= static_cast<int>(adopt.size());
    }

    // Adoption can butt same-sign components against each other; the final
    // labels are connected components of the sign field itself.
    NodalResult res;
    res.count = sign_components(grid, sign, &res.labels);
    res.sign.resize(res.count);
    for (int c = 0; c < n; ++c) res.sign[res.labels[c]] = sign[c];
    return res;
}

bool NeighborGraph::adjacent(int i, int j) const {
    for (const auto& e : edges)
        if ((e[0] == i && e[1] == j) || (e[0] == j && e[1] == i)) return true;
    return false;
}

NeighborGraph neighbor_graph(const std::vector<int>& labels, const Grid& grid, int threshold) {
    const int n = grid.ncells();
    if (static_cast<int>(labels.size()) != n)
        throw InvalidArgument("neighbor_graph: label field does not match the grid");
    int k = 0;
    for (int l : labels) {
        if (l < 0) throw InvalidArgument("neighbor_graph: negative label");
        k = std::max(k, l + 1);
    }
    std::vector<int> present(k, 0);
    for (int l : labels) present[l] = 1;
    for (int l = 0; l < k; ++l)
        if (!present[l])
            throw InvalidArgument("neighbor_graph: invalid partition, label " + std::to_string(l) +
                                  " has no cells");

    std::vector<std::vector<int>> faces(k, std::vector<int>(k, 0));
    for (int c = 0; c < n; ++c) {
        for (int dir : {0, 2}) { // +theta and +t count every face once
            int nb = grid.neighbor(c, dir);
            if (nb < 0 || labels[nb] == labels[c]) continue;
            int a = std::min(labels[c], labels[nb]);
            int b = std::max(labels[c], labels[nb]);
            ++faces[a][b];
        }
    }

    NeighborGraph g;
    g.k = k;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (faces[a][b] > threshold) g.edges.push_back({a, b, faces[a][b]});
    return g;
}

std::pair<bool, std::vector<int>> is_bipartite(const NeighborGraph& g) {
    std::vector<std::vector<int>> adj(g.k);
    for (const auto& e : g.edges) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    std::vector<int> color(g.k, -1);
    std::queue<int> q;
    for (int s = 0; s < g.k; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v]) {
                if (color[w] < 0) {
                    color[w] = 1 - color[v];
                    q.push(w);
                } else if (color[w] == color[v]) {
                    return {false, {}};
                }
            }
        }
    }
    return {true, std::move(color)};
}

CourantReport courant_sharp_check(const SymmetricOperator& op, const Grid& grid, int k,
                                  double tol) {
    if (op.restricted)
        throw InvalidArgument("courant_sharp_check: needs a full-domain operator, not a restriction");
    if (k < 1 || k > op.dim)
        throw InvalidArgument("courant_sharp_check: index out of range");

    EigenOptions eo;
    eo.tol = tol;

    // Resolve the cluster at lambda_k; widen the window once if the cluster
    // runs past it, then report the ambiguity instead of guessing.
    int m = std::min(op.dim, k + 5);
    std::vector<EigenPair> pairs;
    int lo = 0, hi = 0;
    bool open_ended = false;
    for (;;) {
        pairs = lowest_eigenpairs(op, m, eo);
        int cid = pairs[k - 1].cluster;
        lo = hi = k - 1;
        while (lo > 0 && pairs[lo - 1].cluster == cid) --lo;
        while (hi + 1 < m && pairs[hi + 1].cluster == cid) ++hi;
        open_ended = (hi == m - 1) && (m < op.dim);
        if (!open_ended || m >= std::min(op.dim, k + 10)) break;
        m = std::min(op.dim, k + 10);
    }

    CourantReport rep;
    rep.k = k;
    rep.lambda_k = pairs[k - 1].value;
    rep.cluster_begin = lo + 1;
    rep.cluster_end = hi + 1;
    rep.ambiguous = open_ended;

    auto mu_of = [&](const Eigen::VectorXd& v) {
        return nodal_domains(op.scatter(v), grid).count;
    };

    rep.best_mu = 0;
    for (int i = lo; i <= hi; ++i) {
        int mu = mu_of(pairs[i].vector);
        rep.mu_basis.push_back(mu);
        rep.best_mu = std::max(rep.best_mu, mu);
        if (mu == k) rep.witness_found = true;
    }

    constexpr int kAngles = 24;
    rep.sampled_angles = hi > lo ? kAngles : 0;
    for (int a = lo; a <= hi; ++a) {
        for (int b = a + 1; b <= hi; ++b) {
            for (int s = 1; s < kAngles; ++s) { // s = 0 is the basis vector itself
                double ang = M_PI * s / kAngles; // half turn: -v has the same count
                Eigen::VectorXd v =
                    std::cos(ang) * pairs[a].vector + std::sin(ang) * pairs[b].vector;
                int mu = mu_of(v);
                rep.best_mu = std::max(rep.best_mu, mu);
                if (mu == k) rep.witness_found = true;
            }
        }
    }
    return rep;
}

Homotopy homotopy_class(const std::vector<std::uint8_t>& mask, const Grid& grid) {
    if (grid.domain.degree != 1)
        throw InvalidArgument("homotopy_class: expects a degree-1 grid");
    if (static_cast<int>(mask.size()) != grid.ncells())
        throw InvalidArgument("homotopy_class: mask size does not match the grid");
    if (connected_components(grid, mask) != 1)
        throw InvalidArgument("homotopy_class: mask must be connected");

    Grid cover = make_cover_grid(grid);
    std::vector<std::uint8_t> lifted = lift_mask(grid, mask);
    int comps = connected_components(cover, lifted);
    return comps == 2 ? Homotopy::contractible : Homotopy::noncontractible;
}

} // namespace minpart
