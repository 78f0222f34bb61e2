#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "eigensolve.hpp"
#include "grid.hpp"
#include "op.hpp"

namespace minpart {

// Nodal decomposition of a grid function. Components are maximal connected
// sets of constant sign under grid adjacency (theta wraps); adjacent
// components carry opposite signs.
struct NodalResult {
    std::vector<int> labels; // per cell, 0..count-1, in first-occurrence order
    int count = 0;
    std::vector<int> sign; // per component, +1 or -1
};

// Cells with |u| <= dead_band * ||u||_inf join the neighboring component
// with the largest shared-face count (ties to the lower component id,
// synchronous rounds). Throws InvalidArgument when every cell sits inside
// the dead band.
NodalResult nodal_domains(const std::vector<double>& u, const Grid& grid,
                          double dead_band = 1e-6);

// Partition adjacency: parts are neighbors when they share more than
// `threshold` interface faces (single-corner grazes are not an interface).
struct NeighborGraph {
    int k = 0;
    std::vector<std::array<int, 3>> edges; // (i, j, shared faces), i < j
    bool adjacent(int i, int j) const;
};

NeighborGraph neighbor_graph(const std::vector<int>& labels, const Grid& grid,
                             int threshold = 2);

// BFS 2-coloring; colors per vertex when bipartite, empty otherwise.
std::pair<bool, std::vector<int>> is_bipartite(const NeighborGraph& g);

// Courant sharpness probe at eigenvalue index k (1-based). Solves past k,
// resolves the cluster at lambda_k, counts nodal domains of every cluster
// basis vector and of a 24-angle rotation sweep through each degenerate
// pair; a witness is any sampled vector with mu = k. `ambiguous` flags a
// cluster whose upper end stays outside the solve window even after
// extension. Works on full-domain and deck-block operators (block indices
// count within the block); restricted operators are rejected.
struct CourantReport {
    int k = 0;
    double lambda_k = 0.0;
    int cluster_begin = 0; // 1-based, inclusive
    int cluster_end = 0;
    bool ambiguous = false;
    std::vector<int> mu_basis; // one per cluster basis vector
    int best_mu = 0;           // max over basis vectors and rotation sweep
    int sampled_angles = 0;
    bool witness_found = false;
};

CourantReport courant_sharp_check(const SymmetricOperator& op, const Grid& grid, int k,
                                  double tol = 1e-8);

// Homotopy type of a connected mask on a degree-1 grid, decided on the
// double cover: two lifted components = contractible, one = noncontractible.
enum class Homotopy { contractible, noncontractible };

Homotopy homotopy_class(const std::vector<std::uint8_t>& mask, const Grid& grid);

} // namespace minpart
