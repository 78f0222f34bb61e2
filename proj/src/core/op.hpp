#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <vector>

#include "grid.hpp"

namespace minpart {

// Discrete negative Laplacian restricted to the active cells, in units of
// 1/length^2. The eigenproblem it defines is A u = lambda diag(w) u with w
// the cell-area density relative to the uniform mapped cell volume (w = 1
// on strips); inner products and normalizations are w-weighted throughout.
//
// A is exactly symmetric by construction. With all-Neumann conditions and
// no restriction its rows sum to zero and the constant vector spans the
// kernel.
struct SymmetricOperator {
    enum class Block { none, deck_symmetric, deck_antisymmetric };

    int dim = 0;
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd w;
    std::vector<int> active;         // active cell id per matrix row (grid order)
    std::vector<int> cell_to_active; // -1 where inactive
    BcPair bc;
    int grid_ntheta = 0;
    int grid_nt = 0;
    int degree = 1;
    bool restricted = false;
    bool all_neumann_unrestricted = false;
    Block block = Block::none;

    bool is_block() const { return block != Block::none; }

    // Active-vector -> full-grid vector (zero on inactive cells). For deck
    // blocks the result lives on the cover grid, both sheets filled.
    std::vector<double> scatter(const Eigen::VectorXd& u) const;
};

// Full-domain operator with the ambient conditions bc on the transverse
// boundaries (the angular direction is periodic).
SymmetricOperator assemble(const Grid& grid, BcPair bc);

// Operator on the masked cells: faces to unmasked cells become Dirichlet,
// outer-boundary faces keep the ambient condition of `op`.
SymmetricOperator restrict_to_subdomain(const SymmetricOperator& op, const Grid& grid,
                                        const std::vector<std::uint8_t>& mask);

// Splits an unrestricted degree-2 operator into deck-symmetric and
// deck-antisymmetric half-dimension blocks; their spectra interleave to the
// full spectrum and the symmetric block reproduces the degree-1 spectrum.
std::pair<SymmetricOperator, SymmetricOperator> deck_split(const SymmetricOperator& op,
                                                           const Grid& grid);

} // namespace minpart
