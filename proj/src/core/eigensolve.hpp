#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "op.hpp"

namespace minpart {

// One converged eigenpair. vector lives on active cells with unit norm in
// the cell-area weighted inner product. residual is the per-vector relative
// residual ||A u - lambda u|| / (||u|| max(1, |lambda|)) in that metric.
struct EigenPair {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;
    int cluster = 0; // values with relative gap < 1e-6 share a cluster id
};

struct EigenOptions {
    double tol = 1e-8;
    std::uint64_t seed = 12345; // starting block; fixed seed => deterministic
    int max_block_rounds = 400;
};

// Lowest m eigenpairs, ascending. Iterative block Krylov with shift-invert
// above ~400 unknowns, dense solve below. The all-Neumann kernel is deflated
// explicitly and returned as an exact (0, constant) pair.
// Throws InvalidArgument on bad m/tol, NumericalError when the iteration
// budget runs out (message carries the best residual reached).
std::vector<EigenPair> lowest_eigenpairs(const SymmetricOperator& op, int m,
                                         const EigenOptions& opts = {});
std::vector<EigenPair> lowest_eigenpairs(const SymmetricOperator& op, int m, double tol);

struct Groundstate {
    double value = 0.0;
    Eigen::VectorXd phi; // >= 0 everywhere, unit weighted norm
    double residual = 0.0;
};

// Lowest eigenpair with the sign fixed to a nonnegative groundstate.
// The operator must couple its active cells into one component (judged by
// the off-diagonal structure); otherwise StructuralError asks the caller to
// split the mask. A lowest mode with a genuine sign change is also reported
// as StructuralError.
Groundstate groundstate(const SymmetricOperator& op, const EigenOptions& opts = {});

} // namespace minpart
