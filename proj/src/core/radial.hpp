#pragma once

#include <vector>

#include "analytic.hpp"

namespace minpart::radial {

// One eigenvalue of the Laplacian on a round annulus, separated as
// u = (A J_nu + B Y_nu)(k r) * angular factor, lambda = k^2.
struct RadialMode {
    double value = 0.0;
    double order = 0.0;    // nu = angular_index / degree
    int angular_index = 0; // j; multiplicity 2 for j >= 1
    int radial_index = 0;  // position of k among the roots for this order
    int multiplicity = 1;
    DeckClass deck_class = DeckClass::not_applicable;
};

// First `count` eigenvalues (with multiplicity; trailing tie kept whole) of
// the round annulus r_in < r < r_out under bc (bottom = inner edge).
// degree = 2 computes the double cover spectrum (half-integer orders).
// Root finding is bracketing + bisection on the scaled cross determinant,
// relative accuracy ~1e-13.
std::vector<RadialMode> annulus_spectrum(double r_in, double r_out, BcPair bc,
                                         int count, int degree = 1);

} // namespace minpart::radial
