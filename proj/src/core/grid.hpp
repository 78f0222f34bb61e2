#pragma once

#include <cstdint>
#include <vector>

#include "domain.hpp"

namespace minpart {

// Cell-centered uniform grid on the rectangle (0, degree) x (0, b) for
// strips, or mapped coordinates (theta, t) in (0, degree) x (0, 1) for
// annuli with r(theta, t) = 1 + b(h1 + t(h2 - h1)). theta wraps with
// period `degree`; cell (ntheta-1, j) is adjacent to (0, j).
//
// Metric samples are stored per base-sheet column (theta mod 1), so the two
// sheets of a cover see bitwise-identical coefficients and the deck map is
// an exact symmetry of every assembled operator.
struct Grid {
    DomainSpec domain;
    int ntheta = 0;
    int nt = 0;
    double htheta = 0.0;
    double ht = 0.0;

    // Annulus metric samples (empty for strips). Sized per base column:
    //   face_a[i][j]   : R_t/(2 pi R) at theta-face (i, j), i in [0, nb)
    //   face_d[i][j]   : (R_theta^2 + 4 pi^2 R^2)/(2 pi R R_t) at t-face,
    //                    j in [0, nt] including the two boundary rows
    //   cell_c[i][j]   : -R_theta/(2 pi R) at cell center
    //   cell_w[i][j]   : 2 pi R R_t at cell center (area density)
    std::vector<std::vector<double>> face_a, face_d, cell_c, cell_w;

    int ncells() const { return ntheta * nt; }
    int base_ntheta() const { return ntheta / domain.degree; }
    int index(int i, int j) const { return j * ntheta + i; }
    int col(int cell) const { return cell % ntheta; }
    int row(int cell) const { return cell / ntheta; }
    int base_col(int i) const { return i % base_ntheta(); }
    double theta_center(int i) const { return (i + 0.5) * htheta; }
    double t_center(int j) const { return (j + 0.5) * ht; }

    // Neighbor in direction dir (0:+theta, 1:-theta, 2:+t, 3:-t);
    // -1 past the transverse edges.
    int neighbor(int cell, int dir) const;

    bool is_annulus() const { return domain.is_annulus(); }
    // Weight of a cell in the discrete L2 inner product, relative to the
    // uniform cell volume htheta*ht (exactly 1 for strips).
    double weight(int cell) const;
};

Grid build_grid(const DomainSpec& domain, int ntheta, int nt);

// Degree-2 companion of a degree-1 grid: doubled ntheta, same nt.
Grid make_cover_grid(const Grid& base);

// Periodic repetition of a base field/mask onto the cover grid.
std::vector<double> lift_field(const Grid& base, const std::vector<double>& f);
std::vector<std::uint8_t> lift_mask(const Grid& base, const std::vector<std::uint8_t>& mask);

// Cell permutation theta -> theta + 1 on a degree-2 grid; an involution.
std::vector<int> deck_permutation(const Grid& cover);

// Connected components of a cell set under grid adjacency. Returns the
// number of components; labels get 0..count-1 (cells outside the mask: -1).
int connected_components(const Grid& grid, const std::vector<std::uint8_t>& mask,
                         std::vector<int>* labels = nullptr);

} // namespace minpart
