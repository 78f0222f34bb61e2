#pragma once

#include <cstdint>
#include <vector>

#include "eigensolve.hpp"
#include "grid.hpp"
#include "nodal.hpp"
#include "op.hpp"

namespace minpart {

// Ground energies of a labeled partition: lambda_1 of every part with the
// ambient conditions on the domain boundary and Dirichlet on internal
// interfaces. A disconnected part is scored by its best component and
// reported in disconnected_parts.
struct PartitionEnergies {
    std::vector<double> energies;
    double lambda_max = 0.0;
    std::vector<int> disconnected_parts;
};

PartitionEnergies partition_energy(const std::vector<int>& labels, const Grid& grid, BcPair bc,
                                   double tol = 1e-8);

struct SweepRecord {
    double lambda_max = 0.0;
    int moved = 0; // cells reassigned by the sweep that produced this state
};

struct PartitionState {
    std::vector<int> labels; // per cell, 0..k-1
    int k = 0;
    std::vector<double> energies; // freshly recomputed for the returned state
    double lambda_max = 0.0;      // max of energies, exactly
    std::vector<SweepRecord> history; // of the run that produced this state
    int restart_index = 0;
    int sweeps = 0;
};

enum class PartitionInit { equal_sectors, equal_bands, random_voronoi };

struct IterateOptions {
    int max_sweeps = 200;
    int restarts = 8;          // random-voronoi runs after the requested init
    std::uint64_t seed = 12345;
    int patience = 20;         // sweeps without a new best before a run stops
    double tol = 1e-8;         // eigensolver tolerance
};

// Alternating scheme for min-max of lambda_1 over k-partitions: solve the
// part groundstates, reassign each cell to the part with the largest scaled
// groundstate value (supports extended one cell so neighbors compete, zero
// beyond), repair connectivity, repeat. Per-part scale factors grow with
// part energy, so the currently worst part pushes its interfaces outward
// until the energies equalize; the iteration is not monotone and the best
// state ever seen is returned. Ties in the argmax go to the lower part
// index. A run whose part vanishes restarts with fresh seeds.
PartitionState iterate(const Grid& grid, BcPair bc, int k, PartitionInit init,
                       const IterateOptions& opts = {});

// True iff every part is contractible; equivalently the lift of the label
// field to the double cover has exactly 2k components. Degree-1 grids only.
// A state with a disconnected part is never property B.
bool property_B_check(const PartitionState& state, const Grid& grid);

// Per-part discrete niceness: part i is flagged when some cell of another
// part sits between two part-i cells along an axis (a 1-cell-thick slit;
// the interior of the part's closure would swallow it).
std::vector<bool> niceness_check(const std::vector<int>& labels, const Grid& grid);

// Reassigns slit cells to the part surrounding them (lower part id when
// both axes qualify), synchronous rounds to a fixed point. Returns the
// number of cells absorbed.
int absorb_slits(std::vector<int>& labels, const Grid& grid);

// Final-state summary against the analytic catalog: best-known reference
// value for (b, k), neighbor-graph bipartiteness, property B, and the cut
// positions against equal sectors up to a common rotation.
struct TheoryReport {
    int k = 0;
    double b = 0.0;
    double lambda = 0.0;
    double reference = 0.0; // optimal value when exact, else best upper bound
    bool reference_is_exact = false;
    double rel_gap = 0.0; // (lambda - reference) / reference
    bool bipartite = false;
    bool property_b = false; // degree-1 grids only, false otherwise
    bool sector_like = false;
    double max_cut_offset_cells = -1.0; // vs equal sectors; -1 if not sectors
    int nonnice_parts = 0;
};

TheoryReport compare_with_theory(const PartitionState& state, const Grid& grid);

} // namespace minpart
