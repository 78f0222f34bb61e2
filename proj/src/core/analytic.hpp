#pragma once

#include <string>
#include <vector>

#include "rational.hpp"

namespace minpart {

enum class Bc { neumann, dirichlet };

// bottom = y=0 edge of the strip (inner radius for annuli), top = y=b (outer).
struct BcPair {
    Bc bottom = Bc::neumann;
    Bc top = Bc::neumann;
};

// Behavior of a mode under the deck transformation x -> x+1 of a degree-2
// cover: even angular index is symmetric, odd is antisymmetric. "mixed" marks
// an accidental degeneracy that merges both parities into one entry.
enum class DeckClass { symmetric, antisymmetric, not_applicable, mixed };

std::string to_string(DeckClass c);
std::string to_string(Bc bc);
Bc parse_bc(const std::string& s);

struct ModeContribution {
    int m = 0; // angular index
    int n = 0; // transverse index
    int multiplicity = 1;
};

struct SpectrumEntry {
    Rational value_over_pi2;
    double value = 0.0; // value_over_pi2 * pi^2
    int m = 0;          // first contributing mode, lexicographic (m,n)
    int n = 0;
    int multiplicity = 1; // summed over contributions
    DeckClass deck_class = DeckClass::not_applicable;
    std::vector<ModeContribution> modes;
};

struct CylinderSpectrum {
    std::vector<SpectrumEntry> entries;
    int total_multiplicity = 0; // >= requested count; ties are never split
    std::string note;           // metadata remarks (mixed-bc conventions)
};

namespace analytic {

// Exact low spectrum of the width-b cylinder strip of covering degree 1 or 2,
// angular period = degree (unit perimeter per sheet). `count` asks for that
// many eigenvalues counted with multiplicity; a tie crossing the cutoff is
// returned whole.
CylinderSpectrum cylinder_spectrum(const Rational& b, int degree, BcPair bc, int count);

struct CirclePartitionValue {
    int k = 0;
    Rational value_over_pi2; // k^2
    double value = 0.0;
    bool is_eigenvalue = false; // true exactly for even k
    bool out_of_scope = false;  // k = 1: parity rule extended beyond the source statements
};

CirclePartitionValue circle_partition_eigenvalue(int k);

enum class ThresholdBranch { k_4p_plus_3, k_4p_plus_1 };

struct ThinnessThreshold {
    int k = 0;
    ThresholdBranch branch = ThresholdBranch::k_4p_plus_3;
    // bound = 1/sqrt(radicand); branch k=4p+3 has radicand (3k+1)(k-1),
    // branch k=4p+1 has (3k-1)(k+1).
    long long radicand = 0;
    double bound = 0.0;
    std::string surd; // e.g. "1/sqrt(20)"
};

// Width threshold below which the equal-sector k-partition of the strip is
// predicted minimal with value k^2 pi^2 (k odd, >= 3).
ThinnessThreshold thin_threshold(int k);

struct CourantCaseReport {
    int case_index = 0;         // 1..4 in increasing b
    CylinderSpectrum low;       // first few Neumann eigenvalues of C(1,b)
    bool lambda3_sharp = false; // iff b >= 1
    bool lambda4_cannot_be_sharp = false; // 1/2 < b <= 1
    bool lambda5_cannot_be_sharp = false; // b = 1
};

CourantCaseReport courant_sharp_classification(const Rational& b);

enum class L3Status {
    exact,          // value is the optimal 3-partition energy
    nodal_beatable, // strict upper bound via a 3-domain nodal state
    unknown         // upper bound only
};

struct L3Prediction {
    L3Status status = L3Status::unknown;
    Rational value_over_pi2; // exact value or upper bound, divided by pi^2
    double value = 0.0;
    bool is_exact = false;
};

// Best known value or bound for the minimal 3-partition energy of C(1,b).
L3Prediction predicted_l3(const Rational& b);

std::string to_string(L3Status s);
std::string to_string(ThresholdBranch b);

} // namespace analytic
} // namespace minpart
