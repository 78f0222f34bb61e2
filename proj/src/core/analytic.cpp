#include "analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "errors.hpp"

namespace minpart {

std::string to_string(DeckClass c) {
    switch (c) {
        case DeckClass::symmetric: return "symmetric";
        case DeckClass::antisymmetric: return "antisymmetric";
        case DeckClass::not_applicable: return "n/a";
        case DeckClass::mixed: return "mixed";
    }
    return "?";
}

std::string to_string(Bc bc) {
    return bc == Bc::neumann ? "neumann" : "dirichlet";
}

Bc parse_bc(const std::string& s) {
    if (s == "neumann" || s == "N" || s == "n") return Bc::neumann;
    if (s == "dirichlet" || s == "D" || s == "d") return Bc::dirichlet;
    throw ParseError("unknown boundary condition: " + s);
}

namespace analytic {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Transverse factor of the separated eigenvalue, divided by pi^2.
// NN: (n/b)^2, n >= 0; DD: same with n >= 1; mixed: ((2n+1)/(2b))^2, n >= 0.
struct TransverseLadder {
    Rational b;
    bool mixed;
    int n0;

    Rational value(int n) const {
        Rational inv_b(b.den(), b.num());
        if (mixed) {
            Rational half(2 * n + 1, 2);
            return half * inv_b * half * inv_b;
        }
        Rational nn(n);
        return nn * inv_b * nn * inv_b;
    }
};

// Angular factor (2m/degree)^2 over pi^2; multiplicity 2 for m >= 1.
Rational angular_value(int m, int degree) {
    Rational a(2 * m, degree);
    return a * a;
}

} // namespace

CylinderSpectrum cylinder_spectrum(const Rational& b, int degree, BcPair bc, int count) {
    if (b <= Rational(0)) throw InvalidArgument("cylinder_spectrum: width must be positive");
    if (count < 1) throw InvalidArgument("cylinder_spectrum: count must be >= 1");
    if (degree != 1 && degree != 2) throw InvalidArgument("cylinder_spectrum: degree must be 1 or 2");

    const bool mixed_bc = bc.bottom != bc.top;
    const bool dirichlet_both = bc.bottom == Bc::dirichlet && bc.top == Bc::dirichlet;
    TransverseLadder trans{b, mixed_bc, dirichlet_both ? 1 : 0};

    // Cap from the pure-transverse ladder (m = 0, multiplicity 1 each).
    Rational cap_n = trans.value(trans.n0 + count - 1);

    // Cap from the pure-angular ladder at the lowest transverse index.
    Rational cap_m = angular_value(0, degree) + trans.value(trans.n0);
    {
        int have = 1;
        int m = 0;
        while (have < count) {
            ++m;
            have += 2;
            cap_m = angular_value(m, degree) + trans.value(trans.n0);
        }
    }

    const Rational cap = std::min(cap_n, cap_m);

    // Enumerate every (m,n) with value <= cap; both ladders are increasing.
    std::map<Rational, std::vector<ModeContribution>, std::less<Rational>> groups;
    for (int m = 0; angular_value(m, degree) <= cap; ++m) {
        Rational am = angular_value(m, degree);
        for (int n = trans.n0;; ++n) {
            Rational v = am + trans.value(n);
            if (cap < v) break;
            groups[v].push_back({m, n, m == 0 ? 1 : 2});
        }
    }

    CylinderSpectrum out;
    if (mixed_bc) {
        out.note =
            "second transverse-mixed eigenvalue from direct mode enumeration is "
            "min(9/(4 b^2), 4 + 1/(4 b^2)) * pi^2; an alternative closed form in "
            "circulation replaces the first argument by 1/b^2; the two agree for "
            "b <= 1/(2 sqrt(5)) and the thinness threshold is identical for both";
    }
    for (const auto& [value, modes] : groups) {
        SpectrumEntry e;
        e.value_over_pi2 = value;
        e.value = value.to_double() * kPi2;
        e.m = modes.front().m;
        e.n = modes.front().n;
        e.multiplicity = 0;
        bool any_even = false, any_odd = false;
        for (const auto& mc : modes) {
            e.multiplicity += mc.multiplicity;
            (mc.m % 2 == 0 ? any_even : any_odd) = true;
        }
        if (degree == 2) {
            if (any_even && any_odd) e.deck_class = DeckClass::mixed;
            else e.deck_class = any_odd ? DeckClass::antisymmetric : DeckClass::symmetric;
        } else {
            e.deck_class = DeckClass::not_applicable;
        }
        e.modes = modes;
        out.entries.push_back(std::move(e));
        out.total_multiplicity += out.entries.back().multiplicity;
        if (out.total_multiplicity >= count) break;
    }
    return out;
}

CirclePartitionValue circle_partition_eigenvalue(int k) {
    if (k < 1) throw InvalidArgument("circle_partition_eigenvalue: k must be >= 1");
    CirclePartitionValue r;
    r.k = k;
    r.value_over_pi2 = Rational(static_cast<std::int64_t>(k) * k);
    r.value = r.value_over_pi2.to_double() * kPi2;
    r.is_eigenvalue = (k % 2 == 0);
    r.out_of_scope = (k == 1);
    return r;
}

ThinnessThreshold thin_threshold(int k) {
    if (k < 3 || k % 2 == 0) throw InvalidArgument("thin_threshold: k must be odd and >= 3");
    ThinnessThreshold t;
    t.k = k;
    if (k % 4 == 3) {
        t.branch = ThresholdBranch::k_4p_plus_3;
        t.radicand = static_cast<long long>(3 * k + 1) * (k - 1);
    } else {
        t.branch = ThresholdBranch::k_4p_plus_1;
        t.radicand = static_cast<long long>(3 * k - 1) * (k + 1);
    }
    t.bound = 1.0 / std::sqrt(static_cast<double>(t.radicand));
    t.surd = "1/sqrt(" + std::to_string(t.radicand) + ")";
    return t;
}

CourantCaseReport courant_sharp_classification(const Rational& b) {
    if (b <= Rational(0)) throw InvalidArgument("courant_sharp_classification: width must be positive");
    CourantCaseReport r;
    const Rational half(1, 2), one(1);
    // The source case list leaves b = 1/2 unassigned (a triple tie 4pi^2);
    // its eigenvalue listing coincides with the 1/2 < b < 1 case, so that
    // case absorbs the edge.
    if (b < half) r.case_index = 1;
    else if (b < one) r.case_index = 2;
    else if (b == one) r.case_index = 3;
    else r.case_index = 4;
    r.lambda3_sharp = b >= one;
    r.lambda4_cannot_be_sharp = half < b && b <= one;
    r.lambda5_cannot_be_sharp = b == one;
    r.low = cylinder_spectrum(b, 1, {Bc::neumann, Bc::neumann}, 7);
    return r;
}

L3Prediction predicted_l3(const Rational& b) {
    if (b <= Rational(0)) throw InvalidArgument("predicted_l3: width must be positive");
    L3Prediction p;
    const Rational nine(9), four(4), one(1), two_thirds(2, 3);
    if (b * b * Rational(20) <= one) {
        // Thin strip: equal sectors are optimal.
        p.status = L3Status::exact;
        p.value_over_pi2 = nine;
        p.is_exact = true;
    } else if (b >= one) {
        // Wide strip: the three-band transverse nodal state is optimal.
        p.status = L3Status::exact;
        p.value_over_pi2 = four / (b * b);
        p.is_exact = true;
    } else if (two_thirds < b) {
        // The same nodal state strictly beats equal sectors, optimality open.
        p.status = L3Status::nodal_beatable;
        p.value_over_pi2 = std::min(nine, four / (b * b));
        p.is_exact = false;
    } else {
        p.status = L3Status::unknown;
        p.value_over_pi2 = nine;
        p.is_exact = false;
    }
    p.value = p.value_over_pi2.to_double() * kPi2;
    return p;
}

std::string to_string(L3Status s) {
    switch (s) {
        case L3Status::exact: return "exact";
        case L3Status::nodal_beatable: return "nodal-beatable";
        case L3Status::unknown: return "unknown";
    }
    return "?";
}

std::string to_string(ThresholdBranch b) {
    return b == ThresholdBranch::k_4p_plus_3 ? "k=4p+3" : "k=4p+1";
}

} // namespace analytic
} // namespace minpart
