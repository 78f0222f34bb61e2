#include "radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace minpart::radial {

namespace {

double bessel_j(double nu, double x) { return std::cyl_bessel_j(nu, x); }
double bessel_y(double nu, double x) { return std::cyl_neumann(nu, x); }

// d/dx J_nu(x) = (nu/x) J_nu(x) - J_{nu+1}(x); same recurrence for Y.
double bessel_j_prime(double nu, double x) {
    return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}
double bessel_y_prime(double nu, double x) {
    return (nu / x) * bessel_y(nu, x) - bessel_y(nu + 1.0, x);
}

struct ModeProblem {
    double nu;
    double r_in, r_out;
    BcPair bc;

    // Cross determinant of the 2x2 boundary system in (A, B), with each
    // column scaled to unit max magnitude so the sign survives under- and
    // overflow of the Bessel factors.
    double determinant(double k) const {
        double ji, yi, jo, yo;
        if (bc.bottom == Bc::dirichlet) {
            ji = bessel_j(nu, k * r_in);
            yi = bessel_y(nu, k * r_in);
        } else {
            ji = bessel_j_prime(nu, k * r_in);
            yi = bessel_y_prime(nu, k * r_in);
        }
        if (bc.top == Bc::dirichlet) {
            jo = bessel_j(nu, k * r_out);
            yo = bessel_y(nu, k * r_out);
        } else {
            jo = bessel_j_prime(nu, k * r_out);
            yo = bessel_y_prime(nu, k * r_out);
        }
        double sj = std::max(std::abs(ji), std::abs(jo));
        double sy = std::max(std::abs(yi), std::abs(yo));
        if (sj == 0.0 || sy == 0.0) return 0.0;
        return (ji / sj) * (yo / sy) - (yi / sy) * (jo / sj);
    }
};

double bisect_root(const ModeProblem& p, double a, double b, double fa) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (b - a <= 1e-14 * mid) return mid;
        double fm = p.determinant(mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

// Roots k of the mode determinant inside (k_lo, k_hi], appended ascending.
// k_hi < 0 means open-ended: extend the window until `need` roots are found.
std::vector<double> scan_mode(const ModeProblem& p, double k_lo, double k_hi, int need) {
    std::vector<double> roots;
    const double width = p.r_out - p.r_in;
    const double dk = std::min(0.25 * std::acos(-1.0) / width, 0.5);
    const double k_abort = 1e5;
    double a = k_lo;
    double fa = p.determinant(a);
    bool open_ended = k_hi < 0.0;
    double limit = open_ended ? k_abort : k_hi;
    while (a < limit) {
        double b = std::min(a + dk, limit);
        double fb = p.determinant(b);
        if ((fa < 0.0) != (fb < 0.0)) {
            roots.push_back(bisect_root(p, a, b, fa));
            if (open_ended && static_cast<int>(roots.size()) >= need) return roots;
        }
        a = b;
        fa = fb;
    }
    if (open_ended) {
        throw NumericalError("annulus_spectrum: bracketing failed for order nu=" +
                             std::to_string(p.nu) + " after scanning k up to " +
                             std::to_string(k_abort));
    }
    return roots;
}

} // namespace

std::vector<RadialMode> annulus_spectrum(double r_in, double r_out, BcPair bc,
                                         int count, int degree) {
    if (!(0.0 < r_in && r_in < r_out)) {
        throw InvalidArgument("annulus_spectrum: need 0 < r_in < r_out");
    }
    if (count < 1) throw InvalidArgument("annulus_spectrum: count must be >= 1");
    if (degree != 1 && degree != 2) {
        throw InvalidArgument("annulus_spectrum: degree must be 1 or 2");
    }

    const bool all_neumann = bc.bottom == Bc::neumann && bc.top == Bc::neumann;
    std::vector<RadialMode> pool;

    auto pooled_count = [&] {
        int c = 0;
        for (const auto& m : pool) c += m.multiplicity;
        return c;
    };
    auto cap_value = [&]() -> double {
        // Value of the count-th smallest eigenvalue currently known.
        int c = 0;
        for (const auto& m : pool) {
            c += m.multiplicity;
            if (c >= count) return m.value;
        }
        return std::numeric_limits<double>::infinity();
    };

    for (int j = 0;; ++j) {
        double nu = static_cast<double>(j) / degree;
        double lower_bound = (nu * nu) / (r_out * r_out);
        double cap = cap_value();
        if (pooled_count() >= count && lower_bound > cap) break;

        ModeProblem prob{nu, r_in, r_out, bc};
        std::vector<double> ks;
        int radial_base = 0;
        if (j == 0 && all_neumann) {
            DeckClass dc = degree == 2 ? DeckClass::symmetric : DeckClass::not_applicable;
            pool.push_back({0.0, nu, 0, 0, 1, dc});
            radial_base = 1;
            std::sort(pool.begin(), pool.end(),
                      [](const RadialMode& a, const RadialMode& b) { return a.value < b.value; });
            cap = cap_value();
        }

        double k_start = std::max(0.9 * nu / r_out, 1e-4 / r_in);
        if (std::isinf(cap)) {
            int need = count - pooled_count() + 1;
            ks = scan_mode(prob, k_start, -1.0, need);
        } else {
            double k_hi = std::sqrt(cap) * (1.0 + 1e-12);
            if (k_start < k_hi) ks = scan_mode(prob, k_start, k_hi, 0);
        }

        for (std::size_t i = 0; i < ks.size(); ++i) {
            RadialMode m;
            m.value = ks[i] * ks[i];
            m.order = nu;
            m.angular_index = j;
            m.radial_index = radial_base + static_cast<int>(i);
            m.multiplicity = j == 0 ? 1 : 2;
            if (degree == 2) {
                m.deck_class = (j % 2 == 0) ? DeckClass::symmetric : DeckClass::antisymmetric;
            }
            pool.push_back(m);
        }
        std::sort(pool.begin(), pool.end(),
                  [](const RadialMode& a, const RadialMode& b) { return a.value < b.value; });
    }

    std::vector<RadialMode> out;
    int acc = 0;
    for (const auto& m : pool) {
        out.push_back(m);
        acc += m.multiplicity;
        if (acc >= count) break;
    }
    if (acc < count) {
        throw NumericalError("annulus_spectrum: could not assemble requested count");
    }
    return out;
}

} // namespace minpart::radial
