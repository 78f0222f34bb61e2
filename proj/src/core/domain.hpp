#pragma once

#include <string>
#include <vector>

#include "analytic.hpp"
#include "rational.hpp"

namespace minpart {

enum class DomainKind { cylinder_strip, annulus };

// Real trigonometric series of period 1: coef = [a0, a1, b1, a2, b2, ...]
// evaluating to a0 + sum_k (a_k cos(2 pi k x) + b_k sin(2 pi k x)).
struct FourierSeries {
    std::vector<double> coef{0.0};

    static FourierSeries constant(double c) { return FourierSeries{{c}}; }
    double eval(double x) const;
    double deriv(double x) const;
    bool is_constant() const;
};

// Cylinder strip of width b and unit perimeter per sheet, or an annulus-like
// domain around the unit circle with boundary radii 1 + b*h1(theta) and
// 1 + b*h2(theta). degree = 2 builds the double cover.
struct DomainSpec {
    DomainKind kind = DomainKind::cylinder_strip;
    Rational b_exact{1, 5};
    double b = 0.2;
    int degree = 1;
    BcPair bc;
    FourierSeries h1; // annulus only; h1 < h2 pointwise
    FourierSeries h2;

    static DomainSpec strip(const Rational& b, int degree, BcPair bc);
    static DomainSpec annulus(const Rational& b, int degree, BcPair bc,
                              FourierSeries h1, FourierSeries h2);
    // Round annulus 1 < r < 1 + b (h1 = 0, h2 = 1).
    static DomainSpec round_annulus(const Rational& b, int degree, BcPair bc);

    bool is_annulus() const { return kind == DomainKind::annulus; }
    std::string describe() const;
};

// Parsed contents of a domain/grid config file. Unknown keys are rejected.
// Keys: kind, b, degree, ntheta, nt, bc_bottom, bc_top, h1, h2 (Fourier
// coefficient lists "a0 a1 b1 a2 b2 ...").
struct DomainConfig {
    DomainSpec domain;
    int ntheta = 0; // 0 = unspecified
    int nt = 0;
};

DomainConfig parse_config_text(const std::string& text);
DomainConfig load_config(const std::string& path);

} // namespace minpart
