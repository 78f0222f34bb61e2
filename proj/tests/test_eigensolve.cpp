#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "core/domain.hpp"
#include "core/eigensolve.hpp"
#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/op.hpp"
#include "core/radial.hpp"

using namespace minpart;

namespace {

constexpr double kPi = std::numbers::pi;

Grid strip(const Rational& b, int degree, int ntheta, int nt) {
    return build_grid(DomainSpec::strip(b, degree, BcPair{}), ntheta, nt);
}

// Exact spectrum of the all-Neumann strip operator: tensor products of the
// periodic ladder in theta and the mirrored ladder in t.
std::vector<double> exact_nn_spectrum(const Grid& g, int m) {
    std::vector<double> vals;
    vals.reserve(g.ncells());
    for (int i = 0; i < g.ntheta; ++i) {
        double lth = (2 - 2 * std::cos(2 * kPi * i / g.ntheta)) / (g.htheta * g.htheta);
        for (int j = 0; j < g.nt; ++j) {
            double lt = (2 - 2 * std::cos(kPi * j / g.nt)) / (g.ht * g.ht);
            vals.push_back(lth + lt);
        }
    }
    std::sort(vals.begin(), vals.end());
    vals.resize(m);
    return vals;
}

double weighted_dot(const SymmetricOperator& op, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b) {
    return a.dot(op.w.cwiseProduct(b));
}

} // namespace

TEST_SUITE("eigensolver") {

TEST_CASE("all-neumann strip kernel is exact") {
    for (int ntheta : {16, 64}) { // dense path, then iterative path
        Grid g = strip(Rational(1, 5), 1, ntheta, ntheta / 2);
        SymmetricOperator op = assemble(g, BcPair{});
        auto pairs = lowest_eigenpairs(op, 1, 1e-9);
        REQUIRE(pairs.size() == 1);
        CHECK(std::abs(pairs[0].value) <= 1e-9);
        CHECK(pairs[0].residual <= 1e-9);
        double lo = pairs[0].vector.minCoeff(), hi = pairs[0].vector.maxCoeff();
        CHECK(hi - lo <= 1e-8 * std::abs(hi));
        CHECK(hi > 0.0);
        CHECK(weighted_dot(op, pairs[0].vector, pairs[0].vector) == doctest::Approx(1.0));
    }
}

TEST_CASE("solver reproduces the exact discrete spectrum") {
    // dense fallback (96 unknowns) and iterative path (640 unknowns)
    for (auto [ntheta, nt] : {std::pair{16, 6}, std::pair{64, 10}}) {
        Grid g = strip(Rational(3, 10), 1, ntheta, nt);
        SymmetricOperator op = assemble(g, BcPair{});
        const int m = 6;
        auto pairs = lowest_eigenpairs(op, m, 1e-9);
        auto exact = exact_nn_spectrum(g, m);
        for (int i = 0; i < m; ++i) {
            CHECK(std::abs(pairs[i].value - exact[i]) <= 1e-7 * std::max(1.0, exact[i]));
            CHECK(pairs[i].residual <= 1e-9);
        }
        for (int i = 1; i < m; ++i) CHECK(pairs[i].value >= pairs[i - 1].value);
    }
}

TEST_CASE("clusters group the double eigenvalues of the narrow cylinder") {
    Grid g = strip(Rational(1, 5), 1, 256, 52);
    SymmetricOperator op = assemble(g, BcPair{});
    auto pairs = lowest_eigenpairs(op, 4, 1e-8);

    CHECK(std::abs(pairs[0].value) <= 1e-8);
    CHECK(pairs[1].value == doctest::Approx(4 * kPi * kPi).epsilon(0.01));
    CHECK(pairs[2].value == doctest::Approx(4 * kPi * kPi).epsilon(0.01));
    CHECK(pairs[3].value == doctest::Approx(16 * kPi * kPi).epsilon(0.01));

    CHECK(pairs[0].cluster == 0);
    CHECK(pairs[1].cluster == 1);
    CHECK(pairs[2].cluster == 1); // exact double eigenvalue
    CHECK(pairs[3].cluster == 2);

    // pairwise weighted orthonormality of the returned block
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double d = weighted_dot(op, pairs[i].vector, pairs[j].vector);
            if (i == j)
                CHECK(std::abs(d - 1.0) <= 1e-8);
            else
                CHECK(std::abs(d) <= 1e-8);
        }
    }
}

TEST_CASE("double cover spectrum keeps its multiplicity-two clusters") {
    Grid g = strip(Rational(3, 10), 2, 128, 20);
    SymmetricOperator op = assemble(g, BcPair{});
    auto pairs = lowest_eigenpairs(op, 7, 1e-8);
    const double p2 = kPi * kPi;
    std::vector<double> expect = {0, p2, p2, 4 * p2, 4 * p2, 9 * p2, 9 * p2};
    for (int i = 0; i < 7; ++i) {
        CHECK(std::abs(pairs[i].value - expect[i]) <= 0.01 * std::max(1.0, expect[i]));
    }
    CHECK(pairs[1].cluster == pairs[2].cluster);
    CHECK(pairs[3].cluster == pairs[4].cluster);
    CHECK(pairs[5].cluster == pairs[6].cluster);
    CHECK(pairs[2].cluster != pairs[3].cluster);
}

TEST_CASE("restricted vertical third matches the half-sine oracle") {
    Grid g = strip(Rational(1, 5), 1, 30, 4);
    SymmetricOperator full = assemble(g, BcPair{});
    std::vector<std::uint8_t> third(g.ncells(), 0);
    for (int j = 0; j < g.nt; ++j)
        for (int i = 0; i < 10; ++i) third[g.index(i, j)] = 1;
    SymmetricOperator op = restrict_to_subdomain(full, g, third);

    // exact discrete value: Dirichlet ladder over 10 cells, constant in t
    double exact = (2 - 2 * std::cos(kPi / 10)) / (g.htheta * g.htheta);
    auto pairs = lowest_eigenpairs(op, 2, 1e-9);
    CHECK(std::abs(pairs[0].value - exact) <= 1e-7 * exact);
    CHECK(pairs[0].value == doctest::Approx(9 * kPi * kPi).epsilon(0.015));
    CHECK(pairs[1].value > pairs[0].value * 1.5); // simple lowest value

    Groundstate gs = groundstate(op);
    CHECK(gs.value == doctest::Approx(pairs[0].value).epsilon(1e-9));
    CHECK(gs.phi.minCoeff() >= 0.0);
    CHECK(weighted_dot(op, gs.phi, gs.phi) == doctest::Approx(1.0).epsilon(1e-8));
    // half-sine in theta, constant in t: peak at the middle of the band
    int peak_cell = 0;
    double peak = -1.0;
    for (int r = 0; r < op.dim; ++r)
        if (gs.phi[r] > peak) {
            peak = gs.phi[r];
            peak_cell = op.active[r];
        }
    int peak_col = peak_cell % g.ntheta;
    CHECK((peak_col == 4 || peak_col == 5));
}

TEST_CASE("groundstate of the full neumann domain is constant") {
    Grid g = strip(Rational(1, 5), 1, 48, 10);
    SymmetricOperator op = assemble(g, BcPair{});
    Groundstate gs = groundstate(op);
    CHECK(std::abs(gs.value) <= 1e-9);
    CHECK(gs.phi.minCoeff() > 0.0);
    CHECK(gs.phi.maxCoeff() - gs.phi.minCoeff() <= 1e-8 * gs.phi.maxCoeff());
}

TEST_CASE("groundstate rejects disconnected masks") {
    Grid g = strip(Rational(1, 5), 1, 24, 4);
    SymmetricOperator full = assemble(g, BcPair{});
    std::vector<std::uint8_t> mask(g.ncells(), 0);
    for (int j = 0; j < g.nt; ++j) {
        for (int i = 0; i < 6; ++i) mask[g.index(i, j)] = 1;
        for (int i = 12; i < 18; ++i) mask[g.index(i, j)] = 1;
    }
    SymmetricOperator op = restrict_to_subdomain(full, g, mask);
    CHECK_THROWS_AS(groundstate(op), StructuralError);
}

TEST_CASE("noncontractible ring groundstate has no angular structure") {
    DomainSpec a = DomainSpec::round_annulus(Rational(1, 10), 1, BcPair{});
    Grid g = build_grid(a, 64, 16);
    SymmetricOperator full = assemble(g, BcPair{});
    std::vector<std::uint8_t> ring(g.ncells(), 0);
    for (int j = 0; j < g.nt / 2; ++j)
        for (int i = 0; i < g.ntheta; ++i) ring[g.index(i, j)] = 1;
    SymmetricOperator op = restrict_to_subdomain(full, g, ring);
    Groundstate gs = groundstate(op);

    // radial oracle: half-width ring r in (1, 1.05), Dirichlet at the cut
    auto oracle = radial::annulus_spectrum(1.0, 1.05, BcPair{Bc::neumann, Bc::dirichlet}, 1);
    CHECK(gs.value == doctest::Approx(oracle[0].value).epsilon(0.01));
    // angularly constant: all columns carry the same radial profile
    for (int j = 0; j < g.nt / 2; ++j) {
        double v0 = gs.phi[op.cell_to_active[g.index(0, j)]];
        for (int i = 1; i < g.ntheta; ++i) {
            CHECK(gs.phi[op.cell_to_active[g.index(i, j)]] == doctest::Approx(v0).epsilon(1e-6));
        }
    }
}

TEST_CASE("round annulus spectrum matches the radial oracle") {
    DomainSpec a = DomainSpec::round_annulus(Rational(1, 10), 1, BcPair{});
    Grid g = build_grid(a, 128, 10);
    SymmetricOperator op = assemble(g, BcPair{});
    auto pairs = lowest_eigenpairs(op, 5, 1e-8);
    auto oracle = radial::annulus_spectrum(1.0, 1.1, BcPair{}, 5);
    std::vector<double> flat;
    for (const auto& mode : oracle)
        for (int c = 0; c < mode.multiplicity && static_cast<int>(flat.size()) < 5; ++c)
            flat.push_back(mode.value);
    REQUIRE(flat.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(std::abs(pairs[i].value - flat[i]) <= 0.01 * std::max(1.0, flat[i]));
    }
    // weighted orthonormality on a genuinely non-unit weight
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < i; ++j)
            CHECK(std::abs(weighted_dot(op, pairs[i].vector, pairs[j].vector)) <= 1e-8);
}

TEST_CASE("deck blocks interleave to the full cover spectrum") {
    Grid base = strip(Rational(3, 10), 1, 32, 10);
    Grid cover = make_cover_grid(base);
    SymmetricOperator cover_op = assemble(cover, BcPair{});
    auto [sym, anti] = deck_split(cover_op, cover);

    auto full = lowest_eigenpairs(cover_op, 7, 1e-8);
    auto s = lowest_eigenpairs(sym, 4, 1e-8);
    auto t = lowest_eigenpairs(anti, 4, 1e-8);

    std::vector<double> merged;
    for (const auto& pr : s) merged.push_back(pr.value);
    for (const auto& pr : t) merged.push_back(pr.value);
    std::sort(merged.begin(), merged.end());
    for (int i = 0; i < 7; ++i) {
        CHECK(std::abs(full[i].value - merged[i]) <= 1e-6 * std::max(1.0, full[i].value));
    }

    // antisymmetric block carries the odd ladder pi^2, pi^2, 9 pi^2, 9 pi^2
    const double p2 = kPi * kPi;
    CHECK(t[0].value == doctest::Approx(p2).epsilon(0.01));
    CHECK(t[1].value == doctest::Approx(p2).epsilon(0.01));
    CHECK(t[2].value == doctest::Approx(9 * p2).epsilon(0.01));
    CHECK(t[3].value == doctest::Approx(9 * p2).epsilon(0.01));
    // symmetric block: 0, 4 pi^2, 4 pi^2 (the base spectrum)
    CHECK(std::abs(s[0].value) <= 1e-8);
    CHECK(s[1].value == doctest::Approx(4 * p2).epsilon(0.01));

    // scattered block vectors have the right deck parity
    std::vector<int> p = deck_permutation(cover);
    std::vector<double> ua = anti.scatter(t[0].vector);
    for (int c = 0; c < cover.ncells(); ++c) CHECK(ua[c] == -ua[p[c]]);
}

TEST_CASE("requesting two more pairs does not move the first values") {
    Grid g = strip(Rational(1, 5), 1, 64, 12);
    SymmetricOperator op = assemble(g, BcPair{});
    auto a = lowest_eigenpairs(op, 4, 1e-8);
    auto b = lowest_eigenpairs(op, 6, 1e-8);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(a[i].value - b[i].value) <= 1e-8 * std::max(1.0, std::abs(a[i].value)));
    }
}

TEST_CASE("solves are deterministic for a fixed seed") {
    Grid g = strip(Rational(1, 5), 1, 64, 12);
    SymmetricOperator op = assemble(g, BcPair{});
    EigenOptions o1;
    o1.seed = 99;
    auto a = lowest_eigenpairs(op, 3, o1);
    auto b = lowest_eigenpairs(op, 3, o1);
    for (int i = 0; i < 3; ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].vector == b[i].vector);
    }
    EigenOptions o2;
    o2.seed = 1234;
    auto c = lowest_eigenpairs(op, 3, o2);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(a[i].value - c[i].value) <= 1e-8 * std::max(1.0, std::abs(a[i].value)));
    }
}

TEST_CASE("rayleigh quotients agree with returned values") {
    Grid g = strip(Rational(3, 10), 1, 64, 10);
    SymmetricOperator op = assemble(g, BcPair{});
    auto pairs = lowest_eigenpairs(op, 5, 1e-8);
    for (const auto& pr : pairs) {
        double rq = pr.vector.dot(op.A * pr.vector) / weighted_dot(op, pr.vector, pr.vector);
        CHECK(std::abs(rq - pr.value) <= 1e-7 * std::max(1.0, std::abs(pr.value)));
    }
}

TEST_CASE("second-order convergence for the first band eigenvalue") {
    const double exact = 4 * kPi * kPi;
    auto lam2 = [&](int n) {
        Grid g = strip(Rational(1, 5), 1, n, std::max(2, n / 5));
        SymmetricOperator op = assemble(g, BcPair{});
        return lowest_eigenpairs(op, 2, 1e-9)[1].value;
    };
    double e64 = std::abs(lam2(64) - exact);
    double e128 = std::abs(lam2(128) - exact);
    double ratio = e64 / e128;
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("argument validation") {
    Grid g = strip(Rational(1, 5), 1, 16, 4);
    SymmetricOperator op = assemble(g, BcPair{});
    CHECK_THROWS_AS(lowest_eigenpairs(op, 0, 1e-8), InvalidArgument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, op.dim + 1, 1e-8), InvalidArgument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 2, 0.0), InvalidArgument);
    CHECK_THROWS_AS(lowest_eigenpairs(op, 2, -1.0), InvalidArgument);
}

} // TEST_SUITE
