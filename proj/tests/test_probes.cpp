#include <cmath>
#include <vector>

#include "doctest.h"

#include "dlab/evolution.hpp"
#include "dlab/nonlinearity.hpp"
#include "dlab/probes.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"
#include "dlab/symbols.hpp"

using namespace dlab;

namespace {

Trajectory gkdv_run(const TorusGrid& g, double T, double dt) {
    auto sym = DispersionSymbol::pure_fractional(2.0);
    auto f = EntireSeries::parse("poly:0,0,1");
    Field u0 = Field::cosine(g, 1) + Field::cosine(g, 2, 0.5);
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.T = T;
    cfg.record_every = 4;
    return solve(u0, sym, f, cfg);
}

} // namespace

TEST_CASE("l4 integral: closed form for a cosine") {
    TorusGrid g(64);
    // int cos^4 = 3pi/4
    CHECK(l4_integral(Field::cosine(g, 5)) ==
          doctest::Approx(3.0 * M_PI / 4.0).epsilon(1e-13));
    CHECK(l4_integral(Field(g)) == 0.0);
}

TEST_CASE("linear strichartz: single-cosine closed form") {
    auto sym = DispersionSymbol::pure_fractional(2.0);
    const double T = 0.5;
    const double b = regularity_params(2.0).b;
    TorusGrid g(128);
    // |U(t) cos(Nx)| is a shifted cosine each t: lhs^4 = T 3pi/4
    const double expect = std::pow(T * 3.0 * M_PI / 4.0, 0.25) /
                          (std::pow(T, 0.5 - b) * std::sqrt(M_PI));
    for (int N : {1, 7, 16}) {
        const double r = linear_strichartz_ratio(sym, T, Field::cosine(g, N));
        CHECK(r == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(linear_strichartz_ratio(sym, T, Field(g)) == 0.0);
}

TEST_CASE("linear strichartz probe: reproducible and M-stable") {
    auto sym = DispersionSymbol::pure_fractional(1.0);
    auto a = linear_strichartz(sym, 0.5, 128, 8, 42);
    auto b = linear_strichartz(sym, 0.5, 128, 8, 42);
    CHECK(a.lhs == b.lhs);
    CHECK(a.ratio == a.lhs); // rhs normalized to 1
    CHECK(a.lhs > 0.0);

    auto c = linear_strichartz(sym, 0.5, 256, 8, 42);
    CHECK(std::fabs(c.lhs - a.lhs) / a.lhs < 0.15);
}

TEST_CASE("improved strichartz on the gKdV run") {
    TorusGrid g(128);
    Trajectory traj = gkdv_run(g, 0.5, 1.0 / 256.0);
    auto sym = DispersionSymbol::pure_fractional(2.0);
    auto f = EntireSeries::parse("poly:0,0,1");

    auto rep = improved_strichartz(traj, sym, f, 0.75);
    CHECK(rep.eq1.lhs > 0.0);
    CHECK(rep.eq2.lhs > 0.0);
    CHECK(rep.eq1.rhs_positive);
    CHECK(rep.eq1.ratio < 10.0);
    CHECK(rep.eq2.ratio < 10.0);
    CHECK(rep.product_constant > 0.0);

    CHECK_THROWS(improved_strichartz(traj, sym, f, 0.4)); // below the s0 floor
}

TEST_CASE("improved strichartz: zero trajectory and quadrature refinement") {
    TorusGrid g(64);
    auto sym = DispersionSymbol::pure_fractional(2.0);
    auto f = EntireSeries::zero();

    SolverConfig cfg;
    cfg.dt = 1.0 / 256.0;
    cfg.T = 0.5;
    cfg.record_every = 4;
    Trajectory zero = solve(Field(g), sym, f, cfg);
    auto rz = improved_strichartz(zero, sym, f, 0.75);
    CHECK(rz.eq1.lhs == 0.0);
    CHECK(rz.eq2.lhs == 0.0);

    // linear trajectory: halving the sample spacing moves the lhs < 1%
    Field u0 = Field::cosine(g, 1) + Field::cosine(g, 3, 0.3);
    Trajectory coarse = solve(u0, sym, f, cfg);
    cfg.record_every = 2;
    Trajectory fine = solve(u0, sym, f, cfg);
    auto rc = improved_strichartz(coarse, sym, f, 0.75);
    auto rf = improved_strichartz(fine, sym, f, 0.75);
    CHECK(std::fabs(rc.eq1.lhs - rf.eq1.lhs) / rf.eq1.lhs < 0.01);
    CHECK(std::fabs(rc.eq2.lhs - rf.eq2.lhs) / rf.eq2.lhs < 0.01);
}

TEST_CASE("lhs homogeneity under scalar rescaling") {
    TorusGrid g(64);
    Trajectory traj = gkdv_run(g, 0.25, 1.0 / 256.0);
    Trajectory scaled = traj;
    for (auto& fr : scaled.frames) fr *= 2.0;
    auto sym = DispersionSymbol::pure_fractional(2.0);
    auto f = EntireSeries::parse("poly:0,0,1");
    auto a = improved_strichartz(traj, sym, f, 0.75);
    auto b = improved_strichartz(scaled, sym, f, 0.75);
    CHECK(b.eq1.lhs == doctest::Approx(2.0 * a.eq1.lhs).epsilon(1e-12));
    CHECK(b.eq2.lhs == doctest::Approx(2.0 * a.eq2.lhs).epsilon(1e-12));
}

TEST_CASE("difference probe") {
    TorusGrid g(64);
    auto sym = DispersionSymbol::pure_fractional(2.0);
    auto f = EntireSeries::parse("poly:0,0,1");
    SolverConfig cfg;
    cfg.dt = 1.0 / 512.0;
    cfg.T = 0.25;
    cfg.record_every = 4;

    Field u0 = Field::cosine(g, 1);
    Trajectory tu = solve(u0, sym, f, cfg);

    // u = v: identically zero difference
    auto same = difference_probe(tu, tu, sym, f, 0.75);
    CHECK(same.lhs == 0.0);

    // perturbed datum: finite ratio, stable under dt halving
    Field v0 = u0 + Field::cosine(g, 3, 1e-3);
    Trajectory tv = solve(v0, sym, f, cfg);
    auto rep = difference_probe(tu, tv, sym, f, 0.75);
    CHECK(rep.lhs > 0.0);
    CHECK(rep.rhs > 0.0);
    CHECK(std::isfinite(rep.ratio));

    cfg.dt /= 2.0;
    cfg.record_every *= 2;
    Trajectory tu2 = solve(u0, sym, f, cfg);
    Trajectory tv2 = solve(v0, sym, f, cfg);
    auto rep2 = difference_probe(tu2, tv2, sym, f, 0.75);
    CHECK(std::fabs(rep2.ratio - rep.ratio) / rep.ratio < 0.05);

    // mismatched discretizations (different horizon) are rejected
    cfg.T = 0.5;
    Trajectory tlong = solve(u0, sym, f, cfg);
    CHECK_THROWS(difference_probe(tu, tlong, sym, f, 0.75));
}

TEST_CASE("bilinear check: ratios within a common constant across blocks") {
    auto sym = DispersionSymbol::pure_fractional(1.0);
    auto a = bilinear_check(sym, 16, 16, 6, 5);
    auto b = bilinear_check(sym, 16, 64, 6, 5);
    CHECK(a.ratio > 0.0);
    CHECK(b.ratio > 0.0);
    const double spread = std::max(a.ratio, b.ratio) / std::min(a.ratio, b.ratio);
    CHECK(spread <= 2.0);

    // doubling both N's moves the ratio < 25%
    auto c = bilinear_check(sym, 32, 32, 6, 5);
    CHECK(std::fabs(c.ratio - a.ratio) / a.ratio < 0.25);

    // determinism in the seed
    auto a2 = bilinear_check(sym, 16, 16, 6, 5);
    CHECK(a2.ratio == a.ratio);
}
