#include <cmath>
#include <vector>

#include "doctest.h"

#include "dlab/envelope.hpp"
#include "dlab/rng.hpp"
#include "dlab/spectral.hpp"

using namespace dlab;

TEST_CASE("admissibility validation") {
    CHECK_NOTHROW(DyadicSequence({1, 1, 2, 4, 8}, 2.0));
    CHECK_THROWS(DyadicSequence({1, 1, 2, 1}, 2.0));   // decreasing step
    CHECK_THROWS(DyadicSequence({1, 1, 2, 8}, 2.0));   // jump beyond delta
    CHECK_THROWS(DyadicSequence({1, -1, 2}, 2.0));     // nonpositive
    CHECK(DyadicSequence::constant(64).admissible());
}

TEST_CASE("indexing convention: v[0] <-> N=0, v[j] <-> 2^{j-1}") {
    DyadicSequence w({3, 1, 2, 4}, 2.0);
    CHECK(w.omega(0) == 3.0);
    CHECK(w.omega(1) == 1.0);
    CHECK(w.omega(2) == 2.0);
    CHECK(w.omega(4) == 4.0);
    CHECK(w.max_dyadic() == 4);
    CHECK_THROWS(w.omega(8));
    CHECK_THROWS(w.omega(3));
}

TEST_CASE("tame: spec recursion example") {
    // omega = (1,1,2,4,8,...), delta = 2, delta' = 1.5
    DyadicSequence w({1, 1, 2, 4, 8, 16}, 2.0);
    DyadicSequence t = tame(w, 1.5);
    const std::vector<double> expect = {1, 1, 1.5, 2.25, 3.375, 5.0625};
    for (int j = 0; j < t.blocks(); ++j)
        CHECK(t.value_at(j) == doctest::Approx(expect[j]).epsilon(1e-15));
}

TEST_CASE("tame: constant sequence is a fixed point") {
    DyadicSequence w(std::vector<double>(9, 1.0), 2.0);
    DyadicSequence t = tame(w, 1.5);
    for (int j = 0; j < t.blocks(); ++j) CHECK(t.value_at(j) == 1.0);
}

TEST_CASE("tame at the boundary delta' = delta returns the input") {
    DyadicSequence w({1, 1, 1.7, 2.9, 5.5}, 2.0);
    DyadicSequence t = tame(w, 2.0);
    for (int j = 0; j < t.blocks(); ++j)
        CHECK(t.value_at(j) == doctest::Approx(w.value_at(j)).epsilon(1e-15));
}

TEST_CASE("tame validates delta'") {
    DyadicSequence w({1, 1, 2, 4}, 2.0);
    CHECK_THROWS(tame(w, 1.0));
    CHECK_THROWS(tame(w, 2.5));
}

TEST_CASE("tame properties on random admissible sequences") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const double delta = 1.0 + 3.0 * rng.uniform(); // <= 4
        std::vector<double> v{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
        for (int j = 2; j < 12; ++j)
            v.push_back(v.back() * (1.0 + (delta - 1.0) * rng.uniform()));
        DyadicSequence w(v, delta);
        if (delta <= 2.0) continue; // delta' must stay below delta
        DyadicSequence t = tame(w, 2.0);
        CHECK(t.blocks() == w.blocks());
        for (int j = 0; j < t.blocks(); ++j) {
            CHECK(t.value_at(j) <= w.value_at(j) * (1 + 1e-15));
            if (j >= 2) {
                const double ratio = t.value_at(j) / t.value_at(j - 1);
                CHECK(ratio >= 1.0 - 1e-15);
                CHECK(ratio <= 2.0 + 1e-15);
            }
        }
    }
}

TEST_CASE("tame preserves divergence") {
    // values at 2^n exceed 2^{n/4}: a divergent profile with delta = 4
    std::vector<double> v{1.0, 1.0};
    for (int n = 1; n <= 14; ++n) v.push_back(std::pow(2.0, 0.3 * n) * 1.1);
    DyadicSequence w(v, 4.0);
    DyadicSequence t = tame(w, 2.0);
    CHECK(t.value_at(t.blocks() - 1) > 8.0);
    for (int j = 3; j < t.blocks(); ++j)
        CHECK(t.value_at(j) >= t.value_at(j - 1));
}

TEST_CASE("build_from_datum: single low mode") {
    TorusGrid g(256);
    Field u = Field::cosine(g, 1);
    const double s = 0.75, eps = 0.25;
    DyadicSequence w = build_from_datum(u, s, eps);

    CHECK(w.admissible());
    CHECK(std::fabs(w.delta() - std::pow(2.0, eps)) <= 1e-12);
    for (int j = 1; j < w.blocks(); ++j)
        CHECK(w.value_at(j) >= w.value_at(j - 1) - 1e-15);

    CHECK(sobolev_norm(u, s, &w) <= 2.0 * sobolev_norm(u, s) * (1 + 1e-12));

    // growth like N^eps beyond the data band
    const double r = w.omega(128) / w.omega(64);
    CHECK(r == doctest::Approx(std::pow(2.0, eps)).epsilon(1e-6));
}

TEST_CASE("build_from_datum: zero datum gives the pure growth profile") {
    TorusGrid g(64);
    DyadicSequence w = build_from_datum(Field(g), 0.75, 0.3);
    CHECK(w.omega(0) == doctest::Approx(1.0));
    for (int N : {1, 2, 4, 8, 16, 32})
        CHECK(w.omega(N) == doctest::Approx(std::pow(std::max(1, N), 0.3)).epsilon(1e-12));
}

TEST_CASE("build_from_datum: band-limited datum, flat then growing") {
    Rng rng(31);
    TorusGrid g(256);
    Field u(g);
    for (int k = 1; k <= 16; ++k) {
        const cplx c(rng.normal(), rng.normal());
        u.coeff(k) = c;
        u.coeff(-k) = std::conj(c);
    }
    DyadicSequence w = build_from_datum(u, 0.6, 0.25);
    // constant-ish across the data band, growth capped by N^eps beyond it
    CHECK(w.omega(16) / w.omega(1) <= 1.5);
    CHECK(w.omega(128) / w.omega(16) <= std::pow(8.0, 0.25) * (1 + 1e-12));
    CHECK(w.omega(128) > w.omega(16));
    CHECK(sobolev_norm(u, 0.6, &w) <= 2.0 * sobolev_norm(u, 0.6) * (1 + 1e-12));
    CHECK_THROWS(build_from_datum(u, 0.6, 0.0));
    CHECK_THROWS(build_from_datum(u, 0.6, 1.0));
}
