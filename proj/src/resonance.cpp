#include "dlab/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dlab/rng.hpp"

namespace dlab {

double omega(const DispersionSymbol& sym, const FrequencyTuple& t) {
    if (t.size() < 3) throw std::invalid_argument("tuple needs at least 3 entries");
    if (std::accumulate(t.begin(), t.end(), 0LL) != 0)
        throw std::invalid_argument("tuple is not zero-sum");
    double s = 0.0;
    for (long long xi : t) s += sym(static_cast<double>(xi));
    return s;
}

namespace {

double dp_sup_low(const DispersionSymbol& sym) {
    // sup of |p'| over [0, xi0]; sampled away from 0 where the finite
    // difference degenerates, p' extends continuously by oddness
    const int n = 2048;
    double sup = 0.0;
    for (int i = 1; i <= n; ++i)
        sup = std::max(sup, std::fabs(sym.dp(sym.xi0() * i / n)));
    return sup;
}

// tuple sorted by decreasing |xi|; returns the lemma's denominator
// (without the |xi_1|^alpha factor) or a negative value when inadmissible
double admissible_scale(const FrequencyTuple& t, ScanMode mode,
                        const ScanHypothesis& hyp, double threshold) {
    const auto mag = [&](size_t j) { return std::llabs(t[j]); };
    if (static_cast<double>(mag(0)) < threshold) return -1.0;
    if (mag(1) == 0 ||
        static_cast<double>(mag(0)) > hyp.lambda_sim * static_cast<double>(mag(1)))
        return -1.0;

    const int k = static_cast<int>(t.size()) - 2;
    if (mode == ScanMode::Res1) {
        if (mag(2) == 0) return -1.0; // bound is vacuous: both sides vanish
        if (k >= 2) {
            long long tail = 0;
            for (size_t j = 3; j < t.size(); ++j) tail = std::max(tail, mag(j));
            if (static_cast<double>(mag(2)) <
                hyp.lambda_gg * k * static_cast<double>(tail))
                return -1.0;
        }
        return static_cast<double>(mag(2));
    }

    // Res2: |xi_1| ~ |xi_2| >> |xi_3| >= |xi_4|, denominator |xi_3 + xi_4|
    if (static_cast<double>(mag(1)) < hyp.lambda_gg * static_cast<double>(mag(2)))
        return -1.0;
    const long long s34 = t[2] + t[3];
    if (s34 == 0) return -1.0; // excluded: the lemma gives no information
    if (k >= 3) {
        long long tail = 0;
        for (size_t j = 4; j < t.size(); ++j) tail = std::max(tail, mag(j));
        if (static_cast<double>(std::llabs(s34)) <
            hyp.lambda_gg * k * static_cast<double>(tail))
            return -1.0;
    }
    return static_cast<double>(std::llabs(s34));
}

struct Accumulator {
    double best = std::numeric_limits<double>::infinity();
    FrequencyTuple witness;
    long long count = 0;

    void feed(double ratio, const FrequencyTuple& t) {
        ++count;
        if (ratio < best * (1.0 - 1e-12)) {
            best = ratio;
            witness = t;
        } else if (ratio <= best * (1.0 + 1e-12) &&
                   (witness.empty() || t < witness)) {
            witness = t;
        }
    }
};

void consider(const DispersionSymbol& sym, const ScanHypothesis& hyp,
              ScanMode mode, double threshold, const FrequencyTuple& sorted,
              Accumulator& acc) {
    const double scale = admissible_scale(sorted, mode, hyp, threshold);
    if (scale < 0.0) return;
    const double denom =
        scale * std::pow(static_cast<double>(std::llabs(sorted[0])), sym.alpha());
    acc.feed(std::fabs(omega(sym, sorted)) / denom, sorted);
}

} // namespace

ScanReport scan_resonance(const DispersionSymbol& sym, const ScanHypothesis& hyp,
                          ScanMode mode) {
    if (hyp.k < 1) throw std::invalid_argument("k must be >= 1");
    if (mode == ScanMode::Res2 && hyp.k < 2)
        throw std::invalid_argument("Res2 needs tuples of length >= 4 (k >= 2)");
    if (!(hyp.lambda_sim >= 1.0) || !(hyp.lambda_gg > hyp.lambda_sim))
        throw std::invalid_argument("need lambda_gg > lambda_sim >= 1");
    if (hyp.xi_max < 2) throw std::invalid_argument("xi_max too small");
    if (hyp.k <= 2 && hyp.xi_max > 4096)
        throw std::invalid_argument("exhaustive scans are guarded at xi_max = 4096");

    const double threshold = hyp.lambda_gg * std::pow(dp_sup_low(sym), 1.0 / sym.alpha());
    Accumulator acc;
    const long long X = hyp.xi_max;

    if (hyp.k <= 2) {
        // Omega is permutation-symmetric and odd under global negation, so
        // enumerate xi_1 > 0 with entries sorted by decreasing magnitude
        const long long lo = std::max<long long>(1, static_cast<long long>(std::ceil(threshold)));
        for (long long x1 = lo; x1 <= X; ++x1) {
            for (long long x2 = -x1; x2 <= x1; ++x2) {
                if (hyp.k == 1) {
                    const long long x3 = -x1 - x2;
                    if (std::llabs(x3) > std::llabs(x2)) continue;
                    consider(sym, hyp, mode, threshold, {x1, x2, x3}, acc);
                } else {
                    const long long m2 = std::llabs(x2);
                    for (long long x3 = -m2; x3 <= m2; ++x3) {
                        const long long x4 = -x1 - x2 - x3;
                        if (std::llabs(x4) > std::llabs(x3)) continue;
                        consider(sym, hyp, mode, threshold, {x1, x2, x3, x4}, acc);
                    }
                }
            }
        }
    } else {
        Rng rng(hyp.seed);
        const long long lo = std::max<long long>(1, static_cast<long long>(std::ceil(threshold)));
        if (lo <= X) {
            for (long long trial = 0; trial < hyp.samples; ++trial) {
                FrequencyTuple t(hyp.k + 2, 0);
                t[0] = rng.integer(lo, X);
                const long long m2lo = std::max<long long>(
                    1, static_cast<long long>(std::ceil(t[0] / hyp.lambda_sim)));
                const long long m2 = rng.integer(m2lo, t[0]);
                t[1] = rng.uniform() < 0.5 ? m2 : -m2;
                const long long m3 = rng.integer(0, m2);
                t[2] = rng.uniform() < 0.5 ? m3 : -m3;
                const long long cap = std::max<long long>(
                    0, static_cast<long long>(std::floor(m3 / (hyp.lambda_gg * hyp.k))));
                long long sum = t[0] + t[1] + t[2];
                for (int j = 3; j < hyp.k + 1; ++j) {
                    const long long m = rng.integer(0, cap);
                    t[j] = rng.uniform() < 0.5 ? m : -m;
                    sum += t[j];
                }
                t[hyp.k + 1] = -sum;
                std::sort(t.begin(), t.end(), [](long long a, long long b) {
                    return std::llabs(a) != std::llabs(b) ? std::llabs(a) > std::llabs(b)
                                                          : a > b;
                });
                if (std::llabs(t[0]) > X) continue;
                if (t[0] < 0) for (long long& x : t) x = -x; // fix sign convention
                consider(sym, hyp, mode, threshold, t, acc);
            }
        }
    }

    ScanReport rep{mode, hyp, acc.best, acc.witness, acc.count, threshold,
                   hyp.k <= 2};
    return rep;
}

CountingReport counting_check(const std::function<double(double)>& g,
                              const std::function<double(double)>& dg,
                              long long a, long long b, double lo, double hi) {
    if (b < a || hi < lo) throw std::invalid_argument("empty interval");
    long long count = 0;
    for (long long x = a; x <= b; ++x) {
        const double v = g(static_cast<double>(x));
        if (v >= lo && v <= hi) ++count;
    }
    const int n = 4096;
    double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / n;
        inf = std::min(inf, std::fabs(dg(x)));
    }
    const double bound = inf > 0.0 ? (hi - lo) / inf + 1.0
                                   : std::numeric_limits<double>::infinity();
    return {count, bound, static_cast<double>(count) <= bound};
}

} // namespace dlab
