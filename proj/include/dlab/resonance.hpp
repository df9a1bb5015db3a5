#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dlab/symbols.hpp"

namespace dlab {

using FrequencyTuple = std::vector<long long>; // zero-sum, length >= 3

/// Omega_{k+1}(xi_1, ..., xi_{k+2}) = sum_n p(xi_n) on zero-sum tuples
double omega(const DispersionSymbol& sym, const FrequencyTuple& t);

enum class ScanMode { Res1, Res2 };

/// Quantified version of the asymptotic hypotheses: "a ~ b" means
/// max/min <= lambda_sim, "a >> b" means a >= lambda_gg * b.
struct ScanHypothesis {
    double lambda_sim = 2.0;
    double lambda_gg = 8.0;
    long long xi_max = 64;
    int k = 1;                       // tuples have k+2 entries
    long long samples = 200000;      // randomized budget for k >= 3
    std::uint64_t seed = 1;
};

struct ScanReport {
    ScanMode mode;
    ScanHypothesis hyp;
    double min_ratio;                // +inf when the admissible set is empty
    FrequencyTuple witness;          // empty when no admissible tuple exists
    long long admissible = 0;
    double threshold = 0.0;          // enforced lower bound on |xi_1|
    bool exhaustive = true;          // false for the randomized k >= 3 scan
};

/// Minimum of |Omega| / (|xi_3| |xi_1|^alpha)        (Res1)
///         or |Omega| / (|xi_3+xi_4| |xi_1|^alpha)   (Res2, xi_3+xi_4 != 0)
/// over admissible zero-sum tuples. Exhaustive for k <= 2 (xi_max <= 4096),
/// randomized with the declared sample budget for k >= 3.
ScanReport scan_resonance(const DispersionSymbol& sym, const ScanHypothesis& hyp,
                          ScanMode mode);

struct CountingReport {
    long long count;   // #{x in J cap Z : g(x) in I}
    double bound;      // |I| / inf_J |g'| + 1, infinite when inf |g'| = 0
    bool pass;         // count <= bound
};

/// Lattice-counting bound checker; J = [a, b] with integer endpoints,
/// I = [lo, hi]. inf |g'| is taken over a dense sample of J.
CountingReport counting_check(const std::function<double(double)>& g,
                              const std::function<double(double)>& dg,
                              long long a, long long b, double lo, double hi);

} // namespace dlab
