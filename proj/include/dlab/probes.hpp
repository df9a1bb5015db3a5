#pragma once

#include <cstdint>
#include <string>

#include "dlab/evolution.hpp"
#include "dlab/spectral.hpp"
#include "dlab/symbols.hpp"

namespace dlab {

class EntireSeries;
class DyadicSequence;

struct ProbeReport {
    std::string probe;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;        // lhs/rhs; +inf when rhs = 0 and lhs > 0
    bool rhs_positive = true;
    double alpha = 0.0;
    double s = 0.0;
    double T = 0.0;
    int M = 0;
    std::uint64_t seed = 0;
    std::string witness;
};

/// ||U(t)u||_{L^4_{T,x}} / (T^{1/2-b} ||u||_{L^2}) for one datum; spatial
/// integrals of |.|^4 are exact via 4x padding, midpoint rule in time
double linear_strichartz_ratio(const DispersionSymbol& sym, double T,
                               const Field& u, int time_samples = 128);

/// max of the above over random band-limited data (band <= min(32, M/4),
/// so the constant is resolution-independent by construction)
ProbeReport linear_strichartz(const DispersionSymbol& sym, double T, int M,
                              int trials, std::uint64_t seed,
                              int time_samples = 128);

struct ImprovedStrichartz {
    ProbeReport eq1;            // (sum_N w_N^4 ||D^{s-beta} P_N u||_{L^4}^4)^{1/4}
    ProbeReport eq2;            // (sum_N ||D^{1/3} P_N u||_{L^3_T L^inf}^3)^{1/3}
    double product_constant;    // measured constant inside the majorant G
};

ImprovedStrichartz improved_strichartz(const Trajectory& traj,
                                       const DispersionSymbol& sym,
                                       const EntireSeries& f, double s,
                                       const DyadicSequence* env = nullptr);

/// difference estimate for w = u - v at order s-1
ProbeReport difference_probe(const Trajectory& traj_u, const Trajectory& traj_v,
                             const DispersionSymbol& sym, const EntireSeries& f,
                             double s);

/// discrete (tau,xi)-convolution of modulation-localized random tables vs
/// the bound (N1 ^ N2)^{1/2} (N1 v N2)^{2 beta} ||.|| ||.||
ProbeReport bilinear_check(const DispersionSymbol& sym, int N1, int N2,
                           int trials, std::uint64_t seed);

/// int |u|^4 dx, exact for band-limited u (4x padded collocation)
double l4_integral(const Field& u);

} // namespace dlab
